#pragma once
// Finite parametric families of quantum states, likelihoods of POVM outcomes
// on N-copy systems, posterior updating, and the alpha-mixture predictive
// operators built from a posterior.

#include <string>
#include <utility>
#include <vector>

#include "qpred/common.hpp"
#include "qpred/divergence.hpp"
#include "qpred/operators.hpp"

namespace qpred {

// Finite grid of parameter points theta_i with their single-copy states.
// Data lives on n_copies tensor factors, prediction on m_copies; both tensor
// powers are materialized per grid point at construction and cached.
class ParametricModel {
public:
    ParametricModel(std::vector<RealVector> grid,
                    std::vector<DensityOperator> states,
                    int n_copies, int m_copies,
                    int max_dim = kDefaultMaxDim);

    int size() const { return static_cast<int>(states_.size()); }  // K
    int dim() const { return states_.front().dim(); }              // d
    int n_copies() const { return n_copies_; }
    int m_copies() const { return m_copies_; }
    int data_dim() const { return data_states_.front().dim(); }    // d^N
    int predict_dim() const { return predictive_states_.front().dim(); }  // d^M

    const std::vector<RealVector>& grid() const { return grid_; }
    const std::vector<DensityOperator>& states() const { return states_; }
    const std::vector<DensityOperator>& data_states() const { return data_states_; }
    const std::vector<DensityOperator>& predictive_states() const { return predictive_states_; }

private:
    std::vector<RealVector> grid_;
    std::vector<DensityOperator> states_;
    std::vector<DensityOperator> data_states_;        // rho^{tensor N}
    std::vector<DensityOperator> predictive_states_;  // rho^{tensor M}
    int n_copies_;
    int m_copies_;
};

struct Prior {
    ProbabilityVector weights;
};

Prior uniform_prior(int k);

// Row i holds the outcome distribution of grid point i; rows sum to one
// within 1e-9 (checked, never silently renormalized).
class LikelihoodTable {
public:
    LikelihoodTable(RealMatrix values, std::vector<std::string> outcomes);

    int grid_size() const { return static_cast<int>(values_.rows()); }
    int outcome_count() const { return static_cast<int>(values_.cols()); }
    double operator()(int i, int x) const { return values_(i, x); }
    const RealMatrix& values() const { return values_; }
    const std::vector<std::string>& outcomes() const { return outcomes_; }

private:
    RealMatrix values_;
    std::vector<std::string> outcomes_;
};

struct Posterior {
    ProbabilityVector weights;
    std::string outcome;
    int outcome_index;
};

// Unnormalized alpha-mixture together with its trace.
struct AlphaMixture {
    HermitianOperator unnormalized;
    double normalizer;
};

struct PredictiveOperator {
    DensityOperator state;
    double normalizer;
    Alpha alpha;
};

struct ClassicalPredictive {
    RealVector raw;  // possibly non-normalized; callers normalize explicitly
    double normalizer;
};

// ------------------------------ operations --------------------------------

// p(x | theta_i) = Tr(rho_i^{tensor N} E_x).  Entries in [-1e-12, 0) are
// clamped to zero; an entry below -1e-9 raises NegativeProbabilityError.
LikelihoodTable likelihood_table(const ParametricModel& model, const Povm& povm);

// sum_i pi_i rho_i^{tensor n}: the n-copy state of an exchangeable source.
DensityOperator exchangeable_state(const ParametricModel& model, const Prior& prior,
                                   int n_copies, int max_dim = kDefaultMaxDim);

// Outcome distribution sum_i pi_i p(x | theta_i).
ProbabilityVector marginal(const Prior& prior, const LikelihoodTable& table);

// Bayes update for one observed outcome; ZeroMarginalError when the outcome
// has marginal probability <= kMarginalFloor.
Posterior posterior(const Prior& prior, const LikelihoodTable& table, int outcome_index);

// Weighted alpha-mixture of states:
//   alpha != 1 :  { sum_i w_i sigma_i^((1-alpha)/2) }^(2/(1-alpha))
//   alpha == 1 :  exp{ sum_i w_i log sigma_i }
// Weights at or below kWeightFloor are dropped.  A rank-deficient state kept
// in the sum where a negative power or log is required raises
// SingularStateError; a nonpositive trace raises NonPositiveNormalizerError.
AlphaMixture alpha_mixture(const ProbabilityVector& weights,
                           const std::vector<DensityOperator>& states, Alpha alpha);

// Normalized alpha-mixture of the model's m-copy predictive states under the
// posterior.
PredictiveOperator predictive_operator(const Posterior& post, const ParametricModel& model,
                                       Alpha alpha);

// Entrywise analogue of alpha_mixture for outcome densities; mirrors its
// branch and support rules.
ClassicalPredictive classical_alpha_predictive(const ProbabilityVector& weights,
                                               const std::vector<ProbabilityVector>& densities,
                                               Alpha alpha);

}  // namespace qpred
