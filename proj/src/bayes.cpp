#include "qpred/bayes.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <utility>

namespace qpred {

namespace {

double min_eigenvalue(const Matrix& m) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly)
        .eigenvalues()
        .minCoeff();
}

}  // namespace

// ------------------------------- model ------------------------------------

ParametricModel::ParametricModel(std::vector<RealVector> grid,
                                 std::vector<DensityOperator> states,
                                 int n_copies, int m_copies, int max_dim)
    : grid_(std::move(grid)), states_(std::move(states)),
      n_copies_(n_copies), m_copies_(m_copies) {
    if (states_.empty()) throw ValidationError("a model needs at least one grid point");
    if (grid_.size() != states_.size())
        throw DimensionMismatchError(std::to_string(grid_.size()) + " grid points for " +
                                     std::to_string(states_.size()) + " states");
    if (n_copies_ < 1 || m_copies_ < 1)
        throw ValidationError("copy counts must be >= 1, got N=" + std::to_string(n_copies_) +
                              " M=" + std::to_string(m_copies_));
    const int dim = states_.front().dim();
    for (const DensityOperator& s : states_)
        if (s.dim() != dim)
            throw DimensionMismatchError("model states mix dimensions " + std::to_string(dim) +
                                         " and " + std::to_string(s.dim()));
    data_states_.reserve(states_.size());
    predictive_states_.reserve(states_.size());
    for (const DensityOperator& s : states_) {
        data_states_.push_back(tensor_power(s, n_copies_, max_dim));
        predictive_states_.push_back(tensor_power(s, m_copies_, max_dim));
    }
}

Prior uniform_prior(int k) {
    if (k < 1) throw ValidationError("uniform prior needs k >= 1, got " + std::to_string(k));
    return Prior{ProbabilityVector(RealVector::Constant(k, 1.0 / k))};
}

LikelihoodTable::LikelihoodTable(RealMatrix values, std::vector<std::string> outcomes)
    : values_(std::move(values)), outcomes_(std::move(outcomes)) {
    if (values_.rows() == 0 || values_.cols() == 0)
        throw ValidationError("likelihood table must be nonempty");
    if (static_cast<int>(outcomes_.size()) != values_.cols())
        throw ValidationError(std::to_string(outcomes_.size()) + " outcome labels for " +
                              std::to_string(values_.cols()) + " columns");
    for (int i = 0; i < values_.rows(); ++i) {
        const double sum = values_.row(i).sum();
        if (std::abs(sum - 1.0) > 1e-9)
            throw ValidationError("likelihood row " + std::to_string(i) + " sums to " +
                                  std::to_string(sum) + ", not 1");
    }
}

// ------------------------------ operations --------------------------------

LikelihoodTable likelihood_table(const ParametricModel& model, const Povm& povm) {
    if (povm.dim() != model.data_dim())
        throw DimensionMismatchError("measurement dimension " + std::to_string(povm.dim()) +
                                     " does not match the data dimension " +
                                     std::to_string(model.data_dim()));
    RealMatrix values(model.size(), povm.size());
    for (int i = 0; i < model.size(); ++i) {
        for (int x = 0; x < povm.size(); ++x) {
            double p = (model.data_states()[i].matrix() * povm.elements()[x].matrix())
                           .trace()
                           .real();
            if (p < -1e-9)
                throw NegativeProbabilityError("outcome probability " + std::to_string(p) +
                                               " at grid point " + std::to_string(i));
            values(i, x) = p < 0.0 ? 0.0 : p;
        }
    }
    return LikelihoodTable(std::move(values), povm.outcomes());
}

DensityOperator exchangeable_state(const ParametricModel& model, const Prior& prior,
                                   int n_copies, int max_dim) {
    if (prior.weights.size() != model.size())
        throw DimensionMismatchError(std::to_string(prior.weights.size()) +
                                     " prior weights for " + std::to_string(model.size()) +
                                     " grid points");
    Matrix sum;
    bool first = true;
    for (int i = 0; i < model.size(); ++i) {
        const double w = prior.weights[i];
        if (w <= kWeightFloor) continue;
        const Matrix part = w * tensor_power(model.states()[i], n_copies, max_dim).matrix();
        if (first) {
            sum = part;
            first = false;
        } else {
            sum += part;
        }
    }
    if (first) throw ValidationError("all prior weights are below the drop threshold");
    return DensityOperator::trusted(std::move(sum));
}

ProbabilityVector marginal(const Prior& prior, const LikelihoodTable& table) {
    if (prior.weights.size() != table.grid_size())
        throw DimensionMismatchError(std::to_string(prior.weights.size()) +
                                     " prior weights for " + std::to_string(table.grid_size()) +
                                     " table rows");
    return ProbabilityVector(table.values().transpose() * prior.weights.entries());
}

Posterior posterior(const Prior& prior, const LikelihoodTable& table, int outcome_index) {
    if (outcome_index < 0 || outcome_index >= table.outcome_count())
        throw ValidationError("outcome index " + std::to_string(outcome_index) +
                              " outside the table");
    if (prior.weights.size() != table.grid_size())
        throw DimensionMismatchError(std::to_string(prior.weights.size()) +
                                     " prior weights for " + std::to_string(table.grid_size()) +
                                     " table rows");
    RealVector w(table.grid_size());
    for (int i = 0; i < table.grid_size(); ++i) w[i] = prior.weights[i] * table(i, outcome_index);
    const double mx = w.sum();
    if (mx <= kMarginalFloor)
        throw ZeroMarginalError("outcome " + table.outcomes()[outcome_index] +
                                " has marginal probability " + std::to_string(mx));
    return Posterior{ProbabilityVector(w / mx), table.outcomes()[outcome_index], outcome_index};
}

AlphaMixture alpha_mixture(const ProbabilityVector& weights,
                           const std::vector<DensityOperator>& states, Alpha alpha) {
    if (weights.size() != static_cast<int>(states.size()))
        throw DimensionMismatchError(std::to_string(weights.size()) + " weights for " +
                                     std::to_string(states.size()) + " states");
    const int dim = states.front().dim();
    for (const DensityOperator& s : states)
        if (s.dim() != dim)
            throw DimensionMismatchError("mixture states mix dimensions " +
                                         std::to_string(dim) + " and " +
                                         std::to_string(s.dim()));

    std::vector<int> kept;
    for (int i = 0; i < weights.size(); ++i)
        if (weights[i] > kWeightFloor) kept.push_back(i);
    if (kept.empty()) throw ValidationError("all mixture weights are below the drop threshold");

    const double a = alpha.value();
    if (alpha.is_plus_one() || a > 1.0) {
        // a log (a = 1) or a negative power (a > 1) touches every kept state
        for (int i : kept)
            if (min_eigenvalue(states[i].matrix()) <= kEigFloor)
                throw SingularStateError("state " + std::to_string(i) +
                                         " is rank deficient where order " + std::to_string(a) +
                                         " needs full rank");
    }

    Matrix unnormalized;
    if (alpha.is_plus_one()) {
        Matrix log_sum = Matrix::Zero(dim, dim);
        for (int i : kept) log_sum += weights[i] * matrix_log(states[i].hermitian()).matrix();
        unnormalized = matrix_exp(HermitianOperator(std::move(log_sum))).matrix();
    } else if (alpha.is_minus_one()) {
        // exponents are 1; the power scale is the arithmetic one, kept exact
        unnormalized = Matrix::Zero(dim, dim);
        for (int i : kept) unnormalized += weights[i] * states[i].matrix();
    } else {
        const double e = 0.5 * (1.0 - a);
        Matrix sum = Matrix::Zero(dim, dim);
        for (int i : kept) sum += weights[i] * matrix_power(states[i].hermitian(), e).matrix();
        unnormalized = matrix_power(HermitianOperator(std::move(sum)), 2.0 / (1.0 - a)).matrix();
    }

    const double normalizer = unnormalized.trace().real();
    if (normalizer <= 0.0)
        throw NonPositiveNormalizerError("mixture trace " + std::to_string(normalizer));
    return AlphaMixture{HermitianOperator(std::move(unnormalized)), normalizer};
}

PredictiveOperator predictive_operator(const Posterior& post, const ParametricModel& model,
                                       Alpha alpha) {
    const AlphaMixture mix = alpha_mixture(post.weights, model.predictive_states(), alpha);
    return PredictiveOperator{
        DensityOperator::trusted(mix.unnormalized.matrix() / mix.normalizer),
        mix.normalizer, alpha};
}

ClassicalPredictive classical_alpha_predictive(const ProbabilityVector& weights,
                                               const std::vector<ProbabilityVector>& densities,
                                               Alpha alpha) {
    if (weights.size() != static_cast<int>(densities.size()))
        throw DimensionMismatchError(std::to_string(weights.size()) + " weights for " +
                                     std::to_string(densities.size()) + " densities");
    const int dim = densities.front().size();
    for (const ProbabilityVector& d : densities)
        if (d.size() != dim)
            throw DimensionMismatchError("densities mix lengths " + std::to_string(dim) +
                                         " and " + std::to_string(d.size()));

    std::vector<int> kept;
    for (int i = 0; i < weights.size(); ++i)
        if (weights[i] > kWeightFloor) kept.push_back(i);
    if (kept.empty()) throw ValidationError("all mixture weights are below the drop threshold");

    const double a = alpha.value();
    if (alpha.is_plus_one() || a > 1.0) {
        for (int i : kept)
            for (int j = 0; j < dim; ++j)
                if (densities[i][j] <= kEigFloor)
                    throw SingularStateError("density " + std::to_string(i) + " entry " +
                                             std::to_string(j) + " is outside the support "
                                             "where order " + std::to_string(a) +
                                             " needs full support");
    }

    RealVector raw(dim);
    for (int j = 0; j < dim; ++j) {
        if (alpha.is_plus_one()) {
            double acc = 0.0;
            for (int i : kept) acc += weights[i] * std::log(densities[i][j]);
            raw[j] = std::exp(acc);
        } else if (alpha.is_minus_one()) {
            double acc = 0.0;
            for (int i : kept) acc += weights[i] * densities[i][j];
            raw[j] = acc;
        } else {
            const double e = 0.5 * (1.0 - a);
            double acc = 0.0;
            for (int i : kept) {
                const double p = densities[i][j];
                if (p <= kEigFloor) continue;  // positive exponent extends by zero
                acc += weights[i] * std::pow(p, e);
            }
            raw[j] = acc <= 0.0 ? 0.0 : std::pow(acc, 2.0 / (1.0 - a));
        }
    }

    const double normalizer = raw.sum();
    if (normalizer <= 0.0)
        throw NonPositiveNormalizerError("mixture mass " + std::to_string(normalizer));
    return ClassicalPredictive{std::move(raw), normalizer};
}

}  // namespace qpred
