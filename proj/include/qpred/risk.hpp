#pragma once
// Averaged alpha-divergence risk of outcome-indexed estimators, the two
// independent routes to the risk gap against the alpha-mixture predictive
// (direct difference of risks vs. the weighted per-outcome divergence sum the
// gap telescopes to), a zoo of challenger estimators, a numerical
// posterior-risk minimizer, and the verification driver that cross-checks
// them all.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qpred/bayes.hpp"
#include "qpred/common.hpp"

namespace qpred {

// Measurement-outcome-indexed state estimate.  The map must return a valid
// state for every outcome with positive marginal probability.
struct Estimator {
    std::string name;
    std::function<DensityOperator(int outcome_index)> map;
};

struct RiskReport {
    double alpha;
    std::string estimator;
    double risk;
    double bayes_risk;
    double gap_direct;    // risk - bayes_risk
    double gap_identity;  // sum_x p_x C_alpha(x)^((1-alpha)/2) D(pred_x || est_x)
    double residual;      // |gap_direct - gap_identity|
    double opt_trace_dist;  // worst trace-norm gap, numerical argmin vs predictive
    double wall_time_s;
};

struct Scenario {
    std::string id;
    ParametricModel model;
    Prior prior;
    Povm povm;
    std::vector<double> alphas;
    std::uint64_t seed;
};

// ------------------------------ risk sums ---------------------------------

// sum_i pi_i sum_x p(x|theta_i) D^(alpha)(sigma_theta_i || est(x)), skipping
// outcomes with p(x|theta_i) <= kMarginalFloor.  SupportMismatchError is
// rethrown with the offending grid point and outcome attached.
double average_risk(const ParametricModel& model, const Prior& prior, const Povm& povm,
                    const Estimator& est, Alpha alpha);

// The normalized alpha-mixture predictive as an estimator.  Outcomes with
// zero marginal map to the maximally mixed state (they never enter a risk
// sum).
Estimator bayes_estimator(const ParametricModel& model, const Prior& prior, const Povm& povm,
                          Alpha alpha);

// Route one: average_risk(est) - average_risk(bayes), two independent sums.
double risk_gap_direct(const ParametricModel& model, const Prior& prior, const Povm& povm,
                       const Estimator& est, Alpha alpha);

// Route two: sum_x p_x C_alpha(x)^((1-alpha)/2) D^(alpha)(pred_x || est_x).
// The weight factor degenerates to one at both endpoints (C == 1 at
// alpha = -1; the exponent is zero at alpha = +1), so a single expression
// covers every branch.
double risk_gap_identity(const ParametricModel& model, const Prior& prior, const Povm& povm,
                         const Estimator& est, Alpha alpha);

// --------------------------- challenger zoo -------------------------------

inline constexpr int kZooPerturbDirections = 32;
inline constexpr double kZooPerturbRates[] = {0.01, 0.05, 0.1};

// Deterministically seeded challengers: the plug-in state at the posterior
// mode, the posterior-mean state, the constant prior-predictive state, and
// kZooPerturbDirections random full-rank perturbation directions of the
// predictive, each applied at every rate in kZooPerturbRates.
std::vector<Estimator> estimator_zoo(const ParametricModel& model, const Prior& prior,
                                     const Povm& povm, Alpha alpha, std::uint64_t seed);

// ------------------------- numerical minimizer ----------------------------

struct MinimizeOptions {
    int max_iterations = 5000;
    double grad_tol = 1e-8;   // stop when max |gradient entry| drops below
    double fd_step = 1e-6;    // central-difference step
};

struct MinimizeReport {
    int iterations = 0;
    double grad_norm = 0.0;   // max |gradient entry| at exit
    bool converged = false;   // grad_norm < grad_tol reached
    bool non_convergence = false;  // stopped with grad_norm > 1e-5 (reported, not fatal)
};

// Gradient descent with backtracking line search on tau = L L^dag / Tr(L L^dag)
// (L lower triangular, full-rank init required), minimizing
// sum_i w_i D^(alpha)(sigma_i || tau).  Gradients are central differences.
DensityOperator minimize_posterior_risk(const ProbabilityVector& weights,
                                        const std::vector<DensityOperator>& states, Alpha alpha,
                                        const DensityOperator& init,
                                        MinimizeReport* report = nullptr,
                                        const MinimizeOptions& options = {});

// ----------------------------- verification -------------------------------

struct VerifyOptions {
    // Test hook: replaces the predictive with a deliberately corrupted state
    // so that verification must fail.
    bool inject_suboptimal_bayes = false;
    double dominance_tol = 1e-9;   // gap_direct >= -dominance_tol
    double residual_tol = 1e-8;    // |gap_direct - gap_identity| <= residual_tol
    double optimizer_tol = 1e-4;   // trace-norm agreement argmin vs predictive
    double optimizer_marginal_floor = 1e-12;  // outcomes the argmin check covers
    bool run_optimizer = true;
};

struct VerifyOutcome {
    std::vector<RiskReport> reports;
    std::vector<std::string> violations;
    std::vector<std::string> notes;   // diagnostics (alpha interpretability, optimizer stalls)
    int optimizer_nonconverged = 0;
};

// Evaluates every alpha of the scenario: bayes risk, the full zoo with both
// gap routes, and the per-outcome argmin cross-check.  Collects violations
// instead of throwing.
VerifyOutcome run_verification(const Scenario& scenario, const VerifyOptions& options = {});

// Contract form: returns the reports, throwing VerificationFailure naming the
// first violated assertion (with alpha, estimator and outcome) if any check
// fails.
std::vector<RiskReport> verify_theorem(const Scenario& scenario, const VerifyOptions& options = {});

}  // namespace qpred
