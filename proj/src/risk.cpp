#include "qpred/risk.hpp"

#include <Eigen/Cholesky>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpred/divergence.hpp"
#include "qpred/rng.hpp"

namespace qpred {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Per-outcome predictive states plus their mixture normalizers; outcomes with
// vanishing marginal hold the maximally mixed placeholder (risk sums skip
// them, so it is never compared against data).
struct PredictiveTable {
    std::vector<DensityOperator> states;
    std::vector<double> normalizers;
};

PredictiveTable predictive_table(const ParametricModel& model, const Prior& prior,
                                 const LikelihoodTable& table, const ProbabilityVector& marg,
                                 Alpha alpha) {
    PredictiveTable out;
    for (int x = 0; x < table.outcome_count(); ++x) {
        if (marg[x] <= kMarginalFloor) {
            out.states.push_back(maximally_mixed(model.predict_dim()));
            out.normalizers.push_back(1.0);
            continue;
        }
        const PredictiveOperator pred =
            predictive_operator(posterior(prior, table, x), model, alpha);
        out.states.push_back(pred.state);
        out.normalizers.push_back(pred.normalizer);
    }
    return out;
}

}  // namespace

// ------------------------------ risk sums ---------------------------------

double average_risk(const ParametricModel& model, const Prior& prior, const Povm& povm,
                    const Estimator& est, Alpha alpha) {
    if (prior.weights.size() != model.size())
        throw DimensionMismatchError(std::to_string(prior.weights.size()) +
                                     " prior weights for " + std::to_string(model.size()) +
                                     " grid points");
    const LikelihoodTable table = likelihood_table(model, povm);
    std::vector<std::optional<DensityOperator>> cache(table.outcome_count());
    double acc = 0.0;
    for (int i = 0; i < model.size(); ++i) {
        if (prior.weights[i] <= kWeightFloor) continue;
        for (int x = 0; x < table.outcome_count(); ++x) {
            const double p = table(i, x);
            if (p <= kMarginalFloor) continue;
            if (!cache[x]) cache[x] = est.map(x);
            double d;
            try {
                d = quantum_alpha_divergence(model.predictive_states()[i], *cache[x], alpha);
            } catch (const SupportMismatchError& e) {
                throw SupportMismatchError(std::string(e.what()) + " (grid point " +
                                           std::to_string(i) + ", outcome " +
                                           table.outcomes()[x] + ")");
            }
            acc += prior.weights[i] * p * d;
        }
    }
    return acc;
}

Estimator bayes_estimator(const ParametricModel& model, const Prior& prior, const Povm& povm,
                          Alpha alpha) {
    const LikelihoodTable table = likelihood_table(model, povm);
    const ProbabilityVector marg = marginal(prior, table);
    const PredictiveTable pred = predictive_table(model, prior, table, marg, alpha);
    return Estimator{"bayes", [states = pred.states](int x) { return states.at(x); }};
}

double risk_gap_direct(const ParametricModel& model, const Prior& prior, const Povm& povm,
                       const Estimator& est, Alpha alpha) {
    return average_risk(model, prior, povm, est, alpha) -
           average_risk(model, prior, povm, bayes_estimator(model, prior, povm, alpha), alpha);
}

double risk_gap_identity(const ParametricModel& model, const Prior& prior, const Povm& povm,
                         const Estimator& est, Alpha alpha) {
    const LikelihoodTable table = likelihood_table(model, povm);
    const ProbabilityVector marg = marginal(prior, table);
    const PredictiveTable pred = predictive_table(model, prior, table, marg, alpha);
    const double exponent = 0.5 * (1.0 - alpha.value());
    double acc = 0.0;
    for (int x = 0; x < table.outcome_count(); ++x) {
        if (marg[x] <= kMarginalFloor) continue;
        acc += marg[x] * std::pow(pred.normalizers[x], exponent) *
               quantum_alpha_divergence(pred.states[x], est.map(x), alpha);
    }
    return acc;
}

// --------------------------- challenger zoo -------------------------------

std::vector<Estimator> estimator_zoo(const ParametricModel& model, const Prior& prior,
                                     const Povm& povm, Alpha alpha, std::uint64_t seed) {
    const LikelihoodTable table = likelihood_table(model, povm);
    const ProbabilityVector marg = marginal(prior, table);
    const int outcomes = table.outcome_count();
    const int dim = model.predict_dim();

    // posterior weights per outcome; zero-marginal outcomes keep the prior
    std::vector<ProbabilityVector> weights;
    for (int x = 0; x < outcomes; ++x)
        weights.push_back(marg[x] <= kMarginalFloor ? prior.weights
                                                    : posterior(prior, table, x).weights);

    std::vector<Estimator> zoo;

    // plug-in at the posterior mode, ties broken toward the lowest index
    {
        std::vector<DensityOperator> states;
        for (int x = 0; x < outcomes; ++x) {
            int mode = 0;
            for (int i = 1; i < model.size(); ++i)
                if (weights[x][i] > weights[x][mode]) mode = i;
            states.push_back(model.predictive_states()[mode]);
        }
        zoo.push_back({"plugin", [states](int x) { return states.at(x); }});
    }

    // posterior-mean state
    {
        std::vector<DensityOperator> states;
        for (int x = 0; x < outcomes; ++x) {
            Matrix mean = Matrix::Zero(dim, dim);
            for (int i = 0; i < model.size(); ++i)
                mean += weights[x][i] * model.predictive_states()[i].matrix();
            states.push_back(DensityOperator::trusted(std::move(mean)));
        }
        zoo.push_back({"posterior-mean", [states](int x) { return states.at(x); }});
    }

    // constant prior-predictive state
    {
        const AlphaMixture mix = alpha_mixture(prior.weights, model.predictive_states(), alpha);
        const DensityOperator state =
            DensityOperator::trusted(mix.unnormalized.matrix() / mix.normalizer);
        zoo.push_back({"prior-predictive", [state](int) { return state; }});
    }

    // random full-rank perturbations of the predictive, every direction at
    // every rate
    const PredictiveTable pred = predictive_table(model, prior, table, marg, alpha);
    Rng rng(seed);
    for (int dir = 0; dir < kZooPerturbDirections; ++dir) {
        const DensityOperator target = rng.random_density(dim, 0.2);
        for (double rate : kZooPerturbRates) {
            std::vector<DensityOperator> states;
            for (int x = 0; x < outcomes; ++x)
                states.push_back(convex_mix(pred.states[x], rate, target));
            char name[40];
            std::snprintf(name, sizeof name, "perturb%02d-r%g", dir, rate);
            zoo.push_back({name, [states](int x) { return states.at(x); }});
        }
    }
    return zoo;
}

// ------------------------- numerical minimizer ----------------------------

namespace {

// tau(theta) = L L^dag / Tr(L L^dag), L lower triangular with a real diagonal
// (dim real parameters) and complex strict lower triangle (dim (dim-1)
// parameter pairs).
class CholeskyChart {
public:
    explicit CholeskyChart(int dim) : dim_(dim) {}

    int parameter_count() const { return dim_ * dim_; }

    RealVector encode(const Matrix& tau) const {
        const Eigen::LLT<Matrix> llt(tau);
        if (llt.info() != Eigen::Success)
            throw ValidationError("minimizer initial point must be positive definite");
        const Matrix l = llt.matrixL();
        RealVector theta(parameter_count());
        int k = 0;
        for (int i = 0; i < dim_; ++i) theta[k++] = l(i, i).real();
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < i; ++j) {
                theta[k++] = l(i, j).real();
                theta[k++] = l(i, j).imag();
            }
        return theta;
    }

    Matrix decode(const RealVector& theta) const {
        Matrix l = Matrix::Zero(dim_, dim_);
        int k = 0;
        for (int i = 0; i < dim_; ++i) l(i, i) = theta[k++];
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < i; ++j) {
                l(i, j) = Complex(theta[k], theta[k + 1]);
                k += 2;
            }
        Matrix w = l * l.adjoint();
        const double tr = w.trace().real();
        if (!(tr > 0.0) || !std::isfinite(tr)) return Matrix();
        w /= tr;
        return 0.5 * (w + w.adjoint());
    }

private:
    int dim_;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Posterior-risk objective up to an additive constant, specialized per
// branch; domain violations (singular tau where a log or negative power is
// needed) evaluate to +infinity so the line search backs away.
class RiskObjective {
public:
    RiskObjective(const ProbabilityVector& weights, const std::vector<DensityOperator>& states,
                  Alpha alpha)
        : alpha_(alpha) {
        const int dim = states.front().dim();
        if (alpha.is_plus_one()) {
            // Tr tau log tau - Tr tau (sum_i w_i log sigma_i)
            fixed_ = Matrix::Zero(dim, dim);
            for (int i = 0; i < weights.size(); ++i) {
                if (weights[i] <= kWeightFloor) continue;
                fixed_ += weights[i] * matrix_log(states[i].hermitian()).matrix();
            }
        } else if (alpha.is_minus_one()) {
            // -Tr sigma_bar log tau (the mixture entropy term is constant)
            fixed_ = Matrix::Zero(dim, dim);
            for (int i = 0; i < weights.size(); ++i)
                fixed_ += weights[i] * states[i].matrix();
        } else {
            // 4/(1-a^2) (1 - Tr tau^((1+a)/2) sum_i w_i sigma_i^((1-a)/2))
            const double e = 0.5 * (1.0 - alpha.value());
            fixed_ = Matrix::Zero(dim, dim);
            for (int i = 0; i < weights.size(); ++i) {
                if (weights[i] <= kWeightFloor) continue;
                fixed_ += weights[i] * matrix_power(states[i].hermitian(), e).matrix();
            }
        }
    }

    double operator()(const Matrix& tau) const {
        if (tau.size() == 0) return kInfinity;
        try {
            if (alpha_.is_plus_one()) {
                const Matrix log_tau = matrix_log(HermitianOperator(tau)).matrix();
                return (tau * log_tau).trace().real() - (tau * fixed_).trace().real();
            }
            if (alpha_.is_minus_one()) {
                const Matrix log_tau = matrix_log(HermitianOperator(tau)).matrix();
                return -(fixed_ * log_tau).trace().real();
            }
            const double a = alpha_.value();
            const Matrix tau_pow =
                matrix_power(HermitianOperator(tau), 0.5 * (1.0 + a)).matrix();
            const double overlap = (tau_pow * fixed_).trace().real();
            return 4.0 / (1.0 - a * a) * (1.0 - overlap);
        } catch (const SingularLogError&) {
            return kInfinity;
        } catch (const SingularPowerError&) {
            return kInfinity;
        } catch (const NotPositiveError&) {
            return kInfinity;
        }
    }

private:
    Alpha alpha_;
    Matrix fixed_;
};

}  // namespace

DensityOperator minimize_posterior_risk(const ProbabilityVector& weights,
                                        const std::vector<DensityOperator>& states, Alpha alpha,
                                        const DensityOperator& init, MinimizeReport* report,
                                        const MinimizeOptions& options) {
    if (weights.size() != static_cast<int>(states.size()))
        throw DimensionMismatchError(std::to_string(weights.size()) + " weights for " +
                                     std::to_string(states.size()) + " states");
    const int dim = states.front().dim();
    if (init.dim() != dim)
        throw DimensionMismatchError("initial point dimension " + std::to_string(init.dim()) +
                                     " does not match the states");

    const CholeskyChart chart(dim);
    const RiskObjective objective(weights, states, alpha);

    RealVector theta = chart.encode(init.matrix());
    double value = objective(chart.decode(theta));
    if (!std::isfinite(value))
        throw ValidationError("objective is undefined at the initial point");

    const int n = chart.parameter_count();
    const double h = options.fd_step;
    double grad_norm = kInfinity;
    double step = 1.0;
    int iter = 0;

    for (; iter < options.max_iterations; ++iter) {
        RealVector grad(n);
        for (int k = 0; k < n; ++k) {
            RealVector up = theta, down = theta;
            up[k] += h;
            down[k] -= h;
            grad[k] = (objective(chart.decode(up)) - objective(chart.decode(down))) / (2.0 * h);
        }
        grad_norm = grad.cwiseAbs().maxCoeff();
        if (grad_norm < options.grad_tol) break;

        // backtracking line search with the Armijo decrease condition
        const double slope = grad.squaredNorm();
        double trial = std::min(1.0, 2.0 * step);
        bool moved = false;
        while (trial > 1e-18) {
            const double candidate = objective(chart.decode(theta - trial * grad));
            if (candidate <= value - 1e-4 * trial * slope) {
                theta -= trial * grad;
                value = candidate;
                step = trial;
                moved = true;
                break;
            }
            trial *= 0.5;
        }
        if (!moved) break;  // no descent direction left at this resolution
    }

    if (report) {
        report->iterations = iter;
        report->grad_norm = grad_norm;
        report->converged = grad_norm < options.grad_tol;
        report->non_convergence = !report->converged && grad_norm > 1e-5;
    }
    return DensityOperator::trusted(chart.decode(theta));
}

// ----------------------------- verification -------------------------------

VerifyOutcome run_verification(const Scenario& scenario, const VerifyOptions& options) {
    VerifyOutcome out;
    const ParametricModel& model = scenario.model;
    const LikelihoodTable table = likelihood_table(model, scenario.povm);
    const ProbabilityVector marg = marginal(scenario.prior, table);
    const int dim = model.predict_dim();

    // deterministic corruption target for the injection hook: a ramp
    // spectrum, never equal to any scenario's true predictive
    Matrix ramp = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) ramp(i, i) = dim - i;
    const DensityOperator ramp_state(ramp / ramp.trace().real());

    for (double a : scenario.alphas) {
        const Alpha alpha(a);
        if (!alpha.interpretable())
            out.notes.push_back("alpha " + num(a) + " is outside the interpretable range "
                                "[-3, 3]; computed anyway");

        const auto t_bayes = std::chrono::steady_clock::now();
        PredictiveTable pred = predictive_table(model, scenario.prior, table, marg, alpha);
        if (options.inject_suboptimal_bayes)
            for (DensityOperator& s : pred.states) s = convex_mix(s, 0.15, ramp_state);

        const Estimator bayes{"bayes", [states = pred.states](int x) { return states.at(x); }};
        const double bayes_risk = average_risk(model, scenario.prior, scenario.povm, bayes, alpha);

        // per-outcome argmin cross-check against the (possibly corrupted)
        // predictive the reports are built around
        double opt_dist = 0.0;
        if (options.run_optimizer) {
            for (int x = 0; x < table.outcome_count(); ++x) {
                if (marg[x] <= options.optimizer_marginal_floor) continue;
                const Posterior post = posterior(scenario.prior, table, x);
                MinimizeReport rep;
                const DensityOperator found = minimize_posterior_risk(
                    post.weights, model.predictive_states(), alpha, maximally_mixed(dim), &rep);
                const double dist = trace_distance(found, pred.states[x]);
                opt_dist = std::max(opt_dist, dist);
                if (rep.non_convergence) {
                    ++out.optimizer_nonconverged;
                    out.notes.push_back("optimizer stopped at the iteration cap (alpha=" +
                                        num(a) + ", outcome=" + table.outcomes()[x] +
                                        ", grad=" + num(rep.grad_norm) + ")");
                }
                if (dist > options.optimizer_tol)
                    out.violations.push_back("argmin: alpha=" + num(a) + ", outcome=" +
                                             table.outcomes()[x] + ", trace distance " +
                                             num(dist) + " > " + num(options.optimizer_tol));
            }
        }

        const double identity_exponent = 0.5 * (1.0 - a);
        const auto identity_gap = [&](const Estimator& est) {
            double acc = 0.0;
            for (int x = 0; x < table.outcome_count(); ++x) {
                if (marg[x] <= kMarginalFloor) continue;
                acc += marg[x] * std::pow(pred.normalizers[x], identity_exponent) *
                       quantum_alpha_divergence(pred.states[x], est.map(x), alpha);
            }
            return acc;
        };

        const double bayes_identity = identity_gap(bayes);
        out.reports.push_back({a, "bayes", bayes_risk, bayes_risk, 0.0, bayes_identity,
                               std::abs(bayes_identity), opt_dist, seconds_since(t_bayes)});

        for (const Estimator& est :
             estimator_zoo(model, scenario.prior, scenario.povm, alpha, scenario.seed)) {
            const auto t_est = std::chrono::steady_clock::now();
            const double risk = average_risk(model, scenario.prior, scenario.povm, est, alpha);
            const double gap_direct = risk - bayes_risk;
            const double gap_identity = identity_gap(est);
            const double residual = std::abs(gap_direct - gap_identity);

            if (gap_direct < -options.dominance_tol)
                out.violations.push_back("dominance: alpha=" + num(a) + ", estimator=" +
                                         est.name + ", risk gap " + num(gap_direct) + " < -" +
                                         num(options.dominance_tol));
            if (residual > options.residual_tol)
                out.violations.push_back("identity: alpha=" + num(a) + ", estimator=" +
                                         est.name + ", residual " + num(residual) + " > " +
                                         num(options.residual_tol));

            out.reports.push_back({a, est.name, risk, bayes_risk, gap_direct, gap_identity,
                                   residual, opt_dist, seconds_since(t_est)});
        }
    }
    return out;
}

std::vector<RiskReport> verify_theorem(const Scenario& scenario, const VerifyOptions& options) {
    VerifyOutcome out = run_verification(scenario, options);
    if (!out.violations.empty())
        throw VerificationFailure("scenario " + scenario.id + ": " + out.violations.front());
    return std::move(out.reports);
}

}  // namespace qpred
