#include "qpred/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qpred/scenario.hpp"

namespace qpred {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_header() {
    return "scenario,alpha,estimator,risk,bayes_risk,gap_direct,gap_identity,residual,"
           "opt_trace_dist,wall_time_s";
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << csv_header() << '\n';
    for (const ResultRow& r : rows)
        out << r.scenario << ',' << format_g17(r.alpha) << ',' << r.estimator << ','
            << format_g17(r.risk) << ',' << format_g17(r.bayes_risk) << ','
            << format_g17(r.gap_direct) << ',' << format_g17(r.gap_identity) << ','
            << format_g17(r.residual) << ',' << format_g17(r.opt_trace_dist) << ','
            << format_g17(r.wall_time_s) << '\n';
}

RunResult run(const ScenarioConfig& config, const RunOptions& options) {
    ScenarioConfig effective = config;
    if (options.seed) effective.seed = *options.seed;
    if (options.max_dim) effective.max_dim = *options.max_dim;
    std::sort(effective.alphas.begin(), effective.alphas.end());

    Scenario scenario = build_scenario(effective);
    VerifyOptions verify_options;
    verify_options.inject_suboptimal_bayes = options.inject_suboptimal_bayes;
    VerifyOutcome out = run_verification(scenario, verify_options);

    RunResult result;
    for (const RiskReport& r : out.reports)
        result.rows.push_back({scenario.id, r.alpha, r.estimator, r.risk, r.bayes_risk,
                               r.gap_direct, r.gap_identity, r.residual, r.opt_trace_dist,
                               r.wall_time_s});
    result.violations = std::move(out.violations);
    result.notes = std::move(out.notes);
    result.exit_code = result.violations.empty() ? 0 : 2;
    return result;
}

RunResult sweep(const ScenarioConfig& config, const std::string& vary,
                const std::vector<double>& values, const RunOptions& options) {
    if (values.empty()) throw ValidationError("sweep needs at least one value");

    RunResult result;
    // per alpha: the predictive's risk at each swept N, in sweep order
    std::map<double, std::vector<std::pair<int, double>>> bayes_by_alpha;

    for (double v : values) {
        ScenarioConfig block = config;
        char suffix[48];
        if (vary == "alpha") {
            block.alphas = {v};
            std::snprintf(suffix, sizeof suffix, ":alpha=%g", v);
        } else if (vary == "N" || vary == "K") {
            if (v != std::floor(v) || v < 1)
                throw ValidationError(vary + " must be a positive integer, got " +
                                      format_g17(v));
            if (vary == "N") {
                block.n_copies = static_cast<int>(v);
                std::snprintf(suffix, sizeof suffix, ":N=%g", v);
            } else {
                if (block.family != "equatorial" && block.family != "diagonal")
                    throw ValidationError("varying K requires a built-in family, not '" +
                                          block.family + "'");
                block.grid_size = static_cast<int>(v);
                std::snprintf(suffix, sizeof suffix, ":K=%g", v);
            }
        } else {
            throw ValidationError("unknown sweep key '" + vary + "' (use alpha, N or K)");
        }
        block.id = config.id + suffix;

        RunResult part = run(block, options);
        if (vary == "N")
            for (const ResultRow& r : part.rows)
                if (r.estimator == "bayes")
                    bayes_by_alpha[r.alpha].emplace_back(static_cast<int>(v), r.bayes_risk);
        result.rows.insert(result.rows.end(), part.rows.begin(), part.rows.end());
        result.violations.insert(result.violations.end(), part.violations.begin(),
                                 part.violations.end());
        result.notes.insert(result.notes.end(), part.notes.begin(), part.notes.end());
        result.exit_code = std::max(result.exit_code, part.exit_code);
    }

    for (const auto& [alpha, risks] : bayes_by_alpha) {
        bool nonincreasing = true;
        std::string trace;
        for (std::size_t i = 0; i < risks.size(); ++i) {
            if (i > 0 && risks[i].second > risks[i - 1].second + 1e-12) nonincreasing = false;
            if (i > 0) trace += ", ";
            trace += "N=" + std::to_string(risks[i].first) + " -> " +
                     format_g17(risks[i].second);
        }
        char head[48];
        std::snprintf(head, sizeof head, "predictive risk at alpha=%g: ", alpha);
        result.notes.push_back(head + trace +
                               (nonincreasing ? " (nonincreasing in N)"
                                              : " (not monotone in N)"));
    }
    return result;
}

}  // namespace qpred
