// Command-line front end: verify a configured scenario, sweep a parameter,
// or evaluate one divergence between two density matrices given as files.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qpred/config.hpp"
#include "qpred/divergence.hpp"
#include "qpred/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qpred::ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void report(const qpred::RunResult& result, const std::string& id, const std::string& out_path) {
    for (const std::string& note : result.notes) std::cerr << "note: " << note << "\n";
    for (const std::string& v : result.violations) std::cerr << "violation: " << v << "\n";

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw qpred::ValidationError("cannot write '" + out_path + "'");
        qpred::write_csv(out, result.rows);
    }

    // per-alpha-block worst figures, then a one-line verdict
    std::map<std::pair<std::string, double>, std::pair<double, double>> worst;
    for (const qpred::ResultRow& r : result.rows) {
        auto& w = worst[{r.scenario, r.alpha}];
        w.first = std::max(w.first, r.residual);
        w.second = std::max(w.second, r.opt_trace_dist);
    }
    for (const auto& [key, w] : worst)
        std::printf("%s alpha=%g: max residual %.3e, argmin distance %.3e\n", key.first.c_str(),
                    key.second, w.first, w.second);
    std::printf("%s: %s (%zu rows, %zu violations)\n", id.c_str(),
                result.exit_code == 0 ? "ok" : "FAILED", result.rows.size(),
                result.violations.size());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Bayesian prediction of quantum states: risk verification"};
    app.require_subcommand(1);

    std::string config_path, out_path, vary, values_text;
    std::uint64_t seed = 0;
    int max_dim = 0;
    bool inject = false;

    CLI::App* verify = app.add_subcommand("verify", "run every check of a configured scenario");
    verify->add_option("config", config_path, "scenario config file")->required();
    verify->add_option("--out", out_path, "write the risk table as CSV");
    CLI::Option* verify_seed = verify->add_option("--seed", seed, "override the challenger seed");
    CLI::Option* verify_dim = verify->add_option("--max-dim", max_dim,
                                                 "override the tensor-power dimension cap");
    verify->add_flag("--inject-suboptimal-bayes", inject,
                     "corrupt the predictive so verification must fail (self test)");

    CLI::App* sweep = app.add_subcommand("sweep", "verify once per value of a swept parameter");
    sweep->add_option("config", config_path, "scenario config file")->required();
    sweep->add_option("--vary", vary, "parameter to sweep: alpha, N or K")->required();
    sweep->add_option("--values", values_text, "comma-separated values")->required();
    sweep->add_option("--out", out_path, "write the risk table as CSV");
    CLI::Option* sweep_seed = sweep->add_option("--seed", seed, "override the challenger seed");
    CLI::Option* sweep_dim = sweep->add_option("--max-dim", max_dim,
                                               "override the tensor-power dimension cap");

    std::string file_a, file_b;
    double alpha_value = 0.0;
    CLI::App* divergence =
        app.add_subcommand("divergence", "evaluate one divergence between two density matrices");
    divergence->add_option("a", file_a, "first density matrix (re,im pairs)")->required();
    divergence->add_option("b", file_b, "second density matrix (re,im pairs)")->required();
    divergence->add_option("--alpha", alpha_value, "divergence order")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(verify)) {
            const qpred::ScenarioConfig config = qpred::parse_config_file(config_path);
            qpred::RunOptions options;
            options.inject_suboptimal_bayes = inject;
            if (verify_seed->count() > 0) options.seed = seed;
            if (verify_dim->count() > 0) options.max_dim = max_dim;
            const qpred::RunResult result = qpred::run(config, options);
            report(result, config.id, out_path.empty() ? config.out_path : out_path);
            return result.exit_code;
        }

        if (app.got_subcommand(sweep)) {
            const qpred::ScenarioConfig config = qpred::parse_config_file(config_path);
            std::vector<double> values;
            std::istringstream in(values_text);
            for (std::string tok; std::getline(in, tok, ',');) {
                try {
                    values.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw qpred::ValidationError("'" + tok + "' is not a number in --values");
                }
            }
            qpred::RunOptions options;
            if (sweep_seed->count() > 0) options.seed = seed;
            if (sweep_dim->count() > 0) options.max_dim = max_dim;
            const qpred::RunResult result = qpred::sweep(config, vary, values, options);
            report(result, config.id, out_path.empty() ? config.out_path : out_path);
            return result.exit_code;
        }

        // divergence verb
        const qpred::DensityOperator rho{qpred::parse_matrix_text(slurp(file_a))};
        const qpred::DensityOperator sigma{qpred::parse_matrix_text(slurp(file_b))};
        const qpred::Alpha alpha(alpha_value);
        if (!alpha.interpretable())
            std::cerr << "note: order " << alpha_value << " is outside the interpretable "
                      << "range [-3, 3]; the value is computed but joint convexity is lost\n";
        std::printf("%.17g\n", qpred::quantum_alpha_divergence(rho, sigma, alpha));
        return 0;
    } catch (const qpred::VerificationFailure& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 2;
    } catch (const qpred::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
