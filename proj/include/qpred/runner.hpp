#pragma once
// Batch execution of configured scenarios and CSV serialization of the
// resulting risk reports.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qpred/config.hpp"
#include "qpred/risk.hpp"

namespace qpred {

struct ResultRow {
    std::string scenario;
    double alpha;
    std::string estimator;
    double risk;
    double bayes_risk;
    double gap_direct;
    double gap_identity;
    double residual;
    double opt_trace_dist;
    double wall_time_s;
};

struct RunOptions {
    bool inject_suboptimal_bayes = false;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_dim;
};

struct RunResult {
    std::vector<ResultRow> rows;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    int exit_code = 0;  // 0 all checks passed, 2 verification failure
};

// Shortest representation that round-trips a double (17 significant digits).
std::string format_g17(double v);

std::string csv_header();
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

// Runs every alpha of the configured scenario; rows are ordered alpha
// ascending, the predictive's own row first in each block followed by the
// zoo in its fixed order.  Deterministic for a fixed config and seed except
// for the wall_time_s column.
RunResult run(const ScenarioConfig& config, const RunOptions& options = {});

// One run block per value of the varied key ("alpha", "N" or "K"); block ids
// extend the scenario id with the assignment.  Varying K requires a built-in
// family.  For vary = "N" the result notes how the predictive's risk moves
// with N (reported, not asserted).
RunResult sweep(const ScenarioConfig& config, const std::string& vary,
                const std::vector<double>& values, const RunOptions& options = {});

}  // namespace qpred
