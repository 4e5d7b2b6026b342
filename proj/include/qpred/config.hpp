#pragma once
// Scenario configuration files: flat `key = value` lines under [section]
// headers.  Matrices are written as whitespace-separated re,im pairs in
// row-major order.  Unknown sections or keys are errors.

#include <cstdint>
#include <string>
#include <vector>

#include "qpred/common.hpp"
#include "qpred/risk.hpp"

namespace qpred {

struct ScenarioConfig {
    // [scenario]
    std::string id = "scenario";

    // [model]
    std::string family;                 // equatorial | diagonal | explicit
    int grid_size = 0;                  // equatorial, diagonal
    double bloch_radius = 0.8;          // equatorial
    double depolarize = 0.1;            // equatorial
    double p_min = 0.15;                // diagonal
    double p_max = 0.85;                // diagonal
    std::vector<Matrix> states;         // explicit, indexed state_<k>
    std::vector<RealVector> thetas;     // explicit, optional theta_<k>
    int n_copies = 1;
    int m_copies = 1;

    // [prior]
    std::string prior_type = "uniform";  // uniform | explicit
    std::vector<double> prior_weights;   // explicit

    // [povm]
    std::string povm_name;               // z_product | bell | explicit
    std::vector<Matrix> povm_elements;   // explicit, indexed element_<k>
    std::vector<std::string> povm_outcomes;  // explicit, optional outcome_<k>

    // [run]
    std::vector<double> alphas;
    std::uint64_t seed = 1;
    std::string out_path;
    int max_dim = kDefaultMaxDim;
};

// ParseError carries "line L, col C: ..." context.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

// Materializes the configured scenario; semantic problems (empty alpha list,
// dimension overflows, invalid states or measurements, weight mismatches)
// raise ValidationError naming the violated constraint.
Scenario build_scenario(const ScenarioConfig& config);

// Parses one matrix from whitespace-separated re,im pairs; the entry count
// must be a perfect square.  Shared by explicit-state configs and the CLI's
// divergence verb.
Matrix parse_matrix_text(const std::string& text);

}  // namespace qpred
