#include "qpred/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qpred/bayes.hpp"
#include "qpred/scenario.hpp"

namespace qpred {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, int col, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " +
                     what);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& tok) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + tok.size() || tok.empty())
        throw ParseError("'" + tok + "' is not a number");
    return v;
}

int to_int(const std::string& tok) {
    const double v = to_double(tok);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ParseError("'" + tok + "' is not an integer");
    return static_cast<int>(v);
}

std::uint64_t to_seed(const std::string& tok) {
    if (tok.empty() || tok[0] == '-' || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("seed must be a nonnegative integer, got '" + tok + "'");
    return std::stoull(tok);
}

std::vector<double> to_list(const std::string& value) {
    std::istringstream in(value);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(to_double(tok));
    return out;
}

// `state_<k>`-style keys: returns the index, or -1 if the prefix is absent.
int indexed(const std::string& key, const std::string& prefix) {
    if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) return -1;
    const std::string digits = key.substr(prefix.size());
    if (digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("'" + key + "' has a malformed index");
    return std::stoi(digits);
}

template <typename T>
struct IndexedSlots {
    std::vector<T> items;
    std::vector<bool> set;

    void put(int index, T value) {
        if (index >= static_cast<int>(items.size())) {
            items.resize(index + 1);
            set.resize(index + 1, false);
        }
        items[index] = std::move(value);
        set[index] = true;
    }

    void check_contiguous(const std::string& prefix) const {
        for (std::size_t i = 0; i < set.size(); ++i)
            if (!set[i])
                throw ParseError(prefix + std::to_string(i) + " is missing but a higher index "
                                 "is set");
    }
};

}  // namespace

Matrix parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<Complex> entries;
    std::string tok;
    while (in >> tok) {
        const auto comma = tok.find(',');
        if (comma == std::string::npos)
            throw ParseError("matrix entry '" + tok + "' is not a re,im pair");
        try {
            entries.emplace_back(to_double(tok.substr(0, comma)),
                                 to_double(tok.substr(comma + 1)));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " (in matrix entry '" + tok + "')");
        }
    }
    if (entries.empty()) throw ParseError("empty matrix text");
    const int dim = static_cast<int>(std::lround(std::sqrt(double(entries.size()))));
    if (dim * dim != static_cast<int>(entries.size()))
        throw ParseError(std::to_string(entries.size()) +
                         " matrix entries do not form a square matrix");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = entries[i * dim + j];
    return m;
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config;
    IndexedSlots<Matrix> states, elements;
    IndexedSlots<RealVector> thetas;
    IndexedSlots<std::string> outcomes;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "missing ']' in section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scenario" && section != "model" && section != "prior" &&
                section != "povm" && section != "run")
                fail(line_no, "unknown section [" + section + "]");
            continue;
        }

        const int col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(line_no, col, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, col, "expected 'key = value', got '" + line + "'");
        if (section.empty())
            fail(line_no, col, "key '" + key + "' appears before any [section]");

        try {
            if (section == "scenario") {
                if (key == "id") { config.id = value; continue; }
            } else if (section == "model") {
                if (key == "family") { config.family = value; continue; }
                if (key == "grid_size") { config.grid_size = to_int(value); continue; }
                if (key == "bloch_radius") { config.bloch_radius = to_double(value); continue; }
                if (key == "depolarize") { config.depolarize = to_double(value); continue; }
                if (key == "p_min") { config.p_min = to_double(value); continue; }
                if (key == "p_max") { config.p_max = to_double(value); continue; }
                if (key == "n_copies") { config.n_copies = to_int(value); continue; }
                if (key == "m_copies") { config.m_copies = to_int(value); continue; }
                if (int k = indexed(key, "state_"); k >= 0) {
                    states.put(k, parse_matrix_text(value));
                    continue;
                }
                if (int k = indexed(key, "theta_"); k >= 0) {
                    const std::vector<double> coords = to_list(value);
                    if (coords.empty()) throw ParseError("empty parameter point");
                    RealVector point(coords.size());
                    for (std::size_t i = 0; i < coords.size(); ++i) point[i] = coords[i];
                    thetas.put(k, std::move(point));
                    continue;
                }
            } else if (section == "prior") {
                if (key == "type") { config.prior_type = value; continue; }
                if (key == "weights") { config.prior_weights = to_list(value); continue; }
            } else if (section == "povm") {
                if (key == "name") { config.povm_name = value; continue; }
                if (int k = indexed(key, "element_"); k >= 0) {
                    elements.put(k, parse_matrix_text(value));
                    continue;
                }
                if (int k = indexed(key, "outcome_"); k >= 0) {
                    outcomes.put(k, value);
                    continue;
                }
            } else {  // run
                if (key == "alphas") { config.alphas = to_list(value); continue; }
                if (key == "seed") { config.seed = to_seed(value); continue; }
                if (key == "out") { config.out_path = value; continue; }
                if (key == "max_dim") { config.max_dim = to_int(value); continue; }
            }
        } catch (const ParseError& e) {
            fail(line_no, col, e.what());
        }
        fail(line_no, col, "unknown key '" + key + "' in section [" + section + "]");
    }

    states.check_contiguous("state_");
    thetas.check_contiguous("theta_");
    elements.check_contiguous("element_");
    outcomes.check_contiguous("outcome_");
    config.states = std::move(states.items);
    config.thetas = std::move(thetas.items);
    config.povm_elements = std::move(elements.items);
    config.povm_outcomes = std::move(outcomes.items);
    return config;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

Scenario build_scenario(const ScenarioConfig& config) {
    if (config.alphas.empty())
        throw ValidationError("no alpha values configured (set alphas under [run])");
    for (double a : config.alphas) Alpha{a};  // rejects non-finite orders

    const auto model = [&]() -> ParametricModel {
        if (config.family == "equatorial" || config.family == "diagonal") {
            if (config.grid_size < 1)
                throw ValidationError("family '" + config.family + "' needs grid_size >= 1");
            if (config.family == "equatorial")
                return equatorial_family(config.grid_size, config.bloch_radius,
                                         config.depolarize, config.n_copies, config.m_copies,
                                         config.max_dim);
            return diagonal_family(config.grid_size, config.p_min, config.p_max,
                                   config.n_copies, config.m_copies, config.max_dim);
        }
        if (config.family == "explicit") {
            if (config.states.empty())
                throw ValidationError("explicit family needs state_<k> entries");
            std::vector<DensityOperator> states;
            for (const Matrix& m : config.states) states.emplace_back(m);
            std::vector<RealVector> grid;
            if (config.thetas.empty()) {
                for (std::size_t k = 0; k < states.size(); ++k)
                    grid.push_back(RealVector::Constant(1, static_cast<double>(k)));
            } else if (config.thetas.size() == states.size()) {
                grid = config.thetas;
            } else {
                throw ValidationError(std::to_string(config.thetas.size()) +
                                      " theta_<k> entries for " +
                                      std::to_string(states.size()) + " states");
            }
            return ParametricModel(std::move(grid), std::move(states), config.n_copies,
                                   config.m_copies, config.max_dim);
        }
        if (config.family.empty()) throw ValidationError("no model family configured");
        throw ValidationError("unknown model family '" + config.family + "'");
    }();

    const Prior prior = [&]() -> Prior {
        if (config.prior_type == "uniform") return uniform_prior(model.size());
        if (config.prior_type == "explicit") {
            if (static_cast<int>(config.prior_weights.size()) != model.size())
                throw ValidationError(std::to_string(config.prior_weights.size()) +
                                      " prior weights for " + std::to_string(model.size()) +
                                      " grid points");
            return Prior{ProbabilityVector(config.prior_weights)};
        }
        throw ValidationError("unknown prior type '" + config.prior_type + "'");
    }();

    const Povm povm = [&]() -> Povm {
        if (config.povm_name.empty() || config.povm_name == "z_product")
            return z_product_povm(model.dim(), model.n_copies());
        if (config.povm_name == "bell") {
            if (model.dim() != 2 || model.data_dim() != 4)
                throw ValidationError("bell measurement needs two qubit copies, data dimension "
                                      "is " + std::to_string(model.data_dim()));
            return bell_povm();
        }
        if (config.povm_name == "explicit") {
            if (config.povm_elements.empty())
                throw ValidationError("explicit measurement needs element_<k> entries");
            std::vector<HermitianOperator> elements;
            for (const Matrix& m : config.povm_elements) elements.emplace_back(m);
            return validate_povm(std::move(elements), config.povm_outcomes);
        }
        throw ValidationError("unknown measurement '" + config.povm_name + "'");
    }();

    return Scenario{config.id, model, prior, povm, config.alphas, config.seed};
}

}  // namespace qpred
