#include "qpred/scenario.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace qpred {

ParametricModel equatorial_family(int grid_size, double bloch_radius, double depolarize,
                                  int n_copies, int m_copies, int max_dim) {
    if (grid_size < 1) throw ValidationError("grid_size must be at least 1");
    if (bloch_radius < 0.0 || bloch_radius > 1.0)
        throw ValidationError("bloch_radius must lie in [0, 1]");
    if (depolarize < 0.0 || depolarize > 1.0)
        throw ValidationError("depolarize must lie in [0, 1]");

    const double r = (1.0 - depolarize) * bloch_radius;
    std::vector<RealVector> grid;
    std::vector<DensityOperator> states;
    for (int k = 0; k < grid_size; ++k) {
        const double theta = 2.0 * M_PI * k / grid_size;
        Matrix m(2, 2);
        m(0, 0) = 0.5;
        m(1, 1) = 0.5;
        m(0, 1) = 0.5 * r * Complex(std::cos(theta), -std::sin(theta));
        m(1, 0) = std::conj(m(0, 1));
        grid.push_back(RealVector::Constant(1, theta));
        states.emplace_back(std::move(m));
    }
    return ParametricModel(std::move(grid), std::move(states), n_copies, m_copies, max_dim);
}

ParametricModel diagonal_family(int grid_size, double p_min, double p_max,
                                int n_copies, int m_copies, int max_dim) {
    if (grid_size < 1) throw ValidationError("grid_size must be at least 1");
    if (!(0.0 <= p_min && p_min <= p_max && p_max <= 1.0))
        throw ValidationError("need 0 <= p_min <= p_max <= 1");

    std::vector<RealVector> grid;
    std::vector<DensityOperator> states;
    for (int k = 0; k < grid_size; ++k) {
        const double p =
            grid_size == 1 ? p_min : p_min + (p_max - p_min) * k / (grid_size - 1);
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = p;
        m(1, 1) = 1.0 - p;
        grid.push_back(RealVector::Constant(1, p));
        states.emplace_back(std::move(m));
    }
    return ParametricModel(std::move(grid), std::move(states), n_copies, m_copies, max_dim);
}

Povm z_product_povm(int dim, int n_copies) {
    if (dim < 2) throw ValidationError("z_product_povm needs dim >= 2");
    if (n_copies < 1) throw ValidationError("z_product_povm needs n_copies >= 1");
    long long total = 1;
    for (int i = 0; i < n_copies; ++i) {
        total *= dim;
        if (total > kDefaultMaxDim)
            throw DimensionOverflowError("z_product_povm dimension exceeds " +
                                         std::to_string(kDefaultMaxDim));
    }

    // basis projectors are valid by construction; no re-validation needed
    std::vector<HermitianOperator> elements;
    std::vector<std::string> outcomes;
    for (long long c = 0; c < total; ++c) {
        Matrix e = Matrix::Zero(total, total);
        e(c, c) = 1.0;
        elements.emplace_back(std::move(e));
        std::string label(n_copies, '0');
        long long rest = c;
        for (int pos = n_copies - 1; pos >= 0; --pos) {
            label[pos] = static_cast<char>('0' + rest % dim);
            rest /= dim;
        }
        outcomes.push_back(std::move(label));
    }
    return Povm(std::move(elements), std::move(outcomes));
}

Povm bell_povm() {
    const double s = 1.0 / std::sqrt(2.0);
    const auto projector = [&](int i, int j, double sign) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
        v[i] = s;
        v[j] = sign * s;
        return HermitianOperator(Matrix(v * v.adjoint()));
    };
    std::vector<HermitianOperator> elements = {
        projector(0, 3, +1.0),  // phi+
        projector(0, 3, -1.0),  // phi-
        projector(1, 2, +1.0),  // psi+
        projector(1, 2, -1.0),  // psi-
    };
    return Povm(std::move(elements), {"phi+", "phi-", "psi+", "psi-"});
}

std::vector<double> default_alphas() { return {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0}; }

Scenario scenario_s1() {
    return Scenario{"s1",
                    equatorial_family(8, 0.8, 0.1, 2, 1),
                    uniform_prior(8),
                    z_product_povm(2, 2),
                    {-1.0, 0.0, 0.5, 1.0},
                    20240601};
}

Scenario scenario_diagonal() {
    return Scenario{"diag",
                    diagonal_family(5, 0.15, 0.85, 2, 1),
                    uniform_prior(5),
                    z_product_povm(2, 2),
                    default_alphas(),
                    20240602};
}

Scenario scenario_bell() {
    return Scenario{"bell",
                    equatorial_family(8, 0.8, 0.1, 2, 1),
                    uniform_prior(8),
                    bell_povm(),
                    default_alphas(),
                    20240603};
}

}  // namespace qpred
