#pragma once
// Deterministic random sampling.  Raw bits come from std::mt19937_64 (whose
// sequence is pinned by the standard); the real-valued transforms are done by
// hand so that seeded runs are bit-identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

#include "qpred/common.hpp"
#include "qpred/operators.hpp"

namespace qpred {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; one spare cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        do { u = uniform(); } while (u <= 0.0);
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double two_pi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(two_pi * v);
        have_spare_ = true;
        return r * std::cos(two_pi * v);
    }

    // Complex matrix with iid standard-normal real and imaginary parts.
    Matrix ginibre(int dim) {
        Matrix g(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                g(i, j) = Complex(gaussian(), gaussian());
        return g;
    }

    // G G^dag / Tr(G G^dag), optionally mixed with I/d to bound the spectrum
    // away from zero (mix_identity = 0 keeps the raw sample).
    DensityOperator random_density(int dim, double mix_identity = 0.0) {
        const Matrix g = ginibre(dim);
        Matrix w = g * g.adjoint();
        w /= w.trace().real();
        if (mix_identity > 0.0) {
            w = (1.0 - mix_identity) * w
              + mix_identity / dim * Matrix::Identity(dim, dim);
        }
        w = 0.5 * (w + w.adjoint());
        return DensityOperator(std::move(w));
    }

    // |psi><psi| for a Haar-ish random unit vector.
    DensityOperator random_pure(int dim) {
        Eigen::VectorXcd psi(dim);
        for (int i = 0; i < dim; ++i) psi(i) = Complex(gaussian(), gaussian());
        psi.normalize();
        Matrix p = psi * psi.adjoint();
        p = 0.5 * (p + p.adjoint());
        return DensityOperator::trusted(std::move(p));
    }

    // Probability vector with every entry >= floor_weight / dim (after
    // normalization of uniform draws shifted by floor_weight).
    RealVector random_probabilities(int dim, double floor_weight = 0.05) {
        RealVector p(dim);
        for (int i = 0; i < dim; ++i) p(i) = uniform() + floor_weight;
        p /= p.sum();
        return p;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qpred
