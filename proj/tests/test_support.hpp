#pragma once
// Shared test helpers: independent closed-form oracles (no library spectral
// code involved) and deterministic sample generators.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qpred/operators.hpp"
#include "qpred/rng.hpp"

namespace ts {

using qpred::Complex;
using qpred::Matrix;
using qpred::RealVector;

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// ---------------- closed-form 2x2 spectral oracle ----------------
// For Hermitian [[a, b], [conj(b), d]]: eigenvalues m -+ r with
// m = (a + d)/2, r = sqrt(((a - d)/2)^2 + |b|^2).  Matrix functions come from
// the spectral projectors directly:
//   f(A) = [ (f(l+) - f(l-)) A + (f(l-) l+ - f(l+) l-) I ] / (l+ - l-).

struct Eig2 {
    double lo;
    double hi;
};

inline Eig2 eig2(const Matrix& a) {
    const double m = 0.5 * (a(0, 0).real() + a(1, 1).real());
    const double h = 0.5 * (a(0, 0).real() - a(1, 1).real());
    const double r = std::sqrt(h * h + std::norm(a(0, 1)));
    return {m - r, m + r};
}

inline Matrix apply2(const Matrix& a, const std::function<double(double)>& f) {
    const Eig2 e = eig2(a);
    if (e.hi - e.lo < 1e-14) {
        return f(0.5 * (e.lo + e.hi)) * Matrix::Identity(2, 2);
    }
    const double flo = f(e.lo), fhi = f(e.hi);
    return ((fhi - flo) * a + (flo * e.hi - fhi * e.lo) * Matrix::Identity(2, 2))
           / (e.hi - e.lo);
}

inline double pow_floor(double x, double p) {
    if (x <= 1e-12) return 0.0;  // positive exponents only in oracle uses
    return std::pow(x, p);
}

// ---------------- scalar divergence oracles ----------------

inline double kl_scalar(const RealVector& p, const RealVector& q) {
    double acc = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p[i] > 1e-12) acc += p[i] * (std::log(p[i]) - std::log(q[i]));
    }
    return acc;
}

inline double alpha_div_scalar(const RealVector& p, const RealVector& q, double alpha) {
    if (alpha == -1.0) return kl_scalar(p, q);
    if (alpha == 1.0) return kl_scalar(q, p);
    double t = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        t += std::pow(p[i], 0.5 * (1.0 - alpha)) * std::pow(q[i], 0.5 * (1.0 + alpha));
    }
    return 4.0 / (1.0 - alpha * alpha) * (1.0 - t);
}

// Quantum alpha-divergence for full-rank 2x2 pairs through the closed-form
// spectral oracle only.
inline double qdiv2_oracle(const Matrix& rho, const Matrix& sigma, double alpha) {
    if (alpha == -1.0) {
        const Matrix diff = apply2(rho, [](double x) { return std::log(x); })
                          - apply2(sigma, [](double x) { return std::log(x); });
        return (rho * diff).trace().real();
    }
    if (alpha == 1.0) return qdiv2_oracle(sigma, rho, -1.0);
    const double pr = 0.5 * (1.0 - alpha);
    const double ps = 0.5 * (1.0 + alpha);
    const Matrix a = apply2(sigma, [ps](double x) { return pow_floor(x, ps); });
    const Matrix b = apply2(rho, [pr](double x) { return pow_floor(x, pr); });
    const Complex t = (a * b).trace();
    return 4.0 / (1.0 - alpha * alpha) * (1.0 - t.real());
}

// ---------------- independent Kronecker oracle ----------------

inline Matrix kron_manual(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// ---------------- deterministic generators ----------------

inline Matrix rand_hermitian(qpred::Rng& rng, int dim, double scale = 1.0) {
    const Matrix g = rng.ginibre(dim);
    return scale * 0.5 * (g + g.adjoint());
}

// Entries drawn from a small dyadic set so products of any three entries are
// exact in double precision.
inline Matrix rand_dyadic(qpred::Rng& rng, int dim) {
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double re = static_cast<double>(static_cast<int>(rng.uniform() * 9) - 4) / 4.0;
            const double im = static_cast<double>(static_cast<int>(rng.uniform() * 9) - 4) / 4.0;
            m(i, j) = Complex(re, im);
        }
    return m;
}

// Pauli-x/y Bloch state used across the 2x2 fixtures.
inline Matrix bloch_xy(double radius, double theta) {
    Matrix m(2, 2);
    m(0, 0) = Complex(0.5, 0.0);
    m(1, 1) = Complex(0.5, 0.0);
    m(0, 1) = Complex(0.5 * radius * std::cos(theta), -0.5 * radius * std::sin(theta));
    m(1, 0) = std::conj(m(0, 1));
    return m;
}

inline Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace ts

#define CHECK_ABS(a, b, tol) CHECK_LE(std::abs((a) - (b)), (tol))
