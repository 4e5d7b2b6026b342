#include "qpred/divergence.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qpred {

namespace {

// Rounding residue window: results in [-kResidue, 0) are clamped to zero.
constexpr double kResidue = 1e-9;

double clamp_residue(double d) { return (d < 0.0 && d >= -kResidue) ? 0.0 : d; }

// f(A) from a precomputed spectrum, flooring eigenvalues at kEigFloor to an
// exact zero; callers guarantee f is never asked for a negative power or a
// log of a floored eigenvalue.
Matrix mapped(const Spectrum& s, double p) {
    RealVector m(s.eigenvalues.size());
    for (int i = 0; i < m.size(); ++i) {
        const double x = s.eigenvalues[i];
        m[i] = x <= kEigFloor ? 0.0 : std::pow(x, p);
    }
    Matrix out = s.eigenvectors * m.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

bool full_rank(const Spectrum& s) { return s.eigenvalues.minCoeff() > kEigFloor; }

// Tr rho (log rho - log sigma) with explicit support accounting: the support
// of rho must lie inside the support of sigma.
double relative_entropy(const Spectrum& rho, const Matrix& rho_m, const Spectrum& sigma) {
    double entropy = 0.0;  // Tr rho log rho
    for (int i = 0; i < rho.eigenvalues.size(); ++i) {
        const double x = rho.eigenvalues[i];
        if (x > kEigFloor) entropy += x * std::log(x);
    }
    double cross = 0.0;  // Tr rho log sigma
    for (int j = 0; j < sigma.eigenvalues.size(); ++j) {
        const double mu = sigma.eigenvalues[j];
        const double w =
            sigma.eigenvectors.col(j).dot(rho_m * sigma.eigenvectors.col(j)).real();
        if (mu <= kEigFloor) {
            if (w > kEigFloor)
                throw SupportMismatchError(
                    "relative entropy needs the first support inside the second; "
                    "weight " + std::to_string(w) + " sits on a null direction");
            continue;
        }
        cross += w * std::log(mu);
    }
    return entropy - cross;
}

}  // namespace

Alpha::Alpha(double v) : v_(v), plus_(v == 1.0), minus_(v == -1.0) {
    if (!std::isfinite(v)) throw ValidationError("order parameter must be finite");
}

ProbabilityVector::ProbabilityVector(RealVector entries) : v_(std::move(entries)) {
    if (v_.size() == 0) throw ValidationError("probability vector must be nonempty");
    for (int i = 0; i < v_.size(); ++i) {
        if (v_[i] < -1e-12)
            throw NegativeProbabilityError("probability entry " + std::to_string(v_[i]));
        if (v_[i] < 0.0) v_[i] = 0.0;
    }
    const double sum = v_.sum();
    if (std::abs(sum - 1.0) > kTraceTol)
        throw ValidationError("probabilities sum to " + std::to_string(sum) + ", not 1");
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries)
    : ProbabilityVector(Eigen::Map<RealVector>(entries.data(), entries.size())) {}

double quantum_alpha_divergence(const DensityOperator& rho, const DensityOperator& sigma,
                                Alpha alpha) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatchError("divergence between dimensions " +
                                     std::to_string(rho.dim()) + " and " +
                                     std::to_string(sigma.dim()));

    const Spectrum srho = eigh(rho.hermitian());
    const Spectrum ssigma = eigh(sigma.hermitian());

    if (alpha.is_minus_one())
        return clamp_residue(relative_entropy(srho, rho.matrix(), ssigma));
    if (alpha.is_plus_one())
        return clamp_residue(relative_entropy(ssigma, sigma.matrix(), srho));

    const double a = alpha.value();
    if (a > 1.0 && !full_rank(srho))
        throw SupportMismatchError("order " + std::to_string(a) +
                                   " needs a full-rank first argument");
    if (a < -1.0 && !full_rank(ssigma))
        throw SupportMismatchError("order " + std::to_string(a) +
                                   " needs a full-rank second argument");

    const Matrix s_pow = mapped(ssigma, 0.5 * (1.0 + a));
    const Matrix r_pow = mapped(srho, 0.5 * (1.0 - a));
    const double overlap = (s_pow * r_pow).trace().real();
    return clamp_residue(4.0 / (1.0 - a * a) * (1.0 - overlap));
}

double classical_alpha_divergence(const ProbabilityVector& p, const ProbabilityVector& q,
                                  Alpha alpha) {
    if (p.size() != q.size())
        throw DimensionMismatchError("divergence between lengths " + std::to_string(p.size()) +
                                     " and " + std::to_string(q.size()));

    const auto kl = [](const ProbabilityVector& x, const ProbabilityVector& y) {
        double acc = 0.0;
        for (int i = 0; i < x.size(); ++i) {
            if (x[i] <= kEigFloor) continue;
            if (y[i] <= kEigFloor)
                throw SupportMismatchError("relative entropy needs the first support inside "
                                           "the second; entry " + std::to_string(i) +
                                           " is outside");
            acc += x[i] * (std::log(x[i]) - std::log(y[i]));
        }
        return acc;
    };

    if (alpha.is_minus_one()) return clamp_residue(kl(p, q));
    if (alpha.is_plus_one()) return clamp_residue(kl(q, p));

    const double a = alpha.value();
    const auto supported = [](const ProbabilityVector& x) {
        for (int i = 0; i < x.size(); ++i)
            if (x[i] <= kEigFloor) return false;
        return true;
    };
    if (a > 1.0 && !supported(p))
        throw SupportMismatchError("order " + std::to_string(a) +
                                   " needs a fully supported first argument");
    if (a < -1.0 && !supported(q))
        throw SupportMismatchError("order " + std::to_string(a) +
                                   " needs a fully supported second argument");

    double overlap = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        const double pi = p[i] <= kEigFloor ? 0.0 : p[i];
        const double qi = q[i] <= kEigFloor ? 0.0 : q[i];
        if (pi == 0.0 && 1.0 - a > 0.0) continue;
        if (qi == 0.0 && 1.0 + a > 0.0) continue;
        overlap += std::pow(pi, 0.5 * (1.0 - a)) * std::pow(qi, 0.5 * (1.0 + a));
    }
    return clamp_residue(4.0 / (1.0 - a * a) * (1.0 - overlap));
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatchError("fidelity between dimensions " +
                                     std::to_string(rho.dim()) + " and " +
                                     std::to_string(sigma.dim()));
    const Matrix root_rho = mapped(eigh(rho.hermitian()), 0.5);
    const Matrix root_sigma = mapped(eigh(sigma.hermitian()), 0.5);
    const double f = trace_norm(root_rho * root_sigma);
    return std::min(1.0, std::max(0.0, f));
}

}  // namespace qpred
