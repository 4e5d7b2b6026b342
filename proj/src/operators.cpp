#include "qpred/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>

namespace qpred {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// V f(Lambda) V^dag with re-symmetrization of the rounding residue.
Matrix spectral_map(const Spectrum& s, const std::function<double(double)>& f) {
    RealVector mapped(s.eigenvalues.size());
    for (int i = 0; i < mapped.size(); ++i) mapped[i] = f(s.eigenvalues[i]);
    Matrix m = s.eigenvectors * mapped.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
    return 0.5 * (m + m.adjoint());
}

}  // namespace

// ------------------------------ value types -------------------------------

HermitianOperator::HermitianOperator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
        throw ValidationError("operator must be square and nonempty, got " +
                              std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermTol)
        throw NonHermitianError("matrix deviates from Hermitian symmetry by " + num(dev));
    m_ = 0.5 * (m_ + m_.adjoint());  // exact for Hermitian input, scrubs residue otherwise
}

DensityOperator::DensityOperator(Matrix m) : DensityOperator(HermitianOperator(std::move(m))) {}

DensityOperator::DensityOperator(HermitianOperator h) : op_(std::move(h)) {
    const double tr = op_.matrix().trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
        throw ValidationError("density operator trace is " + num(tr) + ", not 1");
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<Matrix>(op_.matrix(), Eigen::EigenvaluesOnly)
            .eigenvalues()
            .minCoeff();
    if (min_eig < -kPsdTol)
        throw NotPositiveError("density operator has eigenvalue " + num(min_eig));
}

DensityOperator::DensityOperator(Matrix m, Trusted) : op_(std::move(m)) {
    const double tr = op_.matrix().trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
        throw ValidationError("density operator trace is " + num(tr) + ", not 1");
}

DensityOperator DensityOperator::trusted(Matrix m) {
    return DensityOperator(std::move(m), Trusted{});
}

Povm::Povm(std::vector<HermitianOperator> elements, std::vector<std::string> outcomes)
    : elements_(std::move(elements)), outcomes_(std::move(outcomes)) {}

// ------------------------------ operations --------------------------------

Spectrum eigh(const HermitianOperator& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
    if (solver.info() != Eigen::Success)
        throw NumericError("eigendecomposition failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianOperator matrix_power(const HermitianOperator& a, double p) {
    const Spectrum s = eigh(a);
    const double min_eig = s.eigenvalues.minCoeff();
    if (min_eig < -kPsdTol)
        throw NotPositiveError("matrix power of operator with eigenvalue " + num(min_eig));
    return HermitianOperator(spectral_map(s, [p](double x) {
        if (x <= kEigFloor) {
            if (p < 0.0)
                throw SingularPowerError("negative power " + num(p) +
                                         " of a singular operator");
            return p > 0.0 ? 0.0 : 1.0;
        }
        return std::pow(x, p);
    }));
}

HermitianOperator matrix_log(const HermitianOperator& a) {
    const Spectrum s = eigh(a);
    if (s.eigenvalues.minCoeff() <= kEigFloor)
        throw SingularLogError("logarithm of an operator with eigenvalue " +
                               num(s.eigenvalues.minCoeff()));
    return HermitianOperator(spectral_map(s, [](double x) { return std::log(x); }));
}

HermitianOperator matrix_exp(const HermitianOperator& a) {
    return HermitianOperator(spectral_map(eigh(a), [](double x) { return std::exp(x); }));
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(tensor_product(a.matrix(), b.matrix()));
}

DensityOperator tensor_power(const DensityOperator& rho, int n, int max_dim) {
    if (n < 1) throw ValidationError("tensor power needs n >= 1, got " + std::to_string(n));
    long long dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= rho.dim();
        if (dim > max_dim)
            throw DimensionOverflowError("tensor power dimension " + std::to_string(rho.dim()) +
                                         "^" + std::to_string(n) + " exceeds the limit " +
                                         std::to_string(max_dim));
    }
    Matrix out = rho.matrix();
    for (int i = 1; i < n; ++i) out = tensor_product(out, rho.matrix());
    return DensityOperator::trusted(std::move(out));
}

Povm validate_povm(std::vector<HermitianOperator> elements, std::vector<std::string> outcomes) {
    if (elements.empty()) throw ValidationError("a measurement needs at least one element");
    const int dim = elements.front().dim();
    for (const HermitianOperator& e : elements)
        if (e.dim() != dim)
            throw DimensionMismatchError("measurement elements mix dimensions " +
                                         std::to_string(dim) + " and " +
                                         std::to_string(e.dim()));
    if (!outcomes.empty() && outcomes.size() != elements.size())
        throw ValidationError(std::to_string(outcomes.size()) + " labels for " +
                              std::to_string(elements.size()) + " measurement elements");

    Matrix sum = Matrix::Zero(dim, dim);
    for (const HermitianOperator& e : elements) {
        const double min_eig =
            Eigen::SelfAdjointEigenSolver<Matrix>(e.matrix(), Eigen::EigenvaluesOnly)
                .eigenvalues()
                .minCoeff();
        if (min_eig < -kPsdTol)
            throw NotPositiveError("measurement element has eigenvalue " + num(min_eig));
        sum += e.matrix();
    }
    const double dev = (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (dev > kPsdTol)
        throw NotCompleteError("measurement elements miss the identity by " + num(dev));

    if (outcomes.empty())
        for (size_t i = 0; i < elements.size(); ++i) outcomes.push_back(std::to_string(i));
    return Povm(std::move(elements), std::move(outcomes));
}

// --------------------------------- helpers --------------------------------

double trace_norm(const Matrix& a) {
    return Eigen::JacobiSVD<Matrix>(a).singularValues().sum();
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatchError("trace distance between dimensions " +
                                     std::to_string(a.dim()) + " and " +
                                     std::to_string(b.dim()));
    return trace_norm(a.matrix() - b.matrix());
}

DensityOperator convex_mix(const DensityOperator& a, double w, const DensityOperator& b) {
    if (w < 0.0 || w > 1.0)
        throw ValidationError("mixing weight " + num(w) + " outside [0, 1]");
    if (a.dim() != b.dim())
        throw DimensionMismatchError("mixing states of dimensions " + std::to_string(a.dim()) +
                                     " and " + std::to_string(b.dim()));
    return DensityOperator::trusted((1.0 - w) * a.matrix() + w * b.matrix());
}

DensityOperator maximally_mixed(int dim) {
    if (dim < 1) throw ValidationError("dimension must be positive, got " + std::to_string(dim));
    return DensityOperator::trusted(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace qpred
