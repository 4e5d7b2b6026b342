#pragma once
// Hermitian-operator value types and the spectral calculus built on them:
// eigendecomposition, fractional matrix powers, matrix log/exp, Kronecker
// products, tensor powers and POVM validation.

#include <string>
#include <vector>

#include "qpred/common.hpp"

namespace qpred {

// ------------------------------ value types -------------------------------

// Square complex matrix guaranteed Hermitian within kHermTol at construction.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

// Hermitian, positive semidefinite (eigenvalues >= -kPsdTol) and unit trace
// within kTraceTol.
class DensityOperator {
public:
    explicit DensityOperator(Matrix m);
    explicit DensityOperator(HermitianOperator h);

    // Fast path for results that are positive semidefinite by construction
    // (tensor powers, convex mixtures of validated states).  Hermiticity and
    // trace are still checked; the spectral check is skipped.
    static DensityOperator trusted(Matrix m);

    int dim() const { return op_.dim(); }
    const Matrix& matrix() const { return op_.matrix(); }
    const HermitianOperator& hermitian() const { return op_; }

private:
    struct Trusted {};
    DensityOperator(Matrix m, Trusted);

    HermitianOperator op_;
};

// Eigensystem of a Hermitian operator; eigenvalues ascending, eigenvectors
// column k belonging to eigenvalue k.
struct Spectrum {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

// Positive-operator-valued measure: elements PSD, summing to the identity
// within kPsdTol entrywise.
class Povm {
public:
    Povm(std::vector<HermitianOperator> elements, std::vector<std::string> outcomes = {});

    int dim() const { return elements_.front().dim(); }
    int size() const { return static_cast<int>(elements_.size()); }
    const std::vector<HermitianOperator>& elements() const { return elements_; }
    const std::vector<std::string>& outcomes() const { return outcomes_; }

private:
    std::vector<HermitianOperator> elements_;
    std::vector<std::string> outcomes_;
};

// ------------------------------ operations --------------------------------

// Eigendecomposition; ascending eigenvalues.
Spectrum eigh(const HermitianOperator& a);

// A^p for PSD A via the spectral decomposition.  Eigenvalues at or below
// kEigFloor map to zero when p > 0 and are a SingularPowerError when p < 0.
// The result is re-symmetrized before return.
HermitianOperator matrix_power(const HermitianOperator& a, double p);

// log A for positive definite A (all eigenvalues above kEigFloor).
HermitianOperator matrix_log(const HermitianOperator& a);

// exp A for Hermitian A.
HermitianOperator matrix_exp(const HermitianOperator& a);

// Kronecker product with the row-major composite index convention
// (i_A * dim_B + i_B).
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);
Matrix tensor_product(const Matrix& a, const Matrix& b);

// rho^{tensor n}, n >= 1; DimensionOverflowError when dim^n exceeds max_dim.
DensityOperator tensor_power(const DensityOperator& rho, int n, int max_dim = kDefaultMaxDim);

// Checks positivity and completeness of the elements; labels default to the
// decimal outcome index.
Povm validate_povm(std::vector<HermitianOperator> elements, std::vector<std::string> outcomes = {});

// --------------------------------- helpers --------------------------------

// Sum of singular values.
double trace_norm(const Matrix& a);

// trace_norm(a - b); the distance used for estimator agreement checks.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

// (1 - w) a + w b as a density operator.
DensityOperator convex_mix(const DensityOperator& a, double w, const DensityOperator& b);

// Maximally mixed state I/d.
DensityOperator maximally_mixed(int dim);

}  // namespace qpred
