#pragma once
// Alpha-divergences between density operators and between probability
// vectors, plus the trace-norm fidelity.  The order parameter alpha selects
// the family member; the endpoint branches alpha = -1 and alpha = +1 are the
// relative-entropy limits and are selected by exact floating-point equality.

#include "qpred/common.hpp"
#include "qpred/operators.hpp"

namespace qpred {

// Order parameter with exact endpoint detection.  Values outside [-3, 3]
// are computed but flagged non-interpretable (the divergence stops being
// jointly operator convex there); front ends surface that as a diagnostic.
class Alpha {
public:
    Alpha(double v);  // implicit by design: divergences accept plain doubles

    double value() const { return v_; }
    bool is_plus_one() const { return plus_; }
    bool is_minus_one() const { return minus_; }
    bool interpretable() const { return v_ >= -3.0 && v_ <= 3.0; }

private:
    double v_;
    bool plus_;
    bool minus_;
};

// Nonnegative entries summing to one within kTraceTol.  Entries in
// [-1e-12, 0) are clamped to zero; anything lower is rejected.
class ProbabilityVector {
public:
    explicit ProbabilityVector(RealVector entries);
    explicit ProbabilityVector(std::vector<double> entries);

    int size() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_[i]; }
    const RealVector& entries() const { return v_; }

private:
    RealVector v_;
};

// D^(alpha)(rho || sigma):
//   alpha != +-1 :  4/(1-alpha^2) * (1 - Tr sigma^((1+alpha)/2) rho^((1-alpha)/2))
//   alpha == -1  :  Tr rho (log rho - log sigma)
//   alpha == +1  :  Tr sigma (log sigma - log rho)
// Support preconditions: rho full rank when alpha > 1, sigma full rank when
// alpha < -1; for the endpoint branches the support of the first (resp.
// second) argument must lie inside the support of the other.  Violations
// raise SupportMismatchError.  Tiny negative results in [-1e-9, 0) are
// rounding residue and are clamped to zero.
double quantum_alpha_divergence(const DensityOperator& rho, const DensityOperator& sigma, Alpha alpha);

// Same family for probability vectors:
//   alpha != +-1 :  4/(1-alpha^2) * (1 - sum_i p_i^((1-alpha)/2) q_i^((1+alpha)/2))
//   alpha == -1  :  sum_i p_i (log p_i - log q_i)
//   alpha == +1  :  sum_i q_i (log q_i - log p_i)
// Entries at or below kEigFloor are outside the support; the support rules
// mirror the quantum case entrywise.
double classical_alpha_divergence(const ProbabilityVector& p, const ProbabilityVector& q, Alpha alpha);

// F(rho, sigma) = Tr |sqrt(rho) sqrt(sigma)| (sum of singular values),
// clamped to [0, 1] on return.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

}  // namespace qpred
