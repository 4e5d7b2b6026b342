#pragma once
// Shared aliases, numeric policy constants and the error hierarchy used
// throughout the library.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qpred {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// ---------------------------- numeric policy ------------------------------

// Max entrywise deviation |A - A^dag| tolerated when accepting a matrix as
// Hermitian.
inline constexpr double kHermTol = 1e-12;
// Eigenvalues >= -kPsdTol count as nonnegative when accepting a matrix as
// positive semidefinite (density operators, POVM elements).
inline constexpr double kPsdTol = 1e-10;
// Support cutoff: eigenvalues (or probabilities) at or below this are treated
// as zero by fractional powers and logarithms.  Zero eigenvalues are mapped
// to zero under positive powers; a negative power or a logarithm of such a
// matrix is a hard error, never a clamp.
inline constexpr double kEigFloor = 1e-12;
// Tolerated deviation of a density-operator trace from one.
inline constexpr double kTraceTol = 1e-10;
// Mixture weights at or below this are dropped from weighted operator sums.
inline constexpr double kWeightFloor = 1e-15;
// Outcome probabilities at or below this are treated as impossible.
inline constexpr double kMarginalFloor = 1e-300;
// Largest composite dimension tensor powers may produce by default.
inline constexpr int kDefaultMaxDim = 4096;

// ------------------------------- errors -----------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// operator construction / spectral calculus
struct NonHermitianError : Error { using Error::Error; };
struct NotPositiveError : Error { using Error::Error; };
struct NotCompleteError : Error { using Error::Error; };
struct SingularPowerError : Error { using Error::Error; };
struct SingularLogError : Error { using Error::Error; };
struct DimensionOverflowError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };

// divergences and probability data
struct SupportMismatchError : Error { using Error::Error; };
struct NegativeProbabilityError : Error { using Error::Error; };

// posterior / predictive construction
struct ZeroMarginalError : Error { using Error::Error; };
struct SingularStateError : Error { using Error::Error; };
struct NonPositiveNormalizerError : Error { using Error::Error; };

// verification and front end
struct VerificationFailure : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

// internal numeric sanity checks (imaginary residues, out-of-range results)
struct NumericError : Error { using Error::Error; };

}  // namespace qpred
