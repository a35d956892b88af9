#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pinchlab {

using Complex = std::complex<double>;

/// Dense complex matrix. Carries states, operators, projectors and J.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape problems: non-square input, mismatched dimensions or arities.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Values outside an operation's domain (t <= 0, zero projector, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tolerance policy shared by every semidefinite-order check.
///
/// A matrix counts as PSD when its smallest eigenvalue is at least
/// -psd_slack * max(1, ||m||_op). Values within equality_band * scale of
/// zero are classified as tight (on the boundary of the cone).
struct Tolerance {
  double psd_slack = 1e-9;
  double equality_band = 1e-7;

  void validate() const;
};

struct LoewnerVerdict {
  bool holds = false;
  /// Smallest eigenvalue of the gap (rhs - lhs, or the matrix itself).
  double min_gap_eigenvalue = 0.0;
  /// max(1, ||gap||_op); the relative floor is taken against this.
  double scale = 1.0;
  /// psd_slack * scale.
  double tolerance_used = 0.0;
  /// |min_gap_eigenvalue| <= equality_band * scale.
  bool tight = false;
};

bool all_finite(const ComplexMatrix& m);
void require_square(const ComplexMatrix& m, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);

/// (m + m^dagger) / 2.
ComplexMatrix hermitize(const ComplexMatrix& m);

/// Frobenius norm of m - m^dagger.
double hermiticity_deviation(const ComplexMatrix& m);

/// Eigenvalues of a Hermitian matrix in ascending order. Only the lower
/// triangle is read.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Largest absolute eigenvalue of a Hermitian matrix.
double hermitian_operator_norm(const ComplexMatrix& m);

/// PSD test with the relative floor from `tol`. Throws DomainError when m
/// is further from Hermitian than equality_band * max(1, ||m||_F); that
/// signals a caller bug rather than rounding noise.
LoewnerVerdict is_psd(const ComplexMatrix& m, const Tolerance& tol = {});

/// a <= b in the Loewner order, i.e. is_psd(b - a).
LoewnerVerdict loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b,
                           const Tolerance& tol = {});

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// n x n matrix of ones.
ComplexMatrix all_ones(std::size_t n);

std::string describe_shape(const ComplexMatrix& m);

}  // namespace pinchlab
