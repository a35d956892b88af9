#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pinchlab/matrix.hpp"

namespace pinchlab {

/// Real weight vector (alpha or beta) of arity n >= 2 with finite entries.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> values);

  /// n copies of `value`.
  static WeightVector constant(std::size_t n, double value);

  std::size_t arity() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  /// diag(values) as a complex matrix.
  ComplexMatrix diagonal() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> values_;
};

/// Outcome of a membership test.
///
/// For the direct tests the certificate is the smallest eigenvalue of
/// diag(alpha) - J (or J - diag(beta)). The recursive and closed-form tests
/// report the scalar slack of the inequality that decided the outcome.
/// `indeterminate` is only ever set by the recursive test, when a prefix
/// sits inside the equality band and the Schur step would invert a
/// near-singular block.
struct MembershipVerdict {
  bool member = false;
  bool on_boundary = false;
  double certificate = 0.0;
  bool indeterminate = false;
};

enum class SignStructure { AllNonpositive, OnePositive, Violating };

std::string_view to_string(SignStructure s);

MembershipVerdict in_A_direct(const WeightVector& alpha, const Tolerance& tol = {});

/// Schur-complement recursion: (alpha_1..alpha_{n-1}) strictly interior to
/// A_{n-1} and alpha_n >= 1 + 1^T (diag(alpha') - J)^{-1} 1; the base case
/// n = 2 is alpha_1 > 1 and (alpha_1 - 1)(alpha_2 - 1) >= 1.
MembershipVerdict in_A_recursive(const WeightVector& alpha, const Tolerance& tol = {});

/// Recursive test with fallback to the direct test on indeterminate input.
MembershipVerdict in_A(const WeightVector& alpha, const Tolerance& tol = {});

/// The three displayed n = 3 inequalities evaluated literally:
/// alpha_1 > 1, alpha_2 > 1 + 1/(alpha_1 - 1) and
/// [(alpha_1-1)(alpha_2-1) - 1][(alpha_1-1)(alpha_3-1) - 1] >= alpha_1^2.
MembershipVerdict in_A3_closed_form(const WeightVector& alpha, const Tolerance& tol = {});

MembershipVerdict in_B_direct(const WeightVector& beta, const Tolerance& tol = {});

SignStructure b_sign_structure(const WeightVector& beta);

/// 1 + 1^T (diag(prefix) - J)^{-1} 1, the smallest last weight that keeps
/// (prefix, alpha_n) in A_n. Throws DomainError if the prefix is not
/// strictly interior to A_{n-1} (beyond the equality band).
double a_boundary_completion(std::span<const double> prefix, const Tolerance& tol = {});

/// Boundary point of A_n. With a prefix of length n - 1 the prefix is
/// completed; without one a prefix is drawn by rejection from the box
/// [1, 2n]^{n-1} using `seed`.
WeightVector sample_A_boundary(std::size_t n, std::optional<std::vector<double>> prefix,
                               std::uint64_t seed, const Tolerance& tol = {});

/// (1 - t, 1 - 1/t), a boundary point of B_2.
WeightVector sample_B2_boundary(double t);

/// (1 + t, 1 + 1/t), a boundary point of A_2.
WeightVector sample_A2_boundary(double t);

}  // namespace pinchlab
