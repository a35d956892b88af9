#include "pinchlab/spectrahedron.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace pinchlab {

namespace {

// Prefixes drawn by the boundary sampler keep this much distance from the
// boundary of A_{n-1}, so the completed last weight stays moderate.
constexpr double kSamplerInteriorMargin = 1e-3;

// Upper bound on ||diag(alpha) - J||_op used as the relative scale of the
// scalar slacks in the recursive and closed-form tests.
double weight_scale(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - 1.0));
  return std::max(1.0, m + static_cast<double>(v.size()));
}

Eigen::MatrixXd shifted_block(std::span<const double> prefix) {
  const auto k = static_cast<Eigen::Index>(prefix.size());
  Eigen::MatrixXd d = -Eigen::MatrixXd::Ones(k, k);
  for (Eigen::Index i = 0; i < k; ++i) d(i, i) += prefix[static_cast<std::size_t>(i)];
  return d;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

MembershipVerdict decided(double slack, const Tolerance& tol, double scale) {
  MembershipVerdict v;
  v.certificate = slack;
  v.member = slack >= -tol.psd_slack * scale;
  v.on_boundary = v.member && std::abs(slack) <= tol.equality_band;
  return v;
}

MembershipVerdict indeterminate(double slack) {
  MembershipVerdict v;
  v.certificate = slack;
  v.indeterminate = true;
  return v;
}

MembershipVerdict from_loewner(const LoewnerVerdict& lv, const Tolerance& tol) {
  MembershipVerdict v;
  v.member = lv.holds;
  v.certificate = lv.min_gap_eigenvalue;
  v.on_boundary = lv.holds && std::abs(lv.min_gap_eigenvalue) <= tol.equality_band;
  return v;
}

MembershipVerdict recursive_prefix(std::span<const double> alpha, const Tolerance& tol,
                                   double scale) {
  const std::size_t n = alpha.size();
  if (n == 2) {
    const double a1 = alpha[0] - 1.0;
    if (a1 < -tol.psd_slack * scale) {
      MembershipVerdict v;
      v.certificate = a1;
      return v;
    }
    if (a1 <= tol.equality_band) return indeterminate(a1);
    return decided(a1 * (alpha[1] - 1.0) - 1.0, tol, scale);
  }

  const auto prefix = alpha.first(n - 1);
  const MembershipVerdict inner = recursive_prefix(prefix, tol, scale);
  if (inner.indeterminate || !inner.member) return inner;
  if (inner.certificate <= tol.equality_band) return indeterminate(inner.certificate);

  const Eigen::MatrixXd d = shifted_block(prefix);
  Eigen::LLT<Eigen::MatrixXd> llt(d);
  if (llt.info() != Eigen::Success) return indeterminate(inner.certificate);
  const Eigen::VectorXd x = llt.solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n - 1)));
  return decided(alpha[n - 1] - 1.0 - x.sum(), tol, scale);
}

}  // namespace

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw DimensionError("weight vector needs arity >= 2, got " + std::to_string(values_.size()));
  }
  for (double x : values_) {
    if (!std::isfinite(x)) throw DomainError("weight vector has non-finite entries");
  }
}

WeightVector WeightVector::constant(std::size_t n, double value) {
  return WeightVector(std::vector<double>(n, value));
}

ComplexMatrix WeightVector::diagonal() const {
  const auto n = static_cast<Eigen::Index>(values_.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = values_[static_cast<std::size_t>(i)];
  return d;
}

std::string_view to_string(SignStructure s) {
  switch (s) {
    case SignStructure::AllNonpositive: return "AllNonpositive";
    case SignStructure::OnePositive: return "OnePositive";
    case SignStructure::Violating: return "Violating";
  }
  return "Violating";
}

MembershipVerdict in_A_direct(const WeightVector& alpha, const Tolerance& tol) {
  const ComplexMatrix gap = alpha.diagonal() - all_ones(alpha.arity());
  return from_loewner(is_psd(gap, tol), tol);
}

MembershipVerdict in_A_recursive(const WeightVector& alpha, const Tolerance& tol) {
  tol.validate();
  return recursive_prefix(alpha.values(), tol, weight_scale(alpha.values()));
}

MembershipVerdict in_A(const WeightVector& alpha, const Tolerance& tol) {
  const MembershipVerdict v = in_A_recursive(alpha, tol);
  return v.indeterminate ? in_A_direct(alpha, tol) : v;
}

MembershipVerdict in_A3_closed_form(const WeightVector& alpha, const Tolerance& tol) {
  if (alpha.arity() != 3) {
    throw DimensionError("in_A3_closed_form needs arity 3, got " + std::to_string(alpha.arity()));
  }
  tol.validate();
  const double a1 = alpha[0] - 1.0;
  if (!(a1 > 0.0)) {
    MembershipVerdict v;
    v.certificate = a1;
    return v;
  }
  const double second = alpha[1] - (1.0 + 1.0 / a1);
  if (!(second > 0.0)) {
    MembershipVerdict v;
    v.certificate = second;
    return v;
  }
  const double third =
      (a1 * (alpha[1] - 1.0) - 1.0) * (a1 * (alpha[2] - 1.0) - 1.0) - alpha[0] * alpha[0];
  return decided(third, tol, weight_scale(alpha.values()));
}

MembershipVerdict in_B_direct(const WeightVector& beta, const Tolerance& tol) {
  const ComplexMatrix gap = all_ones(beta.arity()) - beta.diagonal();
  return from_loewner(is_psd(gap, tol), tol);
}

SignStructure b_sign_structure(const WeightVector& beta) {
  std::size_t positive = 0;
  std::size_t zero = 0;
  for (double b : beta.values()) {
    if (b > 0.0) {
      ++positive;
    } else if (b == 0.0) {
      ++zero;
    }
  }
  if (positive == 0) return SignStructure::AllNonpositive;
  if (positive == 1 && zero == 0) return SignStructure::OnePositive;
  return SignStructure::Violating;
}

double a_boundary_completion(std::span<const double> prefix, const Tolerance& tol) {
  if (prefix.empty()) throw DimensionError("boundary completion needs a non-empty prefix");
  for (double x : prefix) {
    if (!std::isfinite(x)) throw DomainError("boundary completion: non-finite prefix");
  }
  const Eigen::MatrixXd d = shifted_block(prefix);
  const double lmin = min_eigenvalue(d);
  if (!(lmin > tol.equality_band)) {
    std::ostringstream os;
    os << "prefix is not strictly interior to A_" << prefix.size()
       << " (smallest eigenvalue " << lmin << ")";
    throw DomainError(os.str());
  }
  const Eigen::VectorXd x =
      d.llt().solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(prefix.size())));
  return 1.0 + x.sum();
}

WeightVector sample_A_boundary(std::size_t n, std::optional<std::vector<double>> prefix,
                               std::uint64_t seed, const Tolerance& tol) {
  if (n < 2) throw DimensionError("sample_A_boundary needs n >= 2");
  std::vector<double> head;
  if (prefix) {
    if (prefix->size() != n - 1) {
      throw DimensionError("sample_A_boundary: prefix must have length n - 1 = " +
                           std::to_string(n - 1));
    }
    head = std::move(*prefix);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(1.0, 2.0 * static_cast<double>(n));
    head.resize(n - 1);
    do {
      for (double& x : head) x = box(rng);
    } while (!(min_eigenvalue(shifted_block(head)) > kSamplerInteriorMargin));
  }
  const double last = a_boundary_completion(head, tol);
  head.push_back(last);
  return WeightVector(std::move(head));
}

WeightVector sample_B2_boundary(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("sample_B2_boundary needs t > 0");
  return WeightVector({1.0 - t, 1.0 - 1.0 / t});
}

WeightVector sample_A2_boundary(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("sample_A2_boundary needs t > 0");
  return WeightVector({1.0 + t, 1.0 + 1.0 / t});
}

}  // namespace pinchlab
