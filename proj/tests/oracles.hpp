#pragma once

// Test-only reference computations. Nothing here calls into the library's
// eigensolver or membership code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using Cx = std::complex<double>;
using CxMat = Eigen::MatrixXcd;

/// Eigenvalues (ascending) of a real symmetric matrix by cyclic Jacobi.
inline std::vector<double> jacobi_symmetric(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Eigenvalues (ascending) of (m + m^dagger)/2 through the real embedding
/// [[X, -Y], [Y, X]], whose spectrum is that of X + iY with each value doubled.
inline std::vector<double> hermitian_eigenvalues(const CxMat& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::vector<double>> a(2 * n, std::vector<double>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Cx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a[i][j] = h.real();
      a[i + n][j + n] = h.real();
      a[i][j + n] = -h.imag();
      a[i + n][j] = h.imag();
    }
  }
  const std::vector<double> doubled = jacobi_symmetric(std::move(a));
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return ev;
}

inline double min_eigenvalue(const CxMat& m) { return hermitian_eigenvalues(m).front(); }

inline double operator_norm_hermitian(const CxMat& m) {
  const auto ev = hermitian_eigenvalues(m);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

/// Sum of singular values via the eigenvalues of m^dagger m.
/// Trace norm of a Hermitian matrix: sum of |eigenvalues|.
inline double hermitian_trace_norm(const CxMat& m) {
  double s = 0.0;
  for (double v : hermitian_eigenvalues(m)) s += std::abs(v);
  return s;
}

inline double trace_norm(const CxMat& m) {
  const CxMat g = m.adjoint() * m;
  double s = 0.0;
  for (double v : hermitian_eigenvalues(g)) s += std::sqrt(std::max(0.0, v));
  return s;
}

/// diag(alpha) - J is PSD iff every alpha_i > 0 and sum 1/alpha_i <= 1.
/// Returns 1 - sum 1/alpha_i, or -inf if some alpha_i <= 0.
inline double harmonic_slack(const std::vector<double>& alpha) {
  double s = 0.0;
  for (double a : alpha) {
    if (!(a > 0.0)) return -INFINITY;
    s += 1.0 / a;
  }
  return 1.0 - s;
}

/// The alpha_n that puts (prefix, alpha_n) on the boundary of A_n.
inline double harmonic_completion(const std::vector<double>& prefix) {
  double s = 0.0;
  for (double a : prefix) s += 1.0 / a;
  return 1.0 / (1.0 - s);
}

/// diag(v) - J as a complex matrix, built entrywise.
inline CxMat diag_minus_ones(const std::vector<double>& v) {
  const auto n = static_cast<Eigen::Index>(v.size());
  CxMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = (i == j ? v[static_cast<std::size_t>(i)] : 0.0) - 1.0;
  return m;
}

/// Naive triple-loop product, independent of Eigen's kernels.
inline CxMat naive_product(const CxMat& a, const CxMat& b) {
  CxMat c = CxMat::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

inline CxMat naive_adjoint(const CxMat& a) {
  CxMat c(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

}  // namespace oracle
