#include "pinchlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pinchlab {

void Tolerance::validate() const {
  if (!(psd_slack >= 0.0) || !std::isfinite(psd_slack)) {
    throw DomainError("psd_slack must be a finite non-negative number");
  }
  if (!(equality_band >= 0.0) || !std::isfinite(equality_band)) {
    throw DomainError("equality_band must be a finite non-negative number");
  }
}

std::string describe_shape(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + " must be a non-empty square matrix, got " +
                         describe_shape(m));
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) {
    throw DomainError(std::string(what) + " has non-finite entries");
  }
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  require_square(m, "hermitize: input");
  const Eigen::Index n = m.rows();
  ComplexMatrix out(n, n);
  // Entry (j,i) is formed as the exact conjugate of entry (i,j).
  for (Eigen::Index j = 0; j < n; ++j) {
    out(j, j) = Complex(m(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return out;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  require_square(m, "hermiticity_deviation: input");
  return (m - m.adjoint()).norm();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  require_square(m, "hermitian_eigenvalues: input");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double hermitian_operator_norm(const ComplexMatrix& m) {
  const RealVector ev = hermitian_eigenvalues(m);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

LoewnerVerdict is_psd(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "is_psd: input");
  require_finite(m, "is_psd: input");
  tol.validate();

  const double frob = m.norm();
  const double dev = hermiticity_deviation(m);
  if (dev > tol.equality_band * std::max(1.0, frob)) {
    std::ostringstream os;
    os << "is_psd: input is not Hermitian (deviation " << dev << ")";
    throw DomainError(os.str());
  }

  const RealVector ev = hermitian_eigenvalues(hermitize(m));
  const double lmin = ev(0);
  const double opnorm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));

  LoewnerVerdict v;
  v.min_gap_eigenvalue = lmin;
  v.scale = std::max(1.0, opnorm);
  v.tolerance_used = tol.psd_slack * v.scale;
  v.holds = lmin >= -v.tolerance_used;
  v.tight = std::abs(lmin) <= tol.equality_band * v.scale;
  return v;
}

LoewnerVerdict loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
  require_square(a, "loewner_leq: lhs");
  require_square(b, "loewner_leq: rhs");
  if (a.rows() != b.rows()) {
    throw DimensionError("loewner_leq: dimension mismatch " + describe_shape(a) + " vs " +
                         describe_shape(b));
  }
  return is_psd(b - a, tol);
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm: input");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix all_ones(std::size_t n) {
  if (n == 0) {
    throw DomainError("all_ones: n must be positive");
  }
  const auto k = static_cast<Eigen::Index>(n);
  return ComplexMatrix::Ones(k, k);
}

}  // namespace pinchlab
