#include "pinchlab/gentle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pinchlab {

namespace {

void check_binary_args(const ComplexMatrix& rho, const ComplexMatrix& m1, const ComplexMatrix& m2,
                       double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("binary bound needs t > 0");
  }
  require_square(rho, "binary bound: rho");
  if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) {
    throw DimensionError("binary bound: M1 is " + describe_shape(m1) + " but M2 is " +
                         describe_shape(m2));
  }
  if (m1.cols() != rho.rows()) {
    throw DimensionError("binary bound: operators are " + describe_shape(m1) + " but rho is " +
                         describe_shape(rho));
  }
}

}  // namespace

GentleInstance::GentleInstance(ComplexMatrix rho, ComplexMatrix projector, double epsilon,
                               const Tolerance& tol)
    : rho_(std::move(rho)), projector_(std::move(projector)), epsilon_(epsilon) {
  tol.validate();
  require_square(rho_, "gentle instance: rho");
  require_square(projector_, "gentle instance: P");
  if (rho_.rows() != projector_.rows()) {
    throw DimensionError("gentle instance: rho is " + describe_shape(rho_) + " but P is " +
                         describe_shape(projector_));
  }
  require_finite(projector_, "gentle instance: P");
  if (!std::isfinite(epsilon_) || epsilon_ < 0.0 || epsilon_ > 1.0) {
    throw DomainError("gentle instance: epsilon must lie in [0, 1]");
  }
  if (!is_psd(rho_, tol).holds) {
    throw DomainError("gentle instance: rho is not positive semidefinite");
  }
  const double tr = rho_.trace().real();
  if (tr > 1.0 + tol.equality_band) {
    throw DomainError("gentle instance: trace(rho) exceeds 1");
  }
  const double pscale = std::max(1.0, projector_.norm());
  if ((projector_ - projector_.adjoint()).norm() > tol.equality_band * pscale ||
      (projector_ * projector_ - projector_).norm() > tol.equality_band * pscale) {
    throw DomainError("gentle instance: P is not an orthogonal projector");
  }
  const double overlap = (rho_ * projector_).trace().real();
  if (1.0 - overlap > epsilon_ + tol.equality_band) {
    std::ostringstream os;
    os.precision(17);
    os << "gentle instance: Tr(rho P) = " << overlap << " is below 1 - epsilon";
    throw DomainError(os.str());
  }
}

GentleInstance GentleInstance::tight(ComplexMatrix rho, ComplexMatrix projector,
                                     const Tolerance& tol) {
  require_square(rho, "gentle instance: rho");
  if (rho.rows() != projector.rows() || rho.cols() != projector.cols()) {
    throw DimensionError("gentle instance: rho and P differ in shape");
  }
  const double overlap = (rho * projector).trace().real();
  const double eps = std::clamp(1.0 - overlap, 0.0, 1.0);
  return GentleInstance(std::move(rho), std::move(projector), eps, tol);
}

ComplexMatrix GentleInstance::complement() const {
  return ComplexMatrix::Identity(projector_.rows(), projector_.cols()) - projector_;
}

ComplexMatrix GentleInstance::kept() const {
  return hermitize(projector_ * rho_ * projector_);
}

ComplexMatrix GentleInstance::discarded() const {
  const ComplexMatrix q = complement();
  return hermitize(q * rho_ * q);
}

ComplexMatrix GentleInstance::subnormalised_complement() const {
  if (epsilon_ == 0.0) {
    throw DomainError("subnormalised complement is undefined for epsilon = 0");
  }
  return discarded() / epsilon_;
}

ComplexMatrix binary_upper(const ComplexMatrix& rho, const ComplexMatrix& m1,
                           const ComplexMatrix& m2, double t) {
  check_binary_args(rho, m1, m2, t);
  return hermitize((1.0 + t) * (m1 * rho * m1.adjoint()) +
                   (1.0 + 1.0 / t) * (m2 * rho * m2.adjoint()));
}

ComplexMatrix binary_lower(const ComplexMatrix& rho, const ComplexMatrix& m1,
                           const ComplexMatrix& m2, double t) {
  check_binary_args(rho, m1, m2, t);
  return hermitize((1.0 - t) * (m1 * rho * m1.adjoint()) -
                   (1.0 / t - 1.0) * (m2 * rho * m2.adjoint()));
}

GentleBounds gentle_bounds(const GentleInstance& inst, const Tolerance& tol) {
  const ComplexMatrix kept = inst.kept();
  const ComplexMatrix discarded = inst.discarded();
  GentleBounds b;
  if (inst.epsilon() == 0.0) {
    // Tr(rho P) = 1 with rho >= 0 forces P^perp rho P^perp = 0 and rho = P rho P.
    const double scale = std::max(1.0, inst.rho().norm());
    if (discarded.norm() > tol.equality_band * scale) {
      throw DomainError("epsilon = 0 but P^perp rho P^perp is not zero");
    }
    b.upper = kept;
    b.lower = kept;
    b.upper_as_printed = kept;
    b.degenerate = true;
    return b;
  }
  const double s = std::sqrt(inst.epsilon());
  b.upper = hermitize((1.0 + s) * kept + (1.0 + 1.0 / s) * discarded);
  b.lower = hermitize((1.0 - s) * kept + (1.0 - 1.0 / s) * discarded);
  b.upper_as_printed = hermitize((1.0 - s) * kept + (1.0 + 1.0 / s) * discarded);
  return b;
}

DifferenceBounds gentle_difference_bounds(const GentleInstance& inst) {
  const double eps = inst.epsilon();
  if (eps == 0.0) {
    throw DomainError("difference bounds need epsilon > 0");
  }
  const double s = std::sqrt(eps);
  const ComplexMatrix kept = inst.kept();
  const ComplexMatrix perp = inst.subnormalised_complement();
  return {hermitize(-s * kept - s * perp), hermitize(s * kept + (eps + s) * perp)};
}

TraceNormReport trace_norm_report(const GentleInstance& inst, const Tolerance& tol) {
  const double eps = inst.epsilon();
  const double s = std::sqrt(eps);
  TraceNormReport r;
  r.half_t1 = 0.5 * trace_norm(inst.rho() - inst.kept());
  r.bound_new = s + eps;
  r.bound_original = 2.0 * s;
  r.bound_improved = s;
  r.within_bound = r.half_t1 <= r.bound_new + tol.equality_band;
  return r;
}

bool GentleAnalysis::all_hold() const {
  return trace_norm.within_bound && lower_leq_rho.holds && rho_leq_upper.holds &&
         difference_lower.holds && difference_upper.holds;
}

GentleAnalysis analyze_gentle(const GentleInstance& inst, const Tolerance& tol) {
  GentleAnalysis a;
  a.trace_norm = trace_norm_report(inst, tol);
  const GentleBounds b = gentle_bounds(inst, tol);
  a.degenerate = b.degenerate;
  a.lower_leq_rho = loewner_leq(b.lower, inst.rho(), tol);
  a.rho_leq_upper = loewner_leq(inst.rho(), b.upper, tol);
  a.rho_leq_upper_as_printed = loewner_leq(inst.rho(), b.upper_as_printed, tol);

  const ComplexMatrix diff = hermitize(inst.rho() - inst.kept());
  if (b.degenerate) {
    const ComplexMatrix zero = ComplexMatrix::Zero(diff.rows(), diff.cols());
    a.difference_lower = loewner_leq(zero, diff, tol);
    a.difference_upper = loewner_leq(diff, zero, tol);
  } else {
    const DifferenceBounds d = gentle_difference_bounds(inst);
    a.difference_lower = loewner_leq(d.lower, diff, tol);
    a.difference_upper = loewner_leq(diff, d.upper, tol);
  }
  return a;
}

}  // namespace pinchlab
