#pragma once

#include "pinchlab/matrix.hpp"

namespace pinchlab {

/// A state rho, a projector P and an epsilon with Tr(rho P) >= 1 - epsilon.
class GentleInstance {
 public:
  /// Validates rho PSD with trace <= 1, P = P^dagger = P^2, epsilon in [0, 1]
  /// and 1 - Tr(rho P) <= epsilon + band.
  GentleInstance(ComplexMatrix rho, ComplexMatrix projector, double epsilon,
                 const Tolerance& tol = {});

  /// Tight-epsilon mode: epsilon = max(0, 1 - Tr(rho P)).
  static GentleInstance tight(ComplexMatrix rho, ComplexMatrix projector,
                              const Tolerance& tol = {});

  const ComplexMatrix& rho() const { return rho_; }
  const ComplexMatrix& projector() const { return projector_; }
  double epsilon() const { return epsilon_; }

  /// 1 - P.
  ComplexMatrix complement() const;
  /// P rho P.
  ComplexMatrix kept() const;
  /// P^perp rho P^perp.
  ComplexMatrix discarded() const;
  /// (1/epsilon) P^perp rho P^perp, unnormalised. Throws DomainError when
  /// epsilon == 0.
  ComplexMatrix subnormalised_complement() const;

 private:
  ComplexMatrix rho_;
  ComplexMatrix projector_;
  double epsilon_;
};

/// (1 + t) M1 rho M1^dagger + (1 + 1/t) M2 rho M2^dagger, for t in (0, 1].
ComplexMatrix binary_upper(const ComplexMatrix& rho, const ComplexMatrix& m1,
                           const ComplexMatrix& m2, double t);

/// (1 - t) M1 rho M1^dagger - (1/t - 1) M2 rho M2^dagger, for t in (0, 1].
ComplexMatrix binary_lower(const ComplexMatrix& rho, const ComplexMatrix& m1,
                           const ComplexMatrix& m2, double t);

/// Bounds on rho obtained with t = sqrt(epsilon).
struct GentleBounds {
  /// (1 + sqrt eps) P rho P + (1 + 1/sqrt eps) P^perp rho P^perp.
  ComplexMatrix upper;
  /// (1 - sqrt eps) P rho P + (1 - 1/sqrt eps) P^perp rho P^perp.
  ComplexMatrix lower;
  /// (1 - sqrt eps) P rho P + (1 + 1/sqrt eps) P^perp rho P^perp. Not a
  /// valid bound in general; callers only report its verdict.
  ComplexMatrix upper_as_printed;
  /// epsilon == 0: all three bounds collapse to P rho P == rho.
  bool degenerate = false;
};

GentleBounds gentle_bounds(const GentleInstance& inst, const Tolerance& tol = {});

/// Bounds on rho - P rho P:
///   -sqrt(eps) P rho P - sqrt(eps) rho_perp  <=  rho - P rho P
///   <=  sqrt(eps) P rho P + (eps + sqrt(eps)) rho_perp.
struct DifferenceBounds {
  ComplexMatrix lower;
  ComplexMatrix upper;
};

/// Throws DomainError when epsilon == 0.
DifferenceBounds gentle_difference_bounds(const GentleInstance& inst);

struct TraceNormReport {
  double half_t1 = 0.0;        // (1/2) ||rho - P rho P||_1
  double bound_new = 0.0;      // sqrt(eps) + eps
  double bound_original = 0.0; // 2 sqrt(eps)
  double bound_improved = 0.0; // sqrt(eps)
  bool within_bound = false;   // half_t1 <= bound_new + band
};

TraceNormReport trace_norm_report(const GentleInstance& inst, const Tolerance& tol = {});

/// Every Loewner check derivable from one instance, for reporting.
struct GentleAnalysis {
  TraceNormReport trace_norm;
  LoewnerVerdict lower_leq_rho;
  LoewnerVerdict rho_leq_upper;
  LoewnerVerdict rho_leq_upper_as_printed;
  LoewnerVerdict difference_lower;
  LoewnerVerdict difference_upper;
  bool degenerate = false;

  /// All asserted claims hold. The as-printed upper bound is excluded.
  bool all_hold() const;
};

GentleAnalysis analyze_gentle(const GentleInstance& inst, const Tolerance& tol = {});

}  // namespace pinchlab
