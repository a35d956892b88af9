#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pinchlab/gentle.hpp"
#include "pinchlab/random.hpp"

using namespace pinchlab;

namespace {

ComplexMatrix basis_projector(Eigen::Index d, Eigen::Index k) {
  ComplexMatrix p = ComplexMatrix::Zero(d, d);
  p(k, k) = 1.0;
  return p;
}

GentleInstance pure_instance(double eps) {
  ComplexVector psi(2);
  psi << std::sqrt(1.0 - eps), std::sqrt(eps);
  return GentleInstance(psi * psi.adjoint(), basis_projector(2, 0), eps);
}

double max_entry(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("GentleInstance validation") {
  const ComplexMatrix mixed = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK_NOTHROW(GentleInstance(mixed, basis_projector(2, 0), 0.5));
  CHECK_THROWS_AS(GentleInstance(mixed, basis_projector(2, 0), 0.4), DomainError);
  CHECK_THROWS_AS(GentleInstance(mixed, basis_projector(2, 0), 1.5), DomainError);
  CHECK_THROWS_AS(GentleInstance(2.0 * mixed, basis_projector(2, 0), 1.0), DomainError);
  CHECK_THROWS_AS(GentleInstance(mixed, 0.5 * ComplexMatrix::Ones(2, 2) * 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(GentleInstance(mixed, basis_projector(3, 0), 1.0), DimensionError);

  const auto tight = GentleInstance::tight(mixed, basis_projector(2, 0));
  CHECK(tight.epsilon() == doctest::Approx(0.5));
  CHECK_THROWS_AS(GentleInstance(basis_projector(2, 0), basis_projector(2, 0), 0.0)
                      .subnormalised_complement(),
                  DomainError);
}

TEST_CASE("binary bounds") {
  Rng rng(4);
  const ComplexMatrix rho = random_psd(3, rng, true);
  const ComplexMatrix m1 = ginibre(2, 3, rng);
  const ComplexMatrix m2 = ginibre(2, 3, rng);
  const ComplexMatrix zero = ComplexMatrix::Zero(2, 3);
  const ComplexMatrix c1 = m1 * rho * m1.adjoint();
  const ComplexMatrix c2 = m2 * rho * m2.adjoint();

  CHECK((binary_upper(rho, m1, m2, 1.0) - 2.0 * c1 - 2.0 * c2).norm() < 1e-13);
  CHECK(binary_lower(rho, m1, m2, 1.0).norm() < 1e-15);
  CHECK(loewner_leq(c1, binary_upper(rho, m1, zero, 0.4)).holds);
  CHECK(loewner_leq(binary_lower(rho, m1, zero, 0.4), c1).holds);

  const ComplexMatrix s = m1 + m2;
  const ComplexMatrix middle = s * rho * s.adjoint();
  for (double t : {0.3, 0.7, 1.0}) {
    CHECK(loewner_leq(middle, binary_upper(rho, m1, m2, t)).holds);
    CHECK(loewner_leq(binary_lower(rho, m1, m2, t), middle).holds);
  }
  CHECK_THROWS_AS(binary_upper(rho, m1, m2, 0.0), DomainError);
  CHECK_THROWS_AS(binary_lower(rho, m1, m2, -0.5), DomainError);
  CHECK_THROWS_AS(binary_upper(rho, m1, ginibre(3, 3, rng), 0.5), DimensionError);
}

TEST_CASE("binary bounds expand to a single conjugation") {
  Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto din = static_cast<Eigen::Index>(1 + rng.index(5));
    const auto dout = static_cast<Eigen::Index>(1 + rng.index(5));
    const ComplexMatrix rho = random_psd(static_cast<std::size_t>(din), rng, true);
    const ComplexMatrix m1 = ginibre(dout, din, rng);
    const ComplexMatrix m2 = ginibre(dout, din, rng);
    const double t = rng.uniform(1e-3, 1.0);
    const ComplexMatrix s = m1 + m2;
    const ComplexMatrix middle = oracle::naive_product(oracle::naive_product(s, rho), oracle::naive_adjoint(s));

    const ComplexMatrix minus = std::sqrt(t) * m1 - m2 / std::sqrt(t);
    const ComplexMatrix upper_gap =
        oracle::naive_product(oracle::naive_product(minus, rho), oracle::naive_adjoint(minus));
    CHECK(max_entry(binary_upper(rho, m1, m2, t) - middle - upper_gap) <= 1e-10);

    const ComplexMatrix plus = std::sqrt(t) * m1 + m2 / std::sqrt(t);
    const ComplexMatrix lower_gap =
        oracle::naive_product(oracle::naive_product(plus, rho), oracle::naive_adjoint(plus));
    CHECK(max_entry(middle - binary_lower(rho, m1, m2, t) - lower_gap) <= 1e-10);
  }
}

TEST_CASE("gentle bounds on a pure state") {
  const GentleInstance inst = pure_instance(0.04);
  const GentleAnalysis a = analyze_gentle(inst);
  CHECK(a.all_hold());
  CHECK(a.lower_leq_rho.holds);
  CHECK(a.rho_leq_upper.holds);
  // The coefficient as printed gives a top-left entry of -sqrt(eps)(1 - eps).
  CHECK_FALSE(a.rho_leq_upper_as_printed.holds);
  const GentleBounds b = gentle_bounds(inst);
  CHECK((b.upper_as_printed - inst.rho())(0, 0).real() == doctest::Approx(-0.2 * 0.96));

  CHECK(a.difference_lower.min_gap_eigenvalue > 1e-3);
  CHECK(a.difference_upper.min_gap_eigenvalue >= -1e-15);

  // Exact trace norm of [[0, ab], [ab, b^2]] is sqrt(eps (4 - 3 eps)).
  const double exact = 0.5 * std::sqrt(0.04 * (4.0 - 3.0 * 0.04));
  CHECK(a.trace_norm.half_t1 == doctest::Approx(exact).epsilon(1e-12));
  CHECK(a.trace_norm.half_t1 <= 0.24);
  CHECK(a.trace_norm.bound_new == doctest::Approx(0.24));
  CHECK(a.trace_norm.bound_original == doctest::Approx(0.4));
  CHECK(a.trace_norm.bound_improved == doctest::Approx(0.2));
}

TEST_CASE("gentle bounds on the maximally mixed qubit") {
  const GentleInstance inst(0.5 * ComplexMatrix::Identity(2, 2), basis_projector(2, 0), 0.5);
  const GentleAnalysis a = analyze_gentle(inst);
  CHECK(a.all_hold());
  CHECK_FALSE(a.rho_leq_upper_as_printed.holds);
  CHECK(a.trace_norm.half_t1 == doctest::Approx(0.25));
}

TEST_CASE("block-diagonal and degenerate instances") {
  ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
  rho.diagonal() << 0.7, 0.2, 0.1;
  const ComplexMatrix p = basis_projector(3, 0) + basis_projector(3, 1);
  const GentleInstance inst(rho, p, 0.1);
  // rho - P rho P = eps * rho_perp.
  CHECK((rho - inst.kept() - 0.1 * inst.subnormalised_complement()).norm() < 1e-15);
  CHECK(analyze_gentle(inst).all_hold());

  ComplexMatrix kept_only = ComplexMatrix::Zero(3, 3);
  kept_only.diagonal() << 0.6, 0.4, 0.0;
  const GentleInstance zero_eps(kept_only, p, 0.0);
  const GentleBounds b = gentle_bounds(zero_eps);
  CHECK(b.degenerate);
  CHECK((b.upper - kept_only).norm() < 1e-15);
  CHECK((b.lower - kept_only).norm() < 1e-15);
  CHECK_THROWS_AS(gentle_difference_bounds(zero_eps), DomainError);
  const GentleAnalysis a = analyze_gentle(zero_eps);
  CHECK(a.all_hold());
  CHECK(a.trace_norm.half_t1 == 0.0);
}

TEST_CASE("random instances: sandwiches and trace-norm bound") {
  Rng rng(12);
  int at_most_sqrt = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 2 + rng.index(7);
    const ComplexMatrix rho = random_psd(d, rng, true);
    const auto rank = static_cast<Eigen::Index>(1 + rng.index(d - 1));
    const ComplexMatrix u = random_unitary(d, rng).leftCols(rank);
    const ComplexMatrix p = hermitize(u * u.adjoint());
    const GentleInstance tight = GentleInstance::tight(rho, p);
    const GentleAnalysis a = analyze_gentle(tight);
    CHECK(a.all_hold());
    CHECK(a.trace_norm.half_t1 <= a.trace_norm.bound_new + 1e-8);
    CHECK(a.trace_norm.half_t1 == doctest::Approx(0.5 * oracle::hermitian_trace_norm(rho - tight.kept())).epsilon(1e-9));
    if (a.trace_norm.half_t1 <= a.trace_norm.bound_improved) ++at_most_sqrt;

    // A looser hypothesis (epsilon = 1) is still admissible.
    CHECK(analyze_gentle(GentleInstance(rho, p, 1.0)).all_hold());

    // Larger admissible epsilon loosens the bound.
    const double eps2 = std::min(1.0, tight.epsilon() + 0.1);
    CHECK(trace_norm_report(GentleInstance(rho, p, eps2)).bound_new >= a.trace_norm.bound_new);
  }
  MESSAGE("half trace norm <= sqrt(eps) in " << at_most_sqrt << "/500 instances");
}
