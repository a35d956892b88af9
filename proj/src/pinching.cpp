#include "pinchlab/pinching.hpp"

#include <random>
#include <sstream>

namespace pinchlab {

namespace {

void require_psd_state(const ComplexMatrix& rho, const Tolerance& tol, const char* who) {
  require_square(rho, who);
  if (!is_psd(rho, tol).holds) {
    throw DomainError(std::string(who) + ": rho is not positive semidefinite");
  }
}

void require_compatible(const ComplexMatrix& rho, const OperatorFamily& family, const char* who) {
  require_square(rho, who);
  if (static_cast<std::size_t>(rho.rows()) != family.in_dim()) {
    std::ostringstream os;
    os << who << ": rho is " << describe_shape(rho) << " but operators act on dimension "
       << family.in_dim();
    throw DimensionError(os.str());
  }
}

}  // namespace

ProjectivePOVM::ProjectivePOVM(std::vector<ComplexMatrix> projectors, const Tolerance& tol)
    : projectors_(std::move(projectors)) {
  tol.validate();
  if (projectors_.size() < 2) {
    throw DimensionError("projective measurement needs n >= 2 projectors");
  }
  const Eigen::Index d = projectors_.front().rows();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const ComplexMatrix& p = projectors_[i];
    require_square(p, "projector");
    require_finite(p, "projector");
    if (p.rows() != d) {
      throw DimensionError("projectors have mixed dimensions");
    }
    const double scale = std::max(1.0, p.norm());
    if ((p - p.adjoint()).norm() > tol.equality_band * scale) {
      throw DomainError("projector " + std::to_string(i) + " is not Hermitian");
    }
    if ((p * p - p).norm() > tol.equality_band * scale) {
      throw DomainError("projector " + std::to_string(i) + " is not idempotent");
    }
    total += p;
  }
  if ((total - ComplexMatrix::Identity(d, d)).norm() >
      tol.equality_band * std::max(1.0, static_cast<double>(d))) {
    throw DomainError("projectors do not sum to the identity");
  }
}

ProjectivePOVM ProjectivePOVM::from_basis(const ComplexMatrix& basis, const Tolerance& tol) {
  std::vector<std::size_t> ones(static_cast<std::size_t>(basis.cols()), 1);
  return from_partition(basis, ones, tol);
}

ProjectivePOVM ProjectivePOVM::from_partition(const ComplexMatrix& basis,
                                              const std::vector<std::size_t>& sizes,
                                              const Tolerance& tol) {
  require_square(basis, "basis");
  std::size_t total = 0;
  for (std::size_t s : sizes) total += s;
  if (total != static_cast<std::size_t>(basis.cols())) {
    throw DimensionError("partition sizes must sum to the dimension");
  }
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(sizes.size());
  Eigen::Index start = 0;
  for (std::size_t s : sizes) {
    const auto k = static_cast<Eigen::Index>(s);
    const auto block = basis.middleCols(start, k);
    projectors.push_back(block * block.adjoint());
    start += k;
  }
  return ProjectivePOVM(std::move(projectors), tol);
}

bool ProjectivePOVM::nontrivial(const Tolerance& tol) const {
  for (const auto& p : projectors_) {
    if (p.norm() <= tol.equality_band) return false;
  }
  return true;
}

OperatorFamily::OperatorFamily(std::vector<ComplexMatrix> operators)
    : operators_(std::move(operators)) {
  if (operators_.size() < 2) {
    throw DimensionError("operator family needs n >= 2 operators");
  }
  const auto rows = operators_.front().rows();
  const auto cols = operators_.front().cols();
  if (rows == 0 || cols == 0) throw DimensionError("operator family has empty operators");
  for (const auto& m : operators_) {
    if (m.rows() != rows || m.cols() != cols) {
      throw DimensionError("operator family has non-uniform shapes");
    }
    require_finite(m, "operator");
  }
}

OperatorFamily OperatorFamily::from_povm(const ProjectivePOVM& povm) {
  return OperatorFamily(povm.projectors());
}

ComplexMatrix OperatorFamily::sum() const {
  ComplexMatrix s = operators_.front();
  for (std::size_t i = 1; i < operators_.size(); ++i) s += operators_[i];
  return s;
}

ComplexMatrix pinch(const ComplexMatrix& rho, const ProjectivePOVM& povm) {
  require_square(rho, "pinch: rho");
  if (static_cast<std::size_t>(rho.rows()) != povm.dimension()) {
    throw DimensionError("pinch: rho is " + describe_shape(rho) + " but the measurement has dimension " +
                         std::to_string(povm.dimension()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& p : povm.projectors()) out += p * rho * p;
  return hermitize(out);
}

ComplexMatrix weighted_conjugation(const ComplexMatrix& rho, const OperatorFamily& family,
                                   const WeightVector& weights) {
  require_compatible(rho, family, "weighted_conjugation");
  if (weights.arity() != family.size()) {
    throw DimensionError("weighted_conjugation: " + std::to_string(weights.arity()) +
                         " weights for " + std::to_string(family.size()) + " operators");
  }
  const auto d = static_cast<Eigen::Index>(family.out_dim());
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const ComplexMatrix& m = family[i];
    out += weights[i] * (m * rho * m.adjoint());
  }
  return hermitize(out);
}

ComplexMatrix sum_conjugation(const ComplexMatrix& rho, const OperatorFamily& family) {
  require_compatible(rho, family, "sum_conjugation");
  const ComplexMatrix s = family.sum();
  return hermitize(s * rho * s.adjoint());
}

LoewnerVerdict verify_generalized(const OperatorFamily& family, const WeightVector& alpha,
                                  const ComplexMatrix& rho, const Tolerance& tol) {
  require_psd_state(rho, tol, "verify_generalized");
  return loewner_leq(sum_conjugation(rho, family), weighted_conjugation(rho, family, alpha), tol);
}

LoewnerVerdict verify_reverse(const OperatorFamily& family, const WeightVector& beta,
                              const ComplexMatrix& rho, const Tolerance& tol) {
  require_psd_state(rho, tol, "verify_reverse");
  return loewner_leq(weighted_conjugation(rho, family, beta), sum_conjugation(rho, family), tol);
}

ComplexMatrix converse_witness(const ProjectivePOVM& povm, std::optional<std::uint64_t> seed,
                               const Tolerance& tol) {
  if (!povm.nontrivial(tol)) {
    throw DomainError("converse_witness: every projector must be nonzero");
  }
  const auto d = static_cast<Eigen::Index>(povm.dimension());
  ComplexVector s = ComplexVector::Zero(d);
  std::mt19937_64 rng(seed.value_or(0));
  std::normal_distribution<double> gauss;
  for (const auto& p : povm.projectors()) {
    ComplexVector e;
    if (seed) {
      ComplexVector g(d);
      for (Eigen::Index i = 0; i < d; ++i) g(i) = Complex(gauss(rng), gauss(rng));
      e = p * g;
    } else {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(p));
      e = solver.eigenvectors().col(d - 1);
      e = p * e;
    }
    const double len = e.norm();
    if (!(len > tol.equality_band)) {
      throw DomainError("converse_witness: could not find a fixed point of a projector");
    }
    s += e / len;
  }
  return s * s.adjoint();
}

LoewnerVerdict converse_verdict(const ProjectivePOVM& povm, const WeightVector& alpha,
                                std::optional<std::uint64_t> seed, const Tolerance& tol) {
  if (alpha.arity() != povm.size()) {
    throw DimensionError("converse_check: arity does not match the number of projectors");
  }
  const ComplexMatrix witness = converse_witness(povm, seed, tol);
  return verify_generalized(OperatorFamily::from_povm(povm), alpha, witness, tol);
}

bool converse_check(const ProjectivePOVM& povm, const WeightVector& alpha,
                    std::optional<std::uint64_t> seed, const Tolerance& tol) {
  return converse_verdict(povm, alpha, seed, tol).holds;
}

}  // namespace pinchlab
