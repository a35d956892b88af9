#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pinchlab/matrix.hpp"
#include "pinchlab/spectrahedron.hpp"

namespace pinchlab {

/// Projective measurement (P_1, ..., P_n) on a d-dimensional space.
///
/// Construction validates P_i = P_i^dagger = P_i^2 and sum_i P_i = 1 within
/// the equality band; invalid input is rejected, never repaired.
class ProjectivePOVM {
 public:
  explicit ProjectivePOVM(std::vector<ComplexMatrix> projectors, const Tolerance& tol = {});

  /// Rank-one projectors onto the columns of a unitary (computational basis
  /// when `basis` is the identity).
  static ProjectivePOVM from_basis(const ComplexMatrix& basis, const Tolerance& tol = {});

  /// Groups consecutive columns of `basis` by `sizes` (which must sum to d).
  static ProjectivePOVM from_partition(const ComplexMatrix& basis,
                                       const std::vector<std::size_t>& sizes,
                                       const Tolerance& tol = {});

  std::size_t size() const { return projectors_.size(); }
  std::size_t dimension() const { return static_cast<std::size_t>(projectors_.front().rows()); }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const ComplexMatrix& operator[](std::size_t i) const { return projectors_[i]; }

  /// All P_i nonzero (Frobenius norm above the equality band).
  bool nontrivial(const Tolerance& tol = {}) const;

 private:
  std::vector<ComplexMatrix> projectors_;
};

/// Operators M_1..M_n : C^{in_dim} -> C^{out_dim}.
class OperatorFamily {
 public:
  explicit OperatorFamily(std::vector<ComplexMatrix> operators);

  static OperatorFamily from_povm(const ProjectivePOVM& povm);

  std::size_t size() const { return operators_.size(); }
  std::size_t in_dim() const { return static_cast<std::size_t>(operators_.front().cols()); }
  std::size_t out_dim() const { return static_cast<std::size_t>(operators_.front().rows()); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const ComplexMatrix& operator[](std::size_t i) const { return operators_[i]; }

  /// sum_i M_i.
  ComplexMatrix sum() const;

 private:
  std::vector<ComplexMatrix> operators_;
};

/// sum_i P_i rho P_i.
ComplexMatrix pinch(const ComplexMatrix& rho, const ProjectivePOVM& povm);

/// sum_i w_i M_i rho M_i^dagger, hermitized.
ComplexMatrix weighted_conjugation(const ComplexMatrix& rho, const OperatorFamily& family,
                                   const WeightVector& weights);

/// S rho S^dagger with S = sum_i M_i, hermitized.
ComplexMatrix sum_conjugation(const ComplexMatrix& rho, const OperatorFamily& family);

/// (sum M_i) rho (sum M_i)^dagger <= sum alpha_i M_i rho M_i^dagger.
/// Throws DomainError if rho is not PSD.
LoewnerVerdict verify_generalized(const OperatorFamily& family, const WeightVector& alpha,
                                  const ComplexMatrix& rho, const Tolerance& tol = {});

/// (sum M_i) rho (sum M_i)^dagger >= sum beta_i M_i rho M_i^dagger.
LoewnerVerdict verify_reverse(const OperatorFamily& family, const WeightVector& beta,
                              const ComplexMatrix& rho, const Tolerance& tol = {});

/// rho = sum_ij |e_i><e_j| for unit vectors e_i in the range of P_i.
///
/// Without a seed e_i is the top eigenvector of P_i. With a seed, e_i is
/// P_i g / ||P_i g|| for a complex-Gaussian g, which samples the whole range
/// when rank(P_i) > 1. Throws DomainError if some P_i is zero.
ComplexMatrix converse_witness(const ProjectivePOVM& povm,
                               std::optional<std::uint64_t> seed = std::nullopt,
                               const Tolerance& tol = {});

/// Whether the generalised inequality holds for the converse witness. By the
/// converse this agrees with in_A_direct(alpha).member outside the band.
bool converse_check(const ProjectivePOVM& povm, const WeightVector& alpha,
                    std::optional<std::uint64_t> seed = std::nullopt, const Tolerance& tol = {});

/// Same, also returning the underlying verdict.
LoewnerVerdict converse_verdict(const ProjectivePOVM& povm, const WeightVector& alpha,
                                std::optional<std::uint64_t> seed = std::nullopt,
                                const Tolerance& tol = {});

}  // namespace pinchlab
