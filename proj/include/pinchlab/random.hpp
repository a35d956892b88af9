#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pinchlab/matrix.hpp"
#include "pinchlab/pinching.hpp"
#include "pinchlab/spectrahedron.hpp"

namespace pinchlab {

/// Counter-based seed derivation: trial i of a campaign gets
/// split_seed(master, i), independent of the order trials run in.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

/// Seeded generator for all random instances.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  double gaussian();
  /// (x + iy)/sqrt(2) with x, y standard normal.
  Complex complex_gaussian();
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);
  std::uint64_t next_seed();

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[index(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// G G^dagger for a d x d complex-Gaussian G, optionally with unit trace.
ComplexMatrix random_psd(std::size_t d, Rng& rng, bool normalize);
ComplexMatrix random_psd(std::size_t d, std::uint64_t seed, bool normalize);

/// Q from the QR decomposition of a Ginibre matrix with the phases of
/// diag(R) divided out.
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

/// Uniformly random composition of d into n positive parts.
std::vector<std::size_t> random_composition(std::size_t d, std::size_t n, Rng& rng);

/// Random unitary with its columns split into n nonempty groups.
ProjectivePOVM random_projective_povm(std::size_t d, std::size_t n, Rng& rng,
                                      const Tolerance& tol = {});
ProjectivePOVM random_projective_povm(std::size_t d, std::size_t n, std::uint64_t seed,
                                      const Tolerance& tol = {});

/// n independent complex-Gaussian d_out x d_in matrices.
OperatorFamily random_family(std::size_t d_in, std::size_t d_out, std::size_t n, Rng& rng);
OperatorFamily random_family(std::size_t d_in, std::size_t d_out, std::size_t n,
                             std::uint64_t seed);

/// Point of A_n with smallest eigenvalue of diag(alpha) - J above `margin`,
/// by rejection from the box [1, 3n]^n.
WeightVector random_interior_A(std::size_t n, Rng& rng, double margin = 1e-3);

/// Point of B_n with all entries non-positive, uniform on [-3, 0]^n.
WeightVector random_nonpositive_B(std::size_t n, Rng& rng);

/// Point of B_n with exactly one positive entry, by rejection.
WeightVector random_one_positive_B(std::size_t n, Rng& rng, const Tolerance& tol = {});

}  // namespace pinchlab
