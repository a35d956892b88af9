#include "pinchlab/random.hpp"

#include <algorithm>
#include <cmath>

namespace pinchlab {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finaliser over master + (index + 1) * golden gamma.
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::gaussian() { return std::normal_distribution<double>()(engine_); }

Complex Rng::complex_gaussian() {
  const double x = gaussian();
  const double y = gaussian();
  return Complex(x, y) * M_SQRT1_2;
}

std::size_t Rng::index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::uint64_t Rng::next_seed() { return engine_(); }

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.complex_gaussian();
  }
  return g;
}

ComplexMatrix random_psd(std::size_t d, Rng& rng, bool normalize) {
  if (d == 0) throw DomainError("random_psd: d must be positive");
  const auto k = static_cast<Eigen::Index>(d);
  const ComplexMatrix g = ginibre(k, k, rng);
  ComplexMatrix rho = hermitize(g * g.adjoint());
  if (normalize) rho /= rho.trace().real();
  return rho;
}

ComplexMatrix random_psd(std::size_t d, std::uint64_t seed, bool normalize) {
  Rng rng(seed);
  return random_psd(d, rng, normalize);
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  if (d == 0) throw DomainError("random_unitary: d must be positive");
  const auto k = static_cast<Eigen::Index>(d);
  Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(k, k, rng));
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(k, k);
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

std::vector<std::size_t> random_composition(std::size_t d, std::size_t n, Rng& rng) {
  if (n == 0 || n > d) throw DomainError("random_composition needs 1 <= n <= d");
  // Choose n - 1 distinct cut points among 1..d-1.
  std::vector<std::size_t> points(d - 1);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = i + 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + rng.index(points.size() - i);
    std::swap(points[i], points[j]);
  }
  std::vector<std::size_t> cuts(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(n - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::size_t> sizes;
  std::size_t prev = 0;
  for (std::size_t c : cuts) {
    sizes.push_back(c - prev);
    prev = c;
  }
  sizes.push_back(d - prev);
  return sizes;
}

ProjectivePOVM random_projective_povm(std::size_t d, std::size_t n, Rng& rng,
                                      const Tolerance& tol) {
  if (n < 2 || n > d) {
    throw DomainError("random_projective_povm needs 2 <= n <= d, got n = " + std::to_string(n) +
                      ", d = " + std::to_string(d));
  }
  const ComplexMatrix u = random_unitary(d, rng);
  return ProjectivePOVM::from_partition(u, random_composition(d, n, rng), tol);
}

ProjectivePOVM random_projective_povm(std::size_t d, std::size_t n, std::uint64_t seed,
                                      const Tolerance& tol) {
  Rng rng(seed);
  return random_projective_povm(d, n, rng, tol);
}

OperatorFamily random_family(std::size_t d_in, std::size_t d_out, std::size_t n, Rng& rng) {
  if (n < 2) throw DimensionError("random_family needs n >= 2");
  if (d_in == 0 || d_out == 0) throw DomainError("random_family needs positive dimensions");
  std::vector<ComplexMatrix> ops;
  ops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ops.push_back(ginibre(static_cast<Eigen::Index>(d_out), static_cast<Eigen::Index>(d_in), rng));
  }
  return OperatorFamily(std::move(ops));
}

OperatorFamily random_family(std::size_t d_in, std::size_t d_out, std::size_t n,
                             std::uint64_t seed) {
  Rng rng(seed);
  return random_family(d_in, d_out, n, rng);
}

WeightVector random_interior_A(std::size_t n, Rng& rng, double margin) {
  if (n < 2) throw DimensionError("random_interior_A needs n >= 2");
  const double hi = 3.0 * static_cast<double>(n);
  std::vector<double> v(n);
  Tolerance strict;
  strict.psd_slack = 0.0;
  for (;;) {
    for (double& x : v) x = rng.uniform(1.0, hi);
    WeightVector w(v);
    if (in_A_direct(w, strict).certificate > margin) return w;
  }
}

WeightVector random_nonpositive_B(std::size_t n, Rng& rng) {
  if (n < 2) throw DimensionError("random_nonpositive_B needs n >= 2");
  std::vector<double> v(n);
  for (double& x : v) x = -rng.uniform(0.0, 3.0);
  return WeightVector(std::move(v));
}

WeightVector random_one_positive_B(std::size_t n, Rng& rng, const Tolerance& tol) {
  if (n < 2) throw DimensionError("random_one_positive_B needs n >= 2");
  std::vector<double> v(n);
  for (;;) {
    const std::size_t hot = rng.index(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = i == hot ? rng.uniform(0.0, 1.0) : -rng.uniform(0.0, 3.0 * static_cast<double>(n));
    }
    WeightVector w(v);
    if (v[hot] > 0.0 && in_B_direct(w, tol).member) return w;
  }
}

}  // namespace pinchlab
