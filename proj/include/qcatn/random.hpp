#pragma once

#include <cstdint>
#include <random>

#include "qcatn/tensor.hpp"

namespace qcatn {

using Rng = std::mt19937_64;

inline Matrix ginibre(long rows, long cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  return m;
}

/// Haar-random unitary via QR of a Ginibre matrix with phase fixing.
inline Matrix haar_unitary(long dim, Rng& rng) {
  Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long k = 0; k < dim; ++k) {
    cplx diag = r(k, k);
    q.col(k) *= (std::abs(diag) > 0 ? diag / std::abs(diag) : cplx(1, 0));
  }
  return q;
}

/// Uniform point on the unit sphere of C^dim.
inline Vector random_state(long dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (long i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

/// Random density matrix (Wishart with full rank).
inline Matrix random_density(long dim, Rng& rng) {
  Matrix g = ginibre(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

/// Deterministic per-key stream: mixes a seed with tags so independent
/// draws stay reproducible under reordering.
inline Rng keyed_rng(std::uint64_t seed, std::uint64_t tag_a,
                     std::uint64_t tag_b = 0) {
  std::uint64_t x = seed;
  x ^= 0x9e3779b97f4a7c15ull + (tag_a << 6) + (tag_a >> 2);
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x ^= 0x94d049bb133111ebull * (tag_b + 1);
  x *= 0x2545f4914f6cdd1dull;
  return Rng(x);
}

}  // namespace qcatn
