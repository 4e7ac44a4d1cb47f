#pragma once
// Deterministic, seedable sampling of complex Ginibre matrices and
// Haar-distributed unitaries, with corner truncation.
//
// Reproducibility contract: a stream is fully determined by
// (master_seed, stream_index).  Experiments derive one stream per sample by
// counter (stream_index = sample index), so results do not depend on thread
// count or scheduling.

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "haarlim/ncpoly.hpp"  // Complex, ComplexMatrix

namespace haarlim {

// splitmix64 finalizer; decorrelates nearby (seed, index) pairs.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
      : master_seed_(master_seed),
        stream_index_(stream_index),
        engine_(mix64(mix64(master_seed) ^ mix64(stream_index))) {}

  // Counter-derived child stream; child k of a given stream is reproducible
  // and distinct from sibling streams and from top-level indices.
  RngStream substream(std::uint64_t k) const {
    return RngStream(master_seed_, mix64(stream_index_ ^ 0x6a09e667f3bcc909ull) + k);
  }

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  // Re and Im each Gaussian(0, 1/2), so E|z|^2 = 1.
  Complex complex_gaussian() {
    double re = gaussian(), im = gaussian();
    return Complex(re * kInvSqrt2, im * kInvSqrt2);
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  static constexpr double kInvSqrt2 = 0.7071067811865475244;
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// iid entries with Re, Im ~ Gaussian(0, 1/2); row-major fill order.
inline ComplexMatrix ginibre(int m, int n, RngStream& rng) {
  if (m < 1 || n < 1) throw std::invalid_argument("ginibre: dimensions must be >= 1");
  ComplexMatrix z(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = rng.complex_gaussian();
  return z;
}

// First k columns of a Haar-distributed n x n unitary: thin QR of an n x k
// Ginibre block with the per-column phase fix conj(R_jj)/|R_jj|.  Plain QR is
// not Haar (the standard phase pitfall); with the fix the columns are an
// exactly uniform point on the Stiefel manifold, i.e. the law of the first k
// columns of a full Haar matrix, at cost O(n k^2).
inline ComplexMatrix haar_columns(int n, int k, RngStream& rng) {
  if (n < 1 || k < 1 || k > n)
    throw std::invalid_argument("haar_columns: need 1 <= k <= n");
  ComplexMatrix g = ginibre(n, k, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, k);
  for (int j = 0; j < k; ++j) {
    Complex d = qr.matrixQR()(j, j);
    double a = std::abs(d);
    if (a > 0.0) q.col(j) *= std::conj(d) / a;  // |R_jj| = 0 has measure zero
  }
  return q;
}

inline ComplexMatrix haar_unitary(int n, RngStream& rng) {
  return haar_columns(n, n, rng);
}

// Top-left r x s corner, copied.
inline ComplexMatrix truncate(const ComplexMatrix& u, int r, int s) {
  if (r < 1 || s < 1 || r > u.rows() || s > u.cols())
    throw std::invalid_argument("truncate: corner exceeds matrix dimensions");
  return u.topLeftCorner(r, s);
}

}  // namespace haarlim
