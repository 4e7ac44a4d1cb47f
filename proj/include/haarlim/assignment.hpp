#pragma once
// Minimal-total-cost bipartite assignment (Hungarian algorithm with
// potentials, shortest augmenting paths, O(n^3)).  Used to match sampled
// eigenvalues to limiting values and full spectra to reduced ones; greedy
// matching can mislabel when two targets are close.
//
// Ties are resolved by scanning order (lowest column index wins), which makes
// the result deterministic for equidistant inputs.

#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace haarlim {

// cost is n x n; returns col_of with col_of[i] = column assigned to row i.
inline std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw std::invalid_argument("min_cost_assignment: square cost required");
  const double kInf = std::numeric_limits<double>::infinity();
  // 1-indexed potentials; p[j] = row matched to column j (0 = none yet).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) col_of[p[j] - 1] = j - 1;
  return col_of;
}

}  // namespace haarlim
