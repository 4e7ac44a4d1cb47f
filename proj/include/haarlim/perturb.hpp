#pragma once
// Deterministic limits of the nontrivial spectrum, the first two terms of
// the eigenvalue perturbation series, and an empirical estimator for the
// fluctuation exponent kappa in deviation ~ N^(-kappa/2).
//
// All indices taken and returned by this header are 0-based.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "haarlim/assignment.hpp"
#include "haarlim/model.hpp"
#include "haarlim/ncpoly.hpp"
#include "haarlim/parallel.hpp"
#include "haarlim/randmat.hpp"

namespace haarlim {

// Tolerance for declaring two limit values equal.  Limits come from closed
// forms, so genuine ties are exact up to rounding error.
inline constexpr double kLimitClusterTol = 1e-9;

// The deterministic limits of the nontrivial eigenvalues, grouped into
// clusters of coinciding values.  `values[c]` is the representative of
// cluster c and `multiplicities[c]` how many limit eigenvalues share it;
// clusters appear in first-occurrence order of the underlying closed-form
// list (alpha-derived entries first, then beta-derived ones).
struct LimitSpectrum {
  std::vector<Complex> values;
  std::vector<int> multiplicities;
  bool simple = true;  // true iff every multiplicity is 1

  int dim() const {
    int d = 0;
    for (int m : multiplicities) d += m;
    return d;
  }

  // Flat list with each representative repeated per its multiplicity, in
  // cluster order.  Flat indices below refer to positions in this list.
  std::vector<Complex> expanded() const {
    std::vector<Complex> out;
    out.reserve(dim());
    for (std::size_t c = 0; c < values.size(); ++c)
      out.insert(out.end(), multiplicities[c], values[c]);
    return out;
  }

  int cluster_of_expanded(int i) const {
    int offset = 0;
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (i < offset + multiplicities[c]) return static_cast<int>(c);
      offset += multiplicities[c];
    }
    throw std::out_of_range("LimitSpectrum: flat index out of range");
  }

  int rank_of_expanded(int i) const {
    int offset = 0;
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (i < offset + multiplicities[c]) return i - offset;
      offset += multiplicities[c];
    }
    throw std::out_of_range("LimitSpectrum: flat index out of range");
  }
};

// One nontrivial eigenvalue picked out of the limit spectrum: cluster c,
// and within the cluster the rank-th member when samples near it are sorted
// by decreasing real part (rank 0 = largest).
struct LimitTarget {
  int cluster = 0;
  int rank = 0;
};

namespace detail {

inline std::vector<Complex> raw_limit_list(const ModelSpec& spec) {
  std::vector<Complex> raw;
  switch (spec.kind) {
    case ModelKind::Rotation:
      raw = spec.alphas;
      for (const Complex& a : spec.alphas) raw.push_back(-a);
      return raw;
    case ModelKind::SumConjugation:
      raw = spec.alphas;
      raw.insert(raw.end(), spec.betas.begin(), spec.betas.end());
      return raw;
    case ModelKind::Conjugation: {
      const Decomposition d = decompose(spec.poly);
      for (const Complex& a : spec.alphas) raw.push_back(eval_univariate(d.p1, a));
      for (const Complex& b : spec.betas) raw.push_back(eval_univariate(d.q1, b));
      return raw;
    }
    case ModelKind::GeneralTwoVar: {
      // No closed form in general: take the spectrum of the deterministic
      // part of the reduced matrix, ordered for reproducibility.
      const ComplexMatrix zero =
          ComplexMatrix::Zero(spec.uhat_rows(), spec.uhat_cols());
      raw = eig_unordered(build_reduced(spec, zero).m_part);
      std::sort(raw.begin(), raw.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
      });
      return raw;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

inline LimitSpectrum limiting_eigenvalues(const ModelSpec& spec) {
  spec.validate();
  LimitSpectrum out;
  for (const Complex& v : detail::raw_limit_list(spec)) {
    bool merged = false;
    for (std::size_t c = 0; c < out.values.size(); ++c) {
      if (std::abs(v - out.values[c]) <= kLimitClusterTol) {
        ++out.multiplicities[c];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.values.push_back(v);
      out.multiplicities.push_back(1);
    }
  }
  out.simple = std::all_of(out.multiplicities.begin(), out.multiplicities.end(),
                           [](int m) { return m == 1; });
  return out;
}

// Bijection between a set of sampled eigenvalues and the limit spectrum,
// minimizing the total |eigenvalue - limit| distance.  `by_cluster[c]` lists
// the indices (into the input vector) assigned to cluster c, sorted by
// decreasing real part; ties keep input order.
struct LimitAssignment {
  std::vector<std::vector<int>> by_cluster;
};

inline LimitAssignment match_to_limits(const std::vector<Complex>& eigs,
                                       const LimitSpectrum& limits) {
  const int d = limits.dim();
  if (static_cast<int>(eigs.size()) != d)
    throw std::invalid_argument("match_to_limits: eigenvalue count must equal limit count");
  const std::vector<Complex> slots = limits.expanded();
  Eigen::MatrixXd cost(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) cost(i, j) = std::abs(eigs[i] - slots[j]);
  const std::vector<int> col_of = min_cost_assignment(cost);

  LimitAssignment out;
  out.by_cluster.resize(limits.values.size());
  for (int i = 0; i < d; ++i)
    out.by_cluster[limits.cluster_of_expanded(col_of[i])].push_back(i);
  for (std::vector<int>& members : out.by_cluster) {
    std::stable_sort(members.begin(), members.end(), [&eigs](int a, int b) {
      return eigs[a].real() > eigs[b].real();
    });
  }
  return out;
}

// First perturbation term: the p-th diagonal entry.
inline Complex pi1(const ComplexMatrix& x, int p) {
  if (x.rows() != x.cols()) throw std::invalid_argument("pi1: matrix must be square");
  if (p < 0 || p >= x.rows()) throw std::out_of_range("pi1: index out of range");
  return x(p, p);
}

// Second perturbation term: sum over i != p of x_ip * x_pi / (lambda_p - lambda_i).
inline Complex pi2(const std::vector<Complex>& lambdas, const ComplexMatrix& x, int p) {
  const int d = static_cast<int>(lambdas.size());
  if (x.rows() != x.cols()) throw std::invalid_argument("pi2: matrix must be square");
  if (x.rows() != d) throw std::invalid_argument("pi2: lambdas must match matrix dimension");
  if (p < 0 || p >= d) throw std::out_of_range("pi2: index out of range");
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (lambdas[i] == lambdas[j])
        throw std::invalid_argument("pi2: repeated eigenvalue in lambdas (division hazard)");
  Complex acc(0.0, 0.0);
  for (int i = 0; i < d; ++i) {
    if (i == p) continue;
    acc += x(i, p) * x(p, i) / (lambdas[p] - lambdas[i]);
  }
  return acc;
}

// Second-order perturbation approximation of the i-th nontrivial eigenvalue:
// mu_i + pi1(W) + pi2(W) with W the perturbing part of the reduced matrix
// expressed in the eigenbasis of its deterministic part.  Requires all limit
// eigenvalues simple; columns of the diagonalizer are unit norm with first
// nonzero entry made real positive, ordered to match the limit spectrum.
inline Complex fluctuation_series_approx(const ModelSpec& spec, const ComplexMatrix& u_hat,
                                         int i) {
  const LimitSpectrum limits = limiting_eigenvalues(spec);
  if (!limits.simple)
    throw std::invalid_argument(
        "fluctuation_series_approx: limiting spectrum has multiplicities; the series "
        "expansion needs simple limits -- use the fluctuation-law objects instead");
  const ReducedMatrix red = build_reduced(spec, u_hat);
  const int d = red.dim;
  if (i < 0 || i >= d)
    throw std::out_of_range("fluctuation_series_approx: eigenvalue index out of range");

  Eigen::ComplexEigenSolver<ComplexMatrix> es(red.m_part, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("fluctuation_series_approx: eigensolver failed");
  std::vector<Complex> raw_eigs(d);
  for (int k = 0; k < d; ++k) raw_eigs[k] = es.eigenvalues()(k);
  const LimitAssignment asg = match_to_limits(raw_eigs, limits);

  ComplexMatrix rtil(d, d);
  for (int c = 0; c < d; ++c) {
    Eigen::VectorXcd v = es.eigenvectors().col(asg.by_cluster[c][0]);
    const double norm = v.norm();
    if (norm < 1e-12)
      throw std::runtime_error("fluctuation_series_approx: degenerate eigenvector");
    v /= norm;
    for (int k = 0; k < d; ++k) {
      if (std::abs(v(k)) > 1e-12) {
        v *= std::polar(1.0, -std::arg(v(k)));
        break;
      }
    }
    rtil.col(c) = v;
  }
  const ComplexMatrix w = rtil.partialPivLu().solve(red.v_part * rtil);
  return limits.values[i] + pi1(w, i) + pi2(limits.values, w, i);
}

// Draw the corner of a Haar unitary that the reduced build consumes, without
// materializing the full N x N matrix: the first uhat_cols() columns of a
// Haar unitary are a thin QR of a Ginibre block, and we keep their top rows.
inline ComplexMatrix sample_uhat(const ModelSpec& spec, RngStream& rng) {
  const ComplexMatrix cols = haar_columns(spec.n, spec.uhat_cols(), rng);
  return truncate(cols, spec.uhat_rows(), spec.uhat_cols());
}

// Least-squares estimate of the fluctuation exponent.  `std_err` is the
// standard error of kappa_hat propagated from the regression slope; `exact`
// flags deviations at solver-noise level across the whole grid (the
// eigenvalue agrees with its limit identically, kappa = infinity).
struct ExponentEstimate {
  double kappa_hat = 0.0;
  double std_err = 0.0;
  std::vector<int> n_grid;
  bool exact = false;
};

inline ExponentEstimate estimate_exponent(const ModelSpec& spec, LimitTarget target,
                                          const std::vector<int>& n_grid, int samples_per_n,
                                          RngStream rng, int threads = 1) {
  spec.validate();
  if (n_grid.size() < 3)
    throw std::invalid_argument("estimate_exponent: need at least 3 grid sizes");
  std::vector<int> grid = n_grid;
  std::sort(grid.begin(), grid.end());
  if (std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw std::invalid_argument("estimate_exponent: degenerate grid (repeated size)");
  if (grid.back() < 4 * grid.front())
    throw std::invalid_argument(
        "estimate_exponent: degenerate grid (largest size must be >= 4x the smallest)");
  if (samples_per_n < 1)
    throw std::invalid_argument("estimate_exponent: need at least one sample per size");

  const LimitSpectrum limits = limiting_eigenvalues(spec);
  if (target.cluster < 0 || target.cluster >= static_cast<int>(limits.values.size()))
    throw std::out_of_range("estimate_exponent: target cluster out of range");
  if (target.rank < 0 || target.rank >= limits.multiplicities[target.cluster])
    throw std::out_of_range("estimate_exponent: target rank exceeds cluster multiplicity");

  const int g_count = static_cast<int>(n_grid.size());
  std::vector<double> medians(g_count);
  for (int g = 0; g < g_count; ++g) {
    ModelSpec spec_n = spec;
    spec_n.n = n_grid[g];
    spec_n.validate();
    std::vector<double> devs(samples_per_n);
    parallel_for(0, samples_per_n, threads, [&](int k) {
      RngStream stream = rng.substream(g * samples_per_n + k);
      const ComplexMatrix u_hat = sample_uhat(spec_n, stream);
      const std::vector<Complex> eigs = nontrivial_eigenvalues_reduced(spec_n, u_hat);
      const LimitAssignment asg = match_to_limits(eigs, limits);
      const int which = asg.by_cluster[target.cluster][target.rank];
      devs[k] = std::abs(eigs[which] - limits.values[target.cluster]);
    });
    std::nth_element(devs.begin(), devs.begin() + samples_per_n / 2, devs.end());
    double med = devs[samples_per_n / 2];
    if (samples_per_n % 2 == 0) {
      const double below =
          *std::max_element(devs.begin(), devs.begin() + samples_per_n / 2);
      med = 0.5 * (med + below);
    }
    medians[g] = med;
  }

  ExponentEstimate out;
  out.n_grid = n_grid;
  out.exact = std::all_of(medians.begin(), medians.end(),
                          [](double m) { return m < 1e-12; });
  if (out.exact) {
    out.kappa_hat = std::numeric_limits<double>::infinity();
    out.std_err = 0.0;
    return out;
  }

  // Fit log(median) against log(N); kappa_hat = -2 * slope.  Medians at the
  // floating-point floor are clamped so the logarithm stays finite.
  std::vector<double> xs(g_count), ys(g_count);
  for (int g = 0; g < g_count; ++g) {
    xs[g] = std::log(static_cast<double>(n_grid[g]));
    ys[g] = std::log(std::max(medians[g], 1e-300));
  }
  const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / g_count;
  const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / g_count;
  double sxx = 0.0, sxy = 0.0;
  for (int g = 0; g < g_count; ++g) {
    sxx += (xs[g] - xbar) * (xs[g] - xbar);
    sxy += (xs[g] - xbar) * (ys[g] - ybar);
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (int g = 0; g < g_count; ++g) {
    const double fit = ybar + slope * (xs[g] - xbar);
    ssr += (ys[g] - fit) * (ys[g] - fit);
  }
  out.kappa_hat = -2.0 * slope;
  out.std_err = 2.0 * std::sqrt(ssr / (g_count - 2) / sxx);
  return out;
}

// Convenience overload: the target given as a flat index into the expanded
// limit list (cluster order, rank within cluster).
inline ExponentEstimate estimate_exponent(const ModelSpec& spec, int i,
                                          const std::vector<int>& n_grid, int samples_per_n,
                                          RngStream rng, int threads = 1) {
  const LimitSpectrum limits = limiting_eigenvalues(spec);
  const LimitTarget target{limits.cluster_of_expanded(i), limits.rank_of_expanded(i)};
  return estimate_exponent(spec, target, n_grid, samples_per_n, rng, threads);
}

}  // namespace haarlim
