#pragma once
// Repeated-sample experiments: draw unitary corners, rescale eigenvalue
// deviations from their limits, histogram them, and test them against
// theoretical laws with Kolmogorov-Smirnov statistics.
//
// Determinism: every sample k draws from its own counter-derived stream
// (seed, k), so results are bit-identical for any worker count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "haarlim/laws.hpp"
#include "haarlim/model.hpp"
#include "haarlim/parallel.hpp"
#include "haarlim/perturb.hpp"
#include "haarlim/randmat.hpp"

namespace haarlim {

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov statistics

// Asymptotic 1% quantile c of the Kolmogorov distribution: the one-sample
// statistic exceeds c/sqrt(n) with probability 1% under the null.
inline constexpr double kKsQuantile1Pct = 1.6276;

// Thresholds for tests against *limiting* laws: twice the 1% quantile, since
// finite-N samples come from the pre-limit law and carry a bias term.
inline double one_sample_limit_threshold(int n) {
  return 2.0 * kKsQuantile1Pct / std::sqrt(static_cast<double>(n));
}
inline double two_sample_limit_threshold(int n, int m) {
  return 2.0 * kKsQuantile1Pct *
         std::sqrt((n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

// Sup distance between the empirical CDF of `samples` and a reference CDF.
inline double ks_one_sample(std::vector<double> samples,
                            const std::function<double(double)>& cdf) {
  const int n = static_cast<int>(samples.size());
  if (n < 100)
    throw std::invalid_argument("ks_one_sample: need at least 100 samples");
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

// Sup distance between the empirical CDFs of two sample sets.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: need nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return std::max(d, 1.0 - std::min(i / na, j / nb));
}

// ---------------------------------------------------------------------------
// Histograms

struct HistogramData {
  std::vector<double> edges;               // bins + 1 ascending boundaries
  std::vector<long long> counts;           // per-bin tallies
  std::vector<double> normalized_heights;  // total area 1 over in-range mass
  long long out_of_range = 0;

  int bins() const { return static_cast<int>(counts.size()); }
  double area() const {
    double a = 0.0;
    for (int b = 0; b < bins(); ++b)
      a += normalized_heights[b] * (edges[b + 1] - edges[b]);
    return a;
  }
};

namespace detail {

inline HistogramData histogram_with_edges(const std::vector<double>& samples, double lo,
                                          double hi, int bins) {
  HistogramData h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.edges[b] = lo + b * width;
  h.edges.back() = hi;  // guard accumulation error on the last edge
  h.counts.assign(bins, 0);
  for (double x : samples) {
    if (x < lo || x > hi) {
      ++h.out_of_range;
      continue;
    }
    int b = static_cast<int>((x - lo) / width);
    if (b >= bins) b = bins - 1;  // right edge is inclusive
    ++h.counts[b];
  }
  const long long kept = static_cast<long long>(samples.size()) - h.out_of_range;
  h.normalized_heights.assign(bins, 0.0);
  if (kept > 0)
    for (int b = 0; b < bins; ++b)
      h.normalized_heights[b] =
          static_cast<double>(h.counts[b]) / (kept * (h.edges[b + 1] - h.edges[b]));
  return h;
}

}  // namespace detail

// Area-1 histogram over [min, max].  bins <= 0 selects the Rice rule
// ceil(2 n^(1/3)).  All-equal samples (including a single sample) produce one
// documented degenerate bin of width 1 centered on the value.
inline HistogramData histogram(const std::vector<double>& samples, int bins = 0) {
  if (samples.empty()) throw std::invalid_argument("histogram: need at least one sample");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *lo_it, hi = *hi_it;
  if (bins <= 0)
    bins = static_cast<int>(std::ceil(2.0 * std::cbrt(static_cast<double>(samples.size()))));
  if (hi - lo < 1e-300) {
    lo -= 0.5;
    hi += 0.5;
    bins = 1;
  }
  return detail::histogram_with_edges(samples, lo, hi, bins);
}

// Same, with a caller-chosen bin width anchored at the sample minimum.
inline HistogramData histogram_binwidth(const std::vector<double>& samples, double width) {
  if (samples.empty()) throw std::invalid_argument("histogram: need at least one sample");
  if (!(width > 0.0)) throw std::invalid_argument("histogram: bin width must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it, hi = *hi_it;
  const int bins = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
  return detail::histogram_with_edges(samples, lo, lo + bins * width, bins);
}

// ---------------------------------------------------------------------------
// Experiments

struct ExperimentConfig {
  ModelSpec spec;
  LimitTarget target;
  double kappa = 2.0;      // deviations are scaled by N^(kappa/2)
  int num_samples = 0;
  std::uint64_t seed = 0;
  Complex normalizer = Complex(1.0, 0.0);  // divisor applied after scaling
  int threads = 1;

  void validate() const {
    spec.validate();
    if (num_samples < 1)
      throw std::invalid_argument("experiment: need at least one sample");
    if (normalizer == Complex(0.0, 0.0))
      throw std::invalid_argument("experiment: normalizer must be nonzero");
    if (!(kappa > 0.0)) throw std::invalid_argument("experiment: kappa must be positive");
  }
};

struct ExperimentReport {
  std::vector<Complex> samples;  // scaled deviations N^(kappa/2) (eig - limit) / normalizer
  std::string limit_label;
  HistogramData histogram;       // real channel

  bool has_law = false;
  FluctuationLaw law;            // law of the *scaled* deviation (meaningful if has_law)
  std::string law_description;   // description, or the reason no law is available

  bool has_verdict = false;      // KS verdict computed (law known, >= 100 samples)
  bool used_two_sample = false;  // oracle sampling instead of a closed CDF
  double ks_statistic = std::numeric_limits<double>::quiet_NaN();
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;

  std::string warning;  // nonempty when limits sit closer than the scaled resolution
  double runtime_seconds = 0.0;
};

// Picks the cluster whose value lies nearest to `value` (ties resolved by the
// lower cluster index).
inline LimitTarget resolve_target_value(const LimitSpectrum& limits, Complex value,
                                        int rank = 0) {
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < limits.values.size(); ++c) {
    const double dist = std::abs(value - limits.values[c]);
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<int>(c);
    }
  }
  return LimitTarget{best, rank};
}

namespace detail {

inline std::string limit_label_of(const LimitSpectrum& limits, LimitTarget t) {
  std::ostringstream os;
  const Complex v = limits.values[t.cluster];
  os << format_double(v.real());
  if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << format_double(v.imag()) << "i";
  if (limits.multiplicities[t.cluster] > 1) os << "#" << t.rank;
  return os.str();
}

// CDF of (scaled deviation) when the law describes the unnormalized one:
// P(X/a <= x) with a real nonzero.
inline double scaled_law_cdf(const FluctuationLaw& law, double a, double x) {
  return a > 0.0 ? law_cdf(law, a * x) : 1.0 - law_cdf(law, a * x);
}

}  // namespace detail

// Draws num_samples corners, matches the nontrivial eigenvalues to their
// limits, and emits the scaled deviations of the targeted eigenvalue.  When
// the target's law is known, attaches a KS verdict against it: one-sample
// where a closed CDF exists, two-sample against oracle draws otherwise.
inline ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  config.validate();
  const LimitSpectrum limits = limiting_eigenvalues(config.spec);
  if (config.target.cluster < 0 ||
      config.target.cluster >= static_cast<int>(limits.values.size()))
    throw std::out_of_range("experiment: target cluster out of range");
  if (config.target.rank < 0 ||
      config.target.rank >= limits.multiplicities[config.target.cluster])
    throw std::out_of_range("experiment: target rank exceeds cluster multiplicity");

  ExperimentReport report;
  report.limit_label = detail::limit_label_of(limits, config.target);

  // Two limits closer than the deviation scale make the assignment ambiguous.
  const double resolution = 10.0 * std::pow(config.spec.n, -config.kappa / 2.0);
  for (std::size_t a = 0; a < limits.values.size(); ++a)
    for (std::size_t b = a + 1; b < limits.values.size(); ++b)
      if (std::abs(limits.values[a] - limits.values[b]) < resolution) {
        std::ostringstream os;
        os << "limits " << limits.values[a].real() << " and " << limits.values[b].real()
           << " lie within 10*N^(-kappa/2) = " << resolution
           << "; eigenvalue-to-limit matching may be ambiguous";
        report.warning = os.str();
      }

  const double scale = std::pow(static_cast<double>(config.spec.n), config.kappa / 2.0);
  const Complex value = limits.values[config.target.cluster];
  report.samples.resize(config.num_samples);
  parallel_for(0, config.num_samples, config.threads, [&](int k) {
    RngStream stream(config.seed, static_cast<std::uint64_t>(k));
    const ComplexMatrix u_hat = sample_uhat(config.spec, stream);
    const std::vector<Complex> eigs = nontrivial_eigenvalues_reduced(config.spec, u_hat);
    const LimitAssignment asg = match_to_limits(eigs, limits);
    const Complex eig = eigs[asg.by_cluster[config.target.cluster][config.target.rank]];
    report.samples[k] = scale * (eig - value) / config.normalizer;
  });

  std::vector<double> re(config.num_samples);
  for (int k = 0; k < config.num_samples; ++k) re[k] = report.samples[k].real();
  report.histogram = histogram(re);

  try {
    const TargetLaw tl = law_for_target(config.spec, config.target);
    report.has_law = true;
    report.law = tl.law;
    report.law_description = law_describe(tl.law);
    if (std::abs(tl.kappa - config.kappa) > 1e-12) {
      std::ostringstream os;
      os << (report.warning.empty() ? "" : report.warning + "; ")
         << "configured kappa " << config.kappa << " differs from the law's kappa "
         << tl.kappa;
      report.warning = os.str();
    }
  } catch (const std::exception& e) {
    report.law_description = e.what();
  }

  const bool real_normalizer = config.normalizer.imag() == 0.0;
  if (report.has_law && real_normalizer && config.num_samples >= 100) {
    const double a = config.normalizer.real();
    if (law_has_cdf(report.law)) {
      report.ks_statistic = ks_one_sample(
          re, [&](double x) { return detail::scaled_law_cdf(report.law, a, x); });
      report.threshold = one_sample_limit_threshold(config.num_samples);
    } else {
      std::vector<double> oracle(config.num_samples);
      parallel_for(0, config.num_samples, config.threads, [&](int k) {
        RngStream stream(config.seed,
                         static_cast<std::uint64_t>(config.num_samples + k));
        oracle[k] = law_sample(report.law, stream).real() / a;
      });
      report.ks_statistic = ks_two_sample(re, oracle);
      report.threshold =
          two_sample_limit_threshold(config.num_samples, config.num_samples);
      report.used_two_sample = true;
    }
    report.has_verdict = true;
    report.pass = report.ks_statistic < report.threshold;
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace haarlim
