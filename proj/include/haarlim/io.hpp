#pragma once
// CSV and JSON serialization for experiment outputs: per-sample deviations,
// histograms with optional theoretical overlays, density/CDF tables, and a
// machine-readable run report.

#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "haarlim/montecarlo.hpp"

namespace haarlim {

namespace detail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace detail

// Columns: sample_index, limit_label, scaled_deviation_re, scaled_deviation_im.
inline void write_samples_csv(const std::string& path, const std::vector<Complex>& samples,
                              const std::string& limit_label) {
  auto out = detail::open_out(path);
  out << "sample_index,limit_label,scaled_deviation_re,scaled_deviation_im\n";
  for (std::size_t k = 0; k < samples.size(); ++k)
    out << k << "," << limit_label << "," << detail::format_double(samples[k].real())
        << "," << detail::format_double(samples[k].imag()) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Reads the scaled_deviation_re column back from a samples CSV.
inline std::vector<double> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty samples file: " + path);
  std::vector<double> re;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // third comma-separated field
    std::size_t p1 = line.find(',');
    std::size_t p2 = p1 == std::string::npos ? p1 : line.find(',', p1 + 1);
    if (p2 == std::string::npos)
      throw std::runtime_error("malformed samples row: " + line);
    std::size_t p3 = line.find(',', p2 + 1);
    const std::string field = line.substr(p2 + 1, p3 == std::string::npos
                                                      ? std::string::npos
                                                      : p3 - p2 - 1);
    try {
      re.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw std::runtime_error("malformed samples row: " + line);
    }
  }
  if (re.empty()) throw std::runtime_error("no samples in file: " + path);
  return re;
}

// Columns: bin_left, bin_right, count, height[, overlay_density at the bin
// center when an overlay is supplied].
inline void write_histogram_csv(const std::string& path, const HistogramData& hist,
                                const std::function<double(double)>& overlay = nullptr) {
  auto out = detail::open_out(path);
  out << "bin_left,bin_right,count,height";
  if (overlay) out << ",overlay_density";
  out << "\n";
  for (int b = 0; b < hist.bins(); ++b) {
    out << detail::format_double(hist.edges[b]) << ","
        << detail::format_double(hist.edges[b + 1]) << "," << hist.counts[b] << ","
        << detail::format_double(hist.normalized_heights[b]);
    if (overlay)
      out << "," << detail::format_double(overlay(0.5 * (hist.edges[b] + hist.edges[b + 1])));
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Tabulates a law's density (and CDF when closed-form) on a uniform grid.
inline void write_density_csv(const std::string& path, const FluctuationLaw& law,
                              double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("density table: need at least 2 points");
  if (!(hi > lo)) throw std::invalid_argument("density table: need hi > lo");
  const bool closed = law_has_cdf(law);
  auto out = detail::open_out(path);
  out << (closed ? "x,density,cdf\n" : "x,density\n");
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    out << detail::format_double(x) << "," << detail::format_double(law_density(law, x));
    if (closed) out << "," << detail::format_double(law_cdf(law, x));
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline nlohmann::json model_to_json(const ModelSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  if (spec.uses_poly()) j["polynomial"] = to_string(spec.poly);
  auto dump = [](const std::vector<Complex>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Complex& c : v)
      if (c.imag() == 0.0)
        arr.push_back(c.real());
      else
        arr.push_back({c.real(), c.imag()});
    return arr;
  };
  j["alphas"] = dump(spec.alphas);
  if (!spec.betas.empty()) j["betas"] = dump(spec.betas);
  j["n"] = spec.n;
  return j;
}

inline nlohmann::json report_to_json(const ExperimentConfig& config,
                                     const ExperimentReport& report) {
  nlohmann::json j;
  j["model"] = model_to_json(config.spec);
  j["target"] = {{"cluster", config.target.cluster}, {"rank", config.target.rank}};
  j["limit_label"] = report.limit_label;
  j["kappa"] = config.kappa;
  j["num_samples"] = config.num_samples;
  j["seed"] = config.seed;
  j["normalizer"] = {config.normalizer.real(), config.normalizer.imag()};
  j["law"] = {{"known", report.has_law}, {"description", report.law_description}};
  if (report.has_verdict) {
    j["ks"] = {{"statistic", report.ks_statistic},
               {"threshold", report.threshold},
               {"two_sample", report.used_two_sample},
               {"pass", report.pass}};
  }
  if (!report.warning.empty()) j["warning"] = report.warning;
  j["histogram"] = {{"edges", report.histogram.edges},
                    {"counts", report.histogram.counts},
                    {"heights", report.histogram.normalized_heights},
                    {"out_of_range", report.histogram.out_of_range}};
  j["runtime_seconds"] = report.runtime_seconds;
  return j;
}

inline void write_report_json(const std::string& path, const ExperimentConfig& config,
                              const ExperimentReport& report) {
  auto out = detail::open_out(path);
  out << report_to_json(config, report).dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace haarlim
