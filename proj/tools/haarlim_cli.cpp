// Command-line front end: inspect limiting spectra, print and tabulate
// fluctuation laws, run Monte Carlo experiments with KS verdicts, re-bin
// stored samples, and run the built-in verification battery.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "haarlim/config.hpp"
#include "haarlim/io.hpp"
#include "haarlim/verify.hpp"

namespace {

using namespace haarlim;

std::string config_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// fig2 + label "zeta" -> "fig2_zeta"; the single unnamed experiment keeps
// the bare stem.
std::string file_base(const std::string& stem, const ExperimentPlan& plan) {
  return plan.label.empty() ? stem : stem + "_" + plan.label;
}

std::string plan_title(const ExperimentPlan& plan) {
  return plan.label.empty() ? std::string("experiment") : plan.label;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

std::string join(const std::string& dir, const std::string& file) {
  return dir.empty() ? file : (std::filesystem::path(dir) / file).string();
}

int cmd_limits(const std::string& config_path) {
  const RunConfig rc = load_run_config(config_path);
  const LimitSpectrum limits = limiting_eigenvalues(rc.model);
  std::cout << "model: " << to_string(rc.model.kind);
  if (rc.model.uses_poly()) std::cout << "  P = " << to_string(rc.model.poly);
  std::cout << "  N = " << rc.model.n << "\n";
  std::cout << "nontrivial limit spectrum (" << limits.dim() << " of " << rc.model.n
            << " eigenvalues; the rest sit at 0):\n";
  std::cout << "  cluster  limit            multiplicity\n";
  for (std::size_t c = 0; c < limits.values.size(); ++c) {
    const Complex v = limits.values[c];
    std::string value = detail::format_double(v.real());
    if (v.imag() != 0.0)
      value += (v.imag() > 0 ? "+" : "") + detail::format_double(v.imag()) + "i";
    std::printf("  %-7zu  %-15s  %d\n", c, value.c_str(), limits.multiplicities[c]);
  }
  return 0;
}

int cmd_law(const std::string& config_path, const std::string& out_dir) {
  const RunConfig rc = load_run_config(config_path);
  const std::string dir = out_dir.empty() ? rc.output.dir : out_dir;
  ensure_dir(dir);
  const LimitSpectrum limits = limiting_eigenvalues(rc.model);
  const std::string stem = config_stem(config_path);

  for (const ExperimentPlan& plan : rc.experiments) {
    const std::string label = detail::limit_label_of(limits, plan.target);
    std::cout << plan_title(plan) << ": limit " << label;
    TargetLaw law;
    bool known = true;
    try {
      law = law_for_target(rc.model, plan.target);
    } catch (const std::exception& e) {
      known = false;
      std::cout << "\n  no closed-form law: " << e.what() << "\n";
    }
    if (!known) continue;
    std::cout << "  kappa " << law.kappa << "\n";
    std::cout << "  law: " << law_describe(law.law) << "\n";
    if (!law.note.empty()) std::cout << "  note: " << law.note << "\n";
    if (!dir.empty() && law_has_density(law.law)) {
      const double lo = rc.output.has_density_range ? rc.output.density_lo : -10.0;
      const double hi = rc.output.has_density_range ? rc.output.density_hi : 10.0;
      const int points = rc.output.has_density_range ? rc.output.density_points : 201;
      const std::string path = join(dir, file_base(stem, plan) + "_density.csv");
      write_density_csv(path, law.law, lo, hi, points);
      std::cout << "  density table: " << path << "\n";
    }
  }
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 int samples_override, long long seed_override, int threads) {
  const RunConfig rc = load_run_config(config_path);
  const std::string dir = out_dir.empty() ? rc.output.dir : out_dir;
  ensure_dir(dir);
  const std::string stem = config_stem(config_path);

  for (const ExperimentPlan& plan : rc.experiments) {
    ExperimentConfig config;
    config.spec = rc.model;
    config.target = plan.target;
    config.kappa = resolve_kappa(rc.model, plan);
    config.num_samples = samples_override > 0 ? samples_override : plan.samples;
    config.seed = seed_override >= 0 ? static_cast<std::uint64_t>(seed_override) : plan.seed;
    config.normalizer = plan.normalizer;
    config.threads = threads;
    const ExperimentReport report = run_experiment(config);

    const std::string base = file_base(stem, plan);
    write_samples_csv(join(dir, base + "_samples.csv"), report.samples,
                      report.limit_label);

    // Histogram at the configured bin count, overlaid with the law's density
    // mapped to the plotted (normalizer-divided) variable when available.
    std::vector<double> re(report.samples.size());
    for (std::size_t k = 0; k < re.size(); ++k) re[k] = report.samples[k].real();
    const HistogramData hist = histogram(re, rc.output.bins);
    std::function<double(double)> overlay;
    if (report.has_law && config.normalizer.imag() == 0.0 &&
        law_has_density(report.law)) {
      const double a = config.normalizer.real();
      const FluctuationLaw law = report.law;
      overlay = [law, a](double x) { return std::abs(a) * law_density(law, a * x); };
    }
    write_histogram_csv(join(dir, base + "_hist.csv"), hist, overlay);
    write_report_json(join(dir, base + "_report.json"), config, report);

    std::cout << base << ": N=" << config.spec.n << " samples=" << config.num_samples
              << " kappa=" << config.kappa << " limit=" << report.limit_label;
    if (report.has_verdict) {
      std::cout << " KS=" << report.ks_statistic
                << (report.used_two_sample ? " (two-sample," : " (one-sample,")
                << " threshold " << report.threshold << ") "
                << (report.pass ? "OK" : "DEVIATES");
    } else if (report.has_law) {
      std::cout << " (law known; too few samples for a KS verdict)";
    } else {
      std::cout << " (no closed-form law)";
    }
    std::cout << "\n";
    if (!report.warning.empty()) std::cout << "  warning: " << report.warning << "\n";
  }
  return 0;
}

int cmd_hist(const std::string& in_path, int bins, const std::string& out_path) {
  const std::vector<double> samples = read_samples_csv(in_path);
  const HistogramData hist = histogram(samples, bins);
  const std::filesystem::path parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  write_histogram_csv(out_path, hist);
  std::cout << "wrote " << hist.bins() << " bins over [" << hist.edges.front() << ", "
            << hist.edges.back() << "] from " << samples.size() << " samples to "
            << out_path << "\n";
  return 0;
}

int cmd_verify(const std::string& filter) {
  const std::vector<CriterionResult> results = run_acceptance(filter);
  if (results.empty()) {
    std::cerr << "no criterion matches filter \"" << filter << "\"\n";
    return 1;
  }
  const int hard = print_acceptance(results, stdout);
  return hard > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limiting eigenvalues and fluctuation laws of polynomial models "
               "in a Haar unitary cut by finite-rank diagonals"};
  app.require_subcommand(1);

  std::string config_path, out_dir, in_path, out_path, filter;
  int bins = 0, samples_override = 0, threads = 1;
  long long seed_override = -1;

  CLI::App* limits = app.add_subcommand("limits", "print the limiting spectrum");
  limits->add_option("--config", config_path, "run configuration (JSON)")->required();

  CLI::App* law = app.add_subcommand("law", "describe the fluctuation laws");
  law->add_option("--config", config_path, "run configuration (JSON)")->required();
  law->add_option("--out", out_dir, "directory for density tables");

  CLI::App* simulate =
      app.add_subcommand("simulate", "sample scaled deviations and test them");
  simulate->add_option("--config", config_path, "run configuration (JSON)")->required();
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--samples", samples_override, "override the sample count");
  simulate->add_option("--seed", seed_override, "override the seed");
  simulate->add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);

  CLI::App* hist = app.add_subcommand("hist", "re-bin a stored samples CSV");
  hist->add_option("--in", in_path, "samples CSV")->required();
  hist->add_option("--bins", bins, "bin count (0: Rice rule)");
  hist->add_option("--out", out_path, "output CSV")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the verification battery");
  verify->add_option("--filter", filter, "run only criteria whose name contains this");

  CLI11_PARSE(app, argc, argv);

  try {
    if (limits->parsed()) return cmd_limits(config_path);
    if (law->parsed()) return cmd_law(config_path, out_dir);
    if (simulate->parsed())
      return cmd_simulate(config_path, out_dir, samples_override, seed_override, threads);
    if (hist->parsed()) return cmd_hist(in_path, bins, out_path);
    if (verify->parsed()) return cmd_verify(filter);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
