#pragma once
// JSON run configurations: a model, one or more experiment plans, and output
// options.  The schema accepts targets as flat indices, cluster/rank pairs,
// or nearest-limit values, and resolves the scaling exponent kappa from the
// law table, from the empirical estimator ("auto"), or from an explicit
// number.

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "haarlim/io.hpp"
#include "haarlim/montecarlo.hpp"
#include "haarlim/perturb.hpp"

namespace haarlim {

enum class KappaMode { FromLaw, Auto, Explicit };

struct ExperimentPlan {
  std::string label;  // empty for the single unnamed experiment
  LimitTarget target;
  KappaMode kappa_mode = KappaMode::FromLaw;
  double kappa = 2.0;  // used when kappa_mode == Explicit
  int samples = 500;
  std::uint64_t seed = 1;
  Complex normalizer = Complex(1.0, 0.0);
};

struct OutputOptions {
  std::string dir;  // empty: stdout-only (law) / current directory (simulate)
  int bins = 0;     // 0: Rice rule
  bool has_density_range = false;
  double density_lo = 0.0;
  double density_hi = 0.0;
  int density_points = 201;
};

struct RunConfig {
  ModelSpec model;
  std::vector<ExperimentPlan> experiments;
  OutputOptions output;
};

namespace detail {

inline Complex complex_from_json(const nlohmann::json& j, const char* what) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument(std::string("config: ") + what +
                              " must be a number or a [re, im] pair");
}

inline std::vector<Complex> complex_vector_from_json(const nlohmann::json& j,
                                                     const char* what) {
  if (!j.is_array())
    throw std::invalid_argument(std::string("config: ") + what + " must be an array");
  std::vector<Complex> out;
  for (const auto& v : j) out.push_back(complex_from_json(v, what));
  return out;
}

}  // namespace detail

inline ModelKind model_kind_from_string(const std::string& s) {
  if (s == "general") return ModelKind::GeneralTwoVar;
  if (s == "conjugation") return ModelKind::Conjugation;
  if (s == "sum_conjugation") return ModelKind::SumConjugation;
  if (s == "rotation") return ModelKind::Rotation;
  throw std::invalid_argument(
      "config: unknown model kind \"" + s +
      "\" (expected general, conjugation, sum_conjugation, or rotation)");
}

inline ModelSpec model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: model must be an object");
  ModelSpec spec;
  if (!j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("config: model.kind (string) is required");
  spec.kind = model_kind_from_string(j["kind"].get<std::string>());
  if (j.contains("polynomial")) {
    if (!j["polynomial"].is_string())
      throw std::invalid_argument("config: model.polynomial must be a string");
    spec.poly = parse_polynomial(j["polynomial"].get<std::string>());
  }
  if (!j.contains("alphas"))
    throw std::invalid_argument("config: model.alphas is required");
  spec.alphas = detail::complex_vector_from_json(j["alphas"], "model.alphas");
  if (j.contains("betas"))
    spec.betas = detail::complex_vector_from_json(j["betas"], "model.betas");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw std::invalid_argument("config: model.n (integer) is required");
  spec.n = j["n"].get<int>();
  spec.validate();
  return spec;
}

namespace detail {

// Accepted target forms: a flat integer index into the expanded limit list,
// {"cluster": c, "rank": k}, or {"value": v, "rank": k} resolving to the
// nearest cluster.
inline LimitTarget target_from_json(const nlohmann::json& j, const LimitSpectrum& limits) {
  if (j.is_number_integer()) {
    const int flat = j.get<int>();
    if (flat < 0 || flat >= limits.dim())
      throw std::out_of_range("config: flat target index out of range");
    return LimitTarget{limits.cluster_of_expanded(flat), limits.rank_of_expanded(flat)};
  }
  if (!j.is_object())
    throw std::invalid_argument(
        "config: target must be an integer, {cluster, rank}, or {value, rank}");
  LimitTarget t{0, 0};
  if (j.contains("rank")) {
    if (!j["rank"].is_number_integer())
      throw std::invalid_argument("config: target.rank must be an integer");
    t.rank = j["rank"].get<int>();
  }
  if (j.contains("cluster") == j.contains("value"))
    throw std::invalid_argument("config: target needs exactly one of cluster or value");
  if (j.contains("cluster")) {
    if (!j["cluster"].is_number_integer())
      throw std::invalid_argument("config: target.cluster must be an integer");
    t.cluster = j["cluster"].get<int>();
  } else {
    t.cluster = resolve_target_value(limits, complex_from_json(j["value"], "target.value"),
                                     t.rank)
                    .cluster;
  }
  if (t.cluster < 0 || t.cluster >= static_cast<int>(limits.values.size()))
    throw std::out_of_range("config: target cluster out of range");
  if (t.rank < 0 || t.rank >= limits.multiplicities[t.cluster])
    throw std::out_of_range("config: target rank exceeds the cluster multiplicity");
  return t;
}

inline ExperimentPlan plan_from_json(const nlohmann::json& j, const LimitSpectrum& limits,
                                     int position) {
  if (!j.is_object())
    throw std::invalid_argument("config: each experiment must be an object");
  ExperimentPlan plan;
  plan.label = j.value("label", std::string());
  if (!j.contains("target"))
    throw std::invalid_argument("config: experiment.target is required");
  plan.target = target_from_json(j["target"], limits);
  if (j.contains("kappa")) {
    const auto& k = j["kappa"];
    if (k.is_string() && k.get<std::string>() == "auto") {
      plan.kappa_mode = KappaMode::Auto;
    } else if (k.is_number()) {
      plan.kappa_mode = KappaMode::Explicit;
      plan.kappa = k.get<double>();
      if (!(plan.kappa > 0.0))
        throw std::invalid_argument("config: experiment.kappa must be positive");
    } else {
      throw std::invalid_argument("config: experiment.kappa must be a number or \"auto\"");
    }
  }
  plan.samples = j.value("samples", 500);
  if (plan.samples < 1)
    throw std::invalid_argument("config: experiment.samples must be >= 1");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer())
      throw std::invalid_argument("config: experiment.seed must be an integer");
    plan.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("normalizer")) {
    plan.normalizer = complex_from_json(j["normalizer"], "experiment.normalizer");
    if (plan.normalizer == Complex(0.0, 0.0))
      throw std::invalid_argument("config: experiment.normalizer must be nonzero");
  }
  if (plan.label.empty() && position >= 0)
    plan.label = "exp" + std::to_string(position);
  return plan;
}

}  // namespace detail

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  if (!j.contains("model")) throw std::invalid_argument("config: model is required");
  RunConfig rc;
  rc.model = model_from_json(j["model"]);
  const LimitSpectrum limits = limiting_eigenvalues(rc.model);

  if (j.contains("experiment") == j.contains("experiments"))
    throw std::invalid_argument(
        "config: provide exactly one of experiment (object) or experiments (array)");
  if (j.contains("experiment")) {
    rc.experiments.push_back(detail::plan_from_json(j["experiment"], limits, -1));
  } else {
    if (!j["experiments"].is_array() || j["experiments"].empty())
      throw std::invalid_argument("config: experiments must be a nonempty array");
    int position = 0;
    for (const auto& e : j["experiments"])
      rc.experiments.push_back(detail::plan_from_json(e, limits, position++));
  }

  if (j.contains("output")) {
    const auto& o = j["output"];
    if (!o.is_object()) throw std::invalid_argument("config: output must be an object");
    rc.output.dir = o.value("dir", std::string());
    rc.output.bins = o.value("bins", 0);
    if (o.contains("density")) {
      const auto& d = o["density"];
      if (!d.is_object() || !d.contains("lo") || !d.contains("hi"))
        throw std::invalid_argument("config: output.density needs lo and hi");
      rc.output.has_density_range = true;
      rc.output.density_lo = d["lo"].get<double>();
      rc.output.density_hi = d["hi"].get<double>();
      rc.output.density_points = d.value("points", 201);
      if (!(rc.output.density_hi > rc.output.density_lo) || rc.output.density_points < 2)
        throw std::invalid_argument("config: output.density range is ill-formed");
    }
  }
  return rc;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config " + path + " is not valid JSON: " + e.what());
  }
  return run_config_from_json(j);
}

// The exponent used to rescale deviations.  FromLaw reads it off the law
// table (2.0 when no law is known); Auto fits the empirical decay over a
// fixed size grid and snaps to the nearest law exponent in {1, 2}.
inline double resolve_kappa(const ModelSpec& spec, const ExperimentPlan& plan) {
  switch (plan.kappa_mode) {
    case KappaMode::Explicit:
      return plan.kappa;
    case KappaMode::FromLaw:
      try {
        return law_for_target(spec, plan.target).kappa;
      } catch (const std::exception&) {
        return 2.0;
      }
    case KappaMode::Auto: {
      const std::vector<int> grid = {100, 200, 400};
      const ExponentEstimate e =
          estimate_exponent(spec, plan.target, grid, 200, RngStream(plan.seed, 0));
      if (e.exact) return 2.0;  // deviations vanish; any finite kappa works
      return std::abs(e.kappa_hat - 1.0) < std::abs(e.kappa_hat - 2.0) ? 1.0 : 2.0;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace haarlim
