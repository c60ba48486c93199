#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reproscore/rubric.hpp"
#include "reproscore/submetrics.hpp"

namespace reproscore {

// Piecewise linear / power-law gate. Linear at and above tau, power-law
// contraction below; continuous at tau and monotone in x.
inline double gate(double x, double tau, double k) {
  if (!(x >= 0.0 && x <= 100.0)) throw std::domain_error("gate: x out of [0,100]");
  if (!(tau > 0.0 && tau <= 100.0)) throw std::domain_error("gate: tau out of (0,100]");
  if (!(k >= 1.0)) throw std::domain_error("gate: k below 1");
  if (x >= tau) return x / 100.0;
  return std::pow(x / tau, k) * tau / 100.0;
}

struct CategoryScore {
  double raw = 0.0;      // x_i in [0,100]
  double gated = 0.0;    // g(x_i) in [0,1]
  bool applicable = true;
};

struct CategoryScores {
  std::map<Category, CategoryScore> by_category;
};

struct ExecutionEvidence {
  std::optional<double> install_success;        // I
  std::optional<double> execution_success;      // X
  std::optional<double> output_determinism;     // Delta
  std::optional<double> notebook_exec_rate;     // N
  std::optional<double> import_success_rate;    // E'
  std::optional<double> test_pass_rate;         // T

  struct Component {
    const char* key;
    double weight;
    const std::optional<double>* value;
  };
  std::vector<Component> components() const {
    return {{"I", 0.30, &install_success},
            {"X", 0.25, &execution_success},
            {"delta", 0.20, &output_determinism},
            {"N", 0.10, &notebook_exec_rate},
            {"E_prime", 0.10, &import_success_rate},
            {"T", 0.05, &test_pass_rate}};
  }
  bool empty() const {
    for (const auto& c : components())
      if (c.value->has_value()) return false;
    return true;
  }
  std::vector<std::string> validate() const {
    std::vector<std::string> errors;
    for (const auto& c : components())
      if (c.value->has_value() && (**c.value < 0.0 || **c.value > 100.0))
        errors.push_back(std::string("component ") + c.key + " out of [0,100]");
    return errors;
  }
};

inline constexpr double kAlphaMax = 0.70;
inline constexpr double kAlphaMin = 0.10;

struct Assessment {
  CategoryScores categories;
  double penalty_hard = 0.0;
  double penalty_seed = 0.0;
  double rrs_raw = 0.0;  // before clamping, retained for audit
  double rrs = 0.0;
  std::optional<double> ros;  // nullopt = undefined
  double alpha = 0.0;
  double rcs = 0.0;
  std::string rubric_name;
  std::string rubric_version;
  std::vector<SubMetricResult> submetrics;
  std::optional<ExecutionEvidence> evidence;
};

// Within-category weighted mean with weight renormalization over the
// applicable sub-metrics; all-N/A categories score 0 and are flagged.
inline CategoryScore aggregate_category(
    const std::vector<const SubMetricResult*>& results,
    const std::vector<double>& weights) {
  if (results.size() != weights.size())
    throw std::invalid_argument("aggregate_category: size mismatch");
  double mass = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]->applicable()) continue;
    mass += weights[i];
    acc += weights[i] * *results[i]->score;
  }
  CategoryScore cs;
  if (mass <= 0.0) {
    cs.raw = 0.0;
    cs.applicable = false;
  } else {
    cs.raw = acc / mass;
  }
  return cs;
}

inline double hard_penalty(double e_raw, double a_raw) {
  if (e_raw < 0 || e_raw > 100 || a_raw < 0 || a_raw > 100)
    throw std::domain_error("hard_penalty: raw out of [0,100]");
  return (e_raw < 10.0 ? 20.0 : 0.0) + (a_raw < 10.0 ? 15.0 : 0.0);
}

inline double seed_penalty(std::optional<double> sigma) {
  if (!sigma) return 0.0;  // no stochastic operations detected
  if (*sigma < 0 || *sigma > 100)
    throw std::domain_error("seed_penalty: sigma out of [0,100]");
  return *sigma < 50.0 ? 10.0 : 0.0;
}

struct RrsBreakdown {
  std::map<Category, double> gated_contribution;  // 100 * w_i * g_i
  double penalty_hard = 0.0;
  double penalty_seed = 0.0;
  double raw = 0.0;  // pre-clamp
  double rrs = 0.0;
};

inline RrsBreakdown compute_rrs(CategoryScores& categories,
                                const RubricProfile& rubric,
                                std::optional<double> sigma) {
  RrsBreakdown b;
  double acc = 0.0;
  for (auto cat : kCategories) {
    const auto& policy = rubric.categories.at(cat);
    auto& cs = categories.by_category[cat];
    cs.gated = gate(cs.raw, policy.tau, policy.k);
    double contrib = 100.0 * policy.weight * cs.gated;
    b.gated_contribution[cat] = contrib;
    acc += contrib;
  }
  b.penalty_hard = hard_penalty(categories.by_category[Category::E].raw,
                                categories.by_category[Category::A].raw);
  b.penalty_seed = seed_penalty(sigma);
  b.raw = acc - b.penalty_hard - b.penalty_seed;
  b.rrs = std::min(100.0, std::max(0.0, b.raw));
  return b;
}

inline constexpr double kRosUndefined = -1.0;

inline std::optional<double> compute_ros(const ExecutionEvidence& evidence) {
  double num = 0.0, den = 0.0;
  for (const auto& c : evidence.components()) {
    if (!c.value->has_value()) continue;
    num += c.weight * **c.value;
    den += c.weight;
  }
  if (den <= 0.0) return std::nullopt;  // undefined
  return num / den;
}

inline double compute_alpha(const ExecutionEvidence& evidence) {
  // Component weights are exact hundredths; integer accumulation keeps the
  // canonical coverage masses (e.g. 0.75 * 0.70 = 0.525) free of float drift.
  long mass_pct = 0;
  bool any = false;
  for (const auto& c : evidence.components()) {
    if (!c.value->has_value()) continue;
    any = true;
    mass_pct += std::lround(c.weight * 100.0);
  }
  if (!any) return 0.0;
  mass_pct = std::min(mass_pct, 100L);
  long cap_pct = std::lround(kAlphaMax * 100.0);
  double alpha = static_cast<double>(mass_pct * cap_pct) / 10000.0;
  return std::max(alpha, kAlphaMin);
}

inline double compute_rcs(double rrs, std::optional<double> ros, double alpha) {
  if (!ros) return rrs;
  return (1.0 - alpha) * rrs + alpha * *ros;
}

enum class FailureMode { success, install_dep, missing_module, missing_data, code_error };

inline const char* failure_mode_name(FailureMode m) {
  switch (m) {
    case FailureMode::success: return "success";
    case FailureMode::install_dep: return "install_dep";
    case FailureMode::missing_module: return "missing_module";
    case FailureMode::missing_data: return "missing_data";
    case FailureMode::code_error: return "code_error";
  }
  return "?";
}

inline std::optional<FailureMode> failure_mode_from_name(const std::string& s) {
  if (s == "success") return FailureMode::success;
  if (s == "install_dep") return FailureMode::install_dep;
  if (s == "missing_module") return FailureMode::missing_module;
  if (s == "missing_data") return FailureMode::missing_data;
  if (s == "code_error") return FailureMode::code_error;
  return std::nullopt;
}

// Proxy probes derived from a failure-mode label: install success unless the
// repo failed at install, execution success only on full success, notebook
// rate from the per-notebook counts, import success unless imports failed.
// Determinism and test-pass probes require real execution and stay absent.
inline ExecutionEvidence derive_proxy_evidence(FailureMode mode,
                                               long success_nb_count,
                                               long total_exec_count) {
  if (success_nb_count < 0 || total_exec_count < 0 ||
      success_nb_count > total_exec_count)
    throw std::invalid_argument("derive_proxy_evidence: invalid counts");
  ExecutionEvidence ev;
  ev.install_success = (mode != FailureMode::install_dep) ? 100.0 : 0.0;
  ev.execution_success = (mode == FailureMode::success) ? 100.0 : 0.0;
  if (total_exec_count > 0)
    ev.notebook_exec_rate =
        100.0 * static_cast<double>(success_nb_count) / total_exec_count;
  ev.import_success_rate = (mode != FailureMode::missing_module) ? 100.0 : 0.0;
  return ev;
}

// Assembles an assessment from sub-metric results. Shared by direct scoring
// and provenance recomputation so both routes are bit-identical.
inline Assessment score_from_submetrics(
    const std::vector<SubMetricResult>& results, const RubricProfile& rubric,
    const SubMetricRegistry& registry,
    const std::optional<ExecutionEvidence>& evidence = std::nullopt) {
  Assessment a;
  a.submetrics = results;
  a.rubric_name = rubric.name;
  a.rubric_version = rubric.version;

  std::optional<double> sigma;
  for (auto cat : kCategories) {
    std::vector<const SubMetricResult*> cat_results;
    std::vector<double> weights;
    for (const auto* entry : registry.of_category(cat)) {
      const SubMetricResult* found = nullptr;
      for (const auto& r : results)
        if (r.id == entry->id) found = &r;
      if (!found)
        throw std::runtime_error("missing sub-metric result: " + entry->id);
      cat_results.push_back(found);
      weights.push_back(rubric.effective_submetric_weight(*entry));
      if (entry->id == "seed_management" && found->applicable())
        sigma = *found->score;
    }
    a.categories.by_category[cat] = aggregate_category(cat_results, weights);
  }

  auto breakdown = compute_rrs(a.categories, rubric, sigma);
  a.penalty_hard = breakdown.penalty_hard;
  a.penalty_seed = breakdown.penalty_seed;
  a.rrs_raw = breakdown.raw;
  a.rrs = breakdown.rrs;

  if (evidence && !evidence->empty()) {
    a.evidence = evidence;
    a.ros = compute_ros(*evidence);
    a.alpha = compute_alpha(*evidence);
  } else {
    a.ros = std::nullopt;
    a.alpha = 0.0;
  }
  a.rcs = compute_rcs(a.rrs, a.ros, a.alpha);
  return a;
}

}  // namespace reproscore
