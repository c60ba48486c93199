#pragma once

#include <iomanip>
#include <set>
#include <sstream>

#include "reproscore/corpus.hpp"

namespace reproscore {

struct DiagnosticsOptions {
  std::set<std::string> analyses;  // empty = all
  std::uint64_t bootstrap_seed = 0;
  int bootstrap_resamples = 10000;
  double perturbation_span = 0.5;
  int perturbation_steps = 20;

  bool wants(const std::string& name) const {
    return analyses.empty() || analyses.count(name) > 0;
  }
};

struct DiagnosticsReport {
  std::optional<std::map<Category, CategoryGroupStats>> group;
  std::optional<std::map<Category, std::vector<PairwiseStats>>> pairwise;
  std::optional<std::vector<SubMetricStat>> submetrics;
  std::optional<double> auc;
  std::optional<stats::ConfidenceInterval> auc_ci;
  std::optional<PerturbationResult> perturbation;
  std::optional<double> loco_baseline;
  std::optional<std::vector<LocoRow>> loco;
  std::optional<GridSearchResult> grid;
  std::size_t n_records = 0;
};

inline DiagnosticsReport run_diagnostics(const Corpus& corpus,
                                         const RubricProfile& rubric,
                                         const DiagnosticsOptions& opt = {}) {
  DiagnosticsReport rep;
  rep.n_records = corpus.records.size();
  if (corpus.records.empty()) return rep;

  bool both_classes = false, all_success = true, none_success = true;
  for (const auto& r : corpus.records)
    (r.binary_success() ? none_success : all_success) = false;
  both_classes = !all_success && !none_success;

  if (opt.wants("group")) rep.group = category_group_stats(corpus);
  if (opt.wants("pairwise")) rep.pairwise = pairwise_stats(corpus);
  if (opt.wants("submetrics")) rep.submetrics = submetric_stats(corpus);
  if (opt.wants("auc") && both_classes) {
    std::vector<double> scores;
    std::vector<int> labels;
    for (const auto& r : corpus.records) {
      scores.push_back(r.rrs);
      labels.push_back(r.binary_success());
    }
    rep.auc = stats::auc_roc(scores, labels);
    rep.auc_ci = stats::bootstrap_ci(scores, labels, opt.bootstrap_resamples, 0.95,
                                     opt.bootstrap_seed);
  }
  if (opt.wants("perturbation"))
    rep.perturbation = weight_perturbation(corpus, rubric, opt.perturbation_span,
                                           opt.perturbation_steps);
  if (opt.wants("loco") && both_classes) {
    auto [baseline, rows] = loco_analysis(corpus, rubric);
    rep.loco_baseline = baseline;
    rep.loco = rows;
  }
  if (opt.wants("grid") && both_classes)
    rep.grid = grid_search_weights(corpus, rubric);
  return rep;
}

inline json diagnostics_to_json(const DiagnosticsReport& rep) {
  json j;
  j["n_records"] = rep.n_records;
  if (rep.group) {
    json g = json::object();
    for (const auto& [cat, s] : *rep.group)
      g[category_name(cat)] = {{"H", s.kw_h},
                               {"p_KW", s.kw_p},
                               {"r_pb", s.r_pb},
                               {"p_pb", s.p_pb}};
    j["group"] = g;
  }
  if (rep.pairwise) {
    json pw = json::object();
    for (const auto& [cat, rows] : *rep.pairwise) {
      json arr = json::array();
      for (const auto& ps : rows)
        arr.push_back({{"a", failure_mode_name(ps.a)},
                       {"b", failure_mode_name(ps.b)},
                       {"cohens_d", ps.cohens_d},
                       {"ks_d", ps.ks_d},
                       {"p", ps.p}});
      pw[category_name(cat)] = arr;
    }
    j["pairwise"] = pw;
  }
  if (rep.submetrics) {
    json arr = json::array();
    for (const auto& s : *rep.submetrics)
      arr.push_back({{"id", s.id}, {"r_pb", s.r_pb}, {"p", s.p}, {"q", s.q}, {"n", s.n}});
    j["submetrics"] = arr;
  }
  if (rep.auc) {
    j["auc"] = *rep.auc;
    if (rep.auc_ci) j["auc_ci"] = {rep.auc_ci->lo, rep.auc_ci->hi};
  }
  if (rep.perturbation) {
    json pt = json::object();
    for (const auto& [cat, tau] : rep.perturbation->min_tau)
      pt[category_name(cat)] = tau;
    j["perturbation"] = {{"min_tau", pt}, {"degenerate", rep.perturbation->degenerate}};
  }
  if (rep.loco) {
    json arr = json::array();
    for (const auto& row : *rep.loco)
      arr.push_back({{"removed", category_name(row.removed)},
                     {"auc", row.auc},
                     {"delta", row.delta}});
    j["loco"] = {{"baseline", rep.loco_baseline ? *rep.loco_baseline : 0.0},
                 {"rows", arr}};
  }
  if (rep.grid) {
    json w = json::object();
    for (const auto& [cat, weight] : rep.grid->best_weights)
      w[category_name(cat)] = weight;
    j["grid"] = {{"best_weights", w},
                 {"best_auc", rep.grid->best_auc},
                 {"n_configs", rep.grid->n_configs}};
  }
  return j;
}

inline std::string diagnostics_to_table(const DiagnosticsReport& rep) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "corpus records: " << rep.n_records << "\n";
  if (rep.group) {
    out << "\ncategory discriminability\n";
    out << "  cat        H      p_KW     r_pb     p_pb\n";
    for (const auto& [cat, s] : *rep.group) {
      out << "  " << category_name(cat) << "   " << std::setw(8) << s.kw_h << " "
          << std::setw(8) << s.kw_p << " " << std::setw(8) << s.r_pb << " "
          << std::setw(8) << s.p_pb << "\n";
    }
  }
  if (rep.auc) {
    out << "\nRRS binary AUC: " << *rep.auc;
    if (rep.auc_ci)
      out << "  [" << rep.auc_ci->lo << ", " << rep.auc_ci->hi << "] (95% CI)";
    out << "\n";
  }
  if (rep.submetrics) {
    out << "\nsub-metric point-biserial (BH-corrected)\n";
    for (const auto& s : *rep.submetrics)
      out << "  " << std::setw(24) << std::left << s.id << std::right << " r="
          << std::setw(7) << s.r_pb << "  p=" << std::setw(6) << s.p
          << "  q=" << std::setw(6) << s.q << "  n=" << s.n << "\n";
  }
  if (rep.perturbation) {
    out << "\nweight perturbation min Kendall tau";
    if (rep.perturbation->degenerate) out << " (degenerate ranking)";
    out << "\n";
    for (const auto& [cat, tau] : rep.perturbation->min_tau)
      out << "  " << category_name(cat) << ": " << tau << "\n";
  }
  if (rep.loco) {
    out << "\nleave-one-category-out AUC (baseline "
        << (rep.loco_baseline ? *rep.loco_baseline : 0.0) << ")\n";
    for (const auto& row : *rep.loco)
      out << "  -" << category_name(row.removed) << ": " << row.auc
          << "  (delta " << std::showpos << row.delta << std::noshowpos << ")\n";
  }
  if (rep.grid) {
    out << "\nweight grid search: " << rep.grid->n_configs
        << " configs, best AUC " << rep.grid->best_auc << " at";
    for (const auto& [cat, w] : rep.grid->best_weights)
      out << " " << category_name(cat) << "=" << w;
    out << "\n";
  }
  return out.str();
}

}  // namespace reproscore
