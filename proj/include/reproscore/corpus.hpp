#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reproscore/provenance.hpp"
#include "reproscore/scoring.hpp"
#include "reproscore/stats.hpp"

namespace reproscore {

struct CorpusRecord {
  std::string repo_id;
  FailureMode failure_mode = FailureMode::success;
  long success_nb_count = 0;
  long total_exec_count = 0;
  std::map<Category, double> category_raws;
  std::map<std::string, std::optional<double>> submetric_scores;
  std::optional<double> sigma;  // seed_management score
  double rrs = 0.0;
  std::optional<double> ros;
  std::optional<double> rcs;

  int binary_success() const { return failure_mode == FailureMode::success ? 1 : 0; }
};

// Highest-priority notebook-level label wins; success only when everything
// succeeded.
inline FailureMode aggregate_failure_mode(const std::vector<FailureMode>& labels) {
  if (labels.empty())
    throw std::invalid_argument("aggregate_failure_mode: empty label list");
  static const FailureMode priority[] = {
      FailureMode::install_dep, FailureMode::missing_module,
      FailureMode::missing_data, FailureMode::code_error};
  for (auto mode : priority)
    for (auto l : labels)
      if (l == mode) return mode;
  return FailureMode::success;
}

inline FailureMode aggregate_failure_mode(const std::vector<std::string>& labels) {
  std::vector<FailureMode> modes;
  for (const auto& s : labels) {
    auto m = failure_mode_from_name(s);
    if (!m) throw std::invalid_argument("unknown failure-mode label: " + s);
    modes.push_back(*m);
  }
  return aggregate_failure_mode(modes);
}

struct LabelRow {
  std::string repo_id;
  FailureMode failure_mode;
  long success_nb_count = 0;
  long total_exec_count = 0;
};

// Label CSV columns exactly: repo_id, failure_mode, success_nb_count,
// total_exec_count.
inline std::vector<LabelRow> parse_label_csv(const std::string& text) {
  std::vector<LabelRow> rows;
  auto lines = split_lines(text);
  std::size_t start = 0;
  if (!lines.empty() && lines[0].starts_with("repo_id")) start = 1;
  for (std::size_t i = start; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::string cur;
    for (char c : line + ",") {
      if (c == ',') {
        cols.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (cols.size() < 4)
      throw std::runtime_error("label CSV row needs 4 columns: " + line);
    auto mode = failure_mode_from_name(cols[1]);
    if (!mode) throw std::runtime_error("unknown failure mode in CSV: " + cols[1]);
    rows.push_back({cols[0], *mode, std::stol(cols[2]), std::stol(cols[3])});
  }
  return rows;
}

inline CorpusRecord corpus_record_from_provenance(const json& rec) {
  check_schema_version(rec);
  CorpusRecord cr;
  cr.repo_id = rec.at("repo").at("repo_id").get<std::string>();
  for (auto cat : kCategories)
    cr.category_raws[cat] =
        rec.at("categories").at(category_name(cat)).at("raw").get<double>();
  for (const auto& s : rec.at("submetrics")) {
    auto id = s.at("id").get<std::string>();
    if (s.at("score").is_null())
      cr.submetric_scores[id] = std::nullopt;
    else
      cr.submetric_scores[id] = s.at("score").get<double>();
    if (id == "seed_management" && !s.at("score").is_null())
      cr.sigma = s.at("score").get<double>();
  }
  cr.rrs = rec.at("rrs").get<double>();
  if (rec.contains("ros") && !rec.at("ros").is_null())
    cr.ros = rec.at("ros").get<double>();
  if (rec.contains("rcs") && !rec.at("rcs").is_null())
    cr.rcs = rec.at("rcs").get<double>();
  return cr;
}

struct Corpus {
  std::vector<CorpusRecord> records;
  std::vector<std::string> warnings;
};

inline Corpus load_corpus(const fs::path& provenance_dir, const fs::path& labels_csv) {
  Corpus corpus;
  auto labels = parse_label_csv(read_file(labels_csv));
  std::map<std::string, LabelRow> by_id;
  for (const auto& row : labels) by_id[row.repo_id] = row;

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(provenance_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  for (const auto& file : files) {
    json rec;
    try {
      rec = json::parse(read_file(file));
      auto cr = corpus_record_from_provenance(rec);
      auto it = by_id.find(cr.repo_id);
      if (it == by_id.end()) {
        corpus.warnings.push_back("no label for record: " + cr.repo_id);
        continue;
      }
      cr.failure_mode = it->second.failure_mode;
      cr.success_nb_count = it->second.success_nb_count;
      cr.total_exec_count = it->second.total_exec_count;
      corpus.records.push_back(std::move(cr));
    } catch (const std::exception& e) {
      corpus.warnings.push_back(std::string("bad record ") + file + ": " + e.what());
    }
  }
  return corpus;
}

// RRS under a different category weighting, from recorded raws and sigma.
// Equivalent to recompute_from_provenance for weight-only changes.
inline double rescore_rrs(const CorpusRecord& rec, const RubricProfile& rubric) {
  CategoryScores cs;
  for (auto cat : kCategories) cs.by_category[cat] = {rec.category_raws.at(cat), 0.0, true};
  return compute_rrs(cs, rubric, rec.sigma).rrs;
}

struct CategoryGroupStats {
  double kw_h = 0.0, kw_p = 1.0;
  double r_pb = 0.0, p_pb = 1.0;
};

struct PairwiseStats {
  FailureMode a, b;
  double cohens_d = 0.0;
  double ks_d = 0.0;
  double p = 1.0;
};

struct SubMetricStat {
  std::string id;
  double r_pb = 0.0, p = 1.0, q = 1.0;
  long n = 0;  // records where the metric was applicable
};

struct PerturbationResult {
  std::map<Category, double> min_tau;
  bool degenerate = false;
};

struct LocoRow {
  Category removed;
  double auc = 0.5;
  double delta = 0.0;
};

struct GridSearchResult {
  std::map<Category, double> best_weights;
  double best_auc = 0.0;
  int n_configs = 0;
};

inline constexpr std::array<FailureMode, 5> kFailureModes = {
    FailureMode::success, FailureMode::install_dep, FailureMode::missing_module,
    FailureMode::missing_data, FailureMode::code_error};

inline std::map<Category, CategoryGroupStats> category_group_stats(
    const Corpus& corpus) {
  std::map<Category, CategoryGroupStats> out;
  for (auto cat : kCategories) {
    std::vector<std::vector<double>> groups;
    for (auto mode : kFailureModes) {
      std::vector<double> g;
      for (const auto& r : corpus.records)
        if (r.failure_mode == mode) g.push_back(r.category_raws.at(cat));
      if (!g.empty()) groups.push_back(std::move(g));
    }
    CategoryGroupStats cgs;
    if (groups.size() >= 2) {
      auto kw = stats::kruskal_wallis(groups);
      cgs.kw_h = kw.statistic;
      cgs.kw_p = kw.p;
    }
    std::vector<double> scores;
    std::vector<int> labels;
    for (const auto& r : corpus.records) {
      scores.push_back(r.category_raws.at(cat));
      labels.push_back(r.binary_success());
    }
    try {
      auto pb = stats::point_biserial(scores, labels);
      cgs.r_pb = pb.statistic;
      cgs.p_pb = pb.p;
    } catch (const std::exception&) {
    }
    out[cat] = cgs;
  }
  return out;
}

inline std::map<Category, std::vector<PairwiseStats>> pairwise_stats(
    const Corpus& corpus) {
  std::map<Category, std::vector<PairwiseStats>> out;
  for (auto cat : kCategories) {
    std::map<FailureMode, std::vector<double>> by_mode;
    for (const auto& r : corpus.records)
      by_mode[r.failure_mode].push_back(r.category_raws.at(cat));
    for (std::size_t i = 0; i < kFailureModes.size(); ++i)
      for (std::size_t j = i + 1; j < kFailureModes.size(); ++j) {
        auto ita = by_mode.find(kFailureModes[i]);
        auto itb = by_mode.find(kFailureModes[j]);
        if (ita == by_mode.end() || itb == by_mode.end()) continue;
        PairwiseStats ps;
        ps.a = kFailureModes[i];
        ps.b = kFailureModes[j];
        try {
          ps.cohens_d = stats::cohens_d(ita->second, itb->second);
        } catch (const std::exception&) {
          ps.cohens_d = 0.0;
        }
        ps.ks_d = stats::ks_statistic(ita->second, itb->second);
        ps.p = stats::two_sample_t_p(ita->second, itb->second);
        out[cat].push_back(ps);
      }
  }
  return out;
}

inline std::vector<SubMetricStat> submetric_stats(
    const Corpus& corpus,
    const SubMetricRegistry& registry = SubMetricRegistry::defaults()) {
  std::vector<SubMetricStat> out;
  std::vector<double> pvals;
  for (const auto& entry : registry.entries) {
    SubMetricStat s;
    s.id = entry.id;
    std::vector<double> scores;
    std::vector<int> labels;
    for (const auto& r : corpus.records) {
      auto it = r.submetric_scores.find(entry.id);
      if (it == r.submetric_scores.end() || !it->second) continue;
      scores.push_back(*it->second);
      labels.push_back(r.binary_success());
    }
    s.n = static_cast<long>(scores.size());
    try {
      auto pb = stats::point_biserial(scores, labels);
      s.r_pb = pb.statistic;
      s.p = pb.p;
    } catch (const std::exception&) {
      s.r_pb = 0.0;
      s.p = 1.0;
    }
    pvals.push_back(s.p);
    out.push_back(std::move(s));
  }
  auto qvals = stats::benjamini_hochberg(pvals);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].q = qvals[i];
  return out;
}

// Redistributes the remaining mass proportionally over the other categories.
inline RubricProfile reweighted_rubric(const RubricProfile& base, Category target,
                                       double new_weight) {
  RubricProfile p = base;
  double others = 0.0;
  for (auto cat : kCategories)
    if (cat != target) others += base.categories.at(cat).weight;
  double remaining = 1.0 - new_weight;
  for (auto cat : kCategories) {
    if (cat == target) {
      p.categories[cat].weight = new_weight;
    } else {
      p.categories[cat].weight =
          others > 0 ? base.categories.at(cat).weight / others * remaining : 0.0;
    }
  }
  return p;
}

inline PerturbationResult weight_perturbation(const Corpus& corpus,
                                              const RubricProfile& rubric,
                                              double span = 0.5, int steps = 20) {
  if (corpus.records.empty())
    throw std::invalid_argument("weight_perturbation: empty corpus");
  if (!(span > 0.0 && span < 1.0))
    throw std::invalid_argument("weight_perturbation: span out of (0,1)");

  std::vector<double> baseline;
  for (const auto& r : corpus.records) baseline.push_back(rescore_rrs(r, rubric));

  bool all_equal = std::all_of(baseline.begin(), baseline.end(),
                               [&](double v) { return v == baseline.front(); });

  PerturbationResult res;
  res.degenerate = all_equal;
  for (auto cat : kCategories) {
    double w = rubric.categories.at(cat).weight;
    double min_tau = 1.0;
    for (int s = 0; s < steps; ++s) {
      double factor = 1.0 - span + 2.0 * span * s / (steps - 1);
      auto perturbed = reweighted_rubric(rubric, cat, w * factor);
      std::vector<double> scores;
      for (const auto& r : corpus.records) scores.push_back(rescore_rrs(r, perturbed));
      double tau = stats::kendall_tau(baseline, scores);
      min_tau = std::min(min_tau, tau);
    }
    res.min_tau[cat] = all_equal ? 1.0 : min_tau;
  }
  return res;
}

inline std::pair<double, std::vector<LocoRow>> loco_analysis(
    const Corpus& corpus, const RubricProfile& rubric = default_rubric()) {
  std::vector<int> labels;
  for (const auto& r : corpus.records) labels.push_back(r.binary_success());

  std::vector<double> baseline_scores;
  for (const auto& r : corpus.records) baseline_scores.push_back(rescore_rrs(r, rubric));
  double baseline = stats::auc_roc(baseline_scores, labels);

  std::vector<LocoRow> rows;
  for (auto cat : kCategories) {
    auto reduced = reweighted_rubric(rubric, cat, 0.0);
    std::vector<double> scores;
    for (const auto& r : corpus.records) scores.push_back(rescore_rrs(r, reduced));
    LocoRow row;
    row.removed = cat;
    row.auc = stats::auc_roc(scores, labels);
    row.delta = row.auc - baseline;
    rows.push_back(row);
  }
  return {baseline, rows};
}

// Weight vectors in multiples of `step` with every component >= floor,
// summing to 1 over the five categories. step 0.1 / floor 0.1 gives the
// 126 compositions of 10 into 5 positive parts.
inline GridSearchResult grid_search_weights(const Corpus& corpus,
                                            const RubricProfile& rubric,
                                            double step = 0.1, double floor = 0.1) {
  int units = static_cast<int>(std::lround(1.0 / step));
  int min_units = static_cast<int>(std::lround(floor / step));
  if (min_units < 0 || 5 * min_units > units)
    throw std::invalid_argument("grid_search_weights: infeasible step/floor");

  std::vector<int> labels;
  for (const auto& r : corpus.records) labels.push_back(r.binary_success());

  GridSearchResult res;
  res.best_auc = -1.0;
  for (int e = min_units; e <= units; ++e)
    for (int a = min_units; a <= units; ++a)
      for (int d = min_units; d <= units; ++d)
        for (int c = min_units; c <= units; ++c) {
          int s = units - e - a - d - c;
          if (s < min_units) continue;
          ++res.n_configs;
          RubricProfile p = rubric;
          p.categories[Category::E].weight = static_cast<double>(e) * step;
          p.categories[Category::A].weight = static_cast<double>(a) * step;
          p.categories[Category::D].weight = static_cast<double>(d) * step;
          p.categories[Category::C].weight = static_cast<double>(c) * step;
          p.categories[Category::S].weight = static_cast<double>(s) * step;
          std::vector<double> scores;
          for (const auto& r : corpus.records) scores.push_back(rescore_rrs(r, p));
          double auc = stats::auc_roc(scores, labels);
          if (auc > res.best_auc) {
            res.best_auc = auc;
            for (auto cat : kCategories)
              res.best_weights[cat] = p.categories[cat].weight;
          }
        }
  return res;
}

}  // namespace reproscore
