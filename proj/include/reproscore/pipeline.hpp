#pragma once

#include "reproscore/models.hpp"
#include "reproscore/provenance.hpp"
#include "reproscore/scoring.hpp"

namespace reproscore {

// Full static pipeline: parse models, evaluate the 26 sub-metrics, score.
inline Assessment assess_snapshot(
    const RepoSnapshot& snap,
    const RubricProfile& rubric = default_rubric(),
    const SubMetricRegistry& registry = SubMetricRegistry::defaults(),
    const PatternSet& patterns = PatternSet::defaults(),
    const std::optional<ExecutionEvidence>& evidence = std::nullopt) {
  auto models = parse_all(snap);
  auto results = evaluate_all(snap, models, registry, patterns);
  return score_from_submetrics(results, rubric, registry, evidence);
}

inline Assessment assess_source(
    const std::string& source, bool shallow = true,
    const RubricProfile& rubric = default_rubric(),
    const SubMetricRegistry& registry = SubMetricRegistry::defaults(),
    const PatternSet& patterns = PatternSet::defaults()) {
  auto snap = acquire_repository(source, shallow);
  return assess_snapshot(snap, rubric, registry, patterns);
}

}  // namespace reproscore
