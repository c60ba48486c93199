#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include "reproscore/repo_model.hpp"
#include "reproscore/scoring.hpp"

namespace reproscore {

using json = nlohmann::json;

inline constexpr int kProvenanceSchemaVersion = 1;

struct ProvenanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string utc_timestamp_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string repo_id_from_source(const std::string& source) {
  std::string base = source;
  while (!base.empty() && (base.back() == '/' || base.back() == '\\')) base.pop_back();
  auto slash = base.find_last_of("/\\");
  if (slash != std::string::npos) base = base.substr(slash + 1);
  if (base.ends_with(".git")) base = base.substr(0, base.size() - 4);
  std::string id;
  for (char c : base)
    id.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return id.empty() ? "repo" : id;
}

namespace detail {

inline json evidence_to_json(const ExecutionEvidence& ev) {
  json components = json::object();
  for (const auto& c : ev.components())
    if (c.value->has_value()) components[c.key] = **c.value;
  return json{{"components", components}};
}

inline ExecutionEvidence evidence_from_json(const json& j) {
  ExecutionEvidence ev;
  if (!j.is_object()) throw ProvenanceError("evidence document is not an object");
  const json& comp = j.contains("components") ? j.at("components") : j;
  if (!comp.is_object()) throw ProvenanceError("evidence components is not an object");
  auto get = [&](const char* key) -> std::optional<double> {
    if (!comp.contains(key) || comp.at(key).is_null()) return std::nullopt;
    if (!comp.at(key).is_number())
      throw ProvenanceError(std::string("evidence component not numeric: ") + key);
    return comp.at(key).get<double>();
  };
  ev.install_success = get("I");
  ev.execution_success = get("X");
  ev.output_determinism = get("delta");
  ev.notebook_exec_rate = get("N");
  ev.import_success_rate = get("E_prime");
  ev.test_pass_rate = get("T");
  auto errors = ev.validate();
  if (!errors.empty()) throw ProvenanceError("invalid evidence: " + errors.front());
  return ev;
}

}  // namespace detail

// Self-contained record: rescoring needs only this document and a rubric.
// nlohmann objects keep keys sorted, so identical assessments serialize
// byte-identically modulo the timestamp.
inline json emit_provenance(const Assessment& a, const std::string& source,
                            const std::string& commit_id,
                            const std::string& timestamp = utc_timestamp_now()) {
  json rec;
  rec["schema_version"] = kProvenanceSchemaVersion;
  rec["tool"] = {{"name", "reproscore"}, {"version", REPROSCORE_VERSION}};
  rec["repo"] = {{"source", source},
                 {"commit_id", commit_id},
                 {"repo_id", repo_id_from_source(source)}};
  rec["timestamp"] = timestamp;
  rec["rubric"] = {{"name", a.rubric_name}, {"version", a.rubric_version}};

  json subs = json::array();
  for (const auto& r : a.submetrics) {
    json s;
    s["id"] = r.id;
    s["category"] = category_name(r.category);
    s["metric_type"] = metric_type_name(r.metric_type);
    if (r.score) s["score"] = *r.score;
    else s["score"] = nullptr;
    json ev = json::array();
    for (const auto& e : r.evidence) {
      json je;
      je["path"] = e.path;
      if (e.line) je["line"] = *e.line;
      je["matched_pattern"] = e.matched_pattern;
      je["note"] = e.note;
      ev.push_back(je);
    }
    s["evidence"] = ev;
    subs.push_back(s);
  }
  rec["submetrics"] = subs;

  json cats = json::object();
  for (auto cat : kCategories) {
    const auto& cs = a.categories.by_category.at(cat);
    cats[category_name(cat)] = {{"raw", cs.raw},
                                {"gated", cs.gated},
                                {"applicable", cs.applicable}};
  }
  rec["categories"] = cats;
  rec["penalties"] = {{"hard", a.penalty_hard}, {"seed", a.penalty_seed}};
  rec["rrs"] = a.rrs;
  rec["rrs_raw"] = a.rrs_raw;
  if (a.evidence) rec["execution_evidence"] = detail::evidence_to_json(*a.evidence);
  else rec["execution_evidence"] = nullptr;
  if (a.ros) rec["ros"] = *a.ros;
  else rec["ros"] = nullptr;
  rec["alpha"] = a.alpha;
  rec["rcs"] = a.rcs;
  rec["provenance_flags"] = {{"symlinks_followed", false},
                             {"submodules_recursed", false}};
  return rec;
}

inline std::string provenance_to_string(const json& rec) {
  return rec.dump(2) + "\n";
}

inline void check_schema_version(const json& rec) {
  if (!rec.contains("schema_version") || !rec["schema_version"].is_number_integer())
    throw ProvenanceError("record missing schema_version");
  int v = rec["schema_version"].get<int>();
  if (v != kProvenanceSchemaVersion)
    throw ProvenanceError("unsupported schema version: " + std::to_string(v));
}

inline std::vector<SubMetricResult> submetrics_from_provenance(const json& rec) {
  check_schema_version(rec);
  if (!rec.contains("submetrics") || !rec["submetrics"].is_array())
    throw ProvenanceError("record missing submetrics");
  std::vector<SubMetricResult> out;
  for (const auto& s : rec["submetrics"]) {
    SubMetricResult r;
    r.id = s.at("id").get<std::string>();
    auto cat = category_from_name(s.at("category").get<std::string>());
    if (!cat) throw ProvenanceError("bad category in record: " + r.id);
    r.category = *cat;
    std::string mt = s.value("metric_type", "continuous");
    r.metric_type = mt == "binary" ? MetricType::binary
                   : mt == "tiered" ? MetricType::tiered
                                    : MetricType::continuous;
    if (s.contains("score") && !s.at("score").is_null())
      r.score = s.at("score").get<double>();
    if (s.contains("evidence") && s.at("evidence").is_array()) {
      for (const auto& je : s.at("evidence")) {
        Evidence e;
        e.path = je.value("path", "");
        if (je.contains("line") && je.at("line").is_number_integer())
          e.line = je.at("line").get<int>();
        e.matched_pattern = je.value("matched_pattern", "");
        e.note = je.value("note", "");
        r.evidence.push_back(std::move(e));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::optional<ExecutionEvidence> evidence_from_provenance(const json& rec) {
  if (!rec.contains("execution_evidence") || rec["execution_evidence"].is_null())
    return std::nullopt;
  return detail::evidence_from_json(rec["execution_evidence"]);
}

// Re-aggregates from recorded sub-metric scores under a new rubric; the
// repository itself is never touched. Output is a fresh record marked with
// the identity of its source.
inline json recompute_from_provenance(
    const json& rec, const RubricProfile& new_rubric,
    const SubMetricRegistry& registry = SubMetricRegistry::defaults(),
    const std::string& timestamp = utc_timestamp_now()) {
  auto errors = validate_rubric(new_rubric, registry);
  if (!errors.empty()) throw RubricError("invalid rubric: " + errors.front());

  auto results = submetrics_from_provenance(rec);
  auto evidence = evidence_from_provenance(rec);
  Assessment a = score_from_submetrics(results, new_rubric, registry, evidence);

  json out = emit_provenance(a, rec.at("repo").at("source").get<std::string>(),
                             rec.at("repo").at("commit_id").get<std::string>(),
                             timestamp);
  out["recomputed_from"] = {
      {"rubric", rec.at("rubric")},
      {"timestamp", rec.at("timestamp")},
      {"commit_id", rec.at("repo").at("commit_id")},
  };
  return out;
}

}  // namespace reproscore
