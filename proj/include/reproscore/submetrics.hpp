#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "reproscore/models.hpp"
#include "reproscore/patterns.hpp"
#include "reproscore/repo_model.hpp"

namespace reproscore {

enum class Category { E, A, D, C, S };

inline const char* category_name(Category c) {
  switch (c) {
    case Category::E: return "E";
    case Category::A: return "A";
    case Category::D: return "D";
    case Category::C: return "C";
    case Category::S: return "S";
  }
  return "?";
}

inline std::optional<Category> category_from_name(const std::string& s) {
  if (s == "E") return Category::E;
  if (s == "A") return Category::A;
  if (s == "D") return Category::D;
  if (s == "C") return Category::C;
  if (s == "S") return Category::S;
  return std::nullopt;
}

inline constexpr std::array<Category, 5> kCategories = {
    Category::E, Category::A, Category::D, Category::C, Category::S};

enum class MetricType { binary, continuous, tiered };

inline const char* metric_type_name(MetricType t) {
  switch (t) {
    case MetricType::binary: return "binary";
    case MetricType::continuous: return "continuous";
    case MetricType::tiered: return "tiered";
  }
  return "?";
}

struct Evidence {
  std::string path;
  std::optional<int> line;
  std::string matched_pattern;
  std::string note;
};

struct SubMetricResult {
  std::string id;
  Category category = Category::E;
  std::optional<double> score;  // nullopt = NOT_APPLICABLE
  MetricType metric_type = MetricType::binary;
  std::vector<Evidence> evidence;

  bool applicable() const { return score.has_value(); }
};

struct RegistryEntry {
  std::string id;
  Category category;
  double weight;  // default within-category weight w_j
  MetricType type;
  std::vector<double> tier_levels;  // tiered metrics only
};

struct SubMetricRegistry {
  std::vector<RegistryEntry> entries;

  const RegistryEntry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }
  std::vector<const RegistryEntry*> of_category(Category c) const {
    std::vector<const RegistryEntry*> out;
    for (const auto& e : entries)
      if (e.category == c) out.push_back(&e);
    return out;
  }

  static SubMetricRegistry defaults();
};

inline SubMetricRegistry SubMetricRegistry::defaults() {
  using MT = MetricType;
  using C = Category;
  SubMetricRegistry r;
  r.entries = {
      // Environment specification
      {"dep_pinning", C::E, 0.25, MT::tiered, {0, 25, 40, 75, 100}},
      {"container_spec", C::E, 0.30, MT::tiered, {0, 60, 100}},
      {"env_bootstrap", C::E, 0.25, MT::binary, {}},
      {"runtime_version", C::E, 0.20, MT::binary, {}},
      // Data accessibility
      {"data_description", C::A, 0.20, MT::tiered, {0, 30, 60, 100}},
      {"data_pointer", C::A, 0.30, MT::tiered, {0, 25, 50, 75, 100}},
      {"workflow_orchestration", C::A, 0.20, MT::tiered, {0, 40, 60, 100}},
      {"data_acquisition", C::A, 0.30, MT::binary, {}},
      // Documentation
      {"doc_structure", C::D, 0.25, MT::continuous, {}},
      {"install_instructions", C::D, 0.20, MT::tiered, {0, 30, 60, 100}},
      {"usage_examples", C::D, 0.20, MT::tiered, {0, 40, 60, 100}},
      {"inline_explanation", C::D, 0.15, MT::continuous, {}},
      {"entry_point", C::D, 0.10, MT::binary, {}},
      {"docstring_coverage", C::D, 0.05, MT::continuous, {}},
      {"reuse_metadata", C::D, 0.05, MT::tiered, {0, 33, 66, 100}},
      // Code portability
      {"no_absolute_paths", C::C, 0.40, MT::continuous, {}},
      {"import_resolvability", C::C, 0.35, MT::continuous, {}},
      {"no_hardcoded_creds", C::C, 0.15, MT::continuous, {}},
      {"no_silent_failures", C::C, 0.10, MT::continuous, {}},
      // Reproducibility signals
      {"seed_management", C::S, 0.30, MT::continuous, {}},
      {"notebook_exec_order", C::S, 0.20, MT::continuous, {}},
      {"test_file_presence", C::S, 0.18, MT::continuous, {}},
      {"expected_outputs", C::S, 0.12, MT::tiered, {0, 50, 100}},
      {"ci_presence", C::S, 0.10, MT::binary, {}},
      {"config_externalised", C::S, 0.06, MT::tiered, {0, 50, 100}},
      {"hardware_requirements", C::S, 0.04, MT::binary, {}},
  };
  return r;
}

struct EvalContext {
  const RepoSnapshot& snap;
  const ParsedModels& models;
  const PatternSet& patterns;
};

namespace metrics {

inline SubMetricResult make(const RegistryEntry& entry) {
  SubMetricResult r;
  r.id = entry.id;
  r.category = entry.category;
  r.metric_type = entry.type;
  r.score = 0.0;
  return r;
}

inline void cite(SubMetricResult& r, std::string path, std::string pattern,
                 std::string note = {}, std::optional<int> line = std::nullopt) {
  r.evidence.push_back({std::move(path), line, std::move(pattern), std::move(note)});
}

inline bool line_matches_any(const std::string& line,
                             const std::vector<std::string>& patterns,
                             std::string* hit = nullptr) {
  for (const auto& p : patterns)
    if (line.find(p) != std::string::npos) {
      if (hit) *hit = p;
      return true;
    }
  return false;
}

// --- E: environment specification -----------------------------------------

inline SubMetricResult dep_pinning(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  const auto& deps = ctx.models.deps;
  if (deps.has_lockfile) {
    r.score = 100.0;
    for (const auto* f : ctx.snap.inventory.of_kind(FileKind::lockfile))
      cite(r, f->path, "lockfile", "tier: lockfile");
    return r;
  }
  if (deps.source_files.empty()) {
    r.score = 0.0;
    cite(r, "", "", "no dependency files present");
    return r;
  }
  int exact = 0;
  for (const auto& [name, kind] : deps.declared)
    if (kind == ConstraintKind::exact) ++exact;
  int total = static_cast<int>(deps.declared.size());
  if (total > 0 && exact == total) r.score = 75.0;
  else if (exact > 0) r.score = 40.0;
  else r.score = 25.0;
  for (const auto& f : deps.source_files)
    cite(r, f, "dependency manifest",
         std::to_string(exact) + "/" + std::to_string(total) + " exact pins");
  return r;
}

inline SubMetricResult container_spec(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  auto files = ctx.snap.inventory.of_kind(FileKind::container_spec);
  if (files.empty()) {
    r.score = 0.0;
    cite(r, "", "", "no container specification");
    return r;
  }
  static const std::regex from_re(R"(^\s*FROM\s+\S+:([^\s]+))", std::regex::icase);
  static const std::regex run_re(R"(^\s*RUN\b)", std::regex::icase);
  for (const auto* f : files) {
    if (!f->content_scannable) continue;
    auto text = try_read_file(ctx.snap.root / f->path);
    if (!text) continue;
    bool pinned = false, steps = false;
    auto lname = to_lower(fs::path(f->path).filename().string());
    if (lname.ends_with(".def") || lname == "singularity") {
      pinned = text->find("Bootstrap:") != std::string::npos;
      steps = text->find("%post") != std::string::npos;
    } else {
      for (const auto& line : split_lines(*text)) {
        std::smatch m;
        if (std::regex_search(line, m, from_re) && to_lower(m[1].str()) != "latest")
          pinned = true;
        if (std::regex_search(line, run_re)) steps = true;
      }
    }
    if (pinned && steps) {
      r.score = 100.0;
      cite(r, f->path, "pinned base + install steps", "tier: full");
      return r;
    }
  }
  r.score = 60.0;
  cite(r, files.front()->path, "container file", "tier: present");
  return r;
}

inline SubMetricResult env_bootstrap(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  static const std::regex script_re(
      R"(^(install|setup|bootstrap|create_env|make_env|build_env)[^/]*\.(sh|bash)$)");
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::shell_script)) {
    auto name = to_lower(fs::path(f->path).filename().string());
    if (std::regex_match(name, script_re)) {
      r.score = 100.0;
      cite(r, f->path, "environment setup script");
      return r;
    }
  }
  static const std::regex target_re(
      R"(^(install|env|environment|setup|venv|conda-env|conda_env)\s*:)");
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::makefile)) {
    if (!f->content_scannable) continue;
    auto text = try_read_file(ctx.snap.root / f->path);
    if (!text) continue;
    int ln = 0;
    for (const auto& line : split_lines(*text)) {
      ++ln;
      if (std::regex_search(line, target_re)) {
        r.score = 100.0;
        cite(r, f->path, "environment make target", trim(line), ln);
        return r;
      }
    }
  }
  r.score = 0.0;
  cite(r, "", "", "no one-command environment creation artifact");
  return r;
}

inline SubMetricResult runtime_version(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  if (ctx.models.deps.runtime_version_declared) {
    r.score = 100.0;
    for (const auto& f : ctx.models.deps.source_files)
      cite(r, f, "runtime declaration in project metadata");
    return r;
  }
  for (const auto& f : ctx.snap.inventory.files) {
    auto name = to_lower(fs::path(f.path).filename().string());
    if (name == ".python-version" || name == "runtime.txt" || name == ".tool-versions") {
      r.score = 100.0;
      cite(r, f.path, "runtime version pin file");
      return r;
    }
  }
  static const std::regex py_base_re(R"(^\s*FROM\s+python:([0-9][^\s]*))",
                                     std::regex::icase);
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::container_spec)) {
    if (!f->content_scannable) continue;
    auto text = try_read_file(ctx.snap.root / f->path);
    if (!text) continue;
    int ln = 0;
    for (const auto& line : split_lines(*text)) {
      ++ln;
      std::smatch m;
      if (std::regex_search(line, m, py_base_re)) {
        r.score = 100.0;
        cite(r, f->path, "pinned interpreter base image", trim(line), ln);
        return r;
      }
    }
  }
  r.score = 0.0;
  cite(r, "", "", "no runtime version declaration");
  return r;
}

// --- A: data accessibility -------------------------------------------------

inline SubMetricResult data_description(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  int best_words = 0;
  std::string best_path, best_what;

  if (ctx.models.readme) {
    for (const auto& [heading, body] : ctx.models.readme->sections) {
      if (contains_ci(heading, "data")) {
        int w = count_words(body);
        if (w > best_words) {
          best_words = w;
          best_path = ctx.models.readme->path;
          best_what = "README section: " + heading;
        }
        if (w == 0 && best_words == 0) {
          best_path = ctx.models.readme->path;
          best_what = "README section: " + heading;
        }
      }
    }
  }
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::readme)) {
    if (!f->content_scannable) continue;
    if (contains_ci(f->path, "data") ||
        to_lower(fs::path(f->path).filename().string()).starts_with("readme_data")) {
      if (auto text = try_read_file(ctx.snap.root / f->path)) {
        int w = count_words(*text);
        if (w > best_words) {
          best_words = w;
          best_path = f->path;
          best_what = "dedicated data documentation";
        }
      }
    }
  }

  if (best_words >= 200) {
    r.score = 100.0;
    cite(r, best_path, best_what, std::to_string(best_words) + " words");
  } else if (best_words >= 50) {
    r.score = 60.0;
    cite(r, best_path, best_what, std::to_string(best_words) + " words");
  } else if (!best_what.empty() ||
             (ctx.models.readme && contains_ci(ctx.models.readme->body, "dataset"))) {
    r.score = 30.0;
    cite(r, best_path.empty() && ctx.models.readme ? ctx.models.readme->path : best_path,
         best_what.empty() ? "data mention" : best_what, "tier: mention");
  } else {
    r.score = 0.0;
    cite(r, "", "", "no data documentation");
  }
  return r;
}

inline SubMetricResult data_pointer(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  std::string text;
  if (ctx.models.readme) text += ctx.models.readme->body;
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::citation))
    if (f->content_scannable)
      if (auto t = try_read_file(ctx.snap.root / f->path)) text += "\n" + *t;
  std::string readme_path = ctx.models.readme ? ctx.models.readme->path : "";

  static const std::regex doi_re(R"(doi\.org/|\bdoi:\s*10\.|\b10\.\d{4,9}/\S+)");
  static const std::regex archival_re(
      R"(zenodo\.org|figshare\.com|osf\.io|dataverse|datadryad|dryad|softwareheritage\.org|archive\.org)",
      std::regex::icase);
  static const std::regex platform_re(
      R"(drive\.google|dropbox\.com|s3\.amazonaws|storage\.googleapis|onedrive|kaggle\.com|data\.mendeley|huggingface\.co/datasets)",
      std::regex::icase);

  if (std::regex_search(text, doi_re)) {
    r.score = 100.0;
    cite(r, readme_path, "DOI link", "tier: DOI");
  } else if (std::regex_search(text, archival_re)) {
    r.score = 75.0;
    cite(r, readme_path, "archival platform URL");
  } else if (std::regex_search(text, platform_re)) {
    r.score = 50.0;
    cite(r, readme_path, "platform/cloud URL");
  } else if (ctx.snap.inventory.count(FileKind::data_file) > 0) {
    r.score = 25.0;
    cite(r, ctx.snap.inventory.of_kind(FileKind::data_file).front()->path,
         "committed data files",
         std::to_string(ctx.snap.inventory.count(FileKind::data_file)) + " files");
  } else {
    r.score = 0.0;
    cite(r, "", "", "no data pointer");
  }
  return r;
}

inline SubMetricResult workflow_orchestration(const RegistryEntry& e,
                                              const EvalContext& ctx) {
  auto r = make(e);
  for (const auto& f : ctx.snap.inventory.files) {
    auto name = to_lower(fs::path(f.path).filename().string());
    if (name == "snakefile" || name.ends_with(".smk") || name.ends_with(".nf") ||
        name == "nextflow.config" || name == "dvc.yaml" || name.ends_with(".cwl")) {
      r.score = 100.0;
      cite(r, f.path, "workflow engine config");
      return r;
    }
  }
  static const std::regex pipe_re(R"(^(all|run|pipeline|workflow)\s*:)");
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::makefile)) {
    if (!f->content_scannable) continue;
    auto text = try_read_file(ctx.snap.root / f->path);
    if (!text) continue;
    int ln = 0;
    for (const auto& line : split_lines(*text)) {
      ++ln;
      if (std::regex_search(line, pipe_re)) {
        r.score = 60.0;
        cite(r, f->path, "Makefile pipeline target", trim(line), ln);
        return r;
      }
    }
  }
  static const std::regex runall_re(R"(^(run_?all|run|pipeline)[^/]*\.(sh|bash|py)$)");
  for (const auto& f : ctx.snap.inventory.files) {
    auto name = to_lower(fs::path(f.path).filename().string());
    if (std::regex_match(name, runall_re)) {
      r.score = 40.0;
      cite(r, f.path, "run-all script");
      return r;
    }
  }
  r.score = 0.0;
  cite(r, "", "", "no workflow orchestration");
  return r;
}

inline SubMetricResult data_acquisition(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  for (const auto& f : ctx.snap.inventory.files) {
    if (f.path.ends_with(".dvc") || f.path.starts_with(".dvc/")) {
      r.score = 100.0;
      cite(r, f.path, "data-version-control tracking");
      return r;
    }
  }
  static const std::vector<std::string> dl = {
      "wget ",          "curl ",           "urlretrieve(", "requests.get(",
      "urllib.request", "download_file(",  "urlopen(",     "gdown",
  };
  auto scan = [&](const std::string& path, const std::vector<std::string>& lines) -> bool {
    int ln = 0;
    for (const auto& line : lines) {
      ++ln;
      std::string hit;
      if (line_matches_any(line, dl, &hit) &&
          (line.find("http") != std::string::npos || hit == "urlretrieve(" ||
           hit == "requests.get(" || hit == "urlopen(" || hit == "gdown")) {
        r.score = 100.0;
        cite(r, path, hit, trim(line).substr(0, 120), ln);
        return true;
      }
    }
    return false;
  };
  for (const auto& u : ctx.models.sources)
    if (scan(u.path, u.lines)) return r;
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::shell_script)) {
    if (!f->content_scannable) continue;
    if (auto text = try_read_file(ctx.snap.root / f->path))
      if (scan(f->path, split_lines(*text))) return r;
  }
  r.score = 0.0;
  cite(r, "", "", "no automated data acquisition");
  return r;
}

// --- D: documentation ------------------------------------------------------

inline SubMetricResult doc_structure(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  if (!ctx.models.readme) {
    r.score = 0.0;
    cite(r, "", "", "no readme");
    return r;
  }
  const auto& md = *ctx.models.readme;
  struct SectionRule {
    const char* name;
    std::vector<std::string> keywords;
  };
  static const std::vector<SectionRule> rules = {
      {"install", {"install", "setup", "getting started"}},
      {"run", {"usage", "run", "how to", "quickstart", "quick start", "example", "demo", "tutorial"}},
      {"expected output", {"output", "result", "expected"}},
      {"requirements", {"requirement", "dependenc", "prerequisite"}},
  };
  int matched = 0;
  for (const auto& rule : rules) {
    for (const auto& h : md.headings) {
      bool hit = false;
      for (const auto& kw : rule.keywords)
        if (contains_ci(h.text, kw)) hit = true;
      if (hit) {
        ++matched;
        cite(r, md.path, std::string("section: ") + rule.name, h.text);
        break;
      }
    }
  }
  r.score = 25.0 * matched;
  if (matched == 0) cite(r, md.path, "", "no execution-relevant sections");
  return r;
}

inline bool is_install_command(const std::string& line) {
  auto t = trim(line);
  if (t.starts_with("$ ")) t = trim(t.substr(2));
  static const std::regex re(
      R"(^((pip3?|python -m pip|conda|mamba|poetry|uv|apt(-get)?|brew)\s+(install|env create|create)|make install|(bash|sh|\./)\S*(install|setup)\S*\.sh|docker build).*)");
  return std::regex_match(t, re);
}

inline SubMetricResult install_instructions(const RegistryEntry& e,
                                            const EvalContext& ctx) {
  auto r = make(e);
  if (!ctx.models.readme) {
    r.score = 0.0;
    cite(r, "", "", "no readme");
    return r;
  }
  const auto& md = *ctx.models.readme;

  for (const auto& block : md.fenced_code_blocks) {
    std::vector<std::string> nonempty;
    for (auto& line : split_lines(block.body))
      if (!trim(line).empty()) nonempty.push_back(line);
    if (nonempty.size() == 1 && is_install_command(nonempty.front())) {
      r.score = 100.0;
      cite(r, md.path, "single-command install", trim(nonempty.front()));
      return r;
    }
  }
  // install section with code blocks or numbered steps
  for (const auto& [heading, body] : md.sections) {
    bool install_section = contains_ci(heading, "install") || contains_ci(heading, "setup");
    if (!install_section) continue;
    bool has_code = body.find("```") != std::string::npos;
    bool has_steps = false;
    for (const auto& line : split_lines(body))
      if (std::regex_search(line, std::regex(R"(^\s*\d+[.)]\s)"))) has_steps = true;
    bool has_cmd = false;
    for (const auto& line : split_lines(body))
      if (is_install_command(line)) has_cmd = true;
    if (has_code || has_steps || has_cmd) {
      r.score = 60.0;
      cite(r, md.path, "multi-step install instructions", heading);
      return r;
    }
  }
  if (contains_ci(md.body, "install")) {
    r.score = 30.0;
    cite(r, md.path, "install mention", "tier: vague");
    return r;
  }
  r.score = 0.0;
  cite(r, md.path, "", "no install instructions");
  return r;
}

inline bool is_runnable_command(const std::string& line) {
  auto t = trim(line);
  if (t.starts_with("$ ")) t = trim(t.substr(2));
  static const std::regex re(
      R"(^((python3?|jupyter|bash|sh|make|Rscript|papermill)\s+\S+|\./\S+|snakemake\b|docker\s+run\b).*)");
  return std::regex_match(t, re);
}

inline SubMetricResult usage_examples(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  if (ctx.models.readme) {
    const auto& md = *ctx.models.readme;
    for (const auto& block : md.fenced_code_blocks)
      for (const auto& line : split_lines(block.body))
        if (is_runnable_command(line)) {
          r.score = 100.0;
          cite(r, md.path, "runnable command in fenced block", trim(line));
          return r;
        }
    if (!md.fenced_code_blocks.empty()) {
      r.score = 60.0;
      cite(r, md.path, "code block",
           "info: " + md.fenced_code_blocks.front().info_string);
      return r;
    }
  }
  for (const auto& f : ctx.snap.inventory.files) {
    auto lp = to_lower(f.path);
    if (lp.starts_with("examples/") || lp.starts_with("example/") ||
        lp.starts_with("demo/") || lp.starts_with("demos/")) {
      r.score = 40.0;
      cite(r, f.path, "examples directory");
      return r;
    }
  }
  r.score = 0.0;
  cite(r, "", "", "no usage examples");
  return r;
}

inline SubMetricResult inline_explanation(const RegistryEntry& e,
                                          const EvalContext& ctx) {
  auto r = make(e);
  int md_cells = 0, code_cells = 0;
  for (const auto& nb : ctx.models.notebooks) {
    md_cells += nb.markdown_cell_count();  // empty cells excluded
    code_cells += nb.code_cell_count();
  }
  std::optional<double> nb_component;
  if (code_cells > 0) {
    double ratio = static_cast<double>(md_cells) / code_cells;
    nb_component = 100.0 * std::min(ratio / 0.5, 1.0);
    cite(r, ctx.models.notebooks.front().path, "markdown/code ratio",
         std::to_string(md_cells) + " md / " + std::to_string(code_cells) + " code");
  }

  long comment_lines = 0, nonblank_lines = 0;
  std::string first_script;
  for (const auto* u : ctx.models.script_units()) {
    if (first_script.empty()) first_script = u->path;
    for (const auto& line : u->lines) {
      auto t = trim(line);
      if (t.empty()) continue;
      ++nonblank_lines;
      if (t[0] == '#' && !t.starts_with("#!")) ++comment_lines;
    }
  }
  std::optional<double> script_component;
  if (nonblank_lines > 0) {
    double density = static_cast<double>(comment_lines) / nonblank_lines;
    script_component = 100.0 * std::min(density / 0.20, 1.0);
    cite(r, first_script, "comment density",
         std::to_string(comment_lines) + "/" + std::to_string(nonblank_lines) + " lines");
  }

  if (!nb_component && !script_component) {
    r.score = std::nullopt;
    r.evidence.clear();
    cite(r, "", "", "no notebooks or scripts");
    return r;
  }
  double sum = 0;
  int n = 0;
  if (nb_component) { sum += *nb_component; ++n; }
  if (script_component) { sum += *script_component; ++n; }
  r.score = sum / n;
  return r;
}

inline SubMetricResult entry_point(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  for (const auto& f : ctx.snap.inventory.files) {
    auto name = to_lower(fs::path(f.path).filename().string());
    if (name == "main.py" || name == "run.py" || name == "run.sh" ||
        name == "__main__.py" || name == "app.py") {
      r.score = 100.0;
      cite(r, f.path, "canonical entry artifact");
      return r;
    }
  }
  static const std::regex run_target_re(R"(^run\s*:)");
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::makefile)) {
    if (!f->content_scannable) continue;
    auto text = try_read_file(ctx.snap.root / f->path);
    if (!text) continue;
    int ln = 0;
    for (const auto& line : split_lines(*text)) {
      ++ln;
      if (std::regex_search(line, run_target_re)) {
        r.score = 100.0;
        cite(r, f->path, "run make target", trim(line), ln);
        return r;
      }
    }
  }
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::dependency_manifest)) {
    if (!f->content_scannable) continue;
    auto text = try_read_file(ctx.snap.root / f->path);
    if (!text) continue;
    if (text->find("[project.scripts]") != std::string::npos ||
        text->find("console_scripts") != std::string::npos ||
        text->find("entry_points") != std::string::npos) {
      r.score = 100.0;
      cite(r, f->path, "declared console entry");
      return r;
    }
  }
  r.score = 0.0;
  cite(r, "", "", "no canonical entry point");
  return r;
}

inline SubMetricResult docstring_coverage(const RegistryEntry& e,
                                          const EvalContext& ctx) {
  auto r = make(e);
  static const std::regex def_re(R"(^\s*(def|class)\s+([A-Za-z_][A-Za-z0-9_]*))");
  int total = 0, documented = 0;
  std::string first_path;
  for (const auto& u : ctx.models.sources) {
    for (std::size_t i = 0; i < u.lines.size(); ++i) {
      std::smatch m;
      if (!std::regex_search(u.lines[i], m, def_re)) continue;
      std::string name = m[2];
      if (name.starts_with("_")) continue;
      ++total;
      if (first_path.empty()) first_path = u.path;
      // skip to the end of the signature (line ending with ':')
      std::size_t j = i;
      while (j < u.lines.size() && trim(u.lines[j]).find(':') == std::string::npos &&
             j < i + 10)
        ++j;
      for (std::size_t k = j + 1; k < u.lines.size() && k <= j + 2; ++k) {
        auto t = trim(u.lines[k]);
        if (t.empty()) continue;
        if (t.starts_with("\"\"\"") || t.starts_with("'''") ||
            t.starts_with("r\"\"\"") || t.starts_with("r'''")) {
          ++documented;
        }
        break;
      }
    }
  }
  if (total == 0) {
    r.score = std::nullopt;
    cite(r, "", "", "no public symbols");
    return r;
  }
  r.score = 100.0 * documented / total;
  cite(r, first_path, "docstring scan",
       std::to_string(documented) + "/" + std::to_string(total) + " documented");
  return r;
}

inline SubMetricResult reuse_metadata(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  int count = 0;
  for (auto kind : {FileKind::license, FileKind::citation, FileKind::codemeta}) {
    auto files = ctx.snap.inventory.of_kind(kind);
    if (!files.empty()) {
      ++count;
      cite(r, files.front()->path, file_kind_name(kind));
    }
  }
  static const double tiers[4] = {0, 33, 66, 100};
  r.score = tiers[count];
  if (count == 0) cite(r, "", "", "no reuse metadata");
  return r;
}

// --- C: code portability ---------------------------------------------------

// Fraction of scanned units free of a line-level defect pattern.
inline SubMetricResult fraction_free(const RegistryEntry& e, const EvalContext& ctx,
                                     const std::function<bool(const std::vector<std::string>&,
                                                              int*, std::string*)>& flag,
                                     const std::string& defect_name) {
  auto r = make(e);
  int total = 0, clean = 0;
  std::string first_clean;
  for (const auto& u : ctx.models.sources) {
    ++total;
    int line = 0;
    std::string hit;
    if (flag(u.lines, &line, &hit)) {
      cite(r, u.path, hit, defect_name, line);
    } else {
      ++clean;
      if (first_clean.empty()) first_clean = u.path;
    }
  }
  if (total == 0) {
    r.score = 0.0;
    cite(r, "", "", "no source files scanned");
    return r;
  }
  r.score = 100.0 * clean / total;
  if (*r.score > 0)
    cite(r, first_clean, "scan",
         std::to_string(clean) + "/" + std::to_string(total) + " files clean of " +
             defect_name);
  return r;
}

inline SubMetricResult no_absolute_paths(const RegistryEntry& e, const EvalContext& ctx) {
  static const std::regex re(R"((/home/[A-Za-z0-9_]|/Users/[A-Za-z0-9_]|[A-Za-z]:\\))");
  return fraction_free(
      e, ctx,
      [](const std::vector<std::string>& lines, int* line, std::string* hit) {
        int ln = 0;
        for (const auto& l : lines) {
          ++ln;
          std::smatch m;
          if (std::regex_search(l, m, re)) {
            *line = ln;
            *hit = m[0];
            return true;
          }
        }
        return false;
      },
      "machine-specific path");
}

inline SubMetricResult no_hardcoded_creds(const RegistryEntry& e, const EvalContext& ctx) {
  static const std::regex re(
      R"((api[_-]?key|apikey|secret|token|passwd|password|access[_-]?key|auth[_-]?token)\s*=\s*["'][^"']{4,}["'])",
      std::regex::icase);
  return fraction_free(
      e, ctx,
      [](const std::vector<std::string>& lines, int* line, std::string* hit) {
        int ln = 0;
        for (const auto& l : lines) {
          ++ln;
          if (contains_ci(l, "environ") || contains_ci(l, "getenv") ||
              contains_ci(l, "getpass") || contains_ci(l, "input("))
            continue;
          std::smatch m;
          if (std::regex_search(l, m, re)) {
            *line = ln;
            *hit = m[1];
            return true;
          }
        }
        return false;
      },
      "credential assignment");
}

inline SubMetricResult no_silent_failures(const RegistryEntry& e, const EvalContext& ctx) {
  static const std::regex except_re(R"(^\s*except(\s+\w[\w.]*)?(\s+as\s+\w+)?\s*:\s*(pass\s*)?$)");
  return fraction_free(
      e, ctx,
      [](const std::vector<std::string>& lines, int* line, std::string* hit) {
        for (std::size_t i = 0; i < lines.size(); ++i) {
          std::smatch m;
          if (!std::regex_match(lines[i], m, except_re)) continue;
          bool same_line_pass = m[3].matched;
          bool next_pass = false;
          for (std::size_t j = i + 1; j < lines.size(); ++j) {
            auto t = trim(lines[j]);
            if (t.empty() || t.starts_with("#")) continue;
            next_pass = (t == "pass");
            break;
          }
          if (same_line_pass || next_pass) {
            *line = static_cast<int>(i + 1);
            *hit = trim(lines[i]);
            return true;
          }
        }
        return false;
      },
      "exception swallowing");
}

inline SubMetricResult import_resolvability(const RegistryEntry& e,
                                            const EvalContext& ctx) {
  auto r = make(e);
  auto local = local_module_names(ctx.snap.inventory);
  std::set<std::string> third_party;
  for (const auto& u : ctx.models.sources)
    for (const auto& mod : collect_imports(u)) {
      if (ctx.patterns.stdlib_modules.count(mod)) continue;
      if (local.count(mod)) continue;
      third_party.insert(mod);
    }

  if (third_party.empty()) {
    r.score = 100.0;
    cite(r, ctx.models.sources.empty() ? "" : ctx.models.sources.front().path,
         "", "no third-party imports");
    return r;
  }
  if (ctx.models.deps.declared.empty()) {
    r.score = 0.0;  // no dependency specification at all
    for (const auto& mod : third_party)
      cite(r, "", mod, "third-party import with no dependency files");
    return r;
  }
  int resolved = 0;
  for (const auto& mod : third_party) {
    std::string dist = normalize_dist_name(mod);
    auto alias = ctx.patterns.module_aliases.find(mod);
    if (alias != ctx.patterns.module_aliases.end())
      dist = normalize_dist_name(alias->second);
    if (ctx.models.deps.contains(dist)) {
      ++resolved;
      cite(r, "", mod, "resolved to " + dist);
    } else {
      cite(r, "", mod, "unresolved import");
    }
  }
  r.score = 100.0 * resolved / static_cast<double>(third_party.size());
  return r;
}

// --- S: reproducibility signals --------------------------------------------

inline SubMetricResult seed_management(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  int stochastic = 0, seeded = 0;
  for (const auto& u : ctx.models.sources) {
    bool has_rand = false, has_seed = false;
    std::string rand_hit, seed_hit;
    int rand_line = 0;
    int ln = 0;
    for (const auto& line : u.lines) {
      ++ln;
      if (!has_rand && line_matches_any(line, ctx.patterns.randomness_apis, &rand_hit))
        has_rand = true, rand_line = ln;
      if (!has_seed && line_matches_any(line, ctx.patterns.seed_apis, &seed_hit))
        has_seed = true;
    }
    if (has_rand) {
      ++stochastic;
      if (has_seed) {
        ++seeded;
        cite(r, u.path, seed_hit, "stochastic file with seed call");
      } else {
        cite(r, u.path, rand_hit, "stochastic file without seed call", rand_line);
      }
    }
  }
  if (stochastic == 0) {
    r.score = std::nullopt;
    cite(r, "", "", "no stochastic operations detected");
    return r;
  }
  r.score = 100.0 * seeded / static_cast<double>(stochastic);
  return r;
}

inline SubMetricResult notebook_exec_order(const RegistryEntry& e,
                                           const EvalContext& ctx) {
  auto r = make(e);
  int considered = 0, monotonic = 0;
  for (const auto& nb : ctx.models.notebooks) {
    auto counts = nb.execution_counts();
    if (counts.empty()) continue;  // never executed: excluded from denominator
    ++considered;
    bool increasing = true;
    for (std::size_t i = 1; i < counts.size(); ++i)
      if (counts[i] <= counts[i - 1]) increasing = false;
    if (increasing) {
      ++monotonic;
      cite(r, nb.path, "monotonic execution counts");
    } else {
      cite(r, nb.path, "non-monotonic execution counts");
    }
  }
  for (const auto& bad : ctx.models.notebook_errors) {
    ++considered;  // malformed counts as non-monotonic
    cite(r, bad, "malformed notebook", "counted non-monotonic");
  }
  if (considered == 0) {
    r.score = std::nullopt;
    r.evidence.clear();
    cite(r, "", "", "no executed notebooks");
    return r;
  }
  r.score = 100.0 * monotonic / static_cast<double>(considered);
  return r;
}

inline SubMetricResult test_file_presence(const RegistryEntry& e,
                                          const EvalContext& ctx) {
  auto r = make(e);
  auto tests = ctx.snap.inventory.of_kind(FileKind::test_file);
  r.score = 100.0 * std::min(static_cast<double>(tests.size()) / 2.0, 1.0);
  for (const auto* f : tests) cite(r, f->path, "test file");
  if (tests.empty()) cite(r, "", "", "no test files");
  return r;
}

inline SubMetricResult expected_outputs(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  static const std::regex outdir_re(
      R"(^(results?|outputs?|figures?|figs|plots?)/)");
  for (const auto& f : ctx.snap.inventory.files) {
    if (std::regex_search(to_lower(f.path), outdir_re)) {
      r.score = 100.0;
      cite(r, f.path, "reference output directory");
      return r;
    }
  }
  for (const auto* f : ctx.snap.inventory.of_kind(FileKind::data_file)) {
    auto lp = to_lower(f->path);
    if (lp.ends_with(".png") || lp.ends_with(".jpg") || lp.ends_with(".jpeg") ||
        lp.ends_with(".svg") || lp.ends_with(".pdf") || lp.ends_with(".eps")) {
      r.score = 50.0;
      cite(r, f->path, "committed figure", "tier: partial");
      return r;
    }
  }
  r.score = 0.0;
  cite(r, "", "", "no expected outputs");
  return r;
}

inline SubMetricResult ci_presence(const RegistryEntry& e, const EvalContext& ctx) {
  auto r = make(e);
  auto files = ctx.snap.inventory.of_kind(FileKind::ci_config);
  if (!files.empty()) {
    r.score = 100.0;
    for (const auto* f : files) cite(r, f->path, "CI configuration");
  } else {
    r.score = 0.0;
    cite(r, "", "", "no CI configuration");
  }
  return r;
}

inline SubMetricResult config_externalised(const RegistryEntry& e,
                                           const EvalContext& ctx) {
  auto r = make(e);
  static const std::vector<std::string> cli = {"argparse", "click", "typer",
                                               "sys.argv", "absl.flags"};
  auto configs = ctx.snap.inventory.of_kind(FileKind::config_file);
  if (!configs.empty()) {
    r.score = 100.0;
    cite(r, configs.front()->path, "config file");
    return r;
  }
  for (const auto& u : ctx.models.sources) {
    int ln = 0;
    for (const auto& line : u.lines) {
      ++ln;
      std::string hit;
      if (line_matches_any(line, cli, &hit)) {
        r.score = 100.0;
        cite(r, u.path, hit, "CLI argument parsing", ln);
        return r;
      }
    }
  }
  static const std::vector<std::string> cfg_read = {"yaml.safe_load", "yaml.load",
                                                    "json.load", "configparser",
                                                    "ConfigParser"};
  for (const auto& u : ctx.models.sources) {
    int ln = 0;
    for (const auto& line : u.lines) {
      ++ln;
      std::string hit;
      if (line_matches_any(line, cfg_read, &hit)) {
        r.score = 50.0;
        cite(r, u.path, hit, "config loading without config files", ln);
        return r;
      }
    }
  }
  r.score = 0.0;
  cite(r, "", "", "parameters hardcoded");
  return r;
}

inline SubMetricResult hardware_requirements(const RegistryEntry& e,
                                             const EvalContext& ctx) {
  auto r = make(e);
  std::set<std::string> gpu;
  for (const auto& pkg : ctx.patterns.gpu_packages) {
    if (ctx.models.deps.contains(normalize_dist_name(pkg))) gpu.insert(pkg);
  }
  for (const auto& u : ctx.models.sources)
    for (const auto& mod : collect_imports(u))
      for (const auto& pkg : ctx.patterns.gpu_packages)
        if (mod == pkg) gpu.insert(pkg);

  if (gpu.empty()) {
    r.score = std::nullopt;
    cite(r, "", "", "no GPU packages detected");
    return r;
  }
  bool declared = false;
  if (ctx.models.readme) {
    const auto& body = ctx.models.readme->body;
    for (const char* kw : {"gpu", "cuda", "vram", "nvidia", "hardware"})
      if (contains_ci(body, kw)) declared = true;
  }
  if (declared) {
    r.score = 100.0;
    cite(r, ctx.models.readme->path, "hardware requirements declared",
         "GPU packages: " + *gpu.begin());
  } else {
    r.score = 0.0;
    cite(r, "", *gpu.begin(), "GPU packages without declared requirements");
  }
  return r;
}

}  // namespace metrics

inline SubMetricResult evaluate_submetric(const RegistryEntry& entry,
                                          const EvalContext& ctx) {
  using Fn = SubMetricResult (*)(const RegistryEntry&, const EvalContext&);
  static const std::map<std::string, Fn> dispatch = {
      {"dep_pinning", metrics::dep_pinning},
      {"container_spec", metrics::container_spec},
      {"env_bootstrap", metrics::env_bootstrap},
      {"runtime_version", metrics::runtime_version},
      {"data_description", metrics::data_description},
      {"data_pointer", metrics::data_pointer},
      {"workflow_orchestration", metrics::workflow_orchestration},
      {"data_acquisition", metrics::data_acquisition},
      {"doc_structure", metrics::doc_structure},
      {"install_instructions", metrics::install_instructions},
      {"usage_examples", metrics::usage_examples},
      {"inline_explanation", metrics::inline_explanation},
      {"entry_point", metrics::entry_point},
      {"docstring_coverage", metrics::docstring_coverage},
      {"reuse_metadata", metrics::reuse_metadata},
      {"no_absolute_paths", metrics::no_absolute_paths},
      {"import_resolvability", metrics::import_resolvability},
      {"no_hardcoded_creds", metrics::no_hardcoded_creds},
      {"no_silent_failures", metrics::no_silent_failures},
      {"seed_management", metrics::seed_management},
      {"notebook_exec_order", metrics::notebook_exec_order},
      {"test_file_presence", metrics::test_file_presence},
      {"expected_outputs", metrics::expected_outputs},
      {"ci_presence", metrics::ci_presence},
      {"config_externalised", metrics::config_externalised},
      {"hardware_requirements", metrics::hardware_requirements},
  };
  auto it = dispatch.find(entry.id);
  if (it == dispatch.end())
    throw std::runtime_error("unknown sub-metric id: " + entry.id);
  return it->second(entry, ctx);
}

inline std::vector<SubMetricResult> evaluate_all(const RepoSnapshot& snap,
                                                 const ParsedModels& models,
                                                 const SubMetricRegistry& registry,
                                                 const PatternSet& patterns) {
  EvalContext ctx{snap, models, patterns};
  std::vector<SubMetricResult> out;
  out.reserve(registry.entries.size());
  for (const auto& entry : registry.entries)
    out.push_back(evaluate_submetric(entry, ctx));
  return out;
}

}  // namespace reproscore
