#pragma once

#include <yaml-cpp/yaml.h>

#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "reproscore/repo_model.hpp"
#include "reproscore/util.hpp"

namespace reproscore {

enum class ConstraintKind { exact, bounded, unbounded, none };

inline int constraint_strength(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::exact: return 3;
    case ConstraintKind::bounded: return 2;
    case ConstraintKind::unbounded: return 1;
    case ConstraintKind::none: return 0;
  }
  return 0;
}

inline const char* constraint_name(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::exact: return "exact";
    case ConstraintKind::bounded: return "bounded";
    case ConstraintKind::unbounded: return "unbounded";
    case ConstraintKind::none: return "none";
  }
  return "none";
}

struct DependencySpec {
  // normalized distribution name -> strongest constraint seen
  std::map<std::string, ConstraintKind> declared;
  std::vector<std::string> source_files;
  std::vector<std::string> warnings;  // unparseable manifests, skipped not fatal
  bool has_lockfile = false;
  bool runtime_version_declared = false;

  bool contains(const std::string& normalized_name) const {
    return declared.count(normalized_name) > 0;
  }
  void add(const std::string& name, ConstraintKind kind) {
    auto norm = normalize_dist_name(name);
    if (norm.empty()) return;
    auto it = declared.find(norm);
    if (it == declared.end() ||
        constraint_strength(kind) > constraint_strength(it->second))
      declared[norm] = kind;
  }
};

namespace detail {

// One requirement line ("numpy>=1.2,<2.0", "pandas[all]==2.1"). Returns
// false for non-requirement lines (options, includes, URLs).
inline bool parse_requirement_line(const std::string& raw, std::string* name,
                                   ConstraintKind* kind) {
  auto line = trim(raw);
  if (auto hash = line.find(" #"); hash != std::string::npos)
    line = trim(line.substr(0, hash));
  if (line.empty() || line[0] == '#' || line[0] == '-') return false;
  if (line.find("://") != std::string::npos || line.find("git+") == 0) return false;

  static const std::regex re(R"(^([A-Za-z0-9][A-Za-z0-9._-]*)\s*(\[[^\]]*\])?\s*(.*)$)");
  std::smatch m;
  if (!std::regex_match(line, m, re)) return false;
  *name = m[1];
  std::string spec = trim(m[3].str());
  if (auto semi = spec.find(';'); semi != std::string::npos)
    spec = trim(spec.substr(0, semi));  // drop environment markers

  if (spec.empty()) {
    *kind = ConstraintKind::none;
  } else if (spec.find("==") != std::string::npos) {
    *kind = ConstraintKind::exact;
  } else if (spec.find("~=") != std::string::npos ||
             ((spec.find(">=") != std::string::npos || spec.find('>') != std::string::npos) &&
              (spec.find('<') != std::string::npos))) {
    *kind = ConstraintKind::bounded;
  } else if (spec.find('>') != std::string::npos ||
             spec.find('<') != std::string::npos ||
             spec.find("!=") != std::string::npos) {
    *kind = ConstraintKind::unbounded;
  } else {
    *kind = ConstraintKind::none;
  }
  return true;
}

inline void parse_requirements_text(const std::string& text, DependencySpec* spec) {
  for (const auto& line : split_lines(text)) {
    std::string name;
    ConstraintKind kind;
    if (parse_requirement_line(line, &name, &kind)) spec->add(name, kind);
  }
}

inline void parse_conda_dep(const std::string& entry, DependencySpec* spec) {
  auto t = trim(entry);
  if (t.empty()) return;
  // conda syntax: name, name=1.2.3, name=1.2.3=build, name>=1.0
  static const std::regex re(R"(^([A-Za-z0-9][A-Za-z0-9._-]*)\s*(.*)$)");
  std::smatch m;
  if (!std::regex_match(t, m, re)) return;
  std::string name = m[1];
  std::string rest = trim(m[2].str());
  if (to_lower(name) == "python") {
    if (!rest.empty()) spec->runtime_version_declared = true;
    return;
  }
  if (to_lower(name) == "pip") return;
  ConstraintKind kind = ConstraintKind::none;
  if (!rest.empty()) {
    if (rest.find('>') != std::string::npos || rest.find('<') != std::string::npos)
      kind = ConstraintKind::unbounded;
    else if (rest[0] == '=' && rest.find('*') == std::string::npos)
      kind = ConstraintKind::exact;
    else
      kind = ConstraintKind::bounded;
  }
  spec->add(name, kind);
}

inline void parse_environment_yaml(const std::string& text, const std::string& path,
                                   DependencySpec* spec) {
  YAML::Node doc;
  try {
    doc = YAML::Load(text);
  } catch (const YAML::Exception&) {
    spec->warnings.push_back("unparseable manifest: " + path);
    return;
  }
  if (!doc.IsMap()) return;
  auto deps = doc["dependencies"];
  if (!deps || !deps.IsSequence()) return;
  for (const auto& item : deps) {
    if (item.IsScalar()) {
      parse_conda_dep(item.as<std::string>(), spec);
    } else if (item.IsMap() && item["pip"] && item["pip"].IsSequence()) {
      for (const auto& pip : item["pip"])
        if (pip.IsScalar()) {
          std::string name;
          ConstraintKind kind;
          if (parse_requirement_line(pip.as<std::string>(), &name, &kind))
            spec->add(name, kind);
        }
    }
  }
}

inline std::vector<std::string> extract_quoted_strings(const std::string& text) {
  std::vector<std::string> out;
  static const std::regex re(R"(["']([^"']+)["'])");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
       it != std::sregex_iterator(); ++it)
    out.push_back((*it)[1]);
  return out;
}

// Focused extraction from project-metadata TOML: [project] dependencies
// array, requires-python, poetry dependency tables. Not a full TOML parser.
inline void parse_pyproject_toml(const std::string& text, DependencySpec* spec) {
  if (text.find("requires-python") != std::string::npos) spec->runtime_version_declared = true;

  static const std::regex dep_array_re(
      R"((?:^|\n)\s*dependencies\s*=\s*\[([^\]]*)\])");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), dep_array_re);
       it != std::sregex_iterator(); ++it) {
    for (const auto& req : extract_quoted_strings((*it)[1])) {
      std::string name;
      ConstraintKind kind;
      if (parse_requirement_line(req, &name, &kind)) spec->add(name, kind);
    }
  }

  // [tool.poetry.dependencies] name = "spec"
  auto pos = text.find("[tool.poetry.dependencies]");
  if (pos != std::string::npos) {
    auto end = text.find("\n[", pos + 1);
    std::string section = text.substr(pos, end == std::string::npos ? end : end - pos);
    static const std::regex kv_re(R"((?:^|\n)\s*([A-Za-z0-9._-]+)\s*=\s*"([^"]*)\")");
    for (auto it = std::sregex_iterator(section.begin(), section.end(), kv_re);
         it != std::sregex_iterator(); ++it) {
      std::string name = (*it)[1];
      std::string ver = (*it)[2];
      if (to_lower(name) == "python") {
        spec->runtime_version_declared = true;
        continue;
      }
      ConstraintKind kind = ConstraintKind::none;
      if (!ver.empty()) {
        if (ver[0] == '^' || ver[0] == '~') kind = ConstraintKind::bounded;
        else if (ver == "*") kind = ConstraintKind::none;
        else if (ver.find('>') != std::string::npos || ver.find('<') != std::string::npos)
          kind = ConstraintKind::unbounded;
        else kind = ConstraintKind::exact;
      }
      spec->add(name, kind);
    }
  }
}

inline void parse_setup_py(const std::string& text, DependencySpec* spec) {
  static const std::regex re(R"(install_requires\s*=\s*\[([^\]]*)\])");
  std::smatch m;
  if (std::regex_search(text, m, re)) {
    for (const auto& req : extract_quoted_strings(m[1])) {
      std::string name;
      ConstraintKind kind;
      if (parse_requirement_line(req, &name, &kind)) spec->add(name, kind);
    }
  }
  if (text.find("python_requires") != std::string::npos)
    spec->runtime_version_declared = true;
}

inline void parse_setup_cfg(const std::string& text, DependencySpec* spec) {
  bool in_requires = false;
  for (const auto& line : split_lines(text)) {
    auto t = trim(line);
    if (t.starts_with("install_requires")) {
      in_requires = true;
      auto eq = t.find('=');
      if (eq != std::string::npos) {
        std::string name;
        ConstraintKind kind;
        if (parse_requirement_line(trim(t.substr(eq + 1)), &name, &kind))
          spec->add(name, kind);
      }
      continue;
    }
    if (in_requires) {
      if (!line.empty() && !std::isspace(static_cast<unsigned char>(line[0]))) {
        in_requires = false;
      } else {
        std::string name;
        ConstraintKind kind;
        if (parse_requirement_line(t, &name, &kind)) spec->add(name, kind);
      }
    }
    if (t.starts_with("python_requires")) spec->runtime_version_declared = true;
  }
}

inline void parse_pipfile(const std::string& text, DependencySpec* spec) {
  bool in_packages = false;
  for (const auto& line : split_lines(text)) {
    auto t = trim(line);
    if (t.starts_with("[")) {
      in_packages = (t == "[packages]" || t == "[dev-packages]");
      if (t == "[requires]") spec->runtime_version_declared = true;
      continue;
    }
    if (!in_packages || t.empty() || t[0] == '#') continue;
    static const std::regex kv_re(R"(^([A-Za-z0-9._-]+)\s*=\s*"([^"]*)\"$)");
    std::smatch m;
    if (!std::regex_match(t, m, kv_re)) continue;
    std::string ver = m[2];
    ConstraintKind kind = ConstraintKind::none;
    if (ver.find("==") != std::string::npos) kind = ConstraintKind::exact;
    else if (!ver.empty() && ver != "*") kind = ConstraintKind::bounded;
    spec->add(m[1], kind);
  }
}

}  // namespace detail

// Union of declarations across all manifests in the inventory; strongest
// constraint wins per distribution. Unparseable manifests are skipped with
// a warning, never fatal.
inline DependencySpec parse_dependency_files(const fs::path& root,
                                             const FileInventory& inventory) {
  DependencySpec spec;
  spec.has_lockfile = inventory.count(FileKind::lockfile) > 0;

  for (const auto* f : inventory.of_kind(FileKind::dependency_manifest)) {
    spec.source_files.push_back(f->path);
    if (!f->content_scannable) {
      spec.warnings.push_back("skipped: size " + f->path);
      continue;
    }
    auto text = try_read_file(root / f->path);
    if (!text) {
      spec.warnings.push_back("unreadable manifest: " + f->path);
      continue;
    }
    auto lname = to_lower(fs::path(f->path).filename().string());
    try {
      if (lname.starts_with("requirements"))
        detail::parse_requirements_text(*text, &spec);
      else if (lname == "environment.yml" || lname == "environment.yaml")
        detail::parse_environment_yaml(*text, f->path, &spec);
      else if (lname == "pyproject.toml")
        detail::parse_pyproject_toml(*text, &spec);
      else if (lname == "setup.py")
        detail::parse_setup_py(*text, &spec);
      else if (lname == "setup.cfg")
        detail::parse_setup_cfg(*text, &spec);
      else if (lname == "pipfile")
        detail::parse_pipfile(*text, &spec);
    } catch (const std::exception&) {
      spec.warnings.push_back("unparseable manifest: " + f->path);
    }
  }
  return spec;
}

}  // namespace reproscore
