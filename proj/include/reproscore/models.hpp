#pragma once

#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "reproscore/deps.hpp"
#include "reproscore/notebook.hpp"
#include "reproscore/patterns.hpp"
#include "reproscore/readme.hpp"
#include "reproscore/repo_model.hpp"

namespace reproscore {

// A scannable piece of Python code: a script/test file, or the
// concatenated code cells of a notebook.
struct SourceUnit {
  std::string path;
  std::vector<std::string> lines;
  bool from_notebook = false;
};

struct ParsedModels {
  std::vector<NotebookModel> notebooks;
  std::vector<std::string> notebook_errors;  // paths of malformed notebooks
  std::optional<ReadmeModel> readme;         // primary (root-most) README
  DependencySpec deps;
  std::vector<SourceUnit> sources;           // scripts + tests + notebook code

  std::vector<const SourceUnit*> script_units() const {
    std::vector<const SourceUnit*> out;
    for (const auto& s : sources)
      if (!s.from_notebook) out.push_back(&s);
    return out;
  }
};

namespace detail {

inline int path_depth(const std::string& p) {
  return static_cast<int>(std::count(p.begin(), p.end(), '/'));
}

}  // namespace detail

inline ParsedModels parse_all(const RepoSnapshot& snap) {
  ParsedModels m;

  for (const auto* f : snap.inventory.of_kind(FileKind::notebook)) {
    if (!f->content_scannable) {
      m.notebook_errors.push_back(f->path);
      continue;
    }
    try {
      m.notebooks.push_back(parse_notebook(snap.root / f->path, f->path));
    } catch (const std::exception&) {
      m.notebook_errors.push_back(f->path);
    }
  }

  // primary README: shallowest path, README.md preferred at equal depth
  const InventoryEntry* best = nullptr;
  for (const auto* f : snap.inventory.of_kind(FileKind::readme)) {
    if (!f->content_scannable) continue;
    if (!best || detail::path_depth(f->path) < detail::path_depth(best->path) ||
        (detail::path_depth(f->path) == detail::path_depth(best->path) &&
         to_lower(f->path).ends_with(".md") && !to_lower(best->path).ends_with(".md")))
      best = f;
  }
  if (best) {
    try {
      m.readme = parse_readme(snap.root / best->path, best->path);
    } catch (const std::exception&) {
    }
  }

  m.deps = parse_dependency_files(snap.root, snap.inventory);

  auto add_script = [&](const InventoryEntry* f) {
    if (!f->content_scannable) return;
    auto text = try_read_file(snap.root / f->path);
    if (!text) return;
    SourceUnit u;
    u.path = f->path;
    u.lines = split_lines(*text);
    m.sources.push_back(std::move(u));
  };
  for (const auto* f : snap.inventory.of_kind(FileKind::python_source)) add_script(f);
  for (const auto* f : snap.inventory.of_kind(FileKind::test_file)) add_script(f);
  for (const auto& nb : m.notebooks) {
    SourceUnit u;
    u.path = nb.path;
    u.from_notebook = true;
    for (const auto& cell : nb.cells)
      if (cell.kind == CellKind::code)
        for (auto& line : split_lines(cell.source)) u.lines.push_back(line);
    m.sources.push_back(std::move(u));
  }
  return m;
}

// Top-level module names imported by a unit. Relative imports are skipped.
inline std::set<std::string> collect_imports(const SourceUnit& unit) {
  std::set<std::string> mods;
  static const std::regex import_re(R"(^\s*import\s+(.+)$)");
  static const std::regex from_re(R"(^\s*from\s+([A-Za-z_][A-Za-z0-9_.]*)\s+import\b)");
  for (const auto& line : unit.lines) {
    std::smatch sm;
    if (std::regex_search(line, sm, from_re)) {
      std::string mod = sm[1];
      mods.insert(mod.substr(0, mod.find('.')));
    } else if (std::regex_match(line, sm, import_re)) {
      // "import a.b as x, c" -> {a, c}
      std::string rest = sm[1];
      std::string tok;
      std::vector<std::string> parts;
      for (char c : rest + ",") {
        if (c == ',') {
          parts.push_back(trim(tok));
          tok.clear();
        } else {
          tok.push_back(c);
        }
      }
      for (auto& part : parts) {
        if (part.empty()) continue;
        auto space = part.find(' ');
        std::string mod = space == std::string::npos ? part : part.substr(0, space);
        if (mod.empty() || !(std::isalpha((unsigned char)mod[0]) || mod[0] == '_'))
          continue;
        mods.insert(mod.substr(0, mod.find('.')));
      }
    }
  }
  return mods;
}

// Names that resolve inside the repository itself (local modules/packages).
inline std::set<std::string> local_module_names(const FileInventory& inv) {
  std::set<std::string> names;
  for (const auto& f : inv.files) {
    auto slash = f.path.find('/');
    if (slash != std::string::npos) names.insert(f.path.substr(0, slash));
    if (f.path.ends_with(".py")) {
      auto stem = fs::path(f.path).stem().string();
      names.insert(stem);
    }
  }
  return names;
}

}  // namespace reproscore
