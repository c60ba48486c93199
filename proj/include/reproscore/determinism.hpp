#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reproscore/notebook.hpp"

namespace reproscore {

namespace detail {

// Tokenizes a payload into numbers; empty result means non-numeric.
inline std::optional<std::vector<double>> numeric_tokens(const std::string& text) {
  std::vector<double> vals;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    // strip surrounding brackets/commas from array reprs
    std::string clean;
    for (char c : tok)
      if (!(c == '[' || c == ']' || c == '(' || c == ')' || c == ',')) clean.push_back(c);
    if (clean.empty()) continue;
    try {
      std::size_t used = 0;
      double v = std::stod(clean, &used);
      if (used != clean.size()) return std::nullopt;
      vals.push_back(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (vals.empty()) return std::nullopt;
  return vals;
}

inline bool outputs_match(const std::string& a, const std::string& b,
                          double tol) {
  auto na = numeric_tokens(a);
  auto nb = numeric_tokens(b);
  if (na && nb) {
    if (na->size() != nb->size()) return false;
    for (std::size_t i = 0; i < na->size(); ++i)
      if (std::abs((*na)[i] - (*nb)[i]) > tol) return false;
    return true;
  }
  return trim(a) == trim(b);  // non-numeric payloads: exact match
}

inline std::string cell_output_text(const NotebookCell& cell) {
  std::string out;
  for (const auto& o : cell.outputs) out += o.text;
  return out;
}

}  // namespace detail

struct DeterminismResult {
  std::optional<double> delta;  // absent when no comparable output cells
  int compared_cells = 0;
  int matching_cells = 0;
};

// Compares output cells across two runs of the same notebook set. Numeric
// payloads match within absolute tolerance; everything else must be exact.
inline DeterminismResult output_determinism(
    const std::vector<NotebookModel>& run_a,
    const std::vector<NotebookModel>& run_b, double tolerance = 1e-6) {
  std::map<std::string, const NotebookModel*> by_path_a, by_path_b;
  for (const auto& nb : run_a) by_path_a[nb.path] = &nb;
  for (const auto& nb : run_b) by_path_b[nb.path] = &nb;
  if (by_path_a.size() != by_path_b.size())
    throw std::invalid_argument("mismatched notebook sets");
  for (const auto& [path, _] : by_path_a)
    if (!by_path_b.count(path))
      throw std::invalid_argument("mismatched notebook sets: " + path);

  DeterminismResult res;
  for (const auto& [path, nba] : by_path_a) {
    const auto* nbb = by_path_b.at(path);
    std::vector<const NotebookCell*> code_a, code_b;
    for (const auto& c : nba->cells)
      if (c.kind == CellKind::code) code_a.push_back(&c);
    for (const auto& c : nbb->cells)
      if (c.kind == CellKind::code) code_b.push_back(&c);
    std::size_t n = std::max(code_a.size(), code_b.size());
    for (std::size_t i = 0; i < n; ++i) {
      std::string ta = i < code_a.size() ? detail::cell_output_text(*code_a[i]) : "";
      std::string tb = i < code_b.size() ? detail::cell_output_text(*code_b[i]) : "";
      if (trim(ta).empty() && trim(tb).empty()) continue;
      ++res.compared_cells;
      if (detail::outputs_match(ta, tb, tolerance)) ++res.matching_cells;
    }
  }
  if (res.compared_cells > 0)
    res.delta = 100.0 * res.matching_cells / res.compared_cells;
  return res;
}

// Parses every notebook directly under a directory (recursive), for the
// two-run comparison entry point.
inline std::vector<NotebookModel> load_notebook_dir(const fs::path& dir) {
  std::vector<NotebookModel> out;
  std::vector<std::string> rels;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".ipynb")
      rels.push_back(fs::relative(entry.path(), dir).generic_string());
  std::sort(rels.begin(), rels.end());
  for (const auto& rel : rels) out.push_back(parse_notebook(dir / rel, rel));
  return out;
}

}  // namespace reproscore
