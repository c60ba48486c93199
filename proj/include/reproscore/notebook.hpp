#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reproscore/util.hpp"

namespace reproscore {

enum class CellKind { code, markdown };

struct NotebookOutput {
  std::string output_type;  // stream | execute_result | display_data | error
  std::string text;         // concatenated text/plain payload (or stream text)
};

struct NotebookCell {
  CellKind kind = CellKind::code;
  std::string source;
  std::optional<int> execution_count;
  std::vector<NotebookOutput> outputs;
};

struct NotebookModel {
  std::string path;
  std::vector<NotebookCell> cells;  // on-disk order

  std::vector<int> execution_counts() const {
    std::vector<int> out;
    for (const auto& c : cells)
      if (c.kind == CellKind::code && c.execution_count) out.push_back(*c.execution_count);
    return out;
  }
  int code_cell_count(bool skip_empty = true) const {
    int n = 0;
    for (const auto& c : cells)
      if (c.kind == CellKind::code && (!skip_empty || !trim(c.source).empty())) ++n;
    return n;
  }
  int markdown_cell_count(bool skip_empty = true) const {
    int n = 0;
    for (const auto& c : cells)
      if (c.kind == CellKind::markdown && (!skip_empty || !trim(c.source).empty())) ++n;
    return n;
  }
};

struct NotebookParseError : std::runtime_error {
  std::string path;
  NotebookParseError(std::string p, const std::string& what)
      : std::runtime_error("malformed notebook " + p + ": " + what),
        path(std::move(p)) {}
};

namespace detail {

inline std::string join_source(const nlohmann::json& src) {
  if (src.is_string()) return src.get<std::string>();
  std::string out;
  if (src.is_array())
    for (const auto& part : src)
      if (part.is_string()) out += part.get<std::string>();
  return out;
}

}  // namespace detail

// Notebook JSON (cells array, cell_type, execution_count, outputs). Missing
// optional keys parse with defaults; structurally broken documents throw.
inline NotebookModel parse_notebook_text(const std::string& text,
                                         const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw NotebookParseError(path, e.what());
  }
  if (!doc.is_object() || !doc.contains("cells") || !doc["cells"].is_array())
    throw NotebookParseError(path, "missing cells array");

  NotebookModel nb;
  nb.path = path;
  for (const auto& jc : doc["cells"]) {
    if (!jc.is_object()) continue;
    NotebookCell cell;
    std::string type = jc.value("cell_type", "code");
    cell.kind = (type == "markdown") ? CellKind::markdown : CellKind::code;
    if (jc.contains("source")) cell.source = detail::join_source(jc["source"]);
    if (cell.kind == CellKind::code && jc.contains("execution_count") &&
        jc["execution_count"].is_number_integer())
      cell.execution_count = jc["execution_count"].get<int>();
    if (jc.contains("outputs") && jc["outputs"].is_array()) {
      for (const auto& jo : jc["outputs"]) {
        if (!jo.is_object()) continue;
        NotebookOutput out;
        out.output_type = jo.value("output_type", "");
        if (jo.contains("text"))
          out.text = detail::join_source(jo["text"]);
        else if (jo.contains("data") && jo["data"].is_object() &&
                 jo["data"].contains("text/plain"))
          out.text = detail::join_source(jo["data"]["text/plain"]);
        cell.outputs.push_back(std::move(out));
      }
    }
    nb.cells.push_back(std::move(cell));
  }
  return nb;
}

inline NotebookModel parse_notebook(const fs::path& file,
                                    const std::string& rel_path) {
  return parse_notebook_text(read_file(file), rel_path);
}

}  // namespace reproscore
