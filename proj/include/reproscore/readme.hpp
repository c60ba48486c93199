#pragma once

#include <map>
#include <string>
#include <vector>

#include "reproscore/util.hpp"

namespace reproscore {

struct ReadmeHeading {
  int level = 1;
  std::string text;
};

struct FencedBlock {
  std::string info_string;
  std::string body;
};

struct ReadmeModel {
  std::string path;
  std::string body;  // full text
  std::vector<ReadmeHeading> headings;
  // heading text -> body text until the next heading (preamble under "")
  std::vector<std::pair<std::string, std::string>> sections;
  std::vector<FencedBlock> fenced_code_blocks;

  int section_word_count(const std::string& heading) const {
    for (const auto& [h, b] : sections)
      if (h == heading) return count_words(b);
    return 0;
  }
};

// Minimal markdown structure pass: ATX headings, fenced code blocks,
// section bodies. Setext headings and HTML are out of scope.
inline ReadmeModel parse_readme_text(const std::string& text,
                                     const std::string& path) {
  ReadmeModel md;
  md.path = path;
  md.body = text;

  std::string current_heading;
  std::string current_body;
  bool in_fence = false;
  FencedBlock fence;

  auto flush_section = [&] {
    md.sections.emplace_back(current_heading, current_body);
    current_body.clear();
  };

  for (const auto& line : split_lines(text)) {
    auto t = trim(line);
    if (t.starts_with("```") || t.starts_with("~~~")) {
      if (!in_fence) {
        in_fence = true;
        fence = {};
        fence.info_string = trim(t.substr(3));
      } else {
        in_fence = false;
        md.fenced_code_blocks.push_back(fence);
      }
      current_body += line + "\n";
      continue;
    }
    if (in_fence) {
      fence.body += line + "\n";
      current_body += line + "\n";
      continue;
    }
    if (t.starts_with("#")) {
      int level = 0;
      while (level < (int)t.size() && t[level] == '#') ++level;
      if (level <= 6 && level < (int)t.size() && t[level] == ' ') {
        flush_section();
        current_heading = trim(t.substr(level));
        md.headings.push_back({level, current_heading});
        continue;
      }
    }
    current_body += line + "\n";
  }
  if (in_fence) md.fenced_code_blocks.push_back(fence);  // unterminated fence
  flush_section();
  return md;
}

inline ReadmeModel parse_readme(const fs::path& file, const std::string& rel_path) {
  return parse_readme_text(read_file(file), rel_path);
}

}  // namespace reproscore
