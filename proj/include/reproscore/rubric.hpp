#pragma once

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "reproscore/submetrics.hpp"
#include "reproscore/util.hpp"

namespace reproscore {

#ifndef REPROSCORE_VERSION
#define REPROSCORE_VERSION "0.1.0"
#endif

struct GatePolicy {
  double weight = 0;
  double tau = 0;
  double k = 1;
};

struct RubricProfile {
  std::string name;
  std::string version;
  std::map<Category, GatePolicy> categories;
  std::map<std::string, double> submetric_weights;  // overrides only

  double effective_submetric_weight(const RegistryEntry& entry) const {
    auto it = submetric_weights.find(entry.id);
    return it != submetric_weights.end() ? it->second : entry.weight;
  }
};

struct RubricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline RubricProfile default_rubric() {
  RubricProfile p;
  p.name = "default";
  p.version = REPROSCORE_VERSION;
  p.categories[Category::E] = {0.30, 40, 1.5};
  p.categories[Category::A] = {0.25, 30, 1.5};
  p.categories[Category::D] = {0.20, 20, 1.2};
  p.categories[Category::C] = {0.15, 25, 1.2};
  p.categories[Category::S] = {0.10, 30, 1.2};
  return p;
}

// Returns every violation, not just the first.
inline std::vector<std::string> validate_rubric(
    const RubricProfile& p,
    const SubMetricRegistry& registry = SubMetricRegistry::defaults()) {
  std::vector<std::string> errors;
  if (p.name.empty()) errors.push_back("rubric name is empty");
  if (p.version.empty()) errors.push_back("rubric version is empty");

  double sum = 0;
  for (auto cat : kCategories) {
    auto it = p.categories.find(cat);
    if (it == p.categories.end()) {
      errors.push_back(std::string("missing category: ") + category_name(cat));
      continue;
    }
    const auto& g = it->second;
    sum += g.weight;
    if (!(g.tau > 0))
      errors.push_back(std::string("gate threshold not positive for ") +
                       category_name(cat));
    if (g.k < 1.0)
      errors.push_back(std::string("gate exponent below 1 for ") + category_name(cat));
    if (g.weight < 0)
      errors.push_back(std::string("negative weight for ") + category_name(cat));
  }
  if (std::abs(sum - 1.0) > 0.01) {
    std::ostringstream ss;
    ss << "category weight sum out of tolerance: " << sum;
    errors.push_back(ss.str());
  }

  for (const auto& [id, w] : p.submetric_weights) {
    if (!registry.find(id)) errors.push_back("unknown sub-metric id: " + id);
    if (w < 0) errors.push_back("negative sub-metric weight: " + id);
  }
  // effective within-category sums (tolerance mirrors the category check)
  for (auto cat : kCategories) {
    double wsum = 0;
    bool overridden = false;
    for (const auto* entry : registry.of_category(cat)) {
      auto it = p.submetric_weights.find(entry->id);
      if (it != p.submetric_weights.end()) overridden = true;
      wsum += p.effective_submetric_weight(*entry);
    }
    if (overridden && std::abs(wsum - 1.0) > 0.01) {
      std::ostringstream ss;
      ss << "sub-metric weight sum out of tolerance for " << category_name(cat)
         << ": " << wsum;
      errors.push_back(ss.str());
    }
  }
  return errors;
}

// Partial documents inherit the default profile; unknown keys are rejected.
inline RubricProfile load_rubric_text(const std::string& yaml_text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw RubricError(std::string("malformed YAML: ") + e.what());
  }
  if (!doc.IsMap()) throw RubricError("rubric document is not a mapping");

  RubricProfile p = default_rubric();
  for (const auto& kv : doc) {
    auto key = kv.first.as<std::string>();
    if (key == "name") {
      p.name = kv.second.as<std::string>();
    } else if (key == "version") {
      p.version = kv.second.as<std::string>();
    } else if (key == "categories") {
      if (!kv.second.IsMap() && !kv.second.IsNull())
        throw RubricError("categories must be a mapping");
      if (kv.second.IsNull()) continue;
      for (const auto& ckv : kv.second) {
        auto cname = ckv.first.as<std::string>();
        auto cat = category_from_name(cname);
        if (!cat) throw RubricError("unknown category key: " + cname);
        if (!ckv.second.IsMap())
          throw RubricError("category entry must be a mapping: " + cname);
        GatePolicy& g = p.categories[*cat];
        for (const auto& fkv : ckv.second) {
          auto fname = fkv.first.as<std::string>();
          if (fname == "weight") g.weight = fkv.second.as<double>();
          else if (fname == "tau") g.tau = fkv.second.as<double>();
          else if (fname == "k") g.k = fkv.second.as<double>();
          else throw RubricError("unknown key in category " + cname + ": " + fname);
        }
      }
    } else if (key == "submetrics") {
      if (kv.second.IsNull()) continue;
      if (!kv.second.IsMap()) throw RubricError("submetrics must be a mapping");
      for (const auto& skv : kv.second)
        p.submetric_weights[skv.first.as<std::string>()] = skv.second.as<double>();
    } else {
      throw RubricError("unknown top-level key: " + key);
    }
  }

  auto errors = validate_rubric(p);
  if (!errors.empty()) {
    std::string msg = "rubric validation failed:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw RubricError(msg);
  }
  return p;
}

inline RubricProfile load_rubric(const fs::path& file) {
  return load_rubric_text(read_file(file));
}

inline std::string serialize_rubric(const RubricProfile& p) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << p.name;
  out << YAML::Key << "version" << YAML::Value << p.version;
  out << YAML::Key << "categories" << YAML::Value << YAML::BeginMap;
  for (auto cat : kCategories) {
    const auto& g = p.categories.at(cat);
    out << YAML::Key << category_name(cat) << YAML::Value << YAML::Flow
        << YAML::BeginMap << YAML::Key << "weight" << YAML::Value << g.weight
        << YAML::Key << "tau" << YAML::Value << g.tau << YAML::Key << "k"
        << YAML::Value << g.k << YAML::EndMap;
  }
  out << YAML::EndMap;
  if (!p.submetric_weights.empty()) {
    out << YAML::Key << "submetrics" << YAML::Value << YAML::BeginMap;
    for (const auto& [id, w] : p.submetric_weights)
      out << YAML::Key << id << YAML::Value << w;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace reproscore
