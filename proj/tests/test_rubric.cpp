#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "reproscore/rubric.hpp"

using namespace reproscore;
using Catch::Matchers::WithinAbs;

TEST_CASE("default rubric matches the published policy table") {
  auto p = default_rubric();
  CHECK(p.categories.at(Category::E).weight == 0.30);
  CHECK(p.categories.at(Category::A).weight == 0.25);
  CHECK(p.categories.at(Category::D).weight == 0.20);
  CHECK(p.categories.at(Category::C).weight == 0.15);
  CHECK(p.categories.at(Category::S).weight == 0.10);
  CHECK(p.categories.at(Category::E).tau == 40);
  CHECK(p.categories.at(Category::A).tau == 30);
  CHECK(p.categories.at(Category::D).tau == 20);
  CHECK(p.categories.at(Category::C).tau == 25);
  CHECK(p.categories.at(Category::S).tau == 30);
  CHECK(p.categories.at(Category::E).k == 1.5);
  CHECK(p.categories.at(Category::A).k == 1.5);
  CHECK(p.categories.at(Category::D).k == 1.2);
  CHECK(p.categories.at(Category::C).k == 1.2);
  CHECK(p.categories.at(Category::S).k == 1.2);
  CHECK(validate_rubric(p).empty());
}

TEST_CASE("shipped domain profile loads and validates") {
  auto p = load_rubric(REPROSCORE_DATA_DIR "/rubrics/bioinformatics-v1.yaml");
  CHECK(p.name == "bioinformatics-v1");
  CHECK(p.version == "1.0");
  CHECK(p.categories.at(Category::E).weight == 0.35);
  CHECK(p.categories.at(Category::A).weight == 0.40);
  CHECK(p.categories.at(Category::D).weight == 0.10);
  CHECK(p.categories.at(Category::C).weight == 0.05);
  CHECK(p.categories.at(Category::S).weight == 0.10);
  CHECK(p.categories.at(Category::A).tau == 30);
  CHECK(validate_rubric(p).empty());
}

TEST_CASE("weight-sum tolerance: 1.02 rejected, 1.009 accepted") {
  std::string bad =
      "name: t\nversion: '1'\ncategories:\n"
      "  E: {weight: 0.32, tau: 40, k: 1.5}\n";  // pushes the sum to 1.02
  CHECK_THROWS_AS(load_rubric_text(bad), RubricError);

  std::string ok =
      "name: t\nversion: '1'\ncategories:\n"
      "  E: {weight: 0.309, tau: 40, k: 1.5}\n";
  CHECK_NOTHROW(load_rubric_text(ok));
}

TEST_CASE("partial documents inherit defaults") {
  auto p = load_rubric_text("name: custom\nversion: '2'\ncategories:\n"
                            "  A: {tau: 35}\n");
  CHECK(p.name == "custom");
  CHECK(p.categories.at(Category::A).tau == 35);
  CHECK(p.categories.at(Category::A).weight == 0.25);  // inherited
  CHECK(p.categories.at(Category::E).weight == 0.30);
}

TEST_CASE("schema violations are rejected") {
  CHECK_THROWS_AS(load_rubric_text(": {{bad yaml"), RubricError);
  CHECK_THROWS_AS(load_rubric_text("- a\n- b\n"), RubricError);
  CHECK_THROWS_AS(load_rubric_text("name: x\nbogus_key: 1\n"), RubricError);
  CHECK_THROWS_AS(load_rubric_text("name: x\ncategories:\n  Z: {weight: 1}\n"),
                  RubricError);
  CHECK_THROWS_AS(
      load_rubric_text("name: x\ncategories:\n  E: {weight: 0.3, slope: 2}\n"),
      RubricError);
  // gate constraints
  CHECK_THROWS_AS(
      load_rubric_text("name: x\nversion: '1'\ncategories:\n  E: {tau: 0}\n"),
      RubricError);
  CHECK_THROWS_AS(
      load_rubric_text("name: x\nversion: '1'\ncategories:\n  E: {k: 0.5}\n"),
      RubricError);
}

TEST_CASE("validate_rubric reports every violation, not just the first") {
  RubricProfile p = default_rubric();
  p.name.clear();
  p.categories[Category::E].tau = 0;
  p.categories[Category::A].k = 0.5;
  p.categories[Category::D].weight = 0.5;  // breaks the sum too
  auto errors = validate_rubric(p);
  CHECK(errors.size() >= 4);
}

TEST_CASE("sub-metric weight overrides validate within their category") {
  RubricProfile p = default_rubric();
  p.submetric_weights["ci_presence"] = 0.5;  // S no longer sums to 1
  CHECK_FALSE(validate_rubric(p).empty());

  RubricProfile ok = default_rubric();
  ok.submetric_weights["ci_presence"] = 0.16;
  ok.submetric_weights["config_externalised"] = 0.0;
  CHECK(validate_rubric(ok).empty());

  RubricProfile unknown = default_rubric();
  unknown.submetric_weights["no_such_metric"] = 0.1;
  CHECK_FALSE(validate_rubric(unknown).empty());
}

TEST_CASE("serialize/load round trip preserves the profile") {
  RubricProfile p = default_rubric();
  p.name = "roundtrip";
  p.version = "3.1";
  p.categories[Category::D].tau = 22;
  auto text = serialize_rubric(p);
  auto q = load_rubric_text(text);
  CHECK(q.name == p.name);
  CHECK(q.version == p.version);
  for (auto cat : kCategories) {
    CHECK_THAT(q.categories.at(cat).weight,
               WithinAbs(p.categories.at(cat).weight, 1e-12));
    CHECK_THAT(q.categories.at(cat).tau, WithinAbs(p.categories.at(cat).tau, 1e-12));
    CHECK_THAT(q.categories.at(cat).k, WithinAbs(p.categories.at(cat).k, 1e-12));
  }
}
