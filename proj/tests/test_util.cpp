#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "reproscore/patterns.hpp"
#include "reproscore/util.hpp"

using namespace reproscore;

TEST_CASE("to_lower and trim") {
  CHECK(to_lower("AbC") == "abc");
  CHECK(trim("  x \t\r\n") == "x");
  CHECK(trim("   ") == "");
}

TEST_CASE("split_lines handles newline conventions") {
  auto lines = split_lines("a\r\nb\nc");
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "a");
  CHECK(lines[1] == "b");
  CHECK(lines[2] == "c");
  CHECK(split_lines("a\n").size() == 1);
  CHECK(split_lines("").size() == 1);
}

TEST_CASE("normalize_dist_name follows packaging normalization") {
  CHECK(normalize_dist_name("Scikit_Learn") == "scikit-learn");
  CHECK(normalize_dist_name("foo..bar") == "foo-bar");
  CHECK(normalize_dist_name("A-B_C.D") == "a-b-c-d");
}

TEST_CASE("contains_ci and count_words") {
  CHECK(contains_ci("Hello World", "WORLD"));
  CHECK_FALSE(contains_ci("Hello", "world"));
  CHECK(count_words("one two  three\nfour") == 4);
}

TEST_CASE("read_file round trip and missing file") {
  fixtures::TempRepo repo("util");
  repo.write("a.txt", "payload");
  CHECK(read_file(repo.root / "a.txt") == "payload");
  CHECK_THROWS(read_file(repo.root / "missing.txt"));
  CHECK_FALSE(try_read_file(repo.root / "missing.txt").has_value());
}

TEST_CASE("shipped pattern lists match the compiled-in defaults") {
  auto compiled = PatternSet::defaults();
  auto shipped = PatternSet::load_dir(REPROSCORE_DATA_DIR "/patterns");
  CHECK(shipped.randomness_apis == compiled.randomness_apis);
  CHECK(shipped.seed_apis == compiled.seed_apis);
  CHECK(shipped.stdlib_modules == compiled.stdlib_modules);
  CHECK(shipped.module_aliases == compiled.module_aliases);
  CHECK(shipped.gpu_packages == compiled.gpu_packages);
}

TEST_CASE("pattern directory overrides replace defaults") {
  fixtures::TempRepo dir("patterns");
  dir.write("seed_apis.txt", "# comment\nmy_seed_call\n");
  dir.write("module_aliases.txt", "foo=bar-dist\n");
  dir.write("VERSION", "7\n");
  auto p = PatternSet::load_dir(dir.root);
  CHECK(p.version == "7");
  REQUIRE(p.seed_apis.size() == 1);
  CHECK(p.seed_apis[0] == "my_seed_call");
  REQUIRE(p.module_aliases.size() == 1);
  CHECK(p.module_aliases.at("foo") == "bar-dist");
  // untouched lists keep their defaults
  CHECK(p.randomness_apis == PatternSet::defaults().randomness_apis);
}
