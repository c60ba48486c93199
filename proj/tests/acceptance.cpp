// Acceptance suite: one pass/fail line per release criterion.
// Standalone binary (not Catch2); exits nonzero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "reproscore/pipeline.hpp"
#include "reproscore/report.hpp"

using namespace reproscore;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void expect_near(double got, double want, double tol, const std::string& what) {
    if (!(std::fabs(got - want) <= tol)) {
      ok = false;
      std::ostringstream ss;
      ss << what << ": got " << got << ", want " << want << " +/- " << tol;
      notes.push_back(ss.str());
    }
  }
};

std::vector<Criterion> g_criteria;

Criterion& criterion(int id, const std::string& title) {
  g_criteria.push_back({id, title});
  return g_criteria.back();
}

std::optional<double> eval_metric(const fixtures::TempRepo& repo,
                                  const std::string& id) {
  auto snap = repo.snapshot();
  auto models = parse_all(snap);
  auto patterns = PatternSet::defaults();
  auto registry = SubMetricRegistry::defaults();
  EvalContext ctx{snap, models, patterns};
  for (const auto& entry : registry.entries)
    if (entry.id == id) return evaluate_submetric(entry, ctx).score;
  throw std::runtime_error("no such metric: " + id);
}

// Synthetic labeled corpus with separated score distributions.
Corpus synth_corpus(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> hi(70, 12), lo(30, 12);
  std::uniform_int_distribution<int> mode_pick(1, 4);
  auto clamp01 = [](double v) { return std::min(100.0, std::max(0.0, v)); };
  Corpus corpus;
  auto registry = SubMetricRegistry::defaults();
  for (std::size_t i = 0; i < n; ++i) {
    CorpusRecord r;
    r.repo_id = "synth_" + std::to_string(i);
    bool good = i % 3 == 0;
    r.failure_mode =
        good ? FailureMode::success : static_cast<FailureMode>(mode_pick(rng));
    for (auto cat : kCategories)
      r.category_raws[cat] = clamp01(good ? hi(rng) : lo(rng));
    for (const auto& entry : registry.entries)
      r.submetric_scores[entry.id] = clamp01(good ? hi(rng) : lo(rng));
    r.sigma = r.submetric_scores["seed_management"];
    r.rrs = rescore_rrs(r, default_rubric());
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

int run_command(const std::string& cmd, std::string* out = nullptr) {
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return -1;
  std::array<char, 4096> buf;
  std::string text;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    text.append(buf.data(), n);
  if (out) *out = text;
  int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json strip_timestamp(json rec) {
  rec.erase("timestamp");
  return rec;
}

// --- criteria ---------------------------------------------------------------

void criterion_1_published_scores() {
  auto& c = criterion(1, "published per-mode ROS and RCS reproduce within 0.05");
  auto t0 = std::chrono::steady_clock::now();

  struct Row {
    FailureMode mode;
    long k, m;          // notebook counts chosen to hit the published mean N
    double rrs_mean;    // published per-mode RRS mean
    double ros_expect;
    double rcs_expect;
  };
  const std::vector<Row> rows = {
      {FailureMode::success, 1000, 1000, 14.6, 100.0, 59.4},
      {FailureMode::install_dep, 13, 1000, 26.8, 13.5, 19.8},
      {FailureMode::missing_module, 38, 1000, 7.0, 40.5, 24.6},
      {FailureMode::missing_data, 86, 1000, 6.4, 54.5, 31.7},
      {FailureMode::code_error, 133, 1000, 14.3, 55.1, 35.7},
  };
  for (const auto& row : rows) {
    auto ev = derive_proxy_evidence(row.mode, row.k, row.m);
    auto ros = compute_ros(ev);
    c.expect(ros.has_value(), std::string("ROS undefined for ") +
                                  failure_mode_name(row.mode));
    if (!ros) continue;
    double alpha = compute_alpha(ev);
    c.expect_near(*ros, row.ros_expect, 0.05,
                  std::string("ROS(") + failure_mode_name(row.mode) + ")");
    // per-mode RCS from the published component means
    double rcs = compute_rcs(row.rrs_mean, row.ros_expect, alpha);
    c.expect_near(rcs, row.rcs_expect, 0.05,
                  std::string("RCS(") + failure_mode_name(row.mode) + ")");
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  c.expect(ms < 1000, "reproduction took " + std::to_string(ms) + "ms (limit 1s)");
}

void criterion_2_alpha() {
  auto& c = criterion(2, "evidence coverage weight alpha");
  ExecutionEvidence proxy;
  proxy.install_success = 100;
  proxy.execution_success = 0;
  proxy.notebook_exec_rate = 50;
  proxy.import_success_rate = 100;
  c.expect(compute_alpha(proxy) == 0.525, "proxy components must give exactly 0.525");

  ExecutionEvidence full = proxy;
  full.output_determinism = 80;
  full.test_pass_rate = 90;
  c.expect_near(compute_alpha(full), 0.70, 1e-12, "full evidence");

  ExecutionEvidence only_t;
  only_t.test_pass_rate = 100;
  c.expect_near(compute_alpha(only_t), 0.10, 1e-12, "floor for minimal evidence");
}

void criterion_3_gate() {
  auto& c = criterion(3, "gate identities, continuity, and monotonicity");
  auto rubric = default_rubric();
  for (auto cat : kCategories) {
    const auto& g = rubric.categories.at(cat);
    double got = gate(g.tau / 2.0, g.tau, g.k);
    double want = std::pow(2.0, -g.k) * g.tau / 100.0;
    c.expect(std::fabs(got - want) <= 1e-12,
             std::string("half-threshold identity for ") + category_name(cat));
    double below = gate(std::nextafter(g.tau, 0.0), g.tau, g.k);
    c.expect(std::fabs(below - gate(g.tau, g.tau, g.k)) <= 1e-12,
             std::string("continuity at tau for ") + category_name(cat));
  }
  std::mt19937_64 rng(2468);
  std::uniform_real_distribution<double> ux(0, 100), ut(1, 100), uk(1, 3);
  bool monotone = true;
  for (int i = 0; i < 10000; ++i) {
    double tau = ut(rng), k = uk(rng), a = ux(rng), b = ux(rng);
    if (a > b) std::swap(a, b);
    if (gate(a, tau, k) > gate(b, tau, k) + 1e-15) monotone = false;
  }
  c.expect(monotone, "monotonicity over 10^4 random (x, tau, k) triples");
}

void criterion_4_rrs() {
  auto& c = criterion(4, "RRS bounds, penalties, and the worked example");
  auto make = [](double e, double a, double d, double cc, double s) {
    CategoryScores cs;
    cs.by_category[Category::E] = {e, 0, true};
    cs.by_category[Category::A] = {a, 0, true};
    cs.by_category[Category::D] = {d, 0, true};
    cs.by_category[Category::C] = {cc, 0, true};
    cs.by_category[Category::S] = {s, 0, true};
    return cs;
  };
  auto rrs_of = [&](double e, double a, double d, double cc, double s,
                    double sigma) {
    auto cs = make(e, a, d, cc, s);
    return compute_rrs(cs, default_rubric(), sigma).rrs;
  };
  c.expect(rrs_of(50, 40, 30, 25, 30, 100.0) == 37.75,
           "worked example must equal 37.75 exactly");
  c.expect(rrs_of(0, 0, 0, 0, 0, 0.0) == 0.0, "floor clamps to 0");
  c.expect(rrs_of(100, 100, 100, 100, 100, 100.0) == 100.0, "ceiling is 100");

  c.expect(hard_penalty(10.0, 10.0) == 0.0, "E=10 is not penalized");
  c.expect(hard_penalty(9.99, 10.0) == 20.0, "E=9.99 draws the full 20-point penalty");
  c.expect(hard_penalty(10.0, 9.99) == 15.0, "A=9.99 draws the 15-point penalty");
  c.expect(seed_penalty(50.0) == 0.0, "sigma=50 is not penalized");
  c.expect(seed_penalty(49.99) == 10.0, "sigma<50 draws the 10-point penalty");
  c.expect(seed_penalty(std::nullopt) == 0.0, "sigma N/A is not penalized");

  std::mt19937_64 rng(1357);
  std::uniform_real_distribution<double> ux(0, 100);
  bool monotone = true, bounded = true;
  for (int trial = 0; trial < 10000; ++trial) {
    double v[5];
    for (double& x : v) x = ux(rng);
    double base = rrs_of(v[0], v[1], v[2], v[3], v[4], 100.0);
    if (base < 0.0 || base > 100.0) bounded = false;
    int idx = trial % 5;
    double w[5] = {v[0], v[1], v[2], v[3], v[4]};
    w[idx] = std::min(100.0, w[idx] + ux(rng) / 4.0);
    double bumped = rrs_of(w[0], w[1], w[2], w[3], w[4], 100.0);
    if (bumped < base - 1e-12) monotone = false;
  }
  c.expect(bounded, "RRS stays in [0,100]");
  c.expect(monotone, "RRS is monotone nondecreasing in each category");
}

void criterion_5_rubric_and_recompute() {
  auto& c = criterion(5, "rubric profile validation and provenance recompute");
  try {
    auto p = load_rubric(REPROSCORE_DATA_DIR "/rubrics/bioinformatics-v1.yaml");
    c.expect(p.name == "bioinformatics-v1" && validate_rubric(p).empty(),
             "shipped domain profile must load and validate");
  } catch (const std::exception& e) {
    c.expect(false, std::string("domain profile failed to load: ") + e.what());
  }
  bool rejected = false;
  try {
    load_rubric_text("name: t\nversion: '1'\ncategories:\n"
                     "  E: {weight: 0.32, tau: 40, k: 1.5}\n");
  } catch (const RubricError&) {
    rejected = true;
  }
  c.expect(rejected, "weight sum 1.02 must be rejected");

  auto other = load_rubric_text(
      "name: alt\nversion: '9'\ncategories:\n"
      "  E: {weight: 0.35, tau: 40, k: 1.5}\n"
      "  A: {weight: 0.40, tau: 30, k: 1.5}\n"
      "  D: {weight: 0.10, tau: 20, k: 1.2}\n"
      "  C: {weight: 0.05, tau: 25, k: 1.2}\n"
      "  S: {weight: 0.10, tau: 30, k: 1.2}\n");
  auto check_repo = [&](const fixtures::TempRepo& repo, const std::string& tag) {
    auto snap = repo.snapshot();
    auto rec = emit_provenance(assess_snapshot(snap), snap.source, snap.commit_id,
                               "2026-01-01T00:00:00Z");
    auto recomputed = recompute_from_provenance(rec, other,
                                                SubMetricRegistry::defaults(),
                                                "2026-01-01T00:00:00Z");
    recomputed.erase("recomputed_from");
    auto direct = emit_provenance(assess_snapshot(snap, other), snap.source,
                                  snap.commit_id, "2026-01-01T00:00:00Z");
    c.expect(recomputed == direct, "recompute != direct scoring for " + tag);
  };
  {
    fixtures::TempRepo r("ac5-gold");
    fixtures::write_gold(r);
    check_repo(r, "gold");
  }
  {
    fixtures::TempRepo r("ac5-inst");
    fixtures::write_install_dep_like(r);
    check_repo(r, "install-dep archetype");
  }
  {
    fixtures::TempRepo r("ac5-mod");
    fixtures::write_missing_module_like(r);
    check_repo(r, "missing-module archetype");
  }
  {
    fixtures::TempRepo r("ac5-data");
    fixtures::write_missing_data_like(r);
    check_repo(r, "missing-data archetype");
  }
  {
    fixtures::TempRepo r("ac5-code");
    fixtures::write_code_error_like(r);
    check_repo(r, "code-error archetype");
  }
  for (int i = 0; i < 5; ++i) {
    fixtures::TempRepo r("ac5-var" + std::to_string(i));
    fixtures::write_variant(r, i);
    check_repo(r, "variant " + std::to_string(i));
  }
}

void criterion_6_submetric_tiers() {
  auto& c = criterion(6, "sub-metric tier and ratio scores");
  {
    fixtures::TempRepo r("ac6-t0");
    r.write("main.py", "print('hi')\n");
    c.expect(eval_metric(r, "test_file_presence") == 0.0, "0 test files -> 0");
  }
  {
    fixtures::TempRepo r("ac6-t1");
    r.write("main.py", "print('hi')\n");
    r.write("tests/test_a.py", "def test_a():\n    assert True\n");
    c.expect(eval_metric(r, "test_file_presence") == 50.0, "1 test file -> 50");
  }
  {
    fixtures::TempRepo r("ac6-t3");
    r.write("main.py", "print('hi')\n");
    r.write("tests/test_a.py", "def test_a():\n    assert True\n");
    r.write("tests/test_b.py", "def test_b():\n    assert True\n");
    r.write("tests/test_c.py", "def test_c():\n    assert True\n");
    c.expect(eval_metric(r, "test_file_presence") == 100.0, "3 test files -> 100");
  }
  {
    fixtures::TempRepo r("ac6-seed");
    r.write("a.py", "import numpy as np\nnp.random.seed(0)\nx = np.random.rand(4)\n");
    r.write("b.py", "import numpy as np\ny = np.random.rand(4)\n");
    r.write("c.py", "import numpy as np\nz = np.random.normal(0, 1)\n");
    auto s = eval_metric(r, "seed_management");
    c.expect(s.has_value() && *s == 100.0 / 3.0,
             "1 of 3 stochastic files seeded -> exactly 100/3");
  }
  {
    fixtures::TempRepo r("ac6-nb");
    r.write("good.ipynb", fixtures::notebook_json({{"code", "a", 1, ""},
                                                   {"code", "b", 2, ""},
                                                   {"code", "c", 3, ""}}));
    r.write("bad.ipynb", fixtures::notebook_json({{"code", "a", 5, ""},
                                                  {"code", "b", 2, ""}}));
    r.write("also_good.ipynb", fixtures::notebook_json({{"code", "a", 2, ""},
                                                        {"code", "b", 7, ""}}));
    auto s = eval_metric(r, "notebook_exec_order");
    c.expect(s.has_value() && *s == 100.0 * 2.0 / 3.0,
             "2 of 3 executed notebooks monotonic -> exactly 200/3");
  }
  {
    fixtures::TempRepo r("ac6-imp");
    r.write("main.py", "import numpy\nimport pandas\nprint('x')\n");
    c.expect(eval_metric(r, "import_resolvability") == 0.0,
             "third-party imports with no dependency files -> 0");
  }
}

void criterion_7_statistics() {
  auto& c = criterion(7, "statistical routines match brute-force oracles");
  {
    auto kw = stats::kruskal_wallis({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    c.expect(std::fabs(kw.statistic - 7.2) <= 1e-9, "Kruskal-Wallis H must be 7.2");
  }
  {
    std::vector<double> ps(26, 0.5);
    ps[0] = 0.003;
    auto qs = stats::benjamini_hochberg(ps);
    c.expect_near(qs[0], 0.078, 1e-12, "BH q for p=0.003 at rank 1 of 26");
  }
  {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> us(0, 100);
    std::bernoulli_distribution ul(0.5);
    bool all_match = true;
    for (std::size_t n : {10u, 57u, 200u}) {
      std::vector<double> scores;
      std::vector<int> labels;
      int pos = 0;
      for (std::size_t i = 0; i < n; ++i) {
        scores.push_back(std::round(us(rng)));  // rounded: plenty of ties
        labels.push_back(ul(rng) ? 1 : 0);
        pos += labels.back();
      }
      if (pos == 0) labels[0] = 1;
      if (pos == static_cast<int>(n)) labels[0] = 0;
      double wins = 0;
      long pairs = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (labels[i] != 1 || labels[j] != 0) continue;
          ++pairs;
          if (scores[i] > scores[j]) wins += 1;
          else if (scores[i] == scores[j]) wins += 0.5;
        }
      if (std::fabs(stats::auc_roc(scores, labels) - wins / pairs) > 1e-12)
        all_match = false;
    }
    c.expect(all_match, "AUC equals exhaustive pair enumeration up to 200 records");
  }
  {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> uv(0, 6);
    bool all_match = true;
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t n = 6 + trial;
      std::vector<double> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) a[i] = uv(rng), b[i] = uv(rng);
      long cc = 0, dd = 0, ta = 0, tb = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          double da = a[i] - a[j], db = b[i] - b[j];
          if (da == 0 && db == 0) continue;
          if (da == 0) ++ta;
          else if (db == 0) ++tb;
          else if ((da > 0) == (db > 0)) ++cc;
          else ++dd;
        }
      if (cc + dd + ta == 0 || cc + dd + tb == 0) continue;
      double brute =
          (cc - dd) / std::sqrt(double(cc + dd + ta) * double(cc + dd + tb));
      if (std::fabs(stats::kendall_tau(a, b) - brute) > 1e-12) all_match = false;
    }
    c.expect(all_match, "Kendall tau-b equals brute-force pair counting");
  }
  {
    auto corpus = synth_corpus(30, 42);
    auto grid = grid_search_weights(corpus, default_rubric());
    c.expect(grid.n_configs == 126, "weight grid must enumerate 126 configurations");
  }
}

void criterion_8_aggregation() {
  auto& c = criterion(8, "failure-mode aggregation severity order");
  using FM = FailureMode;
  c.expect(aggregate_failure_mode({FM::success, FM::success, FM::success}) ==
               FM::success,
           "all successes aggregate to success");
  c.expect(aggregate_failure_mode({FM::success, FM::code_error}) == FM::code_error,
           "code_error outranks success");
  c.expect(aggregate_failure_mode({FM::code_error, FM::missing_data}) ==
               FM::missing_data,
           "missing_data outranks code_error");
  c.expect(aggregate_failure_mode({FM::missing_data, FM::missing_module}) ==
               FM::missing_module,
           "missing_module outranks missing_data");
  c.expect(aggregate_failure_mode({FM::missing_module, FM::install_dep,
                                   FM::code_error}) == FM::install_dep,
           "install_dep outranks everything");
}

void criterion_9_archetypes() {
  auto& c = criterion(9, "failure archetypes separate along category profiles");
  fixtures::TempRepo inst("ac9-inst");
  fixtures::write_install_dep_like(inst);
  fixtures::TempRepo mod("ac9-mod");
  fixtures::write_missing_module_like(mod);
  auto a_inst = assess_snapshot(inst.snapshot());
  auto a_mod = assess_snapshot(mod.snapshot());
  double e_inst = a_inst.categories.by_category.at(Category::E).raw;
  double e_mod = a_mod.categories.by_category.at(Category::E).raw;
  double c_inst = a_inst.categories.by_category.at(Category::C).raw;
  double c_mod = a_mod.categories.by_category.at(Category::C).raw;
  c.expect(e_inst > e_mod, "declared-but-unpinned archetype must beat the "
                           "undeclared archetype on environment raws");
  c.expect(c_inst > c_mod, "and on code-quality raws");

  fixtures::TempRepo data("ac9-data");
  fixtures::write_missing_data_like(data);
  c.expect(eval_metric(data, "data_pointer") == 0.0,
           "missing-data archetype scores 0 on the data pointer");
}

void criterion_10_diagnostics() {
  auto& c = criterion(10, "corpus diagnostics pipeline on a synthetic labeled corpus");
  auto corpus = synth_corpus(30, 7);
  DiagnosticsOptions opt;
  opt.bootstrap_resamples = 500;
  opt.bootstrap_seed = 3;
  auto rep = run_diagnostics(corpus, default_rubric(), opt);
  c.expect(rep.n_records == 30, "all 30 records enter the analysis");
  c.expect(rep.group.has_value() && rep.group->size() == 5,
           "per-category group statistics");
  c.expect(rep.pairwise.has_value(), "pairwise mode contrasts");
  c.expect(rep.submetrics.has_value() && rep.submetrics->size() == 26,
           "26 sub-metric correlations with BH correction");
  c.expect(rep.auc.has_value() && *rep.auc > 0.5 && *rep.auc <= 1.0,
           "AUC recovers the planted signal");
  c.expect(rep.auc_ci.has_value() && rep.auc_ci->lo <= *rep.auc &&
               *rep.auc <= rep.auc_ci->hi,
           "bootstrap CI brackets the point estimate");
  c.expect(rep.perturbation.has_value() && rep.perturbation->min_tau.size() == 5,
           "weight perturbation over all five categories");
  c.expect(rep.loco.has_value() && rep.loco->size() == 5,
           "leave-one-category-out rows");
  c.expect(rep.grid.has_value() && rep.grid->n_configs == 126,
           "126-configuration weight grid");
}

void criterion_11_determinism() {
  auto& c = criterion(11, "repeat runs are byte-identical modulo timestamp");
  fixtures::TempRepo repo("ac11");
  fixtures::write_gold(repo);
  auto snap = repo.snapshot();
  auto r1 = emit_provenance(assess_snapshot(snap), snap.source, snap.commit_id,
                            "2026-01-01T00:00:00Z");
  auto r2 = emit_provenance(assess_snapshot(snap), snap.source, snap.commit_id,
                            "2026-02-02T02:02:02Z");
  c.expect(provenance_to_string(strip_timestamp(r1)) ==
               provenance_to_string(strip_timestamp(r2)),
           "two assessments of the same tree must serialize identically");

  // batch output is independent of the worker count
  fixtures::TempRepo b1("ac11-b1");
  fixtures::write_install_dep_like(b1);
  fixtures::TempRepo b2("ac11-b2");
  fixtures::write_missing_module_like(b2);
  fixtures::TempRepo b3("ac11-b3");
  fixtures::write_code_error_like(b3);
  auto work = fs::temp_directory_path() / "rs-accept-batch";
  fs::remove_all(work);
  fs::create_directories(work);
  write_file(work / "list.txt", b1.root.string() + "\n" + b2.root.string() + "\n" +
                                    b3.root.string() + "\n");
  std::string cli = REPROSCORE_CLI_PATH;
  int rc1 = run_command(cli + " batch --jobs 1 --out " + (work / "j1").string() +
                        " " + (work / "list.txt").string());
  int rc4 = run_command(cli + " batch --jobs 4 --out " + (work / "j4").string() +
                        " " + (work / "list.txt").string());
  c.expect(rc1 == 0 && rc4 == 0, "batch runs exit cleanly");
  std::size_t compared = 0;
  if (rc1 == 0 && rc4 == 0) {
    for (const auto& entry : fs::directory_iterator(work / "j1")) {
      auto twin = work / "j4" / entry.path().filename();
      if (!fs::exists(twin)) {
        c.expect(false, "missing twin output " + entry.path().filename().string());
        continue;
      }
      auto a = strip_timestamp(json::parse(read_file(entry.path())));
      auto b = strip_timestamp(json::parse(read_file(twin)));
      c.expect(a == b, "outputs differ for " + entry.path().filename().string());
      ++compared;
    }
  }
  c.expect(compared == 3, "all three batch outputs compared");
  fs::remove_all(work);
}

}  // namespace

int main() {
  criterion_1_published_scores();
  criterion_2_alpha();
  criterion_3_gate();
  criterion_4_rrs();
  criterion_5_rubric_and_recompute();
  criterion_6_submetric_tiers();
  criterion_7_statistics();
  criterion_8_aggregation();
  criterion_9_archetypes();
  criterion_10_diagnostics();
  criterion_11_determinism();

  int failures = 0;
  for (const auto& c : g_criteria) {
    std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": "
              << c.title << "\n";
    for (const auto& note : c.notes) std::cout << "       - " << note << "\n";
    if (!c.ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all " << g_criteria.size() << " criteria passed\n";
  return 0;
}
