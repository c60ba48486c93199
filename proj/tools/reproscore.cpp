// reproscore: static reproducibility-readiness scoring for research
// software repositories, with optional execution-evidence composition and
// corpus-level diagnostics.

#include "CLI11.hpp"

#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "reproscore/corpus.hpp"
#include "reproscore/determinism.hpp"
#include "reproscore/pipeline.hpp"
#include "reproscore/report.hpp"

namespace rs = reproscore;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitAcquire = 2;
constexpr int kExitRubric = 3;
constexpr int kExitUsage = 4;

struct GlobalOpts {
  std::string rubric_path;
  std::string out_path;
  std::string format = "table";
  std::string patterns_dir;
  int jobs = 1;
  std::uint64_t seed = 0;
};

rs::RubricProfile resolve_rubric(const GlobalOpts& opt) {
  std::string path = opt.rubric_path;
  if (path.empty())
    if (const char* env = std::getenv("REPROSCORE_RUBRIC")) path = env;
  if (path.empty()) return rs::default_rubric();
  return rs::load_rubric(path);
}

rs::PatternSet resolve_patterns(const GlobalOpts& opt) {
  if (opt.patterns_dir.empty()) return rs::PatternSet::defaults();
  return rs::PatternSet::load_dir(opt.patterns_dir);
}

void write_output(const GlobalOpts& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    rs::write_file(opt.out_path, text);
  }
}

std::string fmt1(double v) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(1);
  ss << v;
  return ss.str();
}

std::string assessment_table(const rs::Assessment& a) {
  std::ostringstream out;
  out << "category profile (raw / gated)\n";
  for (auto cat : rs::kCategories) {
    const auto& cs = a.categories.by_category.at(cat);
    out << "  " << rs::category_name(cat) << "  " << std::setw(6) << fmt1(cs.raw)
        << "  /  " << std::setw(6) << fmt1(100.0 * cs.gated);
    if (!cs.applicable) out << "  (not applicable)";
    out << "\n";
  }
  if (a.penalty_hard > 0)
    out << "hard penalty: -" << fmt1(a.penalty_hard) << "\n";
  if (a.penalty_seed > 0)
    out << "seed penalty: -" << fmt1(a.penalty_seed) << "\n";
  out << "RRS: " << fmt1(a.rrs) << "\n";
  if (a.ros) {
    out << "ROS: " << fmt1(*a.ros) << "  alpha: " << a.alpha << "\n";
    out << "RCS: " << fmt1(a.rcs) << "\n";
  }
  out << "rubric: " << a.rubric_name << " " << a.rubric_version << "\n";
  return out.str();
}

int cmd_score(const std::string& source, const GlobalOpts& opt) {
  rs::RubricProfile rubric;
  try {
    rubric = resolve_rubric(opt);
  } catch (const std::exception& e) {
    std::cerr << "rubric error: " << e.what() << "\n";
    return kExitRubric;
  }
  rs::RepoSnapshot snap;
  try {
    snap = rs::acquire_repository(source);
  } catch (const rs::AcquireError& e) {
    std::cerr << "acquisition error: " << e.what() << "\n";
    return kExitAcquire;
  }
  try {
    auto a = rs::assess_snapshot(snap, rubric, rs::SubMetricRegistry::defaults(),
                                 resolve_patterns(opt));
    auto rec = rs::emit_provenance(a, snap.source, snap.commit_id);
    if (opt.format == "json") {
      write_output(opt, rs::provenance_to_string(rec));
    } else {
      if (!opt.out_path.empty())
        rs::write_file(opt.out_path, rs::provenance_to_string(rec));
      std::cout << assessment_table(a);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_batch(const std::string& list_file, const GlobalOpts& opt) {
  std::vector<std::string> sources;
  try {
    for (auto& line : rs::split_lines(rs::read_file(list_file))) {
      auto t = rs::trim(line);
      if (!t.empty() && t[0] != '#') sources.push_back(t);
    }
  } catch (const std::exception& e) {
    std::cerr << "cannot read list file: " << e.what() << "\n";
    return kExitUsage;
  }
  rs::RubricProfile rubric;
  try {
    rubric = resolve_rubric(opt);
  } catch (const std::exception& e) {
    std::cerr << "rubric error: " << e.what() << "\n";
    return kExitRubric;
  }
  auto patterns = resolve_patterns(opt);
  rs::fs::path out_dir = opt.out_path.empty() ? rs::fs::path(".") : rs::fs::path(opt.out_path);
  rs::fs::create_directories(out_dir);

  std::atomic<std::size_t> next{0};
  std::atomic<int> scored{0}, excluded{0};
  std::mutex io_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= sources.size()) return;
      const auto& source = sources[i];
      try {
        auto snap = rs::acquire_repository(source);
        auto a = rs::assess_snapshot(snap, rubric, rs::SubMetricRegistry::defaults(),
                                     patterns);
        auto rec = rs::emit_provenance(a, snap.source, snap.commit_id);
        std::string short_sha = snap.commit_id.substr(0, 8);
        auto file = out_dir / (rs::repo_id_from_source(source) + "_" + short_sha + ".json");
        std::lock_guard<std::mutex> lock(io_mutex);
        rs::write_file(file, rs::provenance_to_string(rec));
        ++scored;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "excluded " << source << ": " << e.what() << "\n";
        ++excluded;
      }
    }
  };
  int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::cout << "scored " << scored << "/" << sources.size() << " (excluded "
            << excluded << ")\n";
  return kExitOk;
}

int cmd_compose(const std::string& record_path, const std::string& evidence_path,
                const GlobalOpts& opt) {
  try {
    auto rec = rs::json::parse(rs::read_file(record_path));
    rs::check_schema_version(rec);
    auto ev_doc = rs::json::parse(rs::read_file(evidence_path));
    auto ev = rs::detail::evidence_from_json(ev_doc);

    // RRS untouched; ROS/alpha/RCS recomputed from the supplied evidence.
    double rrs = rec.at("rrs").get<double>();
    auto ros = rs::compute_ros(ev);
    double alpha = rs::compute_alpha(ev);
    double rcs = rs::compute_rcs(rrs, ros, alpha);
    rec["execution_evidence"] = ev.empty() ? rs::json(nullptr)
                                           : rs::detail::evidence_to_json(ev);
    rec["ros"] = ros ? rs::json(*ros) : rs::json(nullptr);
    rec["alpha"] = alpha;
    rec["rcs"] = rcs;
    std::string text = rs::provenance_to_string(rec);
    if (!opt.out_path.empty()) rs::write_file(opt.out_path, text);
    else std::cout << text;
    return kExitOk;
  } catch (const rs::ProvenanceError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_rubric_validate(const std::string& path) {
  try {
    auto profile = rs::load_rubric(path);
    std::cout << "ok: " << profile.name << " " << profile.version << "\n";
    return kExitOk;
  } catch (const rs::RubricError& e) {
    std::cerr << e.what() << "\n";
    return kExitRubric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_recompute(const std::string& record_path, const GlobalOpts& opt) {
  try {
    auto rec = rs::json::parse(rs::read_file(record_path));
    auto rubric = resolve_rubric(opt);
    auto out = rs::recompute_from_provenance(rec, rubric);
    std::string text = rs::provenance_to_string(out);
    if (!opt.out_path.empty()) rs::write_file(opt.out_path, text);
    else std::cout << text;
    return kExitOk;
  } catch (const rs::RubricError& e) {
    std::cerr << "rubric error: " << e.what() << "\n";
    return kExitRubric;
  } catch (const rs::ProvenanceError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_stats(const std::string& corpus_dir, const std::string& labels_csv,
              const std::string& analyses, const GlobalOpts& opt) {
  try {
    auto rubric = resolve_rubric(opt);
    auto corpus = rs::load_corpus(corpus_dir, labels_csv);
    for (const auto& w : corpus.warnings) std::cerr << "warning: " << w << "\n";
    rs::DiagnosticsOptions dopt;
    dopt.bootstrap_seed = opt.seed;
    if (!analyses.empty()) {
      std::string cur;
      for (char c : analyses + ",") {
        if (c == ',') {
          if (!rs::trim(cur).empty()) dopt.analyses.insert(rs::trim(cur));
          cur.clear();
        } else cur.push_back(c);
      }
    }
    auto rep = rs::run_diagnostics(corpus, rubric, dopt);
    if (opt.format == "json")
      write_output(opt, rs::diagnostics_to_json(rep).dump(2) + "\n");
    else
      write_output(opt, rs::diagnostics_to_table(rep));
    return kExitOk;
  } catch (const rs::RubricError& e) {
    std::cerr << "rubric error: " << e.what() << "\n";
    return kExitRubric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int cmd_proxy(const std::string& mode_name, long success_count, long total_count,
              const GlobalOpts& opt) {
  auto mode = rs::failure_mode_from_name(mode_name);
  if (!mode) {
    std::cerr << "unknown failure mode: " << mode_name << "\n";
    return kExitUsage;
  }
  try {
    auto ev = rs::derive_proxy_evidence(*mode, success_count, total_count);
    write_output(opt, rs::detail::evidence_to_json(ev).dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_determinism(const std::string& dir_a, const std::string& dir_b,
                    const GlobalOpts& opt) {
  try {
    auto run_a = rs::load_notebook_dir(dir_a);
    auto run_b = rs::load_notebook_dir(dir_b);
    auto res = rs::output_determinism(run_a, run_b);
    if (opt.format == "json") {
      rs::json j;
      j["delta"] = res.delta ? rs::json(*res.delta) : rs::json(nullptr);
      j["compared_cells"] = res.compared_cells;
      j["matching_cells"] = res.matching_cells;
      write_output(opt, j.dump(2) + "\n");
    } else {
      if (res.delta)
        std::cout << "delta: " << fmt1(*res.delta) << " (" << res.matching_cells
                  << "/" << res.compared_cells << " output cells match)\n";
      else
        std::cout << "delta: absent (no comparable output cells)\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reproscore: repository reproducibility readiness scoring"};
  app.require_subcommand(1);
  GlobalOpts opt;

  std::string source, list_file, record_path, evidence_path, rubric_file;
  std::string corpus_dir, labels_csv, analyses, mode_name, dir_a, dir_b;
  long k = 0, m = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rubric", opt.rubric_path, "rubric YAML path");
    sub->add_option("--out", opt.out_path, "output path");
    sub->add_option("--format", opt.format, "output format: json|table")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--patterns", opt.patterns_dir, "pattern-list override directory");
    sub->add_option("--seed", opt.seed, "bootstrap seed");
  };

  auto* score = app.add_subcommand("score", "score one repository");
  score->add_option("source", source, "repository path or VCS URL")->required();
  add_common(score);

  auto* batch = app.add_subcommand("batch", "score a list of repositories");
  batch->add_option("list", list_file, "file with one source per line")->required();
  batch->add_option("--jobs", opt.jobs, "parallel workers")->check(CLI::PositiveNumber);
  add_common(batch);

  auto* compose = app.add_subcommand("compose", "blend execution evidence into a record");
  compose->add_option("record", record_path, "provenance record JSON")->required();
  compose->add_option("evidence", evidence_path, "execution evidence JSON")->required();
  add_common(compose);

  auto* rv = app.add_subcommand("rubric-validate", "validate a rubric profile");
  rv->add_option("rubric", rubric_file, "rubric YAML path")->required();

  auto* recompute = app.add_subcommand("recompute", "rescore a record under a new rubric");
  recompute->add_option("record", record_path, "provenance record JSON")->required();
  add_common(recompute);

  auto* stats = app.add_subcommand("stats", "corpus-level diagnostics");
  stats->add_option("corpus", corpus_dir, "directory of provenance records")->required();
  stats->add_option("labels", labels_csv, "label CSV")->required();
  stats->add_option("--analyses", analyses,
                    "comma list: group,pairwise,submetrics,auc,perturbation,loco,grid");
  add_common(stats);

  auto* proxy = app.add_subcommand("proxy", "derive proxy execution evidence");
  proxy->add_option("mode", mode_name, "failure mode label")->required();
  proxy->add_option("success_nb_count", k, "successful notebook count")->required();
  proxy->add_option("total_exec_count", m, "total executed notebook count")->required();
  add_common(proxy);

  auto* det = app.add_subcommand("determinism", "compare two notebook run directories");
  det->add_option("dir_a", dir_a, "first run directory")->required();
  det->add_option("dir_b", dir_b, "second run directory")->required();
  add_common(det);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (score->parsed()) return cmd_score(source, opt);
  if (batch->parsed()) return cmd_batch(list_file, opt);
  if (compose->parsed()) return cmd_compose(record_path, evidence_path, opt);
  if (rv->parsed()) return cmd_rubric_validate(rubric_file);
  if (recompute->parsed()) return cmd_recompute(record_path, opt);
  if (stats->parsed()) return cmd_stats(corpus_dir, labels_csv, analyses, opt);
  if (proxy->parsed()) return cmd_proxy(mode_name, k, m, opt);
  if (det->parsed()) return cmd_determinism(dir_a, dir_b, opt);
  return kExitUsage;
}
