#pragma once

#include <unistd.h>

#include <array>
#include <cstdio>
#include <map>
#include <memory>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "reproscore/util.hpp"

namespace reproscore {

enum class FileKind {
  notebook,
  python_source,
  readme,
  dependency_manifest,
  lockfile,
  container_spec,
  ci_config,
  makefile,
  shell_script,
  config_file,
  data_file,
  license,
  citation,
  codemeta,
  test_file,
  other,
};

inline const char* file_kind_name(FileKind k) {
  switch (k) {
    case FileKind::notebook: return "notebook";
    case FileKind::python_source: return "python_source";
    case FileKind::readme: return "readme";
    case FileKind::dependency_manifest: return "dependency_manifest";
    case FileKind::lockfile: return "lockfile";
    case FileKind::container_spec: return "container_spec";
    case FileKind::ci_config: return "ci_config";
    case FileKind::makefile: return "makefile";
    case FileKind::shell_script: return "shell_script";
    case FileKind::config_file: return "config_file";
    case FileKind::data_file: return "data_file";
    case FileKind::license: return "license";
    case FileKind::citation: return "citation";
    case FileKind::codemeta: return "codemeta";
    case FileKind::test_file: return "test_file";
    case FileKind::other: return "other";
  }
  return "other";
}

struct InventoryEntry {
  std::string path;  // relative to root, '/' separated
  FileKind kind = FileKind::other;
  std::uintmax_t size = 0;
  bool content_scannable = true;  // false when over the size guard
  bool unreadable = false;
};

struct FileInventory {
  std::vector<InventoryEntry> files;  // sorted by path

  std::vector<const InventoryEntry*> of_kind(FileKind k) const {
    std::vector<const InventoryEntry*> out;
    for (const auto& f : files)
      if (f.kind == k) out.push_back(&f);
    return out;
  }
  std::size_t count(FileKind k) const { return of_kind(k).size(); }
  std::size_t total() const { return files.size(); }
};

struct RepoSnapshot {
  std::string source;
  std::string commit_id;  // VCS hash or "uncommitted"
  fs::path root;
  FileInventory inventory;
  bool symlinks_followed = false;   // policy: not followed
  bool submodules_recursed = false; // policy: not recursed
  // Owns the temp clone directory when the source was remote.
  std::shared_ptr<void> cleanup;
};

struct AcquireError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 5 MB size guard: larger files are inventoried but never content-scanned.
inline constexpr std::uintmax_t kMaxScanBytes = 5 * 1024 * 1024;

namespace detail {

inline bool name_matches(const std::string& name, std::initializer_list<const char*> exact) {
  for (auto* e : exact)
    if (name == e) return true;
  return false;
}

inline bool has_ext(const std::string& name, std::initializer_list<const char*> exts) {
  for (auto* e : exts)
    if (name.size() > std::string_view(e).size() && name.ends_with(e)) return true;
  return false;
}

}  // namespace detail

// Deterministic path -> kind assignment. Rules are name/path based; every
// file lands in exactly one kind.
inline FileKind classify_path(const std::string& rel_path) {
  using detail::has_ext;
  using detail::name_matches;
  std::string path = rel_path;
  std::string lower_path = to_lower(path);
  auto slash = path.rfind('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  std::string lname = to_lower(name);

  // readme / metadata by canonical names
  if (lname.starts_with("readme")) return FileKind::readme;
  if (lname.starts_with("license") || lname.starts_with("copying"))
    return FileKind::license;
  if (lname.starts_with("citation") || lname == "citation.cff")
    return FileKind::citation;
  if (lname == "codemeta.json") return FileKind::codemeta;

  // lockfiles before manifests
  if (name_matches(lname, {"poetry.lock", "pipfile.lock", "conda-lock.yml",
                           "conda-lock.yaml", "pdm.lock", "uv.lock"}))
    return FileKind::lockfile;

  // dependency manifests by canonical names
  if ((lname.starts_with("requirements") && lname.ends_with(".txt")) ||
      name_matches(lname, {"environment.yml", "environment.yaml",
                           "pyproject.toml", "setup.py", "setup.cfg",
                           "pipfile"}))
    return FileKind::dependency_manifest;

  // container specs
  if (lname.starts_with("dockerfile") || lname.ends_with(".def") ||
      lname.starts_with("docker-compose") ||
      lower_path.find(".devcontainer/") != std::string::npos ||
      lname == "devcontainer.json" || lname == "singularity")
    return FileKind::container_spec;

  // CI configs
  if (lower_path.starts_with(".github/workflows/") ||
      name_matches(lname, {".gitlab-ci.yml", ".travis.yml",
                           "azure-pipelines.yml", "appveyor.yml",
                           "jenkinsfile"}) ||
      lower_path.starts_with(".circleci/"))
    return FileKind::ci_config;

  if (name_matches(lname, {"makefile", "gnumakefile"}))
    return FileKind::makefile;

  if (lname.ends_with(".ipynb")) return FileKind::notebook;

  if (lname.ends_with(".py")) {
    bool in_test_dir = lower_path.starts_with("tests/") ||
                       lower_path.starts_with("test/") ||
                       lower_path.find("/tests/") != std::string::npos ||
                       lower_path.find("/test/") != std::string::npos;
    if (in_test_dir || lname.starts_with("test_") || lname.ends_with("_test.py"))
      return FileKind::test_file;
    return FileKind::python_source;
  }

  if (has_ext(lname, {".sh", ".bash", ".zsh"})) return FileKind::shell_script;

  if (has_ext(lname, {".yml", ".yaml", ".toml", ".ini", ".cfg", ".json"}))
    return FileKind::config_file;

  if (has_ext(lname, {".csv", ".tsv", ".parquet", ".h5", ".hdf5", ".npz",
                      ".npy", ".pkl", ".pickle", ".xlsx", ".xls", ".zip",
                      ".gz", ".tar", ".mat", ".fasta", ".fastq", ".fa",
                      ".json.gz", ".png", ".jpg", ".jpeg", ".svg", ".pdf",
                      ".eps", ".tif", ".tiff", ".dat", ".txt"}))
    return FileKind::data_file;

  return FileKind::other;
}

inline FileInventory classify_files(const fs::path& root) {
  FileInventory inv;
  std::vector<std::string> rels;
  if (fs::exists(root)) {
    for (auto it = fs::recursive_directory_iterator(
             root, fs::directory_options::skip_permission_denied);
         it != fs::recursive_directory_iterator(); ++it) {
      const auto& entry = *it;
      std::string rel = fs::relative(entry.path(), root).generic_string();
      if (rel == ".git" || rel.starts_with(".git/")) {
        if (entry.is_directory()) it.disable_recursion_pending();
        continue;
      }
      if (entry.is_symlink()) {  // symlinks not followed
        if (entry.is_directory()) it.disable_recursion_pending();
        continue;
      }
      if (entry.is_regular_file()) rels.push_back(rel);
    }
  }
  std::sort(rels.begin(), rels.end());
  for (auto& rel : rels) {
    InventoryEntry e;
    e.path = rel;
    e.kind = classify_path(rel);
    std::error_code ec;
    e.size = fs::file_size(root / rel, ec);
    if (ec) {
      e.size = 0;
      e.unreadable = true;
      e.kind = FileKind::other;
    }
    e.content_scannable = !e.unreadable && e.size <= kMaxScanBytes;
    inv.files.push_back(std::move(e));
  }
  return inv;
}

namespace detail {

inline std::string run_command(const std::string& cmd, int* exit_code = nullptr) {
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    if (exit_code) *exit_code = -1;
    return out;
  }
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int rc = pclose(pipe);
  if (exit_code) *exit_code = rc;
  return out;
}

struct TempDirDeleter {
  fs::path dir;
  ~TempDirDeleter() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out.push_back(c);
  }
  out += "'";
  return out;
}

}  // namespace detail

inline bool is_remote_source(const std::string& source) {
  return source.starts_with("http://") || source.starts_with("https://") ||
         source.starts_with("git@") || source.starts_with("ssh://") ||
         source.starts_with("git://");
}

inline RepoSnapshot acquire_repository(const std::string& source,
                                       bool shallow = true) {
  RepoSnapshot snap;
  snap.source = source;

  if (is_remote_source(source)) {
    fs::path tmp = fs::temp_directory_path() /
                   ("reproscore-clone-" + std::to_string(::getpid()) + "-" +
                    std::to_string(std::hash<std::string>{}(source) & 0xffffff));
    std::error_code ec;
    fs::remove_all(tmp, ec);
    int rc = 0;
    std::string cmd = "git clone --quiet";
    if (shallow) cmd += " --depth 1";
    cmd += " " + detail::shell_quote(source) + " " + detail::shell_quote(tmp.string());
    detail::run_command(cmd, &rc);
    if (rc != 0 || !fs::exists(tmp))
      throw AcquireError("unreachable source: clone failed for " + source);
    snap.root = tmp;
    snap.cleanup = std::shared_ptr<void>(new detail::TempDirDeleter{tmp},
                                         [](void* p) {
                                           delete static_cast<detail::TempDirDeleter*>(p);
                                         });
  } else {
    fs::path dir(source);
    if (!fs::exists(dir) || !fs::is_directory(dir))
      throw AcquireError("unreachable source: " + source);
    snap.root = dir;
  }

  int rc = 0;
  std::string head = trim(detail::run_command(
      "git -C " + detail::shell_quote(snap.root.string()) + " rev-parse HEAD", &rc));
  snap.commit_id = (rc == 0 && !head.empty()) ? head : "uncommitted";

  snap.inventory = classify_files(snap.root);
  if (snap.inventory.total() == 0)
    throw AcquireError("no analyzable files: " + source);
  return snap;
}

}  // namespace reproscore
