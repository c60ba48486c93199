#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "reproscore/util.hpp"

namespace reproscore {

// Detection surfaces used by the sub-metric analyzers. Defaults are
// compiled in; a pattern directory with the same file layout overrides
// them (one entry per line, '#' comments; aliases as "module=distribution").
struct PatternSet {
  std::string version = "1";
  std::vector<std::string> randomness_apis;
  std::vector<std::string> seed_apis;
  std::set<std::string> stdlib_modules;
  std::map<std::string, std::string> module_aliases;  // import name -> dist name
  std::vector<std::string> gpu_packages;

  static PatternSet defaults();
  static PatternSet load_dir(const fs::path& dir);
};

inline PatternSet PatternSet::defaults() {
  PatternSet p;
  p.randomness_apis = {
      "random.random",   "random.randint",  "random.choice",
      "random.sample",   "random.shuffle",  "random.uniform",
      "np.random.",      "numpy.random.",   "torch.rand",
      "torch.randn",     "torch.randint",   "torch.randperm",
      "tf.random.",      "tensorflow.random.", "jax.random.",
      "train_test_split", "KFold",          "StratifiedKFold",
      "default_rng",
  };
  p.seed_apis = {
      "random.seed",        "np.random.seed",      "numpy.random.seed",
      "torch.manual_seed",  "torch.cuda.manual_seed",
      "tf.random.set_seed", "tensorflow.random.set_seed",
      "set_random_seed",    "seed_everything",     "jax.random.PRNGKey",
      "random_state=",      "seed=",               "default_rng(",
  };
  p.stdlib_modules = {
      "abc", "aifc", "argparse", "array", "ast", "asyncio", "atexit",
      "base64", "bdb", "binascii", "bisect", "builtins", "bz2", "calendar",
      "cgi", "cmath", "cmd", "code", "codecs", "collections", "colorsys",
      "concurrent", "configparser", "contextlib", "contextvars", "copy",
      "copyreg", "cProfile", "csv", "ctypes", "curses", "dataclasses",
      "datetime", "dbm", "decimal", "difflib", "dis", "doctest", "email",
      "enum", "errno", "faulthandler", "fcntl", "filecmp", "fileinput",
      "fnmatch", "fractions", "ftplib", "functools", "gc", "getopt",
      "getpass", "gettext", "glob", "graphlib", "grp", "gzip", "hashlib",
      "heapq", "hmac", "html", "http", "imaplib", "importlib", "inspect",
      "io", "ipaddress", "itertools", "json", "keyword", "linecache",
      "locale", "logging", "lzma", "mailbox", "marshal", "math",
      "mimetypes", "mmap", "multiprocessing", "netrc", "numbers",
      "operator", "os", "pathlib", "pdb", "pickle", "pickletools",
      "pkgutil", "platform", "plistlib", "poplib", "posixpath", "pprint",
      "profile", "pstats", "pty", "pwd", "py_compile", "pydoc", "queue",
      "quopri", "random", "re", "readline", "reprlib", "resource",
      "runpy", "sched", "secrets", "select", "selectors", "shelve",
      "shlex", "shutil", "signal", "site", "smtplib", "socket",
      "socketserver", "sqlite3", "ssl", "stat", "statistics", "string",
      "stringprep", "struct", "subprocess", "symtable", "sys",
      "sysconfig", "syslog", "tarfile", "tempfile", "termios", "textwrap",
      "threading", "time", "timeit", "tkinter", "token", "tokenize",
      "tomllib", "trace", "traceback", "tracemalloc", "tty", "turtle",
      "types", "typing", "unicodedata", "unittest", "urllib", "uuid",
      "venv", "warnings", "wave", "weakref", "webbrowser", "wsgiref",
      "xml", "xmlrpc", "zipapp", "zipfile", "zipimport", "zlib",
      "zoneinfo", "__future__",
  };
  p.module_aliases = {
      {"sklearn", "scikit-learn"}, {"cv2", "opencv-python"},
      {"PIL", "pillow"},           {"yaml", "pyyaml"},
      {"bs4", "beautifulsoup4"},   {"skimage", "scikit-image"},
      {"Bio", "biopython"},        {"dateutil", "python-dateutil"},
      {"dotenv", "python-dotenv"}, {"mpl_toolkits", "matplotlib"},
      {"OpenSSL", "pyopenssl"},    {"serial", "pyserial"},
      {"wx", "wxpython"},          {"gi", "pygobject"},
      {"fitz", "pymupdf"},         {"docx", "python-docx"},
      {"attr", "attrs"},           {"git", "gitpython"},
      {"magic", "python-magic"},   {"Levenshtein", "python-levenshtein"},
  };
  p.gpu_packages = {
      "torch", "tensorflow", "tensorflow-gpu", "cupy", "jax", "pycuda",
      "numba", "mxnet", "paddlepaddle-gpu", "onnxruntime-gpu",
  };
  return p;
}

namespace detail {

inline std::vector<std::string> read_pattern_lines(const fs::path& file) {
  std::vector<std::string> out;
  auto text = try_read_file(file);
  if (!text) return out;
  for (auto& line : split_lines(*text)) {
    auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

inline PatternSet PatternSet::load_dir(const fs::path& dir) {
  PatternSet p = defaults();
  if (auto v = detail::read_pattern_lines(dir / "VERSION"); !v.empty())
    p.version = v.front();
  if (auto l = detail::read_pattern_lines(dir / "randomness_apis.txt"); !l.empty())
    p.randomness_apis = l;
  if (auto l = detail::read_pattern_lines(dir / "seed_apis.txt"); !l.empty())
    p.seed_apis = l;
  if (auto l = detail::read_pattern_lines(dir / "stdlib_modules.txt"); !l.empty())
    p.stdlib_modules = std::set<std::string>(l.begin(), l.end());
  if (auto l = detail::read_pattern_lines(dir / "gpu_packages.txt"); !l.empty())
    p.gpu_packages = l;
  if (auto l = detail::read_pattern_lines(dir / "module_aliases.txt"); !l.empty()) {
    p.module_aliases.clear();
    for (auto& entry : l) {
      auto eq = entry.find('=');
      if (eq == std::string::npos) continue;
      p.module_aliases[trim(entry.substr(0, eq))] = trim(entry.substr(eq + 1));
    }
  }
  return p;
}

}  // namespace reproscore
