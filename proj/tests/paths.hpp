#pragma once
//
// Locations handed in by the test harness, with in-tree fallbacks so
// the binaries also run by hand from the repository root.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <unistd.h>

namespace paths {

inline std::string env_or(const char* var, const std::string& fallback) {
  const char* v = std::getenv(var);
  return (v && *v) ? std::string(v) : fallback;
}

inline std::string fixture(const std::string& name) {
  return env_or("DTL_FIXTURES", "tests/fixtures") + "/" + name;
}

inline std::string golden(const std::string& name) {
  return env_or("DTL_GOLDEN", "tests/golden") + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Per-process scratch file; the suffix keeps names unique per call site.
inline std::string temp_write(const std::string& suffix,
                              const std::string& content) {
  const std::string path =
      "/tmp/dtltest_" + std::to_string(getpid()) + "_" + suffix;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  return path;
}

inline std::string temp_path(const std::string& suffix) {
  return "/tmp/dtltest_" + std::to_string(getpid()) + "_" + suffix;
}

}  // namespace paths
