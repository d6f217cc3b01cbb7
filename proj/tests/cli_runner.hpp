#pragma once

// Runs the ihl executable in a child shell and captures its output.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace ihl::test {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline std::filesystem::path scratch_dir() {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("ihl-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// `args` is appended verbatim; `env` is prefixed (e.g. "IHL_LOG=debug").
inline RunResult run_cli(const std::string& args, const std::string& env = "") {
  const auto out = scratch_dir() / "stdout.txt";
  const auto err = scratch_dir() / "stderr.txt";
  const std::string command = env + (env.empty() ? "" : " ") + "'" + IHL_CLI + "' " + args + " >'" +
                              out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(command.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

inline std::string scratch(const std::string& name) { return (scratch_dir() / name).string(); }

}  // namespace ihl::test
