// Drives the built CLI binary (path injected via PHISEQ_CLI_PATH) and parses
// its CSV output. Shared by the CLI tests and the acceptance suite.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace cli {

struct Result {
  int exit_code;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline Result run(const std::string& args) {
  static int counter = 0;
  const std::string base = "/tmp/phiseq_run_" + std::to_string(::getpid()) + "_" +
                           std::to_string(counter++);
  const std::string out = base + ".out", err = base + ".err";
  const std::string cmd = std::string(PHISEQ_CLI_PATH) + " " + args + " >" + out +
                          " 2>" + err;
  const int rc = std::system(cmd.c_str());
  Result r{WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(out), slurp(err)};
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.push_back("");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cli
