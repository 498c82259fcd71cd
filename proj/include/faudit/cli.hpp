#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace faudit::cli {

struct Invocation {
  std::string command;
  std::filesystem::path config_path;
  std::filesystem::path out_dir;  // empty: fall back to $FILTER_AUDIT_OUT
  std::vector<std::pair<std::string, std::string>> overrides;
};

/// Runs one command end to end: parse config, apply overrides, validate,
/// compute, write report.json / run.meta / curves.csv under the output
/// directory. Returns the process exit code: 0 for pass/H0, 2 for fail/H1,
/// 1 for any error (message on stderr).
int run(const Invocation& invocation);

}  // namespace faudit::cli
