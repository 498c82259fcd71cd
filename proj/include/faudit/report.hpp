#pragma once

#include "faudit/audit.hpp"
#include "faudit/mc.hpp"
#include "faudit/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace faudit {

/// Order-preserving JSON so report.json has a stable key order.
using Json = nlohmann::ordered_json;

Json to_json(const Vector& v);
Json verdict_json(const AuditVerdict& verdict);
Json batch_json(const BatchVerdict& batch, const std::vector<CounterfactualPair>& pairs);
Json curve_json(const std::vector<CurvePoint>& curve);

/// Shortest representation that round-trips exactly; '.' decimal separator,
/// no locale dependence.
std::string format_number(double x);

std::string curves_csv(const std::vector<CurvePoint>& curve);

/// Everything one command run emits.
struct RunArtifacts {
  std::string command;
  Seed master_seed = 0;
  Json report;
  std::optional<std::string> curves;  // curves.csv body
  std::vector<std::pair<std::string, std::string>> extra_files;
  std::string config_echo;  // canonical config, reparseable
};

/// Writes report.json, run.meta, curves.csv (when present) and any extra
/// files under outdir. run.meta carries the artifact version, command and
/// master seed as # comments followed by the config echo, so the file itself
/// parses as a config document. I/O failures carry the failing path.
void write_artifacts(const std::filesystem::path& outdir, const RunArtifacts& artifacts);

}  // namespace faudit
