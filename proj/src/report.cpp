#include "faudit/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

namespace faudit {

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << body;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Json to_json(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Json verdict_json(const AuditVerdict& verdict) {
  Json j;
  j["hypothesis"] = verdict.hypothesis == Hypothesis::H1 ? "H1" : "H0";
  j["statistic"] = verdict.statistic;
  j["threshold"] = std::isinf(verdict.threshold) ? Json() : Json(verdict.threshold);
  j["threshold_is_infinite"] = std::isinf(verdict.threshold);
  j["theta_tilde"] = to_json(verdict.theta_tilde);
  j["theta_tilde_prime"] = to_json(verdict.theta_tilde_prime);
  return j;
}

Json batch_json(const BatchVerdict& batch, const std::vector<CounterfactualPair>& pairs) {
  Json j;
  j["passed"] = batch.passed;
  j["h1_count"] = batch.h1_count;
  j["alpha"] = batch.alpha;
  j["pair_count"] = batch.per_pair.size();
  Json per_pair = Json::array();
  for (std::size_t i = 0; i < batch.per_pair.size(); ++i) {
    Json one = verdict_json(batch.per_pair[i]);
    one["label"] = i < pairs.size() ? pairs[i].label : std::to_string(i);
    per_pair.push_back(std::move(one));
  }
  j["per_pair"] = std::move(per_pair);
  return j;
}

Json curve_json(const std::vector<CurvePoint>& curve) {
  Json arr = Json::array();
  for (const CurvePoint& point : curve) {
    Json j;
    j["abscissa"] = point.abscissa;
    j["estimate"] = std::isinf(point.estimate) ? Json() : Json(point.estimate);
    if (std::isinf(point.estimate)) j["estimate_is_infinite"] = true;
    j["half_width"] = point.half_width;
    j["trials"] = point.trials;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string curves_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "abscissa,estimate,half_width,trials\n";
  for (const CurvePoint& point : curve) {
    out += format_number(point.abscissa);
    out += ',';
    out += format_number(point.estimate);
    out += ',';
    out += format_number(point.half_width);
    out += ',';
    out += std::to_string(point.trials);
    out += '\n';
  }
  return out;
}

void write_artifacts(const std::filesystem::path& outdir, const RunArtifacts& artifacts) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create output directory: " + outdir.string());

  write_file(outdir / "report.json", artifacts.report.dump(2) + "\n");

  std::string meta;
  meta += "# filter-audit " + std::string(kVersion) + "\n";
  meta += "# command = " + artifacts.command + "\n";
  meta += "# master_seed = " + std::to_string(artifacts.master_seed) + "\n";
  meta += artifacts.config_echo;
  write_file(outdir / "run.meta", meta);

  if (artifacts.curves) write_file(outdir / "curves.csv", *artifacts.curves);
  for (const auto& [name, body] : artifacts.extra_files) write_file(outdir / name, body);
}

}  // namespace faudit
