#include "faudit/platform.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

namespace faudit {

namespace {

std::string fmt(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string fmt(const Vector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out + ")";
}

void apply_inflation(const PlatformSpec& spec, Vector& theta) {
  if (spec.inflation_kappa == 0.0) return;
  for (int c : spec.inflation_coords) theta[c - 1] += spec.inflation_kappa;
}

class SimPlatform final : public FeedOracle {
 public:
  explicit SimPlatform(PlatformSpec spec) : spec_(std::move(spec)) {}

  Feed feed(const std::string& token, int m, Seed seed) const override {
    return sample_feed(spec_.family, mapped_theta(spec_, token), m, seed);
  }

  bool concurrent_safe() const override { return true; }

 private:
  PlatformSpec spec_;
};

}  // namespace

Vector mapped_theta(const PlatformSpec& spec, const std::string& token) {
  const int r = family_dim(spec.family);
  for (int c : spec.inflation_coords)
    if (c < 1 || c > r)
      throw ValidationError("platform: inflation coordinate " + std::to_string(c) +
                            " outside 1.." + std::to_string(r));
  if (!(spec.inflation_kappa >= 0.0))
    throw ValidationError("platform: inflation kappa must be >= 0, got " +
                          std::to_string(spec.inflation_kappa));

  Vector theta;
  switch (spec.mapping) {
    case MappingKind::Constant:
      theta = spec.constant_theta;
      break;
    case MappingKind::Lookup: {
      auto it = spec.table.find(token);
      if (it == spec.table.end())
        throw ProtocolError("platform: token '" + token + "' not in lookup table");
      theta = it->second;
      break;
    }
    case MappingKind::AffineShift: {
      if (spec.base.size() != r || spec.delta.size() != r)
        throw ValidationError("platform: base and delta must have length " + std::to_string(r));
      auto it = spec.weights.find(token);
      const double w = it == spec.weights.end() ? 0.0 : it->second;
      theta = spec.base + w * spec.delta;
      break;
    }
  }
  if (theta.size() != r)
    throw ValidationError("platform: mapped theta must have length " + std::to_string(r) +
                          ", got " + std::to_string(theta.size()));
  apply_inflation(spec, theta);
  return theta;
}

std::shared_ptr<const FeedOracle> make_platform(const PlatformSpec& spec) {
  validate_family(spec.family);
  switch (spec.mapping) {
    case MappingKind::Constant:
      validate_theta(spec.family, mapped_theta(spec, ""));
      break;
    case MappingKind::Lookup:
      if (spec.table.empty())
        throw ValidationError("platform: lookup table must be non-empty");
      for (const auto& [token, theta] : spec.table) {
        (void)theta;
        validate_theta(spec.family, mapped_theta(spec, token));
      }
      break;
    case MappingKind::AffineShift: {
      PlatformSpec probe = spec;
      probe.weights.clear();
      validate_theta(spec.family, mapped_theta(probe, ""));
      for (const auto& [token, w] : spec.weights) {
        (void)w;
        validate_theta(spec.family, mapped_theta(spec, token));
      }
      break;
    }
  }
  return std::make_shared<SimPlatform>(spec);
}

std::string describe_platform(const PlatformSpec& spec) {
  std::ostringstream out;
  switch (spec.mapping) {
    case MappingKind::Constant:
      out << "compliant: all inputs map to " << fmt(spec.constant_theta);
      break;
    case MappingKind::Lookup: {
      bool first = true;
      for (const auto& [token, theta] : spec.table) {
        if (!first) out << "\n";
        first = false;
        out << token << " -> " << fmt(theta);
      }
      break;
    }
    case MappingKind::AffineShift:
      out << "affine shift: base " << fmt(spec.base) << ", delta " << fmt(spec.delta);
      for (const auto& [token, w] : spec.weights)
        out << "\n" << token << " -> weight " << fmt(w);
      break;
  }
  if (spec.inflation_kappa != 0.0)
    for (int c : spec.inflation_coords)
      out << "\ninflation: +" << fmt(spec.inflation_kappa) << " on coordinate " << c;
  return out.str();
}

}  // namespace faudit
