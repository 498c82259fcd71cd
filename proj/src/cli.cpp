#include "faudit/cli.hpp"

#include "faudit/audit.hpp"
#include "faudit/config.hpp"
#include "faudit/decision.hpp"
#include "faudit/family.hpp"
#include "faudit/mc.hpp"
#include "faudit/platform.hpp"
#include "faudit/regcost.hpp"
#include "faudit/report.hpp"
#include "faudit/rng.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace faudit::cli {

namespace {

FamilyDescriptor build_family(const SectionReader& sec) {
  FamilyDescriptor family;
  const std::string name = sec.require_string("family");
  if (name == "gaussian1d")
    family.id = FamilyId::Gaussian1D;
  else if (name == "gaussian_known_var")
    family.id = FamilyId::GaussianKnownVar;
  else if (name == "bernoulli")
    family.id = FamilyId::Bernoulli;
  else if (name == "poisson")
    family.id = FamilyId::Poisson;
  else
    throw ValidationError("[" + sec.name() + "].family: unknown family '" + name + "'");
  if (family.id == FamilyId::GaussianKnownVar)
    if (auto kv = sec.optional_double("known_variance")) family.known_variance = *kv;
  validate_family(family);
  return family;
}

EstimatorId build_estimator(const SectionReader& sec) {
  const auto name = sec.optional_string("estimator").value_or("mvue");
  if (name == "mvue") return EstimatorId::Mvue;
  if (name == "mle") return EstimatorId::Mle;
  throw ValidationError("[" + sec.name() + "].estimator: unknown estimator '" + name + "'");
}

InfoPoint build_info_point(const SectionReader& sec) {
  const auto name = sec.optional_string("info_point").value_or("at_theta_tilde");
  if (name == "at_theta_tilde") return InfoPoint::AtThetaTilde;
  if (name == "at_midpoint") return InfoPoint::AtMidpoint;
  if (name == "at_oracle_theta") return InfoPoint::AtOracleTheta;
  throw ValidationError("[" + sec.name() + "].info_point: unknown info point '" + name + "'");
}

const char* info_point_name(InfoPoint p) {
  switch (p) {
    case InfoPoint::AtThetaTilde: return "at_theta_tilde";
    case InfoPoint::AtMidpoint: return "at_midpoint";
    case InfoPoint::AtOracleTheta: return "at_oracle_theta";
  }
  return "at_theta_tilde";
}

AuditConfig build_audit_config(const SectionReader& sec, const FamilyDescriptor& family) {
  AuditConfig config;
  config.family = family;
  config.epsilon = sec.require_double("epsilon");
  config.m = sec.require_int("m");
  config.estimator = build_estimator(sec);
  config.info_point = build_info_point(sec);
  if (auto theta = sec.optional_vector("oracle_theta")) config.oracle_theta = *theta;
  if (auto seed = sec.optional_seed("seed")) config.seed = *seed;
  validate_audit_config(config);
  return config;
}

PlatformSpec build_platform_spec(const ConfigReader& cfg, const FamilyDescriptor& family) {
  const SectionReader sec = cfg.section("platform");
  if (!sec.exists()) throw ValidationError("missing section [platform]");
  PlatformSpec spec;
  spec.family = family;
  const std::string mapping = sec.require_string("mapping");
  if (mapping == "constant") {
    spec.mapping = MappingKind::Constant;
    spec.constant_theta = sec.require_vector("theta");
  } else if (mapping == "lookup") {
    spec.mapping = MappingKind::Lookup;
    const SectionReader table = cfg.section("platform.table");
    if (!table.exists())
      throw ValidationError("lookup platform needs a [platform.table] section");
    for (const auto& [token, raw] : table.entries())
      spec.table[token] = parse_real_vector(raw, "[platform.table]." + token);
  } else if (mapping == "affine_shift") {
    spec.mapping = MappingKind::AffineShift;
    spec.base = sec.require_vector("base");
    spec.delta = sec.require_vector("delta");
    const SectionReader weights = cfg.section("platform.weights");
    for (const auto& [token, raw] : weights.entries())
      spec.weights[token] = parse_real(raw, "[platform.weights]." + token);
  } else {
    throw ValidationError("[platform].mapping: unknown mapping '" + mapping + "'");
  }
  if (auto kappa = sec.optional_double("inflation_kappa")) spec.inflation_kappa = *kappa;
  if (auto coords = sec.optional_ints("inflation_coords")) spec.inflation_coords = *coords;
  return spec;
}

std::vector<CounterfactualPair> build_pairs(const ConfigReader& cfg) {
  const SectionReader sec = cfg.section("pairs");
  if (!sec.exists()) throw ValidationError("missing section [pairs]");
  std::vector<CounterfactualPair> pairs;
  for (const auto& [label, raw] : sec.entries()) {
    const auto tokens = parse_string_list(raw);
    if (tokens.size() != 2 || tokens[0].empty() || tokens[1].empty())
      throw ValidationError("[pairs]." + label + ": expected 'x, x_prime', got '" + raw + "'");
    pairs.push_back({tokens[0], tokens[1], label});
  }
  if (pairs.empty()) throw ValidationError("[pairs]: at least one pair is required");
  return pairs;
}

GridSpec build_grid(const ConfigReader& cfg, int r) {
  const SectionReader sec = cfg.section("grid");
  if (!sec.exists()) throw ValidationError("missing section [grid]");
  GridSpec grid;
  for (const auto& [key, raw] : sec.entries())
    grid.axes.push_back(parse_axis(raw, "[grid]." + key));
  if (static_cast<int>(grid.axes.size()) != r)
    throw ValidationError("[grid]: expected " + std::to_string(r) + " axes, got " +
                          std::to_string(grid.axes.size()));
  return grid;
}

RewardSpec build_reward(const ConfigReader& cfg, int r) {
  const SectionReader sec = cfg.section("reward");
  if (!sec.exists()) throw ValidationError("missing section [reward]");
  RewardSpec reward;
  const std::string kind = sec.require_string("kind");
  if (kind == "mean_only") {
    reward.kind = RewardKind::MeanOnly;
    reward.mu_star = sec.require_double("mu_star");
  } else if (kind == "general_grid") {
    reward.kind = RewardKind::GeneralGrid;
    reward.table_axes = build_grid(cfg, r);
    const auto values = sec.optional_doubles("values");
    if (!values) throw ValidationError("[reward]: general_grid needs a values list");
    reward.table = *values;
  } else {
    throw ValidationError("[reward].kind: unknown reward kind '" + kind + "'");
  }
  if (auto omega = sec.optional_ints("omega")) reward.omega = *omega;
  return reward;
}

unsigned build_threads(const SectionReader& sec) {
  const int threads = sec.optional_int("threads").value_or(1);
  if (threads < 1)
    throw ValidationError("[" + sec.name() + "].threads: must be >= 1, got " +
                          std::to_string(threads));
  return static_cast<unsigned>(threads);
}

Json audit_header(const std::string& command) {
  Json j;
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

int run_audit(const ConfigReader& cfg, RunArtifacts& artifacts, bool batch) {
  const SectionReader sec = cfg.section("audit");
  if (!sec.exists()) throw ValidationError("missing section [audit]");
  const FamilyDescriptor family = build_family(sec);
  const AuditConfig config = build_audit_config(sec, family);
  const bool symmetrized = sec.optional_bool("symmetrized").value_or(false);
  const PlatformSpec platform_spec = build_platform_spec(cfg, family);
  const auto pairs = build_pairs(cfg);

  double alpha = 0.0;
  unsigned threads = 1;
  if (batch) {
    alpha = sec.require_double("alpha");
    threads = build_threads(sec);
  } else if (pairs.size() != 1) {
    throw ValidationError("audit: exactly one pair required, got " +
                          std::to_string(pairs.size()) + " (use audit-batch)");
  }
  cfg.finish();

  const auto platform = make_platform(platform_spec);
  artifacts.master_seed = config.seed;

  Json j = audit_header(batch ? "audit-batch" : "audit");
  j["family"] = family_name(family);
  j["epsilon"] = config.epsilon;
  j["m"] = config.m;
  j["estimator"] = config.estimator == EstimatorId::Mvue ? "mvue" : "mle";
  j["info_point"] = info_point_name(config.info_point);
  j["symmetrized"] = symmetrized;
  j["seed"] = config.seed;
  j["platform"] = describe_platform(platform_spec);

  if (!batch) {
    const AuditVerdict verdict = symmetrized ? audit_symmetrized(config, *platform, pairs[0])
                                             : audit_pair(config, *platform, pairs[0]);
    Json pair;
    pair["label"] = pairs[0].label;
    pair["x"] = pairs[0].x;
    pair["x_prime"] = pairs[0].x_prime;
    j["pair"] = std::move(pair);
    j["verdict"] = verdict_json(verdict);
    artifacts.report = std::move(j);
    return verdict.hypothesis == Hypothesis::H1 ? 2 : 0;
  }

  const BatchVerdict verdict = audit_batch(config, *platform, pairs, alpha, threads, symmetrized);
  j["threads"] = threads;
  j.update(batch_json(verdict, pairs));
  artifacts.report = std::move(j);
  return verdict.passed ? 0 : 2;
}

int run_mc(const ConfigReader& cfg, RunArtifacts& artifacts) {
  const SectionReader sec = cfg.section("mc");
  if (!sec.exists()) throw ValidationError("missing section [mc]");

  ExperimentPlan plan;
  plan.id = experiment_from_name(sec.require_string("experiment"));
  plan.family = build_family(sec);
  const int r = family_dim(plan.family);
  if (auto v = sec.optional_int("trials")) plan.trials = *v;
  if (auto v = sec.optional_seed("seed")) plan.master_seed = *v;
  plan.threads = build_threads(sec);
  plan.estimator = build_estimator(sec);
  plan.info_point = build_info_point(sec);

  if (auto v = sec.optional_doubles("epsilons"))
    plan.epsilons = *v;
  else if (auto e = sec.optional_double("epsilon"))
    plan.epsilons = {*e};
  if (auto v = sec.optional_ints("ms"))
    plan.ms = *v;
  else if (auto m = sec.optional_int("m"))
    plan.ms = {*m};

  if (auto v = sec.optional_vector("theta")) plan.theta = *v;
  if (auto v = sec.optional_vector("theta_prime")) plan.theta_prime = *v;
  if (auto v = sec.optional_double("rho")) plan.rho = *v;
  if (auto v = sec.optional_int("calibration_trials")) plan.calibration_trials = *v;
  if (auto v = sec.optional_vector("theta0")) plan.theta0 = *v;
  if (auto v = sec.optional_vector("value_weights")) plan.value_weights = *v;
  if (auto v = sec.optional_double("value_intercept")) plan.value_intercept = *v;
  if (auto v = sec.optional_ints("omega")) plan.omega = *v;
  if (auto v = sec.optional_double("kappa_max")) plan.kappa_max = *v;
  if (auto v = sec.optional_int("kappa_points")) plan.kappa_points = *v;

  const SectionReader thetas = cfg.section("mc.thetas");
  if (thetas.exists())
    for (const auto& [key, raw] : thetas.entries())
      plan.thetas.push_back(parse_real_vector(raw, "[mc.thetas]." + key));

  if (plan.id == ExperimentId::CostSweep) {
    plan.reward = build_reward(cfg, r);
    plan.grid = build_grid(cfg, r);
  }

  const auto claim = sec.optional_string("claim");
  cfg.finish();

  const auto curve = run_experiment(plan);
  artifacts.master_seed = plan.master_seed;

  Json j = audit_header("mc");
  j["experiment"] = experiment_name(plan.id);
  j["family"] = family_name(plan.family);
  j["trials"] = plan.trials;
  j["master_seed"] = plan.master_seed;
  j["threads"] = plan.threads;
  j["points"] = curve_json(curve);

  int code = 0;
  if (claim) {
    const SummaryRecord summary = summarize(curve, *claim);
    Json s;
    s["claim"] = summary.claim;
    s["passed"] = summary.passed;
    s["violations"] = summary.violations;
    j["summary"] = std::move(s);
    if (!summary.passed) code = 2;
  } else {
    j["summary"] = Json();
  }
  artifacts.report = std::move(j);
  artifacts.curves = curves_csv(curve);
  return code;
}

int run_cost(const ConfigReader& cfg, RunArtifacts& artifacts) {
  const SectionReader sec = cfg.section("cost");
  if (!sec.exists()) throw ValidationError("missing section [cost]");
  const FamilyDescriptor family = build_family(sec);
  const int r = family_dim(family);

  FeasibleQuery query;
  query.family = family;
  query.theta_ref = sec.require_vector("theta_ref");
  query.epsilon = sec.require_double("epsilon");
  query.m = sec.require_int("m");

  const RewardSpec reward = build_reward(cfg, r);
  query.omega = sec.optional_ints("omega").value_or(reward.omega);
  const GridSpec grid = build_grid(cfg, r);
  const bool want_witness = sec.optional_bool("witness").value_or(false);
  const auto theta_star = sec.optional_vector("theta_star");
  cfg.finish();

  const RegCostReport report = cost_of_regulation(reward, query, grid);

  Json j = audit_header("cost");
  j["family"] = family_name(family);
  j["epsilon"] = query.epsilon;
  j["m"] = query.m;
  j["theta_ref"] = to_json(query.theta_ref);
  j["omega"] = query.omega;
  j["reward_kind"] = reward.kind == RewardKind::MeanOnly ? "mean_only" : "general_grid";
  Json unconstrained;
  unconstrained["theta"] = to_json(report.unconstrained.theta);
  unconstrained["reward"] = report.unconstrained.reward;
  j["unconstrained"] = std::move(unconstrained);
  if (report.constrained) {
    Json constrained;
    constrained["theta"] = to_json(report.constrained->theta);
    constrained["reward"] = report.constrained->reward;
    j["constrained"] = std::move(constrained);
  } else {
    j["constrained"] = Json();
  }
  j["cost"] = report.feasible_set_empty ? Json() : Json(report.cost);
  j["cost_is_infinite"] = report.feasible_set_empty;
  j["feasible_set_empty"] = report.feasible_set_empty;

  if (want_witness) {
    const Vector start = theta_star ? *theta_star : report.unconstrained.theta;
    const auto [kappa, theta_w] = diversity_witness(reward, query, start);
    j["witness_kappa"] = kappa;
    j["witness_theta"] = to_json(theta_w);
  }
  artifacts.report = std::move(j);
  return 0;
}

int run_diversity(const ConfigReader& cfg, RunArtifacts& artifacts) {
  const SectionReader sec = cfg.section("diversity");
  if (!sec.exists()) throw ValidationError("missing section [diversity]");
  const FamilyDescriptor family = build_family(sec);
  const Vector z0 = sec.require_vector("z0");
  const Vector z1 = sec.require_vector("z1");
  const Vector v = sec.require_vector("v");
  cfg.finish();

  const double value = diversity_compare(family, z0, z1, v);

  Json j = audit_header("diversity");
  j["family"] = family_name(family);
  j["z0"] = to_json(z0);
  j["z1"] = to_json(z1);
  j["v"] = to_json(v);
  j["value"] = value;
  j["more_diverse"] = value > 0.0 ? "z0" : value < 0.0 ? "z1" : "equal";
  artifacts.report = std::move(j);
  return 0;
}

int run_decision_demo(const ConfigReader& cfg, RunArtifacts& artifacts) {
  const SectionReader sec = cfg.section("decision");
  if (!sec.exists()) throw ValidationError("missing section [decision]");
  const FamilyDescriptor family = build_family(sec);
  const int r = family_dim(family);

  const Vector theta0 = sec.require_vector("theta0");
  const int m = sec.require_int("m");
  const double rho = sec.require_double("rho");
  const int calibration_trials = sec.optional_int("calibration_trials").value_or(100000);
  const int trials = sec.optional_int("trials").value_or(10000);
  const Seed seed = sec.optional_seed("seed").value_or(0);

  ActionValues values;
  if (auto w = sec.optional_vector("value_weights")) {
    values.weights = *w;
  } else {
    values.weights = Vector::Zero(r);
    values.weights[0] = 1.0;
  }
  values.intercept = sec.optional_double("value_intercept").value_or(0.0);

  BeliefSpec belief;
  const auto belief_kind = sec.optional_string("belief").value_or("mvue");
  if (belief_kind == "mvue") {
    belief.kind = BeliefKind::Mvue;
  } else if (belief_kind == "biased") {
    belief.kind = BeliefKind::Biased;
    belief.bias = sec.require_vector("bias");
  } else if (belief_kind == "inflated") {
    belief.kind = BeliefKind::Inflated;
    belief.variance_multiplier = sec.require_double("variance_multiplier");
  } else {
    throw ValidationError("[decision].belief: unknown belief kind '" + belief_kind + "'");
  }

  const Vector theta = sec.optional_vector("theta").value_or(theta0);
  const auto theta_prime = sec.optional_vector("theta_prime");
  cfg.finish();

  const double eta =
      calibrate_eta(values, family, theta0, m, rho, calibration_trials, derive_seed(seed, 1));

  long chose_a1 = 0;
  std::string csv = "query_id,choice,score,eta\n";
  for (int t = 0; t < trials; ++t) {
    const Seed trial_seed = derive_seed(seed, 2, static_cast<std::uint64_t>(t));
    const Feed feed = sample_feed(family, theta, m, derive_seed(trial_seed, 0));
    const Vector b = form_belief(belief, family, feed, derive_seed(trial_seed, 1));
    const DecisionRecord record = decide(values, b, eta, "q" + std::to_string(t));
    if (record.choice == Action::A1) ++chose_a1;
    if (t < 1000)
      csv += record.query_id + "," + (record.choice == Action::A1 ? "a1" : "a0") + "," +
             format_number(record.score) + "," + format_number(record.eta) + "\n";
  }
  artifacts.master_seed = seed;

  Json j = audit_header("decision-demo");
  j["family"] = family_name(family);
  j["belief"] = belief_name(belief);
  j["eta"] = eta;
  j["rho"] = rho;
  j["m"] = m;
  j["trials"] = trials;
  j["theta"] = to_json(theta);
  j["p_choose_a1"] = static_cast<double>(chose_a1) / trials;
  if (theta_prime) {
    const double probe = distinguishability_probe(family, theta, *theta_prime, belief, values,
                                                  eta, m, trials, derive_seed(seed, 3));
    j["theta_prime"] = to_json(*theta_prime);
    j["distinguishability"] = probe;
  }
  artifacts.report = std::move(j);
  artifacts.extra_files.emplace_back("decisions.csv", std::move(csv));
  return 0;
}

std::filesystem::path resolve_outdir(const Invocation& invocation) {
  if (!invocation.out_dir.empty()) return invocation.out_dir;
  const char* env = std::getenv("FILTER_AUDIT_OUT");
  if (env != nullptr && *env != '\0') return env;
  throw ValidationError("no output directory: pass --out or set FILTER_AUDIT_OUT");
}

void ensure_writable(const std::filesystem::path& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec)
    throw IoError("cannot create output directory: " + outdir.string() + " (" + ec.message() +
                  ")");
  const auto probe = outdir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory not writable: " + outdir.string());
  }
  std::filesystem::remove(probe, ec);
}

}  // namespace

int run(const Invocation& invocation) {
  try {
    ConfigDoc doc = ConfigDoc::parse_file(invocation.config_path);
    for (const auto& [key, value] : invocation.overrides) doc.set(key, value);
    const auto outdir = resolve_outdir(invocation);
    ensure_writable(outdir);

    const ConfigReader cfg(doc);
    RunArtifacts artifacts;
    artifacts.command = invocation.command;
    artifacts.config_echo = doc.canonical();

    int code = 0;
    if (invocation.command == "audit")
      code = run_audit(cfg, artifacts, false);
    else if (invocation.command == "audit-batch")
      code = run_audit(cfg, artifacts, true);
    else if (invocation.command == "mc")
      code = run_mc(cfg, artifacts);
    else if (invocation.command == "cost")
      code = run_cost(cfg, artifacts);
    else if (invocation.command == "diversity")
      code = run_diversity(cfg, artifacts);
    else if (invocation.command == "decision-demo")
      code = run_decision_demo(cfg, artifacts);
    else
      throw ValidationError("unknown command '" + invocation.command +
                            "' (expected audit, audit-batch, mc, cost, diversity or "
                            "decision-demo)");

    write_artifacts(outdir, artifacts);
    return code;
  } catch (const std::exception& e) {
    std::cerr << "filter-audit: " << e.what() << std::endl;
    return 1;
  }
}

}  // namespace faudit::cli
