#include "faudit/decision.hpp"

#include "faudit/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace faudit;

namespace {

const FamilyDescriptor kKnownVar{FamilyId::GaussianKnownVar, 1.0};
const FamilyDescriptor kGaussian{FamilyId::Gaussian1D, 1.0};

Vector vec(double a) {
  Vector v(1);
  v << a;
  return v;
}

Vector vec(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

ActionValues mean_score() {
  ActionValues values;
  values.weights = vec(1.0);
  return values;
}

constexpr double kZ95 = 1.6448536269514722;

}  // namespace

TEST_SUITE("user decisions") {

TEST_CASE("belief names") {
  CHECK(belief_name({BeliefKind::Mvue, {}, 1.0}) == "mvue");
  CHECK(belief_name({BeliefKind::Biased, vec(2.0, -2.0), 1.0}) == "biased(2,-2)");
  CHECK(belief_name({BeliefKind::Inflated, {}, 16.0}) == "inflated(16)");
}

TEST_CASE("belief formation") {
  const Feed feed = sample_feed(kKnownVar, vec(0.5), 20, 77);
  const Vector base = mvue(kKnownVar, feed);

  CHECK(form_belief({BeliefKind::Mvue, {}, 1.0}, kKnownVar, feed, 1) == base);
  CHECK(form_belief({BeliefKind::Biased, vec(0.3), 1.0}, kKnownVar, feed, 1)[0] ==
        doctest::Approx(base[0] + 0.3).epsilon(1e-15));
  // multiplier 1 must reproduce the MVUE bit-for-bit, no noise drawn
  CHECK(form_belief({BeliefKind::Inflated, {}, 1.0}, kKnownVar, feed, 1) == base);
  CHECK(form_belief({BeliefKind::Inflated, {}, 4.0}, kKnownVar, feed, 1) != base);

  CHECK_THROWS_AS(form_belief({BeliefKind::Biased, vec(1.0, 2.0), 1.0}, kKnownVar, feed, 1),
                  ValidationError);
  CHECK_THROWS_AS(form_belief({BeliefKind::Inflated, {}, 0.5}, kKnownVar, feed, 1),
                  ValidationError);
}

TEST_CASE("inflated beliefs multiply the sampling variance") {
  const int trials = 20000;
  const int m = 10;
  const BeliefSpec inflated{BeliefKind::Inflated, {}, 4.0};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Feed feed = sample_feed(kKnownVar, vec(0.0), m, derive_seed(101, t));
    const double b = form_belief(inflated, kKnownVar, feed, derive_seed(102, t))[0];
    sum += b;
    sum_sq += b * b;
  }
  const double mean = sum / trials;
  const double var = sum_sq / trials - mean * mean;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(var == doctest::Approx(4.0 * 1.0 / m).epsilon(0.05));
}

TEST_CASE("threshold rule is strict") {
  const ActionValues values = mean_score();
  CHECK(decide(values, vec(0.5), 0.5).choice == Action::A0);
  CHECK(decide(values, vec(0.5 + 1e-12), 0.5).choice == Action::A1);
  const DecisionRecord record = decide(values, vec(2.0), 0.5, "q17");
  CHECK(record.query_id == "q17");
  CHECK(record.score == 2.0);
  CHECK(record.eta == 0.5);
  CHECK_THROWS_AS(decide(values, vec(0.0, 1.0), 0.5), ValidationError);
}

TEST_CASE("calibrated margin matches the closed form") {
  const int m = 25;
  // the MVUE score at theta0 = 0 is N(0, 1/m), so the (1-rho) quantile is
  // z_{1-rho} / sqrt(m)
  const double eta = calibrate_eta(mean_score(), kKnownVar, vec(0.0), m, 0.05, 200000, 404);
  CHECK(eta == doctest::Approx(kZ95 / 5.0).epsilon(0.02));

  const double median = calibrate_eta(mean_score(), kKnownVar, vec(0.0), m, 0.5, 200000, 404);
  CHECK(std::fabs(median) < 0.005);

  // unknown-variance family, score reads only the mean coordinate
  ActionValues values;
  values.weights = vec(1.0, 0.0);
  const double eta2 = calibrate_eta(values, kGaussian, vec(0.0, 1.0), m, 0.05, 200000, 405);
  CHECK(eta2 == doctest::Approx(kZ95 / 5.0).epsilon(0.02));
}

TEST_CASE("calibration rejects ill-posed setups") {
  const ActionValues values = mean_score();
  CHECK_THROWS_WITH_AS(calibrate_eta(values, kKnownVar, vec(1.0), 10, 0.05, 100, 1),
                       doctest::Contains("indifference boundary"), ValidationError);
  CHECK_THROWS_AS(calibrate_eta(values, kKnownVar, vec(0.0), 10, 0.0, 100, 1), ValidationError);
  CHECK_THROWS_AS(calibrate_eta(values, kKnownVar, vec(0.0), 10, 1.0, 100, 1), ValidationError);
  CHECK_THROWS_AS(calibrate_eta(values, kKnownVar, vec(0.0), 10, 0.05, 0, 1), ValidationError);

  ActionValues wide;
  wide.weights = vec(1.0, 1.0);
  CHECK_THROWS_AS(calibrate_eta(wide, kKnownVar, vec(0.0), 10, 0.05, 100, 1), ValidationError);

  // an indifferent theta0 on the parameter boundary is still rejected
  const FamilyDescriptor bernoulli{FamilyId::Bernoulli, 1.0};
  CHECK_THROWS_AS(calibrate_eta(values, bernoulli, vec(0.0), 10, 0.05, 100, 1),
                  SingularityError);
}

TEST_CASE("a calibrated user fires at rate rho under the null") {
  const int m = 25;
  const double eta = calibrate_eta(mean_score(), kKnownVar, vec(0.0), m, 0.05, 100000, 11);
  int fired = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    const Feed feed = sample_feed(kKnownVar, vec(0.0), m, derive_seed(909, t));
    const Vector belief = form_belief({BeliefKind::Mvue, {}, 1.0}, kKnownVar, feed, 0);
    if (decide(mean_score(), belief, eta).choice == Action::A1) ++fired;
  }
  CHECK(std::fabs(static_cast<double>(fired) / trials - 0.05) < 0.01);
}

TEST_CASE("distinguishability reflects separation and belief quality") {
  const int m = 25;
  const double eta = kZ95 / 5.0;
  const ActionValues values = mean_score();

  const BeliefSpec sharp{BeliefKind::Mvue, {}, 1.0};
  const BeliefSpec fuzzy{BeliefKind::Inflated, {}, 16.0};

  const double same =
      distinguishability_probe(kKnownVar, vec(0.0), vec(0.0), sharp, values, eta, m, 5000, 21);
  CHECK(same < 0.02);

  const double apart =
      distinguishability_probe(kKnownVar, vec(0.0), vec(1.0), sharp, values, eta, m, 5000, 21);
  CHECK(apart > 0.92);
  CHECK(apart < 0.97);

  // a noisier belief leaks less about which parameter produced the feed
  const double fuzzy_apart =
      distinguishability_probe(kKnownVar, vec(0.0), vec(1.0), fuzzy, values, eta, m, 5000, 21);
  CHECK(fuzzy_apart < apart - 0.2);

  // deterministic in the seed
  CHECK(distinguishability_probe(kKnownVar, vec(0.0), vec(1.0), sharp, values, eta, m, 500, 3) ==
        distinguishability_probe(kKnownVar, vec(0.0), vec(1.0), sharp, values, eta, m, 500, 3));
  CHECK_THROWS_AS(
      distinguishability_probe(kKnownVar, vec(0.0), vec(1.0), sharp, values, eta, m, 0, 3),
      ValidationError);
}

}  // TEST_SUITE
