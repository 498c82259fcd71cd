#include "faudit/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace faudit;

TEST_SUITE("rng") {

TEST_CASE("streams replay exactly from their seed") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c(43);
  Rng d(42);
  int differences = 0;
  for (int i = 0; i < 100; ++i) differences += c.next_u64() != d.next_u64();
  CHECK(differences == 100);
}

TEST_CASE("derived streams are independent of the parent position") {
  Rng parent(7);
  const Rng child_before = parent.derive(3);
  parent.next_u64();
  parent.next_u64();
  Rng child_after = parent.derive(3);
  Rng reference = child_before;
  for (int i = 0; i < 100; ++i) CHECK(child_after.next_u64() == reference.next_u64());

  CHECK(derive_seed(7, 1) != derive_seed(7, 2));
  CHECK(derive_seed(7, 1, 2) != derive_seed(7, 2, 1));
}

TEST_CASE("uniform draws live in [0, 1) with the right first moments") {
  Rng rng(123);
  const int n = 200000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("normal draws have standard moments") {
  Rng rng(2024);
  const int n = 400000;
  double sum = 0.0;
  double sum2 = 0.0;
  double sum3 = 0.0;
  double sum4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
    sum3 += x * x * x;
    sum4 += x * x * x * x;
  }
  CHECK(sum / n == doctest::Approx(0.0).scale(1.0).epsilon(0.01));
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.015));
  CHECK(sum3 / n == doctest::Approx(0.0).scale(1.0).epsilon(0.04));
  CHECK(sum4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("bernoulli and poisson deviates have the right means") {
  Rng rng(5);
  const int n = 200000;
  long ones = 0;
  for (int i = 0; i < n; ++i) ones += rng.bernoulli(0.3);
  CHECK(static_cast<double>(ones) / n == doctest::Approx(0.3).epsilon(0.02));

  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.poisson(3.7));
    CHECK(k >= 0.0);
    sum += k;
    sum_sq += k * k;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(3.7).epsilon(0.01));
  CHECK(sum_sq / n - mean * mean == doctest::Approx(3.7).epsilon(0.03));
}

TEST_CASE("large poisson intensities superpose exactly") {
  Rng rng(6);
  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.poisson(45.0));
    sum += k;
    sum_sq += k * k;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(45.0).epsilon(0.005));
  CHECK(sum_sq / n - mean * mean == doctest::Approx(45.0).epsilon(0.03));
  CHECK(Rng(9).poisson(0.0) == 0);
}

}  // TEST_SUITE
