#include "faudit/platform.hpp"

#include <doctest.h>

using namespace faudit;

namespace {

const FamilyDescriptor kGaussian{FamilyId::Gaussian1D, 1.0};
const FamilyDescriptor kBernoulli{FamilyId::Bernoulli, 1.0};

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

}  // namespace

TEST_SUITE("simulated platforms") {

TEST_CASE("constant mapping ignores the token") {
  PlatformSpec spec;
  spec.family = kGaussian;
  spec.constant_theta = vec(0.5, 2.0);
  CHECK(mapped_theta(spec, "anything") == vec(0.5, 2.0));
  CHECK(mapped_theta(spec, "") == vec(0.5, 2.0));

  const auto platform = make_platform(spec);
  const Feed a = platform->feed("x", 50, 9);
  const Feed b = platform->feed("y", 50, 9);
  CHECK(a.items == b.items);  // same theta, same seed
  CHECK(platform->concurrent_safe());
}

TEST_CASE("lookup mapping resolves listed tokens only") {
  PlatformSpec spec;
  spec.family = kGaussian;
  spec.mapping = MappingKind::Lookup;
  spec.table["calm"] = vec(0.0, 1.0);
  spec.table["spicy"] = vec(3.0, 1.0);
  CHECK(mapped_theta(spec, "calm") == vec(0.0, 1.0));
  CHECK(mapped_theta(spec, "spicy") == vec(3.0, 1.0));
  CHECK_THROWS_WITH_AS(mapped_theta(spec, "unknown"),
                       doctest::Contains("not in lookup table"), ProtocolError);
  CHECK_NOTHROW(make_platform(spec));

  spec.table.clear();
  CHECK_THROWS_WITH_AS(make_platform(spec), doctest::Contains("non-empty"), ValidationError);
}

TEST_CASE("affine shift interpolates along delta") {
  PlatformSpec spec;
  spec.family = kGaussian;
  spec.mapping = MappingKind::AffineShift;
  spec.base = vec(0.0, 1.0);
  spec.delta = vec(1.0, 0.5);
  spec.weights["half"] = 0.5;
  spec.weights["full"] = 1.0;
  CHECK(mapped_theta(spec, "half") == vec(0.5, 1.25));
  CHECK(mapped_theta(spec, "full") == vec(1.0, 1.5));
  CHECK(mapped_theta(spec, "unlisted") == vec(0.0, 1.0));
  CHECK_NOTHROW(make_platform(spec));

  spec.delta = vec(1.0);
  CHECK_THROWS_WITH_AS(mapped_theta(spec, "half"),
                       doctest::Contains("base and delta must have length 2"), ValidationError);
}

TEST_CASE("inflation adds kappa after the mapping") {
  PlatformSpec spec;
  spec.family = kGaussian;
  spec.constant_theta = vec(0.0, 1.0);
  spec.inflation_kappa = 3.0;
  spec.inflation_coords = {2};
  CHECK(mapped_theta(spec, "x") == vec(0.0, 4.0));

  spec.inflation_coords = {1, 2};
  CHECK(mapped_theta(spec, "x") == vec(3.0, 4.0));

  spec.inflation_coords = {3};
  CHECK_THROWS_WITH_AS(mapped_theta(spec, "x"), doctest::Contains("outside 1..2"),
                       ValidationError);

  spec.inflation_coords = {2};
  spec.inflation_kappa = -1.0;
  CHECK_THROWS_WITH_AS(mapped_theta(spec, "x"), doctest::Contains("must be >= 0"),
                       ValidationError);
}

TEST_CASE("construction validates every reachable parameter") {
  PlatformSpec spec;
  spec.family = kBernoulli;
  spec.constant_theta = vec(1.5);
  CHECK_THROWS_AS(make_platform(spec), DomainError);

  spec.mapping = MappingKind::Lookup;
  spec.table["bad"] = vec(-0.25);
  CHECK_THROWS_AS(make_platform(spec), DomainError);

  PlatformSpec affine;
  affine.family = kBernoulli;
  affine.mapping = MappingKind::AffineShift;
  affine.base = vec(0.9);
  affine.delta = vec(0.2);
  affine.weights["w"] = 1.0;  // 0.9 + 0.2 leaves the parameter space
  CHECK_THROWS_AS(make_platform(affine), DomainError);
  affine.weights["w"] = 0.5;
  CHECK_NOTHROW(make_platform(affine));

  // the zero-weight point must be valid even with no listed tokens
  affine.base = vec(-0.1);
  affine.weights.clear();
  CHECK_THROWS_AS(make_platform(affine), DomainError);
}

TEST_CASE("feeds follow the mapped parameter") {
  PlatformSpec spec;
  spec.family = kGaussian;
  spec.mapping = MappingKind::Lookup;
  spec.table["low"] = vec(-2.0, 1.0);
  spec.table["high"] = vec(5.0, 1.0);
  const auto platform = make_platform(spec);

  const Feed low = platform->feed("low", 50000, 31);
  const Feed high = platform->feed("high", 50000, 31);
  CHECK(low.items.col(0).mean() == doctest::Approx(-2.0).epsilon(0.02));
  CHECK(high.items.col(0).mean() == doctest::Approx(5.0).epsilon(0.01));
  CHECK(platform->feed("low", 10, 4).items == platform->feed("low", 10, 4).items);
}

TEST_CASE("descriptions stay on the operator side") {
  PlatformSpec constant;
  constant.family = kGaussian;
  constant.constant_theta = vec(0.0, 1.0);
  CHECK(describe_platform(constant) == "compliant: all inputs map to (0,1)");

  constant.inflation_kappa = 0.5;
  constant.inflation_coords = {2};
  CHECK(describe_platform(constant) ==
        "compliant: all inputs map to (0,1)\ninflation: +0.5 on coordinate 2");

  PlatformSpec lookup;
  lookup.family = kGaussian;
  lookup.mapping = MappingKind::Lookup;
  lookup.table["a"] = vec(0.0, 1.0);
  lookup.table["b"] = vec(1.0, 2.0);
  CHECK(describe_platform(lookup) == "a -> (0,1)\nb -> (1,2)");

  PlatformSpec affine;
  affine.family = kGaussian;
  affine.mapping = MappingKind::AffineShift;
  affine.base = vec(0.0, 1.0);
  affine.delta = vec(1.0, 0.0);
  affine.weights["t"] = 0.25;
  CHECK(describe_platform(affine) ==
        "affine shift: base (0,1), delta (1,0)\nt -> weight 0.25");
}

}  // TEST_SUITE
