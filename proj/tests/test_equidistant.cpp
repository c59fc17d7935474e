#include "chb/equidistant.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace chb;
using Catch::Matchers::WithinAbs;

namespace {

BidiskPoint product_midpoint(const BidiskPoint& z, const BidiskPoint& w) {
  return product_geodesic_through(z, w).at(0.5 * rho(z, w));
}

BisectorSpec random_spec(Rng& rng) {
  for (;;) {
    const auto z = random_bidisk_point(rng, 0.8), w = random_bidisk_point(rng, 0.8);
    if (rho(z, w) > 0.1) return {z, w};
  }
}

}  // namespace

TEST_CASE("signed difference examples") {
  const BallPoint a = BallPoint::origin(), b(0.5, 0.0);
  CHECK_THAT(signed_difference(b, a, b), WithinAbs(std::log(3.0) * std::log(3.0), 1e-12));
  CHECK_THAT(signed_difference(b, a, b), WithinAbs(1.2069, 1e-4));
  Rng rng(40);
  for (int i = 0; i < 100; ++i) {
    const BallPoint p = random_ball_point(rng), q = random_ball_point(rng);
    const double d = distance(p, q);
    CHECK_THAT(signed_difference(p, p, q), WithinAbs(-d * d, 1e-12));
    CHECK_THAT(signed_difference(geodesic_through(p, q).at(0.5 * d), p, q), WithinAbs(0.0, 1e-9));
  }
}

TEST_CASE("signed difference increases from a to b") {
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const BallPoint a = random_ball_point(rng), b = random_ball_point(rng);
    const Geodesic line = geodesic_through(a, b);
    const double d = distance(a, b);
    double previous = -INFINITY;
    for (int j = 0; j < 20; ++j) {
      const double value = signed_difference(line.at(-1.0 + (d + 2.0) * j / 19.0), a, b);
      CHECK(value > previous);
      previous = value;
    }
  }
}

TEST_CASE("bisector residual examples") {
  Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    const BisectorSpec spec = random_spec(rng);
    CHECK_THAT(bisector_residual(spec.z(), spec), WithinAbs(-rho_squared(spec.z(), spec.w()), 1e-10));
    CHECK_THAT(bisector_residual(product_midpoint(spec.z(), spec.w()), spec), WithinAbs(0.0, 1e-9));
  }
  const BidiskPoint o{BallPoint(), BallPoint()};
  CHECK_THROWS_AS(BisectorSpec(o, o), Error);
}

TEST_CASE("factor level sets") {
  Rng rng(43);
  for (int i = 0; i < 10; ++i) {
    const BallPoint a = random_ball_point(rng, 0.8), b = random_ball_point(rng, 0.8);
    for (double k : {-7.0, 0.0, 2.5}) {
      const auto pts = sample_factor_level_set(a, b, k, 50, 1000 + i);
      REQUIRE(pts.size() == 50);
      for (const auto& p : pts) CHECK(std::abs(signed_difference(p, a, b) - k) < 1e-9);
    }
    // point 0 of the k = 0 set is the midpoint itself
    const auto mid = sample_factor_level_set(a, b, 0.0, 1, 7);
    CHECK(distance(mid[0], geodesic_through(a, b).at(0.5 * distance(a, b))) < 1e-8);
  }
  // endpoint identity: b lies on S_k for k = d^2(a,b)
  const BallPoint a(0.1, 0.0), b(cplx(0.0, 0.3), 0.2);
  const double d = distance(a, b);
  CHECK_THAT(signed_difference(b, a, b), WithinAbs(d * d, 1e-12));
  for (const auto& p : sample_factor_level_set(a, b, d * d, 20, 3)) {
    CHECK(std::abs(signed_difference(p, a, b) - d * d) < 1e-9);
  }
  CHECK_THROWS_AS(sample_factor_level_set(a, a, 0.0, 1, 0), Error);
}

TEST_CASE("bisector clouds satisfy the bisector equation") {
  Rng rng(44);
  for (int i = 0; i < 5; ++i) {
    const BisectorSpec spec = random_spec(rng);
    const auto cloud = sample_bisector(spec, 400, KDistribution{}, 50 + i);
    REQUIRE(cloud.points.size() == 400);
    CHECK(cloud.seed == 50u + i);
    for (std::size_t j = 0; j < cloud.points.size(); ++j) {
      CHECK(std::abs(cloud.residuals[j]) < 2e-9);
      CHECK(cloud.residuals[j] == bisector_residual(cloud.points[j], spec));
      const double k1 = signed_difference(cloud.points[j].first, spec.z().first, spec.w().first);
      const double k2 = signed_difference(cloud.points[j].second, spec.w().second, spec.z().second);
      CHECK(std::abs(k1 - cloud.k_values[j]) < 2e-9);
      CHECK(std::abs(k2 - cloud.k_values[j]) < 2e-9);
    }
  }
}

TEST_CASE("the midpoint cloud at k = 0") {
  Rng rng(45);
  const BisectorSpec spec = random_spec(rng);
  const auto cloud = sample_bisector(spec, 100, KDistribution::fixed(0.0), 9);
  for (double r : cloud.residuals) CHECK(std::abs(r) < 1e-9);
  CHECK(rho(cloud.points[0], product_midpoint(spec.z(), spec.w())) < 1e-7);
}

TEST_CASE("levels across [-10, 10] are attainable") {
  Rng rng(46);
  for (int i = 0; i < 5; ++i) {
    BisectorSpec spec = random_spec(rng);
    while (distance(spec.z().first, spec.w().first) < 0.5 || distance(spec.z().second, spec.w().second) < 0.5) {
      spec = random_spec(rng);
    }
    for (double k = -10.0; k <= 10.0; k += 2.5) {
      const auto cloud = sample_bisector(spec, 5, KDistribution::fixed(k), 60 + i);
      CHECK(cloud.points.size() == 5);
      for (double r : cloud.residuals) CHECK(std::abs(r) < 2e-9);
    }
  }
}

TEST_CASE("bracket failures surface with the partial cloud") {
  Rng rng(47);
  const BisectorSpec spec = random_spec(rng);
  LevelSetOptions tight;
  tight.ray_cap = 0.5;  // below one step: no bracket can be formed off the level
  tight.attempts = 1;
  const auto out = sample_bisector_partial(spec, 20, KDistribution::fixed(3.0), 1, tight);
  REQUIRE(out.failure.has_value());
  CHECK(out.failure->kind() == ErrorKind::BracketFailure);
  CHECK(out.failed_k == 3.0);
  CHECK(out.cloud.points.empty());
  CHECK_THROWS_AS(sample_bisector(spec, 20, KDistribution::fixed(3.0), 1, tight), Error);

  const auto full = sample_bisector(spec, 30, KDistribution{}, 2);
  const auto again = sample_bisector(spec, 30, KDistribution{}, 2, {}, 4);
  CHECK(full.residuals == again.residuals);
  CHECK(full.k_values == again.k_values);
}

TEST_CASE("accumulation directions of S_k and S_0 agree") {
  Rng rng(48);
  for (int i = 0; i < 3; ++i) {
    BallPoint a = random_ball_point(rng, 0.8), b = random_ball_point(rng, 0.8);
    while (distance(a, b) < 1.0) b = random_ball_point(rng, 0.8);
    for (double k : {-5.0, 0.0, 5.0}) {
      const auto report = boundary_accumulation_check(a, b, k, default_depth_schedule(), 70 + i);
      CHECK(report.converged);
      CHECK(report.max_angle < 1e-3);
      CHECK(report.max_busemann_mismatch < 1e-3);
      for (const auto& path : report.paths) {
        REQUIRE(path.converged);
        CHECK(path.samples_k.back().depth < 1.01e-7);
      }
    }
  }
}

TEST_CASE("symmetric pair: k = 0 directions lie on the Busemann equality set") {
  // b = -a: the equality set of the Busemann difference is the set |<a,xi>| = |<-a,xi>|
  const BallPoint a(0.4, cplx(0.1, 0.2));
  const BallPoint b(-a.z1(), -a.z2());
  const auto report = boundary_accumulation_check(a, b, 0.0, default_depth_schedule(), 5);
  REQUIRE(report.converged);
  for (const auto& path : report.paths) {
    const Vec2 xi = path.direction_0->coords();
    const double inner = (xi.dot(a.coords())).real();
    CHECK(std::abs(inner) < 1e-3);
    CHECK(busemann_mismatch(a, b, *path.direction_0) < 1e-3);
  }
}

TEST_CASE("interior sequences are rejected") {
  const BallPoint a(0.1, 0.0), b(-0.2, 0.3);
  std::vector<AccumulationSample> interior;
  for (int i = 0; i < 10; ++i) {
    const BallPoint x(0.3, 0.1 * i / 10.0);
    interior.push_back({0.5, 0.1 * i, x, 1.0 / (distance(x, a) + distance(x, b))});
  }
  try {
    extrapolate_direction(interior, 3);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConvergence);
  }
  CHECK_THROWS_AS(extrapolate_arc_parameter(interior, 1.0, 3), Error);
  CHECK_THROWS_AS(boundary_accumulation_check(a, a, 0.0, default_depth_schedule(), 1), Error);
  CHECK_THROWS_AS(boundary_accumulation_check(a, b, 0.0, {0.5, 0.0}, 1), Error);
}
