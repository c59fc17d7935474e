#include "chb/bidisk.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace chb;
using Catch::Matchers::WithinAbs;

namespace {

double gap(const BidiskPoint& a, const BidiskPoint& b) { return rho(a, b); }

BidiskIsometry random_bidisk_isometry(std::uint64_t seed) {
  return {random_element(substream_seed(seed, 1)), random_element(substream_seed(seed, 2)), (seed & 1) != 0};
}

}  // namespace

TEST_CASE("product metric examples") {
  const BallPoint o = BallPoint::origin(), h(0.5, 0.0), p(0.1, cplx(0.2, 0.3));
  const BidiskPoint x{o, p};
  CHECK(rho(x, x) == 0.0);
  CHECK_THAT(rho({o, p}, {h, p}), WithinAbs(std::log(3.0), 1e-12));
  CHECK_THAT(rho({o, o}, {h, h}), WithinAbs(std::sqrt(2.0) * std::log(3.0), 1e-12));
  CHECK_THAT(rho({o, o}, {h, h}), WithinAbs(1.5537, 1e-4));
}

TEST_CASE("product metric axioms") {
  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_bidisk_point(rng), y = random_bidisk_point(rng), z = random_bidisk_point(rng);
    CHECK(rho(x, y) >= 0.0);
    CHECK(rho(x, y) == rho(y, x));
    CHECK(rho(x, z) <= rho(x, y) + rho(y, z) + 1e-9);
    CHECK(rho(swap_point(x), swap_point(y)) == rho(x, y));
  }
}

TEST_CASE("bidisk isometries preserve rho") {
  Rng rng(11);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto g = random_bidisk_isometry(i);
    const auto x = random_bidisk_point(rng), y = random_bidisk_point(rng);
    CHECK_THAT(rho(apply_bidisk(g, x), apply_bidisk(g, y)), WithinAbs(rho(x, y), 1e-9));
  }
}

TEST_CASE("swap action and conjugation relation") {
  const BallPoint a(0.1, 0.2), b(cplx(0.0, 0.4), -0.3);
  const auto s = BidiskIsometry::swap();
  const auto y = apply_bidisk(s, {a, b});
  CHECK(y.first == b);
  CHECK(y.second == a);
  Rng rng(12);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto g1 = random_element(2 * i), g2 = random_element(2 * i + 1);
    const BidiskIsometry g(g1, g2, false), flipped(g2, g1, false);
    const auto x = random_bidisk_point(rng);
    // i o (g1, g2) o i acts as (g2, g1)
    const auto lhs = apply_bidisk(s, apply_bidisk(g, apply_bidisk(s, x)));
    CHECK(gap(lhs, apply_bidisk(flipped, x)) < 1e-10);
    CHECK(gap(apply_bidisk(compose(s, compose(g, s)), x), lhs) < 1e-10);
  }
}

TEST_CASE("composition law") {
  const auto s = BidiskIsometry::swap();
  const auto ss = compose(s, s);
  CHECK_FALSE(ss.has_swap());
  CHECK((ss.g1().matrix() - Mat3::Identity()).norm() < 1e-15);
  const auto g1 = random_element(1), g2 = random_element(2), h1 = random_element(3), h2 = random_element(4);
  const auto c = compose({g1, g2, false}, {h1, h2, false});
  CHECK((c.g1().matrix() - g1.matrix() * h1.matrix()).norm() < 1e-13);
  CHECK((c.g2().matrix() - g2.matrix() * h2.matrix()).norm() < 1e-13);
  CHECK_FALSE(c.has_swap());

  Rng rng(13);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto a = random_bidisk_isometry(3 * i), b = random_bidisk_isometry(3 * i + 1);
    const auto d = random_bidisk_isometry(3 * i + 2);
    const auto left = compose(compose(a, b), d), right = compose(a, compose(b, d));
    CHECK(left.has_swap() == ((a.has_swap() != b.has_swap()) != d.has_swap()));
    for (int k = 0; k < 10; ++k) {
      const auto x = random_bidisk_point(rng);
      const auto direct = apply_bidisk(a, apply_bidisk(b, apply_bidisk(d, x)));
      CHECK(gap(apply_bidisk(compose(a, b), apply_bidisk(d, x)), direct) < 1e-9);
      CHECK(gap(apply_bidisk(left, x), apply_bidisk(right, x)) < 1e-9);
    }
  }
}

TEST_CASE("inverses") {
  const auto s = BidiskIsometry::swap();
  CHECK(inverse(s).has_swap());
  const auto g1 = random_element(5), g2 = random_element(6);
  const auto inv = inverse(BidiskIsometry(g1, g2, false));
  CHECK((inv.g1().matrix() - g1.inverse().matrix()).norm() < 1e-13);
  CHECK_FALSE(inv.has_swap());
  Rng rng(14);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto g = random_bidisk_isometry(i);
    const auto x = random_bidisk_point(rng);
    CHECK(gap(apply_bidisk(compose(g, inverse(g)), x), x) < 1e-10);
    CHECK(gap(apply_bidisk(inverse(g), apply_bidisk(g, x)), x) < 1e-10);
  }
}

TEST_CASE("powers compose repeatedly") {
  Rng rng(15);
  const auto g = random_bidisk_isometry(77);
  const auto x = random_bidisk_point(rng);
  CHECK(gap(apply_bidisk(power(g, 3), x), apply_bidisk(g, apply_bidisk(g, apply_bidisk(g, x)))) < 1e-9);
  CHECK(gap(apply_bidisk(power(g, -2), apply_bidisk(power(g, 2), x)), x) < 1e-9);
  CHECK(gap(apply_bidisk(power(g, 0), x), x) < 1e-15);
}

TEST_CASE("product geodesics are unit speed and hit both endpoints") {
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_bidisk_point(rng), y = random_bidisk_point(rng);
    const auto c = product_geodesic_through(x, y);
    const double l = rho(x, y);
    CHECK(gap(c.at(0.0), x) < 1e-9);
    CHECK(gap(c.at(l), y) < 1e-8);
    CHECK_THAT(c.speed_first() * c.speed_first() + c.speed_second() * c.speed_second(), WithinAbs(1.0, 1e-14));
    const double s = uniform(rng, -3.0, 3.0), t = uniform(rng, -3.0, 3.0);
    CHECK_THAT(rho(c.at(s), c.at(t)), WithinAbs(std::abs(s - t), 1e-8));
  }
}

TEST_CASE("factor slices are totally geodesic") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const BallPoint cst = random_ball_point(rng);
    const BallPoint x1 = random_ball_point(rng), y1 = random_ball_point(rng);
    const auto c = product_geodesic_through({x1, cst}, {y1, cst});
    for (double t : {-2.0, 0.0, 0.7, 1.5, 4.0}) CHECK(distance(c.at(t).second, cst) < 1e-9);
  }
  CHECK_THROWS_AS(product_geodesic_through({BallPoint(), BallPoint()}, {BallPoint(), BallPoint()}), Error);
}

TEST_CASE("siegel-form factors are converted on construction") {
  Mat3 d = Mat3::Zero();
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  d(2, 2) = 0.5;
  const auto s = verify_membership(d, HermitianForm::siegel());
  const BidiskIsometry g(s, s, false);
  CHECK(g.g1().form().kind() == FormKind::Ball);
  const auto y = apply_bidisk(g, {BallPoint(), BallPoint()});
  CHECK_THAT(rho({BallPoint(), BallPoint()}, y), WithinAbs(std::sqrt(2.0) * 2.0 * std::log(2.0), 1e-12));
}
