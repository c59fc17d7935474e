#include "chb/isometry.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace chb;
using Catch::Matchers::WithinAbs;

namespace {

Mat3 diag(cplx a, cplx b, cplx c) {
  Mat3 m = Mat3::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

double form_defect(const SpecialUnitaryElement& g) {
  const Mat3& j = g.form().matrix();
  return (g.matrix().adjoint() * j * g.matrix() - j).cwiseAbs().maxCoeff();
}

// Distance from p to a geodesic, by dense scan plus golden-section refinement.
double distance_to_geodesic(const BallPoint& p, const Geodesic& g) {
  double best_t = 0.0, best = INFINITY;
  for (double t = -12.0; t <= 12.0; t += 0.01) {
    const double d = distance(p, g.at(t));
    if (d < best) best = d, best_t = t;
  }
  double lo = best_t - 0.01, hi = best_t + 0.01;
  for (int i = 0; i < 100; ++i) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (distance(p, g.at(m1)) < distance(p, g.at(m2))) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(best, distance(p, g.at(0.5 * (lo + hi))));
}

SpecialUnitaryElement siegel_standard() { return verify_membership(diag(2.0, 1.0, 0.5), HermitianForm::siegel()); }

}  // namespace

TEST_CASE("membership examples") {
  const auto id = verify_membership(Mat3::Identity(), HermitianForm::ball());
  CHECK(classify(id).label == IsometryLabel::Elliptic);
  CHECK(form_defect(siegel_standard()) < 1e-15);
  try {
    verify_membership(diag(2.0, 1.0, 0.5), HermitianForm::ball());
    FAIL("expected NotUnitaryForForm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnitaryForForm);
  }
}

TEST_CASE("membership normalizes the determinant and is idempotent") {
  // scalar multiples of a member are accepted after normalization
  const auto s = verify_membership(cplx(0.0, 2.0) * Mat3::Identity(), HermitianForm::ball());
  CHECK((s.matrix() - s.matrix()(0, 0) * Mat3::Identity()).norm() < 1e-15);
  Mat3 shear = Mat3::Identity();
  shear(0, 1) = 0.5;
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const auto g = random_element(3);
  const auto h = verify_membership(w * g.matrix(), HermitianForm::ball());
  CHECK(std::abs(h.det() - 1.0) < 1e-10);
  const auto again = verify_membership(g.matrix(), HermitianForm::ball());
  CHECK((again.matrix() - g.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(verify_membership(shear, HermitianForm::ball()), Error);
  CHECK_THROWS_AS(verify_membership(Mat3::Zero(), HermitianForm::ball()), Error);
}

TEST_CASE("random elements preserve the form and are deterministic") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_element(seed);
    CHECK(form_defect(g) < 1e-10);
    CHECK(std::abs(g.det() - 1.0) < 1e-10);
    CHECK(g.matrix() == random_element(seed).matrix());
    const auto l = random_element(seed, IsometryLabel::Loxodromic);
    CHECK(form_defect(l) < 1e-10);
    CHECK(classify(l).label == IsometryLabel::Loxodromic);
  }
}

TEST_CASE("action is isometric and projective") {
  Rng rng(42);
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_element(1000 + i);
    const BallPoint x = random_ball_point(rng), y = random_ball_point(rng);
    CHECK_THAT(distance(apply(g, x), apply(g, y)), WithinAbs(distance(x, y), 1e-9));
    if (i < 100) {
      const BallPoint a = detail::apply_ball(w * g.matrix(), x);
      CHECK(distance(a, apply(g, x)) < 1e-12);
    }
  }
  const auto id = SpecialUnitaryElement::identity();
  const BallPoint p(0.2, cplx(0.1, 0.3));
  CHECK(apply(id, p) == p);
  CHECK_THROWS_AS(apply(siegel_standard(), p), Error);
}

TEST_CASE("classification examples") {
  CHECK(classify(siegel_standard()).label == IsometryLabel::Loxodromic);
  CHECK(classify(SpecialUnitaryElement::identity()).label == IsometryLabel::Elliptic);
  const cplx a = std::polar(1.0, std::numbers::pi / 3.0);
  const auto rot = verify_membership(diag(a, a, std::polar(1.0, -2.0 * std::numbers::pi / 3.0)), HermitianForm::ball());
  const auto cls = classify(rot);
  CHECK(cls.label == IsometryLabel::Elliptic);
  // the interior fixed point is the origin
  CHECK(distance(apply(rot, BallPoint::origin()), BallPoint::origin()) < 1e-14);
  const auto moduli = classify(siegel_standard()).eigenvalue_moduli;
  CHECK_THAT(moduli[0], WithinAbs(2.0, 1e-12));
  CHECK_THAT(moduli[1], WithinAbs(1.0, 1e-12));
  CHECK_THAT(moduli[2], WithinAbs(0.5, 1e-12));
}

TEST_CASE("parabolic elements are recognized") {
  Mat3 t;
  t << 1.0, cplx(0.3, -0.2), cplx(-0.5 * 0.13, 0.4), 0.0, 1.0, -cplx(0.3, 0.2), 0.0, 0.0, 1.0;
  const auto heis = verify_membership(t, HermitianForm::siegel());
  CHECK(classify(heis).label == IsometryLabel::Parabolic);
  CHECK(classify(to_ball_form(heis)).label == IsometryLabel::Parabolic);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto p = random_element(seed, IsometryLabel::Parabolic);
    CHECK(classify(p).label == IsometryLabel::Parabolic);
    CHECK(fixed_boundary_points(p).size() == 1);
    const auto e = random_element(seed, IsometryLabel::Elliptic);
    CHECK(classify(e).label == IsometryLabel::Elliptic);
  }
}

TEST_CASE("classification is conjugation invariant") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto hint = static_cast<IsometryLabel>(seed % 3);
    const auto g = random_element(seed, hint);
    const auto h = random_element(seed + 5000);
    const auto conj = h * g * h.inverse();
    CHECK(classify(conj).label == classify(g).label);
    CHECK(classify(g).label == hint);
  }
}

TEST_CASE("fixed points of the standard Siegel loxodromic") {
  const auto pts = fixed_boundary_points(siegel_standard());
  REQUIRE(pts.size() == 2);
  CHECK((pts[0].coords() - Vec2(1.0, 0.0)).norm() < 1e-12);
  CHECK((pts[1].coords() - Vec2(-1.0, 0.0)).norm() < 1e-12);
  CHECK_THROWS_AS(fixed_boundary_points(SpecialUnitaryElement::identity()), Error);
}

TEST_CASE("loxodromic fixed points are null eigenvectors and move equivariantly") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_element(seed, IsometryLabel::Loxodromic);
    const auto data = loxodromic_data(g);
    int k = 0;
    for (const auto& xi : {data.attracting, data.repelling}) {
      const Vec3 v = lift_coords(xi);
      CHECK(std::abs(HermitianForm::ball().pair(v, v)) < 1e-8);
      const Vec3 gv = g.matrix() * v;
      const cplx mu = v.dot(gv) / v.squaredNorm();
      CHECK((gv - mu * v).norm() < 1e-8 * gv.norm());
      if (k++ == 0) CHECK(std::abs(mu) > 1.0);
    }
    const auto h = random_element(seed + 777);
    const auto moved = loxodromic_data(h * g * h.inverse());
    CHECK((moved.attracting.coords() - apply(h, data.attracting).coords()).norm() < 1e-7);
    CHECK((moved.repelling.coords() - apply(h, data.repelling).coords()).norm() < 1e-7);
  }
}

TEST_CASE("axis of a ball loxodromic through (+-1, 0)") {
  const auto g = to_ball_form(siegel_standard());
  const Geodesic ax = axis(g);
  for (double t : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
    const BallPoint p = ax.at(t);
    CHECK(std::abs(p.z1() - cplx(std::tanh(0.5 * t))) < 1e-12);
    CHECK(std::abs(p.z2()) < 1e-12);
  }
  const double ell = translation_length(g);
  CHECK_THAT(ell, WithinAbs(2.0 * std::log(2.0), 1e-12));
  for (double t : {-2.0, 0.0, 2.0}) CHECK(distance(apply(g, ax.at(t)), ax.at(t + ell)) < 1e-7);
}

TEST_CASE("axis is invariant and translated by the translation length") {
  Rng rng(17);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = random_element(seed, IsometryLabel::Loxodromic);
    const Geodesic ax = axis(g);
    const double ell = translation_length(g);
    CHECK(ell > 0.0);
    for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const BallPoint q = apply(g, ax.at(t));
      CHECK(distance_to_geodesic(q, ax) < 1e-7);
      // distance along the axis from gamma(t) to g gamma(t) equals ell
      CHECK_THAT(distance(ax.at(t), q), WithinAbs(ell, 1e-7));
    }
    CHECK_THAT(translation_length(g.inverse()), WithinAbs(ell, 1e-9));
    CHECK_THAT(translation_length(g.power(2)), WithinAbs(2.0 * ell, 1e-7));
    CHECK_THAT(translation_length(g.power(3)), WithinAbs(3.0 * ell, 1e-7));
    for (int i = 0; i < 10; ++i) {
      const BallPoint x = random_ball_point(rng);
      CHECK(ell <= distance(x, apply(g, x)) + 1e-12);
    }
  }
}

TEST_CASE("translation length is the sampled infimum of displacement") {
  const auto g = random_element(99, IsometryLabel::Loxodromic);
  const double ell = translation_length(g);
  Rng rng(100);
  double inf = INFINITY;
  for (int i = 0; i < 500; ++i) {
    const BallPoint x = random_ball_point(rng);
    inf = std::min(inf, distance(x, apply(g, x)));
  }
  CHECK(ell <= inf + 1e-12);
}

TEST_CASE("non-loxodromic elements have no axis") {
  try {
    axis(SpecialUnitaryElement::identity());
    FAIL("expected WrongClass");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongClass);
  }
  CHECK_THROWS_AS(translation_length(random_element(1, IsometryLabel::Parabolic)), Error);
}

TEST_CASE("frames move the origin to the requested point") {
  Rng rng(8);
  const auto f0 = frame_at(BallPoint::origin());
  CHECK(apply(f0, BallPoint::origin()) == BallPoint::origin());
  for (int i = 0; i < 100; ++i) {
    const BallPoint p = random_ball_point(rng, 0.99);
    const auto f = frame_at(p);
    CHECK(distance(apply(f, BallPoint::origin()), p) < 1e-10);
    CHECK(form_defect(f) < 1e-10);
  }
}

TEST_CASE("form changes") {
  const auto id = SpecialUnitaryElement::identity(HermitianForm::siegel());
  const auto idb = change_form(id, HermitianForm::siegel(), HermitianForm::ball());
  CHECK((idb.matrix() - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  const auto b = change_form(siegel_standard(), HermitianForm::siegel(), HermitianForm::ball());
  CHECK(form_defect(b) < 1e-10);
  const auto back = change_form(b, HermitianForm::ball(), HermitianForm::siegel());
  CHECK((back.matrix() - siegel_standard().matrix()).cwiseAbs().maxCoeff() < 1e-12);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_element(seed, static_cast<IsometryLabel>(seed % 3));
    const auto s = change_form(g, HermitianForm::ball(), HermitianForm::siegel());
    CHECK(classify(s).label == classify(g).label);
  }
  const auto custom = HermitianForm::custom(2.0 * HermitianForm::ball().matrix());
  try {
    change_form(b, HermitianForm::ball(), custom);
    FAIL("expected UnsupportedConversion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedConversion);
  }
  const Mat3& c = detail::siegel_to_ball();
  CHECK((c.adjoint() * HermitianForm::ball().matrix() * c - HermitianForm::siegel().matrix()).norm() < 1e-15);
}
