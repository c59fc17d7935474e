#pragma once

// Hermitian forms of signature (2,1), the ball model of the complex hyperbolic
// plane, its metric, geodesics and Busemann functions.

#include "chb/errors.hpp"
#include "chb/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace chb {

enum class FormKind { Ball, Siegel, Custom };
enum class SignClass { Negative, Null, Positive };

inline const char* to_string(FormKind kind) {
  switch (kind) {
    case FormKind::Ball: return "ball";
    case FormKind::Siegel: return "siegel";
    case FormKind::Custom: return "custom";
  }
  return "custom";
}

inline const char* to_string(SignClass s) {
  switch (s) {
    case SignClass::Negative: return "negative";
    case SignClass::Null: return "null";
    case SignClass::Positive: return "positive";
  }
  return "null";
}

/// A Hermitian form of signature (2,1) on C^3. The pairing is
/// <z, w> = w^* J z, which for the real diagonal and anti-diagonal forms used
/// here equals sum_ij J_ij z_i conj(w_j).
class HermitianForm {
 public:
  /// J = diag(1, 1, -1).
  static HermitianForm ball() {
    Mat3 m = Mat3::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = -1.0;
    return HermitianForm(m, FormKind::Ball);
  }

  /// Anti-diagonal form with a unit middle entry; the standard loxodromic
  /// diag(lambda, 1, 1/conj(lambda)) preserves it.
  static HermitianForm siegel() {
    Mat3 m = Mat3::Zero();
    m(0, 2) = 1.0;
    m(1, 1) = 1.0;
    m(2, 0) = 1.0;
    return HermitianForm(m, FormKind::Siegel);
  }

  static HermitianForm custom(const Mat3& m) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      throw Error(ErrorKind::BadParameter, "form matrix is not Hermitian");
    }
    const Eigen::SelfAdjointEigenSolver<Mat3> es(m);
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    int pos = 0, neg = 0;
    for (int i = 0; i < 3; ++i) {
      if (ev(i) > 1e-12 * scale) ++pos;
      if (ev(i) < -1e-12 * scale) ++neg;
    }
    if (pos != 2 || neg != 1) {
      throw Error(ErrorKind::BadParameter, "form does not have signature (2,1)");
    }
    return HermitianForm(m, FormKind::Custom);
  }

  const Mat3& matrix() const { return matrix_; }
  FormKind kind() const { return kind_; }

  cplx pair(const Vec3& z, const Vec3& w) const { return w.dot(matrix_ * z); }

  /// J^{-1} A^* J, the inverse of any A preserving this form.
  Mat3 inverse_of_preserving(const Mat3& a) const {
    if (kind_ == FormKind::Custom) return matrix_.inverse() * a.adjoint() * matrix_;
    return matrix_ * a.adjoint() * matrix_;  // J^2 = I for ball and Siegel
  }

  friend bool operator==(const HermitianForm& a, const HermitianForm& b) {
    return a.kind_ == b.kind_ && (a.kind_ != FormKind::Custom || a.matrix_ == b.matrix_);
  }

 private:
  HermitianForm(const Mat3& m, FormKind kind) : matrix_(m), kind_(kind) {}

  Mat3 matrix_;
  FormKind kind_;
};

/// Homogeneous coordinates in C^{2,1} measured against a Hermitian form.
class ProjectiveVector {
 public:
  ProjectiveVector(const Vec3& coords, HermitianForm form) : coords_(coords), form_(std::move(form)) {
    if (coords_.cwiseAbs().maxCoeff() == 0.0) {
      throw Error(ErrorKind::BadParameter, "projective vector is zero");
    }
  }

  const Vec3& coords() const { return coords_; }
  const HermitianForm& form() const { return form_; }

  cplx self_pairing() const { return form_.pair(coords_, coords_); }

  /// Sign of <v,v>, judged relative to |v|^2 so the answer does not depend on
  /// the representative.
  SignClass sign_class(double tol = 1e-9) const {
    const double rel = self_pairing().real() / coords_.squaredNorm();
    if (rel < -tol) return SignClass::Negative;
    if (rel > tol) return SignClass::Positive;
    return SignClass::Null;
  }

  ProjectiveVector scaled(cplx s) const { return ProjectiveVector(coords_ * s, form_); }

 private:
  Vec3 coords_;
  HermitianForm form_;
};

/// Interior point (z1, z2) of the unit ball in C^2.
class BallPoint {
 public:
  BallPoint() : BallPoint(0.0, 0.0) {}

  BallPoint(cplx z1, cplx z2) : z1_(z1), z2_(z2) {
    depth_ = detail::one_minus_sum_squares(z1.real(), z1.imag(), z2.real(), z2.imag());
    if (!(depth_ > 0.0)) {
      throw Error(ErrorKind::NotInterior, "point (" + std::to_string(std::abs(z1)) + ", " +
                                              std::to_string(std::abs(z2)) + ") has norm >= 1");
    }
  }

  static BallPoint origin() { return {}; }

  cplx z1() const { return z1_; }
  cplx z2() const { return z2_; }
  Vec2 coords() const { return Vec2(z1_, z2_); }
  double norm2() const { return std::norm(z1_) + std::norm(z2_); }
  double norm() const { return std::sqrt(norm2()); }

  /// 1 - |z|^2, computed with compensated arithmetic.
  double one_minus_norm2() const { return depth_; }

  /// 1 - |z|, accurate near the boundary.
  double one_minus_norm() const { return depth_ / (1.0 + norm()); }

  friend bool operator==(const BallPoint& a, const BallPoint& b) {
    return a.z1_ == b.z1_ && a.z2_ == b.z2_;
  }

 private:
  cplx z1_;
  cplx z2_;
  double depth_;
};

/// Point (z1, z2) of the unit sphere S^3, the ideal boundary of the ball.
class BoundaryPoint {
 public:
  BoundaryPoint(cplx z1, cplx z2) : z1_(z1), z2_(z2) {
    if (std::abs(std::norm(z1) + std::norm(z2) - 1.0) >= 1e-10) {
      throw Error(ErrorKind::BadParameter, "boundary point does not lie on the unit sphere");
    }
  }

  /// Rescales any nonzero vector of C^2 onto the sphere.
  static BoundaryPoint normalized(cplx z1, cplx z2) {
    const double n = std::sqrt(std::norm(z1) + std::norm(z2));
    if (n == 0.0) throw Error(ErrorKind::BadParameter, "cannot normalize the zero vector");
    return {z1 / n, z2 / n};
  }

  static BoundaryPoint normalized(const Vec2& v) { return normalized(v(0), v(1)); }

  cplx z1() const { return z1_; }
  cplx z2() const { return z2_; }
  Vec2 coords() const { return Vec2(z1_, z2_); }

 private:
  cplx z1_;
  cplx z2_;
};

// ---------------------------------------------------------------------------
// Lifts and pairing

inline cplx hermitian_pairing(const ProjectiveVector& v, const ProjectiveVector& w) {
  if (!(v.form() == w.form())) {
    throw Error(ErrorKind::FormMismatch, "vectors are measured against different forms");
  }
  return v.form().pair(v.coords(), w.coords());
}

inline Vec3 lift_coords(const BallPoint& p) { return Vec3(p.z1(), p.z2(), 1.0); }

/// Null lift (xi1, xi2, 1); its largest coordinate has modulus one.
inline Vec3 lift_coords(const BoundaryPoint& p) { return Vec3(p.z1(), p.z2(), 1.0); }

inline ProjectiveVector lift(const BallPoint& p) { return {lift_coords(p), HermitianForm::ball()}; }
inline ProjectiveVector lift(const BoundaryPoint& p) { return {lift_coords(p), HermitianForm::ball()}; }

/// Dehomogenizes a ball-form vector to an interior point.
inline BallPoint dehomogenize(const Vec3& v) {
  if (std::abs(v(2)) == 0.0) throw Error(ErrorKind::NotInterior, "vector at infinity in the ball chart");
  return {v(0) / v(2), v(1) / v(2)};
}

/// Dehomogenizes a null ball-form vector and projects it onto S^3.
inline BoundaryPoint dehomogenize_boundary(const Vec3& v) {
  if (std::abs(v(2)) == 0.0) throw Error(ErrorKind::BadParameter, "vector at infinity in the ball chart");
  return BoundaryPoint::normalized(v(0) / v(2), v(1) / v(2));
}

inline BallPoint to_ball_point(const ProjectiveVector& v) {
  if (v.form().kind() != FormKind::Ball) {
    throw Error(ErrorKind::FormMismatch, "ball coordinates need a ball-form vector");
  }
  if (v.sign_class(0.0) != SignClass::Negative) {
    throw Error(ErrorKind::NotInterior, "vector is not negative");
  }
  return dehomogenize(v.coords());
}

// ---------------------------------------------------------------------------
// Metric

namespace detail {
inline std::atomic<std::uint64_t>& clamp_counter() {
  static std::atomic<std::uint64_t> counter{0};
  return counter;
}

/// Maps sinh^2(d/2) to d. Arguments of cosh^2 in [1 - 1e-12, 1) are clamped
/// to 1 and counted; anything below is a domain error.
inline double distance_from_sinh2_half(double s) {
  if (s < 0.0) {
    if (s < -1e-12) {
      throw Error(ErrorKind::NumericalDomainError,
                  "cosh^2(d/2) = " + std::to_string(1.0 + s) + " is below 1");
    }
    clamp_counter().fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  return 2.0 * std::asinh(std::sqrt(s));
}
}  // namespace detail

/// Number of arccosh clamp events since program start.
inline std::uint64_t clamp_event_count() { return detail::clamp_counter().load(); }

/// Bergman distance: cosh^2(d/2) = |<x,z>|^2 / ((1-|x|^2)(1-|z|^2)).
/// Evaluated through sinh^2(d/2) = (|x-z|^2 - |x1 z2 - x2 z1|^2) / ((1-|x|^2)(1-|z|^2)),
/// which is the same quantity minus one without the cancellation.
inline double distance(const BallPoint& a, const BallPoint& b) {
  // Fixed argument order keeps d(a,b) and d(b,a) bit-identical.
  const auto key = [](const BallPoint& p) {
    return std::array<double, 4>{p.z1().real(), p.z1().imag(), p.z2().real(), p.z2().imag()};
  };
  const bool ordered = key(a) <= key(b);
  const BallPoint& x = ordered ? a : b;
  const BallPoint& z = ordered ? b : a;
  const cplx u1 = z.z1() - x.z1();
  const cplx u2 = z.z2() - x.z2();
  const cplx wedge = x.z1() * u2 - x.z2() * u1;
  const double num = std::norm(u1) + std::norm(u2) - std::norm(wedge);
  const double den = x.one_minus_norm2() * z.one_minus_norm2();
  return detail::distance_from_sinh2_half(num / den);
}

/// Distance between the points represented by two negative vectors, straight
/// from the projective formula; independent of the chosen representatives.
inline double distance(const ProjectiveVector& v, const ProjectiveVector& w) {
  const double vv = v.self_pairing().real();
  const double ww = w.self_pairing().real();
  if (!(vv < 0.0) || !(ww < 0.0)) throw Error(ErrorKind::NotInterior, "distance needs negative vectors");
  const double q = std::norm(hermitian_pairing(v, w)) / (vv * ww);
  return detail::distance_from_sinh2_half(q - 1.0);
}

// ---------------------------------------------------------------------------
// Frames and geodesics

namespace detail {

/// Matrix of SU(2,1) (ball form) sending the origin to p, built by indefinite
/// Gram-Schmidt: third column is the unit-negative lift of p, the first two
/// are J-orthonormal positive vectors orthogonal to it.
inline Mat3 ball_frame(const BallPoint& p) {
  const HermitianForm form = HermitianForm::ball();
  Vec3 c3 = lift_coords(p) / std::sqrt(p.one_minus_norm2());

  auto project = [&](Vec3 w, const Vec3& c, double sign) {
    // w - <w,c>/<c,c> c with <c,c> = sign
    return Vec3(w - (form.pair(w, c) / sign) * c);
  };
  Vec3 c1 = project(Vec3::UnitX(), c3, -1.0);
  c1 /= std::sqrt(form.pair(c1, c1).real());
  Vec3 c2 = project(project(Vec3::UnitY(), c3, -1.0), c1, 1.0);
  c2 /= std::sqrt(form.pair(c2, c2).real());

  Mat3 f;
  f.col(0) = c1;
  f.col(1) = c2;
  f.col(2) = c3;
  const cplx det = f.determinant();
  f.col(0) *= std::conj(det) / std::abs(det);
  return f;
}

inline Mat3 ball_inverse(const Mat3& a) { return HermitianForm::ball().inverse_of_preserving(a); }

inline BallPoint apply_ball(const Mat3& a, const BallPoint& p) { return dehomogenize(a * lift_coords(p)); }

inline BoundaryPoint apply_ball(const Mat3& a, const BoundaryPoint& p) {
  return dehomogenize_boundary(a * lift_coords(p));
}

}  // namespace detail

/// Unit-speed geodesic t -> F (tanh(t/2) u), where F is a ball-form isometry
/// (the frame at gamma(0)) and u a unit vector of C^2. Defined for all real t.
class Geodesic {
 public:
  Geodesic(const Mat3& frame, const Vec2& direction) : frame_(frame), dir_(direction.normalized()) {}

  const Mat3& frame() const { return frame_; }
  const Vec2& direction() const { return dir_; }

  /// Homogeneous representative with <v,v> = -1.
  Vec3 lift_at(double t) const {
    const double sh = std::sinh(0.5 * t);
    const Vec3 local(sh * dir_(0), sh * dir_(1), std::cosh(0.5 * t));
    return frame_ * local;
  }

  BallPoint at(double t) const { return dehomogenize(lift_at(t)); }
  BallPoint operator()(double t) const { return at(t); }

  BoundaryPoint forward_end() const { return dehomogenize_boundary(frame_ * Vec3(dir_(0), dir_(1), 1.0)); }
  BoundaryPoint backward_end() const { return dehomogenize_boundary(frame_ * Vec3(-dir_(0), -dir_(1), 1.0)); }

 private:
  Mat3 frame_;
  Vec2 dir_;
};

/// Geodesic with gamma(0) = x and gamma(d(x,y)) = y.
inline Geodesic geodesic_through(const BallPoint& x, const BallPoint& y) {
  const Mat3 f = detail::ball_frame(x);
  const BallPoint local = detail::apply_ball(detail::ball_inverse(f), y);
  const Vec2 v = local.coords();
  if (v.norm() < 1e-15) throw Error(ErrorKind::DegenerateGeodesic, "geodesic endpoints coincide");
  return {f, v};
}

inline BallPoint geodesic_point(const BallPoint& x, const BallPoint& y, double t) {
  return geodesic_through(x, y).at(t);
}

/// Ray from x (t = 0) toward the ideal point xi (t -> +inf).
inline Geodesic geodesic_ray(const BallPoint& x, const BoundaryPoint& xi) {
  const Mat3 f = detail::ball_frame(x);
  const BoundaryPoint local = detail::apply_ball(detail::ball_inverse(f), xi);
  return {f, local.coords()};
}

/// Geodesic from the ideal point `from` (t -> -inf) to `to` (t -> +inf),
/// parameterized so that t = 0 is the point of the line closest to the origin.
inline Geodesic geodesic_between(const BoundaryPoint& from, const BoundaryPoint& to) {
  const HermitianForm form = HermitianForm::ball();
  const Vec3 p = lift_coords(to);
  Vec3 q = lift_coords(from);
  const cplx c = form.pair(p, q);
  if (std::abs(c) < 1e-12) throw Error(ErrorKind::DegenerateGeodesic, "ideal endpoints coincide");
  // <p, lambda q> = conj(lambda) <p,q> = -1/2, so that v(t) = e^{t/2} p + e^{-t/2} q
  // is a unit-speed parameterization with <v,v> = -1.
  q *= -0.5 / std::conj(c);
  const double t0 = std::log(std::abs(q(2)) / std::abs(p(2)));
  const Vec3 v = std::exp(0.5 * t0) * p + std::exp(-0.5 * t0) * q;
  const BallPoint m = dehomogenize(v);
  const Mat3 f = detail::ball_frame(m);
  const BoundaryPoint local = detail::apply_ball(detail::ball_inverse(f), to);
  return {f, local.coords()};
}

// ---------------------------------------------------------------------------
// Busemann functions (base point: the origin)

/// Constant separating d(x_n, z) from B_xi(z) - log(1 - |x_n|) as x_n -> xi.
/// Measured by the deep-sequence oracle in tests/test_busemann.cpp (depths
/// 1e-4 .. 1e-10, 20 random (z, xi)): the offset converges to log 2, coming
/// from 1 - |x|^2 ~ 2 (1 - |x|) together with cosh(t) ~ e^t / 2.
inline const double kAsymptoticOffset = std::numbers::ln2;

/// b_xi(z) = lim_{y -> xi} [d(z, y) - d(o, y)] = log(|<z,xi>|^2 / (1 - |z|^2)),
/// with xi lifted as (xi1, xi2, 1).
inline double busemann_closed(const BallPoint& z, const BoundaryPoint& xi) {
  const cplx pairing = HermitianForm::ball().pair(lift_coords(z), lift_coords(xi));
  if (std::abs(pairing) < 1e-14) throw Error(ErrorKind::UndefinedBusemann, "<z, xi> vanishes");
  return std::log(std::norm(pairing) / z.one_minus_norm2());
}

/// Sequence form d(z, y) - d(o, y) with y on the ray from the origin to xi at
/// 1 - |y| = closeness.
inline double busemann_limit(const BallPoint& z, const BoundaryPoint& xi, double closeness) {
  if (!(closeness > 0.0 && closeness < 1.0)) {
    throw Error(ErrorKind::BadParameter, "closeness must lie in (0, 1)");
  }
  const double r = 1.0 - closeness;
  const BallPoint y(r * xi.z1(), r * xi.z2());
  return distance(z, y) - distance(BallPoint::origin(), y);
}

/// d(x_n, z) + log(1 - |x_n|) - b_xi(z) - log 2; tends to zero as x_n -> xi.
inline double boundary_asymptotic_residual(const BallPoint& z, const BoundaryPoint& xi, const BallPoint& x_n) {
  return distance(x_n, z) + std::log(x_n.one_minus_norm()) - busemann_closed(z, xi) - kAsymptoticOffset;
}

}  // namespace chb
