#pragma once

// The complex bidisk H^2_C x H^2_C with the product metric.

#include "chb/isometry.hpp"

#include <cmath>

namespace chb {

struct BidiskPoint {
  BallPoint first;
  BallPoint second;

  friend bool operator==(const BidiskPoint& a, const BidiskPoint& b) {
    return a.first == b.first && a.second == b.second;
  }
};

inline double rho(const BidiskPoint& x, const BidiskPoint& y) {
  return std::hypot(distance(x.first, y.first), distance(x.second, y.second));
}

inline double rho_squared(const BidiskPoint& x, const BidiskPoint& y) {
  const double d1 = distance(x.first, y.first);
  const double d2 = distance(x.second, y.second);
  return d1 * d1 + d2 * d2;
}

inline BidiskPoint swap_point(const BidiskPoint& x) { return {x.second, x.first}; }

class BidiskIsometry {
 public:
  BidiskIsometry() : BidiskIsometry(SpecialUnitaryElement::identity(), SpecialUnitaryElement::identity(), false) {}

  /// Siegel-form factors are converted to the ball form.
  BidiskIsometry(const SpecialUnitaryElement& g1, const SpecialUnitaryElement& g2, bool swap)
      : g1_(to_ball_form(g1)), g2_(to_ball_form(g2)), swap_(swap) {}

  static BidiskIsometry swap() { return {SpecialUnitaryElement::identity(), SpecialUnitaryElement::identity(), true}; }

  const SpecialUnitaryElement& g1() const { return g1_; }
  const SpecialUnitaryElement& g2() const { return g2_; }
  bool has_swap() const { return swap_; }

 private:
  SpecialUnitaryElement g1_;
  SpecialUnitaryElement g2_;
  bool swap_;
};

/// The swap i is applied first, then the factor pair.
inline BidiskPoint apply_bidisk(const BidiskIsometry& g, const BidiskPoint& x) {
  const BidiskPoint y = g.has_swap() ? swap_point(x) : x;
  return {apply(g.g1(), y.first), apply(g.g2(), y.second)};
}

/// The map x -> a(b(x)).
inline BidiskIsometry compose(const BidiskIsometry& a, const BidiskIsometry& b) {
  // (g, s)(h, t): moving i past h swaps h's factors.
  const SpecialUnitaryElement& h1 = a.has_swap() ? b.g2() : b.g1();
  const SpecialUnitaryElement& h2 = a.has_swap() ? b.g1() : b.g2();
  return {a.g1() * h1, a.g2() * h2, a.has_swap() != b.has_swap()};
}

inline BidiskIsometry inverse(const BidiskIsometry& g) {
  if (g.has_swap()) return {g.g2().inverse(), g.g1().inverse(), true};
  return {g.g1().inverse(), g.g2().inverse(), false};
}

inline BidiskIsometry power(const BidiskIsometry& g, int n) {
  const BidiskIsometry base = n < 0 ? inverse(g) : g;
  BidiskIsometry out;
  for (int i = 0; i < std::abs(n); ++i) out = compose(out, base);
  return out;
}

/// Product geodesic t -> (f1(a t), f2(b t)) with a^2 + b^2 = 1.
class ProductGeodesic {
 public:
  ProductGeodesic(Geodesic first, Geodesic second, double a, double b)
      : first_(std::move(first)), second_(std::move(second)), a_(a), b_(b) {}

  BidiskPoint at(double t) const { return {first_.at(a_ * t), second_.at(b_ * t)}; }
  BidiskPoint operator()(double t) const { return at(t); }

  const Geodesic& first() const { return first_; }
  const Geodesic& second() const { return second_; }
  double speed_first() const { return a_; }
  double speed_second() const { return b_; }

 private:
  Geodesic first_;
  Geodesic second_;
  double a_;
  double b_;
};

namespace detail {

inline Geodesic factor_geodesic(const BallPoint& x, const BallPoint& y, double d) {
  if (d > 0.0) {
    try {
      return geodesic_through(x, y);
    } catch (const Error&) {
    }
  }
  return {ball_frame(x), Vec2(1.0, 0.0)};
}

}  // namespace detail

/// Unit-speed product geodesic with c(0) = x and c(rho(x,y)) = y.
inline ProductGeodesic product_geodesic_through(const BidiskPoint& x, const BidiskPoint& y) {
  const double d1 = distance(x.first, y.first);
  const double d2 = distance(x.second, y.second);
  const double l = std::hypot(d1, d2);
  if (!(l > 1e-15)) throw Error(ErrorKind::DegenerateGeodesic, "bidisk endpoints coincide");
  return {detail::factor_geodesic(x.first, y.first, d1), detail::factor_geodesic(x.second, y.second, d2), d1 / l,
          d2 / l};
}

/// Unit-speed product geodesic through x with factor directions u1, u2
/// (unit vectors in the frames at x) and factor speeds proportional to (a, b).
inline ProductGeodesic product_geodesic_from(const BidiskPoint& x, const Vec2& u1, const Vec2& u2, double a, double b) {
  const double l = std::hypot(a, b);
  if (!(l > 0.0)) throw Error(ErrorKind::DegenerateGeodesic, "zero speed");
  return {Geodesic(detail::ball_frame(x.first), u1), Geodesic(detail::ball_frame(x.second), u2), a / l, b / l};
}

inline BidiskPoint random_bidisk_point(Rng& rng, double max_radius = 0.9) {
  const BallPoint a = random_ball_point(rng, max_radius);
  return {a, random_ball_point(rng, max_radius)};
}

}  // namespace chb
