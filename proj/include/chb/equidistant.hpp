#pragma once

// Equidistant hypersurfaces E(z,w) of the bidisk and their level slices.

#include "chb/bidisk.hpp"
#include "chb/parallel.hpp"
#include "chb/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace chb {

/// d^2(p,a) - d^2(p,b).
inline double signed_difference(const BallPoint& p, const BallPoint& a, const BallPoint& b) {
  const double da = distance(p, a);
  const double db = distance(p, b);
  return (da - db) * (da + db);
}

class BisectorSpec {
 public:
  BisectorSpec(BidiskPoint z, BidiskPoint w) : z_(std::move(z)), w_(std::move(w)) {
    if (!(rho(z_, w_) > 1e-10)) throw Error(ErrorKind::BadParameter, "bisector needs distinct points");
  }
  const BidiskPoint& z() const { return z_; }
  const BidiskPoint& w() const { return w_; }

 private:
  BidiskPoint z_;
  BidiskPoint w_;
};

/// rho^2(x,z) - rho^2(x,w), i.e. the factor-1 level minus the factor-2 level.
inline double bisector_residual(const BidiskPoint& x, const BisectorSpec& spec) {
  return signed_difference(x.first, spec.z().first, spec.w().first) -
         signed_difference(x.second, spec.w().second, spec.z().second);
}

struct LevelSetOptions {
  double ray_cap = 40.0;
  double step = 1.0;
  int max_bisection = 200;
  double residual_target = 1e-9;
  int attempts = 8;
};

namespace detail {

struct LevelLine {
  BallPoint a, b, midpoint;
  double length = 0.0;
  std::optional<Geodesic> line;  // a at 0, b at length; empty when a = b
};

inline LevelLine make_level_line(const BallPoint& a, const BallPoint& b) {
  LevelLine out{a, b, a, distance(a, b), std::nullopt};
  if (out.length < 1e-12) return out;
  out.line = geodesic_through(a, b);
  out.midpoint = out.line->at(0.5 * out.length);
  return out;
}

/// Point at distance r from `center` in a uniformly random direction.
inline BallPoint random_point_near(const BallPoint& center, double r, Rng& rng) {
  return Geodesic(ball_frame(center), random_unit_vector(rng)).at(r);
}

/// Solves d^2(.,a) - d^2(.,b) = k along the broken path that leaves p toward
/// the ideal end beyond b (s > 0) or beyond a (s < 0). Along it the function
/// tends to +inf and -inf respectively, so a bracket exists for every k.
inline std::optional<BallPoint> solve_from(const LevelLine& ll, const BallPoint& p, double k,
                                           const LevelSetOptions& opt) {
  const Geodesic toward_b = geodesic_ray(p, ll.line->forward_end());
  const Geodesic toward_a = geodesic_ray(p, ll.line->backward_end());
  auto point = [&](double s) { return s >= 0.0 ? toward_b.at(s) : toward_a.at(-s); };
  auto h = [&](const BallPoint& x) { return signed_difference(x, ll.a, ll.b) - k; };

  const double h0 = h(p);
  if (h0 == 0.0) return p;
  const double dir = h0 > 0.0 ? -1.0 : 1.0;
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (double s = opt.step; s <= opt.ray_cap + 1e-12; s += opt.step) {
    double hs;
    try {
      hs = h(point(dir * s));
    } catch (const Error&) {
      break;  // the path left the representable ball
    }
    if ((hs > 0.0) != (h0 > 0.0) || hs == 0.0) {
      lo = dir * (s - opt.step);
      hi = dir * s;
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;

  // invariant: sign(h(lo)) = sign(h0), sign(h(hi)) opposite
  BallPoint best = p;
  double best_res = std::abs(h0);
  for (int it = 0; it < opt.max_bisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const BallPoint x = point(mid);
    const double hm = h(x);
    if (std::abs(hm) < best_res) best_res = std::abs(hm), best = x;
    if (hm == 0.0) break;
    ((hm > 0.0) == (h0 > 0.0) ? lo : hi) = mid;
  }
  if (!(best_res < opt.residual_target)) return std::nullopt;
  return best;
}

inline BallPoint sample_level_point(const LevelLine& ll, double k, Rng& rng, bool start_at_midpoint,
                                    const LevelSetOptions& opt) {
  if (!ll.line) {
    if (std::abs(k) > 1e-12) {
      throw Error(ErrorKind::BracketFailure, "k = " + std::to_string(k) + " unattainable for coincident points");
    }
    return random_point_near(ll.a, uniform(rng, 0.0, 2.0), rng);
  }
  const double radius = std::max(ll.length, 1.0);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    const bool centered = start_at_midpoint && attempt == 0;
    const BallPoint p = centered ? ll.midpoint : random_point_near(ll.midpoint, radius * uniform01(rng), rng);
    if (auto x = solve_from(ll, p, k, opt)) return *x;
  }
  throw Error(ErrorKind::BracketFailure, "no bracket for k = " + std::to_string(k));
}

}  // namespace detail

/// n points of S_k(a,b) = {p : d^2(p,a) - d^2(p,b) = k}; point 0 is found
/// from the midpoint of a and b, the others from random starts near it.
inline std::vector<BallPoint> sample_factor_level_set(const BallPoint& a, const BallPoint& b, double k, std::size_t n,
                                                      std::uint64_t seed, const LevelSetOptions& opt = {},
                                                      int threads = 1) {
  if (distance(a, b) < 1e-12) throw Error(ErrorKind::BadParameter, "level sets need distinct points");
  const detail::LevelLine ll = detail::make_level_line(a, b);
  std::vector<std::optional<BallPoint>> out(n);
  parallel_for(n, threads, [&](std::size_t i) {
    Rng rng(substream_seed(seed, i));
    out[i] = detail::sample_level_point(ll, k, rng, i == 0, opt);
  });
  std::vector<BallPoint> pts;
  pts.reserve(n);
  for (auto& p : out) pts.push_back(*p);
  return pts;
}

// ---------------------------------------------------------------------------
// Bisector clouds

struct KDistribution {
  enum class Kind { Normal, Fixed, Uniform };
  Kind kind = Kind::Normal;
  double sigma = -1.0;  // <= 0: rho(z,w)^2
  double clip = 50.0;
  double value = 0.0;
  double lo = -10.0, hi = 10.0;

  static KDistribution fixed(double k) {
    KDistribution d;
    d.kind = Kind::Fixed;
    d.value = k;
    return d;
  }
  static KDistribution uniform_on(double lo, double hi) {
    KDistribution d;
    d.kind = Kind::Uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
  }
};

/// Levels beyond this multiple of the shorter factor distance need points
/// deeper than double precision resolves along the bracket paths.
inline constexpr double kAttainableSlope = 30.0;

struct SampleCloud {
  std::vector<BidiskPoint> points;
  std::vector<double> residuals;
  std::vector<double> k_values;
  std::uint64_t seed = 0;
};

struct SamplingOutcome {
  SampleCloud cloud;  // successful prefix in index order
  std::optional<Error> failure;
  double failed_k = 0.0;
};

inline SamplingOutcome sample_bisector_partial(const BisectorSpec& spec, std::size_t n, const KDistribution& kd,
                                               std::uint64_t seed, const LevelSetOptions& opt = {},
                                               int threads = 1) {
  const detail::LevelLine l1 = detail::make_level_line(spec.z().first, spec.w().first);
  const detail::LevelLine l2 = detail::make_level_line(spec.w().second, spec.z().second);
  const bool degenerate = !l1.line || !l2.line;
  const double sigma = kd.sigma > 0.0 ? kd.sigma : rho_squared(spec.z(), spec.w());
  const double k_bound = std::min(kd.clip, kAttainableSlope * std::min(l1.length, l2.length));

  struct Slot {
    double k = 0.0;
    std::optional<BidiskPoint> point;
    std::optional<Error> error;
  };
  std::vector<Slot> slots(n);
  parallel_for(n, threads, [&](std::size_t i) {
    Rng rng(substream_seed(seed, i));
    double k = 0.0;
    switch (kd.kind) {
      case KDistribution::Kind::Normal: k = std::clamp(sigma * normal(rng), -k_bound, k_bound); break;
      case KDistribution::Kind::Fixed: k = kd.value; break;
      case KDistribution::Kind::Uniform: k = uniform(rng, kd.lo, kd.hi); break;
    }
    if (degenerate && kd.kind == KDistribution::Kind::Normal) k = 0.0;
    slots[i].k = k;
    try {
      const BallPoint x1 = detail::sample_level_point(l1, k, rng, i == 0, opt);
      const BallPoint x2 = detail::sample_level_point(l2, k, rng, i == 0, opt);
      slots[i].point = BidiskPoint{x1, x2};
    } catch (const Error& e) {
      slots[i].error = e;
    }
  });

  SamplingOutcome out;
  out.cloud.seed = seed;
  for (auto& s : slots) {
    if (s.error) {
      out.failure = *s.error;
      out.failed_k = s.k;
      break;
    }
    out.cloud.points.push_back(*s.point);
    out.cloud.k_values.push_back(s.k);
    out.cloud.residuals.push_back(bisector_residual(*s.point, spec));
  }
  return out;
}

inline SampleCloud sample_bisector(const BisectorSpec& spec, std::size_t n, const KDistribution& kd,
                                   std::uint64_t seed, const LevelSetOptions& opt = {}, int threads = 1) {
  SamplingOutcome out = sample_bisector_partial(spec, n, kd, seed, opt, threads);
  if (out.failure) throw *out.failure;
  return std::move(out.cloud);
}

// ---------------------------------------------------------------------------
// Boundary accumulation of level sets

struct AccumulationOptions {
  int paths = 4;
  int degree = 6;
  int scan_points = 512;
  double bend = 3.0;
  double arc_half_width = 0.8;
  double angle_tolerance = 1e-3;
  double busemann_tolerance = 1e-3;
  int threads = 1;
};

struct AccumulationSample {
  double depth;
  double theta;
  BallPoint point;
  double u;  // 1 / (d(x,a) + d(x,b))
};

struct AccumulationPath {
  std::size_t index = 0;
  bool converged = false;
  std::string status;
  std::vector<AccumulationSample> samples_k;
  std::vector<AccumulationSample> samples_0;
  std::optional<BoundaryPoint> direction_k;
  std::optional<BoundaryPoint> direction_0;
  double angle = NAN;                 // between the two extrapolated directions
  double busemann_mismatch_k = NAN;   // |b_xi(a) - b_xi(b)| at the S_k direction
  double busemann_mismatch_0 = NAN;
  std::vector<double> raw_angles;            // raw S_k direction vs S_0 accumulation direction
  std::vector<double> raw_busemann_mismatch; // at the raw S_k directions
};

struct AccumulationReport {
  BallPoint a, b;
  double k = 0.0;
  std::vector<double> depths;
  std::uint64_t seed = 0;
  std::vector<AccumulationPath> paths;
  double max_angle = NAN;
  double max_busemann_mismatch = NAN;
  bool converged = false;

  bool passed(double angle_tol = 1e-3, double busemann_tol = 1e-3) const {
    return converged && max_angle < angle_tol && max_busemann_mismatch < busemann_tol;
  }
};

inline double sphere_angle(const Vec2& x, const Vec2& y) {
  const double c = std::clamp((x.normalized().dot(y.normalized())).real(), -1.0, 1.0);
  return std::acos(c) > 1e-7 ? std::acos(c) : (x.normalized() - y.normalized()).norm();
}

inline double busemann_mismatch(const BallPoint& a, const BallPoint& b, const BoundaryPoint& xi) {
  return std::abs(busemann_closed(a, xi) - busemann_closed(b, xi));
}

namespace detail {

inline void check_sequence(const std::vector<AccumulationSample>& samples, std::size_t needed) {
  if (samples.size() < needed) throw Error(ErrorKind::NonConvergence, "too few samples to extrapolate");
  double deepest = 1.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    deepest = std::min(deepest, samples[i].depth);
    if (i > 0 && !(samples[i].depth < samples[i - 1].depth)) {
      throw Error(ErrorKind::NonConvergence, "sample depths do not decrease");
    }
  }
  if (deepest > 1e-3) throw Error(ErrorKind::NonConvergence, "sequence does not approach the boundary");
}

}  // namespace detail

/// Limit direction on S^3 of a level-set sequence approaching the boundary:
/// each coordinate of x/|x| is fitted by least squares in u = 1/(d_a + d_b),
/// its powers up to `degree`, and the depth, then evaluated at u = depth = 0.
inline BoundaryPoint extrapolate_direction(const std::vector<AccumulationSample>& samples, int degree) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  detail::check_sequence(samples, static_cast<std::size_t>(degree) + 3);
  Eigen::MatrixXd m(n, degree + 2);
  Eigen::MatrixXd rhs(n, 4);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    for (int p = 0; p <= degree; ++p) m(i, p) = std::pow(s.u, p);
    m(i, degree + 1) = s.depth;
    const Vec2 d = s.point.coords().normalized();
    rhs(i, 0) = d(0).real();
    rhs(i, 1) = d(0).imag();
    rhs(i, 2) = d(1).real();
    rhs(i, 3) = d(1).imag();
  }
  const Eigen::MatrixXd coef = m.colPivHouseholderQr().solve(rhs);
  return BoundaryPoint::normalized(cplx(coef(0, 0), coef(0, 1)), cplx(coef(0, 2), coef(0, 3)));
}


/// Limit of the curve parameter theta of a level-`level` sequence. Along the
/// sequence d(x,a) - d(x,b) = level * u exactly, and it tends to a smooth
/// function of theta as the depth vanishes; the limit is the zero of a
/// polynomial fit of level * u in theta (plus a depth term) nearest the
/// deepest sample. For level 0 theta itself is fitted against the depth.
inline double extrapolate_arc_parameter(const std::vector<AccumulationSample>& samples, double level, int degree) {
  detail::check_sequence(samples, static_cast<std::size_t>(degree) + 3);
  const auto n = static_cast<Eigen::Index>(samples.size());
  const double t_ref = samples.back().theta;
  if (level == 0.0) {
    Eigen::MatrixXd m(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& s = samples[static_cast<std::size_t>(i)];
      m(i, 0) = 1.0;
      m(i, 1) = s.depth;
      m(i, 2) = s.depth * s.depth;
      y(i) = s.theta - t_ref;
    }
    return t_ref + m.colPivHouseholderQr().solve(y)(0);
  }
  Eigen::MatrixXd m(n, degree + 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    for (int p = 0; p <= degree; ++p) m(i, p) = std::pow(s.theta - t_ref, p);
    m(i, degree + 1) = s.depth;
    y(i) = level * s.u;
  }
  const Eigen::VectorXd c = m.colPivHouseholderQr().solve(y);
  double t = 0.0;
  for (int it = 0; it < 100; ++it) {
    double value = 0.0, slope = 0.0;
    for (int p = degree; p >= 0; --p) {
      slope = slope * t + value;
      value = value * t + c(p);
    }
    if (!(std::abs(slope) > 0.0)) break;
    const double step = value / slope;
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  if (!std::isfinite(t) || std::abs(t) > 0.5) {
    throw Error(ErrorKind::NonConvergence, "level sequence has no limit near the samples");
  }
  return t_ref + t;
}

namespace detail {

struct SpherePath {
  Vec2 from, to, bend;
  double amplitude;
  Vec2 at(double theta) const {
    return ((1.0 - theta) * from + theta * to + amplitude * theta * (1.0 - theta) * bend).normalized();
  }
};

/// Great-circle arc through `center` with unit tangent `tangent`; theta = 1/2
/// is the center, theta in [0,1] spans +-half_width radians.
struct ArcPath {
  Vec2 center, tangent;
  double half_width;
  Vec2 at(double theta) const {
    const double phi = (2.0 * theta - 1.0) * half_width;
    return std::cos(phi) * center + std::sin(phi) * tangent;
  }
};

inline Eigen::Vector4d to_r4(const Vec2& v) { return {v(0).real(), v(0).imag(), v(1).real(), v(1).imag()}; }
inline Vec2 from_r4(const Eigen::Vector4d& v) { return {cplx(v(0), v(1)), cplx(v(2), v(3))}; }

/// Unit gradient on S^3 of xi -> b_xi(a) - b_xi(b) at xi (central differences).
inline std::optional<Vec2> busemann_gradient(const BallPoint& a, const BallPoint& b, const Vec2& xi) {
  const Eigen::Vector4d c = to_r4(xi);
  auto delta = [&](const Eigen::Vector4d& v) {
    const BoundaryPoint p = BoundaryPoint::normalized(from_r4(v));
    return busemann_closed(a, p) - busemann_closed(b, p);
  };
  std::vector<Eigen::Vector4d> basis;
  for (int i = 0; i < 4 && basis.size() < 3; ++i) {
    Eigen::Vector4d e = Eigen::Vector4d::Unit(i);
    e -= e.dot(c) * c;
    for (const auto& f : basis) e -= e.dot(f) * f;
    if (e.norm() > 1e-3) basis.push_back(e.normalized());
  }
  const double h = 1e-6;
  Eigen::Vector4d grad = Eigen::Vector4d::Zero();
  for (const auto& e : basis) grad += (delta(c + h * e) - delta(c - h * e)) / (2.0 * h) * e;
  if (!(grad.norm() > 1e-8)) return std::nullopt;
  return from_r4(grad.normalized());
}

inline std::optional<double> bisect_theta(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Crossing of g nearest to `anchor`: full grid scan when `scan`, otherwise
/// windows around the anchor growing until they bracket a sign change.
inline std::optional<double> crossing_near(const std::function<double(double)>& g, double anchor, bool scan,
                                           int grid) {
  if (scan) {
    std::vector<double> vals(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i) vals[static_cast<std::size_t>(i)] = g(static_cast<double>(i) / grid);
    std::optional<int> best;
    for (int i = 0; i < grid; ++i) {
      if ((vals[i] > 0.0) != (vals[i + 1] > 0.0)) {
        const double c = (i + 0.5) / grid;
        if (!best || std::abs(c - anchor) < std::abs((*best + 0.5) / grid - anchor)) best = i;
      }
    }
    if (!best) return std::nullopt;
    return bisect_theta(g, static_cast<double>(*best) / grid, static_cast<double>(*best + 1) / grid);
  }
  for (double w = 1e-6; w < 1.0; w *= 4.0) {
    const double lo = std::max(0.0, anchor - w), hi = std::min(1.0, anchor + w);
    const double c = g(anchor);
    if (c == 0.0) return anchor;
    if ((g(lo) > 0.0) != (c > 0.0)) return bisect_theta(g, lo, anchor);
    if ((g(hi) > 0.0) != (c > 0.0)) return bisect_theta(g, anchor, hi);
  }
  return std::nullopt;
}

}  // namespace detail

/// Follows S_k(a,b) and S_0(a,b) toward the boundary along seeded curves on
/// the sphere, one sample per depth, and compares their limit directions.
inline AccumulationReport boundary_accumulation_check(const BallPoint& a, const BallPoint& b, double k,
                                                      const std::vector<double>& depth_schedule, std::uint64_t seed,
                                                      const AccumulationOptions& opt = {}) {
  AccumulationReport report;
  report.a = a;
  report.b = b;
  report.k = k;
  report.depths = depth_schedule;
  report.seed = seed;
  if (distance(a, b) < 1e-12) throw Error(ErrorKind::BadParameter, "accumulation check needs distinct points");
  for (double d : depth_schedule) {
    if (!(d > 0.0 && d < 1.0)) throw Error(ErrorKind::BadParameter, "depths must lie in (0, 1)");
  }

  const Geodesic line = geodesic_through(a, b);
  const BoundaryPoint end_a = line.backward_end(), end_b = line.forward_end();
  report.paths.resize(static_cast<std::size_t>(std::max(opt.paths, 0)));

  parallel_for(report.paths.size(), opt.threads, [&](std::size_t index) {
    AccumulationPath& path = report.paths[index];
    path.index = index;
    Rng rng(substream_seed(seed, index));
    const detail::SpherePath sp{end_a.coords(), end_b.coords(), random_unit_vector(rng), uniform(rng, 0.0, opt.bend)};

    // A random zero xi* of the Busemann difference, located on a bent curve
    // from one end of the line ab to the other; the level sets are then
    // followed along the great circle through xi* in the gradient direction.
    auto delta_b = [&](double th) {
      const BoundaryPoint p = BoundaryPoint::normalized(sp.at(th));
      return busemann_closed(a, p) - busemann_closed(b, p);
    };
    const auto root = detail::crossing_near(delta_b, 0.5, true, opt.scan_points);
    if (!root) {
      path.status = "NonConvergence: no boundary crossing along the search curve";
      return;
    }
    const Vec2 center = sp.at(*root);
    const auto tangent = detail::busemann_gradient(a, b, center);
    if (!tangent) {
      path.status = "NonConvergence: Busemann difference is stationary at the crossing";
      return;
    }
    const detail::ArcPath arc{center, *tangent, opt.arc_half_width};
    const double anchor = 0.5;

    auto follow = [&](double level, std::vector<AccumulationSample>& out) {
      double theta = anchor;
      bool first = true;
      for (double depth : depth_schedule) {
        auto g = [&](double th) {
          const Vec2 c = (1.0 - depth) * arc.at(th);
          return signed_difference(BallPoint(c(0), c(1)), a, b) - level;
        };
        std::optional<double> th;
        try {
          th = detail::crossing_near(g, theta, first, opt.scan_points);
        } catch (const Error&) {
          th.reset();
        }
        if (!th) continue;
        first = false;
        theta = *th;
        const Vec2 c = (1.0 - depth) * arc.at(theta);
        const BallPoint x(c(0), c(1));
        out.push_back({depth, theta, x, 1.0 / (distance(x, a) + distance(x, b))});
      }
    };
    follow(k, path.samples_k);
    follow(0.0, path.samples_0);

    try {
      const double tk = extrapolate_arc_parameter(path.samples_k, k, opt.degree);
      const double t0 = extrapolate_arc_parameter(path.samples_0, 0.0, opt.degree);
      path.direction_k = BoundaryPoint::normalized(arc.at(tk));
      path.direction_0 = BoundaryPoint::normalized(arc.at(t0));
    } catch (const Error& e) {
      path.status = e.what();
      return;
    }
    path.angle = sphere_angle(path.direction_k->coords(), path.direction_0->coords());
    path.busemann_mismatch_k = busemann_mismatch(a, b, *path.direction_k);
    path.busemann_mismatch_0 = busemann_mismatch(a, b, *path.direction_0);
    for (const auto& s : path.samples_k) {
      const BoundaryPoint raw = BoundaryPoint::normalized(s.point.coords());
      path.raw_angles.push_back(sphere_angle(raw.coords(), path.direction_0->coords()));
      path.raw_busemann_mismatch.push_back(busemann_mismatch(a, b, raw));
    }
    path.converged = true;
    path.status = "ok";
  });

  report.converged = !report.paths.empty();
  report.max_angle = 0.0;
  report.max_busemann_mismatch = 0.0;
  for (const auto& p : report.paths) {
    if (!p.converged) {
      report.converged = false;
      continue;
    }
    report.max_angle = std::max(report.max_angle, p.angle);
    report.max_busemann_mismatch = std::max({report.max_busemann_mismatch, p.busemann_mismatch_k, p.busemann_mismatch_0});
  }
  return report;
}

/// Eighth-decade depths from 10^-4 down to 10^-7.
inline std::vector<double> default_depth_schedule() {
  std::vector<double> out;
  for (int q = 32; q <= 56; ++q) out.push_back(std::pow(10.0, -0.125 * q));
  return out;
}

}  // namespace chb
