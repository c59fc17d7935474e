#pragma once

// Visibility, Dirichlet-domain membership and the two-face verification for
// cyclic groups generated by a pair of loxodromic elements acting on the
// bidisk.

#include "chb/bidisk.hpp"
#include "chb/equidistant.hpp"
#include "chb/optimize.hpp"
#include "chb/parallel.hpp"
#include "chb/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chb {

/// Margins in (-band, 0) count as equality.
inline constexpr double kVisibilityBand = 1e-10;

enum class VisibilitySide { None, Gamma, GammaInverse };

inline const char* to_string(VisibilitySide side) {
  switch (side) {
    case VisibilitySide::None: return "none";
    case VisibilitySide::Gamma: return "gamma";
    case VisibilitySide::GammaInverse: return "gamma_inverse";
  }
  return "unknown";
}

struct VisibilityVerdict {
  bool visible = true;
  double margin_g = 0.0;     // rho(y, g x) - rho(y, x)
  double margin_ginv = 0.0;  // rho(y, g^-1 x) - rho(y, x)
  VisibilitySide failed = VisibilitySide::None;

  /// Positive exactly when y is invisible: the larger of the two violations.
  double invisibility() const { return -std::min(margin_g, margin_ginv); }
};

/// Verdict against precomputed orbit points gx = g(x) and ginvx = g^-1(x).
inline VisibilityVerdict visibility_from_orbit(const BidiskPoint& y, const BidiskPoint& x, const BidiskPoint& gx,
                                               const BidiskPoint& ginvx) {
  VisibilityVerdict v;
  const double base = rho(y, x);
  v.margin_g = rho(y, gx) - base;
  v.margin_ginv = rho(y, ginvx) - base;
  const bool ok_g = v.margin_g > -kVisibilityBand;
  const bool ok_ginv = v.margin_ginv > -kVisibilityBand;
  v.visible = ok_g && ok_ginv;
  if (!v.visible) v.failed = v.margin_g <= v.margin_ginv ? VisibilitySide::Gamma : VisibilitySide::GammaInverse;
  return v;
}

inline VisibilityVerdict is_visible(const BidiskPoint& y, const BidiskPoint& x, const BidiskIsometry& g) {
  return visibility_from_orbit(y, x, apply_bidisk(g, x), apply_bidisk(inverse(g), x));
}

inline bool acts_trivially(const BidiskIsometry& g) {
  if (g.has_swap()) return false;
  for (const auto* m : {&g.g1().matrix(), &g.g2().matrix()}) {
    const Mat3 scaled = *m / (*m)(0, 0);
    if ((scaled - Mat3::Identity()).norm() > 1e-12) return false;
  }
  return true;
}

/// The orbit points g^j(z) for 0 < |j| <= n.
inline std::map<int, BidiskPoint> orbit_points(const BidiskPoint& z, const BidiskIsometry& g, int n) {
  std::map<int, BidiskPoint> out;
  const BidiskIsometry ginv = inverse(g);
  BidiskPoint up = z, down = z;
  for (int j = 1; j <= n; ++j) {
    up = apply_bidisk(g, up);
    down = apply_bidisk(ginv, down);
    out[j] = up;
    out[-j] = down;
  }
  return out;
}

struct MembershipResult {
  bool member = true;
  int minimizing_power = 0;
  double min_margin = INFINITY;
  std::vector<std::pair<int, double>> margins;  // rho(x, g^j z) - rho(x, z), by j
};

inline MembershipResult membership_from_orbit(const BidiskPoint& x, const BidiskPoint& z,
                                              const std::map<int, BidiskPoint>& orbit) {
  MembershipResult out;
  const double base = rho(x, z);
  for (const auto& [j, p] : orbit) {
    const double m = rho(x, p) - base;
    out.margins.emplace_back(j, m);
    if (m < out.min_margin) {
      out.min_margin = m;
      out.minimizing_power = j;
    }
  }
  out.member = out.min_margin > -kVisibilityBand;
  return out;
}

/// Membership of x in the Dirichlet domain of <g> centred at z, with the
/// group truncated to the powers 0 < |j| <= n.
inline MembershipResult dirichlet_membership(const BidiskPoint& x, const BidiskPoint& z, const BidiskIsometry& g,
                                             int n) {
  if (n < 1) throw Error(ErrorKind::BadParameter, "power range must be at least 1");
  if (acts_trivially(g)) throw Error(ErrorKind::DegenerateGroup, "generator is the identity");
  return membership_from_orbit(x, z, orbit_points(z, g, n));
}

// ---------------------------------------------------------------------------
// Disjointness of two bisectors through a common point

struct CertifyOptions {
  int restarts = 50;
  int grid = 9;  // points per axis of the scan over the 4-dimensional slice
  double threshold = 1e-4;
  int max_evaluations = 4000;  // per restart
  int threads = 1;
};

struct DisjointnessCertificate {
  double margin = INFINITY;  // smallest F found by either search
  double grid_margin = INFINITY;
  double optimizer_margin = INFINITY;
  BidiskPoint argmin;
  double radius = 0.0;
  long evaluations = 0;
  bool certified = false;
};

namespace detail {

// Points of a product of geodesic balls of radius r about z, from tangent
// coordinates v in R^8 (two C^2 vectors in the frames at z1 and z2).
struct TangentChart {
  Mat3 frame1, frame2;
  double radius;

  static BallPoint exp_at(const Mat3& frame, const Vec2& v, double radius) {
    const double len = v.norm();
    if (len == 0.0) return dehomogenize(Vec3(frame.col(2)));
    return Geodesic(frame, v / len).at(std::min(len, radius));
  }

  BidiskPoint at(const Eigen::VectorXd& v) const {
    return {exp_at(frame1, Vec2(cplx(v(0), v(1)), cplx(v(2), v(3))), radius),
            exp_at(frame2, Vec2(cplx(v(4), v(5)), cplx(v(6), v(7))), radius)};
  }
};

// Unit tangent at z pointing to p in the frame of z, or e1 when p = z.
inline Vec2 tangent_toward(const Mat3& frame, const BallPoint& z, const BallPoint& p) {
  if (distance(z, p) < 1e-12) return Vec2(1.0, 0.0);
  const Vec2 v = apply_ball(ball_inverse(frame), p).coords();
  return v.normalized();
}

}  // namespace detail

/// Searches for a common point of E(z,p) and E(z,q) by minimizing
/// F(x) = max(|rho^2(x,z) - rho^2(x,p)|, |rho^2(x,z) - rho^2(x,q)|) over the
/// product of balls of radius 2 max(rho(z,p), rho(z,q)) about z: a grid scan
/// of the slice of complex multiples of the directions toward p, then seeded
/// Nelder-Mead restarts over the full 8 real dimensions.
inline DisjointnessCertificate certify_disjoint_points(const BidiskPoint& z, const BidiskPoint& p,
                                                       const BidiskPoint& q, std::uint64_t seed,
                                                       const CertifyOptions& opt = {}) {
  const double radius = 2.0 * std::max(rho(z, p), rho(z, q));
  if (!(radius > 1e-12)) throw Error(ErrorKind::BadParameter, "search box is degenerate");
  if (opt.grid < 1 || opt.restarts < 0) throw Error(ErrorKind::BadParameter, "bad search sizes");

  const detail::TangentChart chart{detail::ball_frame(z.first), detail::ball_frame(z.second), radius};
  auto objective = [&](const BidiskPoint& x) {
    const double base = rho_squared(x, z);
    return std::max(std::abs(base - rho_squared(x, p)), std::abs(base - rho_squared(x, q)));
  };
  auto f = [&](const Eigen::VectorXd& v) {
    try {
      return objective(chart.at(v));
    } catch (const Error&) {
      return static_cast<double>(INFINITY);
    }
  };

  DisjointnessCertificate cert;
  cert.radius = radius;

  const BidiskPoint toward = rho(z, p) > 1e-12 ? p : q;
  const Vec2 w1 = detail::tangent_toward(chart.frame1, z.first, toward.first);
  const Vec2 w2 = detail::tangent_toward(chart.frame2, z.second, toward.second);
  const int g = opt.grid;
  auto coordinate = [&](int i) { return g == 1 ? 0.0 : radius * (2.0 * i / (g - 1) - 1.0); };
  const std::size_t grid_size = static_cast<std::size_t>(g) * g * g * g;
  std::vector<double> grid_values(grid_size);
  std::vector<Eigen::VectorXd> grid_points(grid_size);
  parallel_for(grid_size, opt.threads, [&](std::size_t idx) {
    std::size_t r = idx;
    const int i0 = static_cast<int>(r % g); r /= g;
    const int i1 = static_cast<int>(r % g); r /= g;
    const int i2 = static_cast<int>(r % g); r /= g;
    const int i3 = static_cast<int>(r);
    const Vec2 v1 = cplx(coordinate(i0), coordinate(i1)) * w1;
    const Vec2 v2 = cplx(coordinate(i2), coordinate(i3)) * w2;
    Eigen::VectorXd v(8);
    v << v1(0).real(), v1(0).imag(), v1(1).real(), v1(1).imag(), v2(0).real(), v2(0).imag(), v2(1).real(),
        v2(1).imag();
    grid_points[idx] = v;
    grid_values[idx] = f(v);
  });
  Eigen::VectorXd best_v = Eigen::VectorXd::Zero(8);
  for (std::size_t i = 0; i < grid_size; ++i) {
    if (grid_values[i] < cert.grid_margin) {
      cert.grid_margin = grid_values[i];
      best_v = grid_points[i];
    }
  }
  cert.evaluations = static_cast<long>(grid_size);

  std::vector<MinimizeResult> runs(static_cast<std::size_t>(opt.restarts));
  parallel_for(runs.size(), opt.threads, [&](std::size_t i) {
    Rng rng(substream_seed(seed, i));
    Eigen::VectorXd x0(8);
    const Vec2 u1 = random_unit_vector(rng), u2 = random_unit_vector(rng);
    const double r1 = radius * uniform01(rng), r2 = radius * uniform01(rng);
    x0 << r1 * u1(0).real(), r1 * u1(0).imag(), r1 * u1(1).real(), r1 * u1(1).imag(), r2 * u2(0).real(),
        r2 * u2(0).imag(), r2 * u2(1).real(), r2 * u2(1).imag();
    NelderMeadOptions nm;
    nm.initial_step = 0.25 * radius;
    nm.max_evaluations = opt.max_evaluations;
    runs[i] = nelder_mead(f, x0, nm);
  });
  for (const auto& run : runs) {
    cert.evaluations += run.evaluations;
    if (run.value < cert.optimizer_margin) {
      cert.optimizer_margin = run.value;
      if (run.value < cert.grid_margin) best_v = run.x;
    }
  }
  cert.margin = std::min(cert.grid_margin, cert.optimizer_margin);
  cert.argmin = chart.at(best_v);
  cert.certified = cert.margin > opt.threshold;
  return cert;
}

/// E(z, g z) against E(z, g^-1 z).
inline DisjointnessCertificate certify_disjoint(const BidiskPoint& z, const BidiskIsometry& g, std::uint64_t seed,
                                                const CertifyOptions& opt = {}) {
  if (g.has_swap()) throw Error(ErrorKind::BadParameter, "swap-type generators are not supported");
  return certify_disjoint_points(z, apply_bidisk(g, z), apply_bidisk(inverse(g), z), seed, opt);
}

// ---------------------------------------------------------------------------
// Metric spheres against geodesics

/// Parameters in [t0, t1] where t -> rho(c(t), center) - radius changes sign,
/// located on a grid of the given step and refined by bisection.
inline std::vector<double> sphere_geodesic_crossings(const BidiskPoint& center, double radius,
                                                     const ProductGeodesic& c, double t0, double t1,
                                                     double step = 1e-3) {
  if (!(radius > 0.0)) throw Error(ErrorKind::BadParameter, "radius must be positive");
  if (!(t1 > t0) || !(step > 0.0)) throw Error(ErrorKind::BadParameter, "empty parameter range");
  auto h = [&](double t) { return rho(c.at(t), center) - radius; };
  std::vector<double> out;
  const auto n = static_cast<long>(std::ceil((t1 - t0) / step));
  double prev_t = t0, prev = h(t0);
  for (long i = 1; i <= n; ++i) {
    const double t = std::min(t0 + static_cast<double>(i) * step, t1);
    const double v = h(t);
    if (v == 0.0) {
      out.push_back(t);
    } else if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) {
      double lo = prev_t, hi = t;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((h(mid) > 0.0) == (prev > 0.0) ? lo : hi) = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev = v;
  }
  return out;
}

inline std::size_t sphere_geodesic_intersections(const BidiskPoint& center, double radius, const ProductGeodesic& c,
                                                 double t0, double t1, double step = 1e-3) {
  return sphere_geodesic_crossings(center, radius, c, t0, t1, step).size();
}

/// Distance from z to the product geodesic through g^-1(z) and g(z),
/// minimized over the segment between them.
inline double orbit_collinearity_deviation(const BidiskPoint& z, const BidiskIsometry& g) {
  const BidiskPoint before = apply_bidisk(inverse(g), z), after = apply_bidisk(g, z);
  const ProductGeodesic c = product_geodesic_through(before, after);
  const double l = rho(before, after);
  return golden_section([&](double t) { return rho(c.at(t), z); }, 0.0, l, 1e-10).value;
}

// ---------------------------------------------------------------------------
// Invisibility of the bisectors E(z, g^j z)

struct SweepOptions {
  int samples = 500;
  bool check_lemma = true;
  CertifyOptions precondition{};
  LevelSetOptions level{};
  KDistribution k{};
  int threads = 1;
};

struct PowerSweep {
  int power = 0;
  double orbit_distance = 0.0;  // rho(z, g^j z)
  std::size_t samples = 0;
  std::size_t invisible = 0;
  double fraction_invisible = 0.0;
  double weakest_invisibility = INFINITY;  // min over samples of VisibilityVerdict::invisibility
  std::size_t e0_samples = 0;
  std::size_t e0_invisible = 0;
  double e0_fraction = 0.0;
  bool full_verdict = false;  // every sampled point invisible
  bool e0_verdict = false;
  bool precondition_checked = false;
  bool precondition_holds = false;
  double precondition_margin = INFINITY;
  bool lemma_consistent = true;
  std::vector<BidiskPoint> violations;  // sampled visible points
};

namespace detail {

struct VisibilityCount {
  std::size_t invisible = 0;
  double weakest = INFINITY;
  std::vector<BidiskPoint> visible;
};

inline VisibilityCount count_invisible(const std::vector<BidiskPoint>& pts, const BidiskPoint& z,
                                       const BidiskPoint& gz, const BidiskPoint& ginvz, int threads) {
  std::vector<VisibilityVerdict> verdicts(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) { verdicts[i] = visibility_from_orbit(pts[i], z, gz, ginvz); });
  VisibilityCount out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.weakest = std::min(out.weakest, verdicts[i].invisibility());
    if (verdicts[i].visible) {
      out.visible.push_back(pts[i]);
    } else {
      ++out.invisible;
    }
  }
  return out;
}

}  // namespace detail

/// Samples E(z, g^j z) for each power and tests every point for
/// g-visibility to z; with check_lemma, also samples the k = 0 slice E_0,
/// certifies the disjointness hypotheses E(z, g^j z) against E(z, g^{+-1} z)
/// and records whether the slice verdict predicts the full verdict.
inline std::vector<PowerSweep> invisibility_sweep(const BidiskPoint& z, const BidiskIsometry& g,
                                                  const std::vector<int>& powers, std::uint64_t seed,
                                                  const SweepOptions& opt = {}) {
  const BidiskPoint gz = apply_bidisk(g, z), ginvz = apply_bidisk(inverse(g), z);
  std::vector<PowerSweep> out;
  for (std::size_t idx = 0; idx < powers.size(); ++idx) {
    const int j = powers[idx];
    if (j == 0) throw Error(ErrorKind::BadParameter, "power 0 has no bisector");
    const std::uint64_t base = substream_seed(seed, 0x5eedULL + idx);
    PowerSweep s;
    s.power = j;
    const BidiskPoint target = apply_bidisk(power(g, j), z);
    s.orbit_distance = rho(z, target);
    const BisectorSpec spec(z, target);

    const SampleCloud cloud =
        sample_bisector(spec, static_cast<std::size_t>(opt.samples), opt.k, substream_seed(base, 1), opt.level,
                        opt.threads);
    const auto full = detail::count_invisible(cloud.points, z, gz, ginvz, opt.threads);
    s.samples = cloud.points.size();
    s.invisible = full.invisible;
    s.fraction_invisible = s.samples ? static_cast<double>(s.invisible) / static_cast<double>(s.samples) : 0.0;
    s.weakest_invisibility = full.weakest;
    s.full_verdict = s.invisible == s.samples;
    s.violations = full.visible;

    if (opt.check_lemma) {
      const SampleCloud slice = sample_bisector(spec, static_cast<std::size_t>(opt.samples), KDistribution::fixed(0.0),
                                                substream_seed(base, 2), opt.level, opt.threads);
      const auto e0 = detail::count_invisible(slice.points, z, gz, ginvz, opt.threads);
      s.e0_samples = slice.points.size();
      s.e0_invisible = e0.invisible;
      s.e0_fraction = s.e0_samples ? static_cast<double>(s.e0_invisible) / static_cast<double>(s.e0_samples) : 0.0;
      s.e0_verdict = s.e0_invisible == s.e0_samples;

      if (std::abs(j) != 1) {
        CertifyOptions copt = opt.precondition;
        copt.threads = opt.threads;
        const auto c_plus = certify_disjoint_points(z, target, gz, substream_seed(base, 3), copt);
        const auto c_minus = certify_disjoint_points(z, target, ginvz, substream_seed(base, 4), copt);
        s.precondition_checked = true;
        s.precondition_margin = std::min(c_plus.margin, c_minus.margin);
        s.precondition_holds = c_plus.certified && c_minus.certified;
      }
      s.lemma_consistent = !s.precondition_holds || s.e0_verdict == s.full_verdict;
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end verification

struct VerifyConfig {
  int power_range = 6;
  int samples = 500;       // per bisector in the invisibility sweep
  int face_samples = 200;  // per face in the face confirmation
  std::uint64_t seed = 0;
  CertifyOptions certify{};
  double collinearity_tolerance = 1e-7;
  double control_tolerance = 1e-8;
  double face_tolerance = 1e-8;  // |membership margin| on the face itself
  bool check_lemma = true;
  int threads = 1;
  std::optional<BidiskPoint> basepoint;  // off-axis override, experimental
};

struct StageStatus {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FaceCheck {
  int power = 0;
  std::size_t samples = 0;
  double max_face_margin = 0.0;         // max |rho(x, g^j z) - rho(x, z)| at the face's own power
  double min_other_margin = INFINITY;  // over the other powers
  bool passed = false;
};

struct VerificationReport {
  BidiskIsometry generator;
  BidiskPoint basepoint;
  bool experimental_basepoint = false;
  std::vector<double> translation_lengths;
  std::vector<int> face_powers;
  double disjointness_margin = 0.0;
  DisjointnessCertificate certificate;
  double control_margin = INFINITY;
  double collinearity_deviation = INFINITY;
  std::vector<PowerSweep> sweeps;
  std::vector<FaceCheck> faces;
  std::vector<StageStatus> stages;
  VerifyConfig config;
  bool passed = false;

  const StageStatus* stage(const std::string& name) const {
    for (const auto& s : stages) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }
};

/// Default basepoint: on each axis, the point closest to the origin.
inline BidiskPoint axis_basepoint(const SpecialUnitaryElement& g1, const SpecialUnitaryElement& g2) {
  return {axis(to_ball_form(g1)).at(0.0), axis(to_ball_form(g2)).at(0.0)};
}

inline VerificationReport two_face_verify(const SpecialUnitaryElement& g1, const SpecialUnitaryElement& g2,
                                          const VerifyConfig& config = {}) {
  for (const auto* g : {&g1, &g2}) {
    const IsometryClass cls = classify(*g);
    if (cls.label != IsometryLabel::Loxodromic) {
      throw Error(ErrorKind::WrongClass, std::string("generator is ") + to_string(cls.label));
    }
  }
  if (config.power_range < 2) throw Error(ErrorKind::BadParameter, "power range must be at least 2");

  VerificationReport report;
  report.config = config;
  report.generator = BidiskIsometry(g1, g2, false);
  const BidiskIsometry& gamma = report.generator;
  report.translation_lengths = {translation_length(report.generator.g1()), translation_length(report.generator.g2())};
  report.experimental_basepoint = config.basepoint.has_value();
  report.basepoint = config.basepoint ? *config.basepoint : axis_basepoint(g1, g2);
  report.stages.push_back({"classification", true, "both generators loxodromic"});
  const BidiskPoint& z = report.basepoint;
  const BidiskPoint gz = apply_bidisk(gamma, z), ginvz = apply_bidisk(inverse(gamma), z);

  auto run_stage = [&](const std::string& name, auto&& body) {
    StageStatus st{name, false, ""};
    try {
      body(st);
    } catch (const Error& e) {
      st.passed = false;
      st.detail = e.what();
    }
    report.stages.push_back(std::move(st));
  };

  run_stage("collinearity", [&](StageStatus& st) {
    report.collinearity_deviation = orbit_collinearity_deviation(z, gamma);
    st.passed = report.collinearity_deviation < config.collinearity_tolerance;
    st.detail = "deviation " + std::to_string(report.collinearity_deviation);
  });

  CertifyOptions copt = config.certify;
  copt.threads = config.threads;
  run_stage("disjointness", [&](StageStatus& st) {
    report.certificate = certify_disjoint(z, gamma, substream_seed(config.seed, 1), copt);
    report.disjointness_margin = report.certificate.margin;
    st.passed = report.certificate.certified;
    st.detail = "margin " + std::to_string(report.disjointness_margin);
  });

  run_stage("control", [&](StageStatus& st) {
    report.control_margin = certify_disjoint_points(z, gz, gz, substream_seed(config.seed, 2), copt).margin;
    st.passed = report.control_margin < config.control_tolerance;
    st.detail = "same-bisector margin " + std::to_string(report.control_margin);
  });

  std::vector<int> powers;
  for (int j = 2; j <= config.power_range; ++j) {
    powers.push_back(j);
    powers.push_back(-j);
  }
  run_stage("invisibility", [&](StageStatus& st) {
    SweepOptions sopt;
    sopt.samples = config.samples;
    sopt.check_lemma = config.check_lemma;
    sopt.precondition = copt;
    sopt.threads = config.threads;
    report.sweeps = invisibility_sweep(z, gamma, powers, substream_seed(config.seed, 3), sopt);
    std::size_t bad = 0;
    for (const auto& s : report.sweeps) bad += s.samples - s.invisible;
    st.passed = bad == 0;
    st.detail = std::to_string(bad) + " visible samples";
  });

  if (config.check_lemma) {
    run_stage("lemma", [&](StageStatus& st) {
      std::size_t discrepancies = 0, unchecked = 0;
      for (const auto& s : report.sweeps) {
        if (!s.lemma_consistent) ++discrepancies;
        if (!s.precondition_holds) ++unchecked;
      }
      st.passed = !report.sweeps.empty() && discrepancies == 0 && unchecked == 0;
      st.detail = std::to_string(discrepancies) + " discrepancies, " + std::to_string(unchecked) +
                  " powers without the disjointness hypothesis";
    });
  }

  run_stage("faces", [&](StageStatus& st) {
    const auto orbit = orbit_points(z, gamma, config.power_range);
    for (int j : {1, -1}) {
      FaceCheck fc;
      fc.power = j;
      const BisectorSpec spec(z, j == 1 ? gz : ginvz);
      const SampleCloud cloud = sample_bisector(spec, static_cast<std::size_t>(config.face_samples), KDistribution{},
                                                substream_seed(config.seed, j == 1 ? 4 : 5), {}, config.threads);
      std::vector<MembershipResult> results(cloud.points.size());
      parallel_for(cloud.points.size(), config.threads,
                   [&](std::size_t i) { results[i] = membership_from_orbit(cloud.points[i], z, orbit); });
      fc.samples = cloud.points.size();
      for (const auto& r : results) {
        for (const auto& [p, m] : r.margins) {
          if (p == j) {
            fc.max_face_margin = std::max(fc.max_face_margin, std::abs(m));
          } else {
            fc.min_other_margin = std::min(fc.min_other_margin, m);
          }
        }
      }
      fc.passed = fc.max_face_margin < config.face_tolerance && fc.min_other_margin > -kVisibilityBand;
      report.faces.push_back(fc);
    }
    st.passed = report.faces.size() == 2 && report.faces[0].passed && report.faces[1].passed;
    st.detail = "face margins " + std::to_string(report.faces[0].max_face_margin) + ", " +
                std::to_string(report.faces[1].max_face_margin);
  });

  // Faces: the two confirmed bisectors plus any sampled bisector that is not
  // entirely invisible.
  for (const auto& fc : report.faces) {
    if (fc.passed) report.face_powers.push_back(fc.power);
  }
  for (const auto& s : report.sweeps) {
    if (!s.full_verdict) report.face_powers.push_back(s.power);
  }
  std::sort(report.face_powers.begin(), report.face_powers.end());

  report.passed = report.face_powers == std::vector<int>{-1, 1};
  for (const auto& st : report.stages) report.passed = report.passed && st.passed;
  return report;
}

}  // namespace chb
