// chb: command-line front end for the complex bidisk toolkit.
//
// Exit codes
//   0  success
//   1  usage error
//   2  invalid input (malformed JSON, points outside the ball, z = w, ...)
//   3  matrix does not preserve the declared Hermitian form
//   4  bisector sampling found no bracket (partial CSV retained)
//   5  generator of the wrong isometry class
//   6  dirichlet-verify: disjointness or control stage failed
//   7  dirichlet-verify: invisibility or key-lemma stage failed
//   8  dirichlet-verify: collinearity or face stage failed
//   9  accumulation-check outside tolerance
//  10  numerical failure (non-convergence, residual above tolerance)
//  11  output could not be written, or an internal error

#include "chb/chb.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace chb;

namespace {

enum Exit {
  kOk = 0,
  kUsage = 1,
  kInvalidInput = 2,
  kNotUnitary = 3,
  kBracket = 4,
  kWrongClass = 5,
  kDisjointness = 6,
  kInvisibility = 7,
  kFaces = 8,
  kAccumulation = 9,
  kNumerical = 10,
  kOutput = 11,
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotUnitaryForForm: return kNotUnitary;
    case ErrorKind::BracketFailure: return kBracket;
    case ErrorKind::WrongClass: return kWrongClass;
    case ErrorKind::NonConvergence:
    case ErrorKind::NumericalFailure:
    case ErrorKind::NumericalDomainError: return kNumerical;
    case ErrorKind::InternalError: return kOutput;
    default: return kInvalidInput;
  }
}

struct Common {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
  int threads = 1;
  bool timing = false;
};

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw OutputError("cannot open " + c.out + " for writing");
  f << text;
  if (!f) throw OutputError("failed writing " + c.out);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double tolerance_or(const Common& c, double fallback) {
  if (!c.tol) return fallback;
  if (!(*c.tol >= std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorKind::BadParameter, "tolerance overrides must be at least machine epsilon");
  }
  return *c.tol;
}

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  throw Error(ErrorKind::BadParameter, "format " + c.format + " is not available for this command");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad number in list: " + cell);
    }
  }
  return out;
}

std::optional<IsometryLabel> parse_hint(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "loxodromic") return IsometryLabel::Loxodromic;
  if (s == "elliptic") return IsometryLabel::Elliptic;
  if (s == "parabolic") return IsometryLabel::Parabolic;
  throw Error(ErrorKind::BadParameter, "unknown class hint " + s);
}

using Clock = std::chrono::steady_clock;

void add_timing(const Common& c, Json& j, Clock::time_point start) {
  if (c.timing) j["wall_clock_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string matrix;
  bool random = false;
  std::string hint;
};

int run_classify(const Common& c, const ClassifyArgs& a) {
  require_format(c, {"json"});
  const auto start = Clock::now();
  if (a.matrix.empty() == !a.random) throw Error(ErrorKind::BadParameter, "give exactly one of --matrix or --random");
  const SpecialUnitaryElement g =
      a.random ? random_element(c.seed, parse_hint(a.hint)) : io::element_from(io::load_json(a.matrix));
  Json out = io::header("classify", c.seed, {{"membership", kMembershipTolerance}});
  out["element"] = io::to_json(g);
  out["classification"] = io::classification_json(g);
  add_timing(c, out, start);
  emit(c, dump(out));
  return kOk;
}

struct PairArgs {
  std::string x, y;
};

int run_distance(const Common& c, const PairArgs& a) {
  require_format(c, {"json"});
  const auto start = Clock::now();
  const Json jx = io::load_json(a.x), jy = io::load_json(a.y);
  Json out = io::header("distance", c.seed, Json::object());
  if (io::is_bidisk_point(jx) || io::is_bidisk_point(jy)) {
    const BidiskPoint x = io::bidisk_point_from(jx), y = io::bidisk_point_from(jy);
    out["space"] = "bidisk";
    out["x"] = io::to_json(x);
    out["y"] = io::to_json(y);
    out["distance"] = rho(x, y);
    out["factor_distances"] = {distance(x.first, y.first), distance(x.second, y.second)};
  } else {
    const BallPoint x = io::ball_point_from(jx), y = io::ball_point_from(jy);
    out["space"] = "ball";
    out["x"] = io::to_json(x);
    out["y"] = io::to_json(y);
    out["distance"] = distance(x, y);
  }
  add_timing(c, out, start);
  emit(c, dump(out));
  return kOk;
}

struct GeodesicArgs {
  std::string x, y;
  int samples = 11;
  double extend = 0.0;
};

int run_geodesic(const Common& c, const GeodesicArgs& a) {
  require_format(c, {"json", "csv", "svg"});
  const auto start = Clock::now();
  if (a.samples < 2) throw Error(ErrorKind::BadParameter, "need at least 2 samples");
  if (!(a.extend >= 0.0)) throw Error(ErrorKind::BadParameter, "extension must be nonnegative");
  const Json jx = io::load_json(a.x), jy = io::load_json(a.y);
  const bool bidisk = io::is_bidisk_point(jx) || io::is_bidisk_point(jy);

  std::vector<double> ts;
  std::vector<std::vector<double>> rows;  // coordinates per sample
  double length = 0.0;
  auto coords_of = [](const BallPoint& p) {
    return std::vector<double>{p.z1().real(), p.z1().imag(), p.z2().real(), p.z2().imag()};
  };
  if (bidisk) {
    const BidiskPoint x = io::bidisk_point_from(jx), y = io::bidisk_point_from(jy);
    const ProductGeodesic g = product_geodesic_through(x, y);
    length = rho(x, y);
    for (int i = 0; i < a.samples; ++i) {
      const double t = -a.extend + (length + 2.0 * a.extend) * i / (a.samples - 1);
      const BidiskPoint p = g.at(t);
      auto r = coords_of(p.first);
      const auto s = coords_of(p.second);
      r.insert(r.end(), s.begin(), s.end());
      ts.push_back(t);
      rows.push_back(r);
    }
  } else {
    const BallPoint x = io::ball_point_from(jx), y = io::ball_point_from(jy);
    const Geodesic g = geodesic_through(x, y);
    length = distance(x, y);
    for (int i = 0; i < a.samples; ++i) {
      const double t = -a.extend + (length + 2.0 * a.extend) * i / (a.samples - 1);
      ts.push_back(t);
      rows.push_back(coords_of(g.at(t)));
    }
  }

  if (c.format == "csv") {
    std::ostringstream s;
    s << "# tool chb " << kToolVersion << "\n# report_version " << kReportVersion << "\n# seed " << c.seed
      << "\n# command geodesic\n";
    s << (bidisk ? "t,x1_re,x1_im,x2_re,x2_im,y1_re,y1_im,y2_re,y2_im\n" : "t,z1_re,z1_im,z2_re,z2_im\n");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      s << io::format_g17(ts[i]);
      for (double v : rows[i]) s << ',' << io::format_g17(v);
      s << '\n';
    }
    emit(c, s.str());
    return kOk;
  }
  if (c.format == "svg") {
    std::vector<std::array<double, 2>> pts;
    for (const auto& r : rows) pts.push_back({r[0], r[1]});
    emit(c, io::scatter_svg(pts, "geodesic, seed " + std::to_string(c.seed), "Re z1", "Im z1"));
    return kOk;
  }
  Json out = io::header("geodesic", c.seed, Json::object());
  out["space"] = bidisk ? "bidisk" : "ball";
  out["length"] = length;
  Json pts = Json::array();
  for (std::size_t i = 0; i < ts.size(); ++i) pts.push_back({{"t", ts[i]}, {"coords", rows[i]}});
  out["points"] = pts;
  add_timing(c, out, start);
  emit(c, dump(out));
  return kOk;
}

struct BusemannArgs {
  std::string z, xi;
  double closeness = 1e-6;
  std::string depths = "1e-4,1e-5,1e-6,1e-7,1e-8";
};

int run_busemann(const Common& c, const BusemannArgs& a) {
  require_format(c, {"json"});
  const auto start = Clock::now();
  const BallPoint z = io::ball_point_from(io::load_json(a.z));
  const BoundaryPoint xi = io::boundary_point_from(io::load_json(a.xi));
  const double agreement = tolerance_or(c, 1e-3);
  const double closed = busemann_closed(z, xi);
  const double limit = busemann_limit(z, xi, a.closeness);

  Json curve = Json::array();
  double previous = INFINITY;
  bool shrinking = true;
  for (double d : parse_list(a.depths)) {
    if (!(d > 0.0 && d < 1.0)) throw Error(ErrorKind::BadParameter, "depths must lie in (0, 1)");
    // x_n on the radius toward xi with 1 - |x_n| = d
    const BallPoint xn((1.0 - d) * xi.z1(), (1.0 - d) * xi.z2());
    const double r = boundary_asymptotic_residual(z, xi, xn);
    shrinking = shrinking && std::abs(r) < previous;
    previous = std::abs(r);
    curve.push_back({{"depth", d}, {"residual", r}});
  }

  Json out = io::header("busemann", c.seed, {{"agreement", agreement}});
  out["z"] = io::to_json(z);
  out["xi"] = io::to_json(xi);
  out["closed_form"] = closed;
  out["limit_estimate"] = limit;
  out["closeness"] = a.closeness;
  out["agreement"] = std::abs(closed - limit) < agreement;
  out["asymptotic_offset"] = kAsymptoticOffset;
  out["residual_curve"] = curve;
  out["residual_shrinking"] = shrinking;
  add_timing(c, out, start);
  emit(c, dump(out));
  return kOk;
}

struct BisectorArgs {
  std::string z, w;
  std::size_t n = 1000;
  std::string k_mode = "normal";
  double k = 0.0;
  double sigma = -1.0;
  double k_lo = -10.0, k_hi = 10.0;
  std::string svg_x = "x1_re", svg_y = "x1_im";
};

int column_index(const std::string& name) {
  static const char* names[] = {"x1_re", "x1_im", "x2_re", "x2_im", "y1_re", "y1_im", "y2_re", "y2_im"};
  for (int i = 0; i < 8; ++i) {
    if (name == names[i]) return i;
  }
  throw Error(ErrorKind::BadParameter, "unknown projection column " + name);
}

int run_bisector(const Common& c, const BisectorArgs& a) {
  require_format(c, {"csv", "json", "svg"});
  const auto start = Clock::now();
  const double tol = tolerance_or(c, 2e-9);
  const BidiskPoint z = io::bidisk_point_from(io::load_json(a.z)), w = io::bidisk_point_from(io::load_json(a.w));
  const BisectorSpec spec(z, w);
  KDistribution kd;
  if (a.k_mode == "fixed") {
    kd = KDistribution::fixed(a.k);
  } else if (a.k_mode == "uniform") {
    kd = KDistribution::uniform_on(a.k_lo, a.k_hi);
  } else if (a.k_mode == "normal") {
    kd.sigma = a.sigma;
  } else {
    throw Error(ErrorKind::BadParameter, "k mode must be normal, fixed or uniform");
  }
  const SamplingOutcome res = sample_bisector_partial(spec, a.n, kd, c.seed, {}, c.threads);
  const SampleCloud& cloud = res.cloud;
  double worst = 0.0;
  for (double r : cloud.residuals) worst = std::max(worst, std::abs(r));
  const int code = res.failure ? kBracket : (worst < tol ? kOk : kNumerical);

  if (c.format == "csv") {
    std::vector<std::string> comments = {std::string("tool chb ") + kToolVersion,
                                         "report_version " + std::to_string(kReportVersion),
                                         "command bisector-sample",
                                         "seed " + std::to_string(c.seed),
                                         "residual_tolerance " + io::format_g17(tol),
                                         "z " + io::to_json(z).dump(),
                                         "w " + io::to_json(w).dump(),
                                         "k_mode " + a.k_mode};
    std::ostringstream s;
    io::write_cloud_csv(s, cloud, comments);
    if (res.failure) s << "# failure: " << res.failure->what() << " (k = " << io::format_g17(res.failed_k) << ")\n";
    emit(c, s.str());
    return code;
  }
  if (c.format == "svg") {
    const int ix = column_index(a.svg_x), iy = column_index(a.svg_y);
    std::vector<std::array<double, 2>> pts;
    for (const auto& p : cloud.points) {
      const double v[] = {p.first.z1().real(),  p.first.z1().imag(),  p.first.z2().real(),  p.first.z2().imag(),
                          p.second.z1().real(), p.second.z1().imag(), p.second.z2().real(), p.second.z2().imag()};
      pts.push_back({v[ix], v[iy]});
    }
    emit(c, io::scatter_svg(pts, "bisector sample, seed " + std::to_string(c.seed), a.svg_x, a.svg_y));
    return code;
  }
  Json out = io::header("bisector-sample", c.seed, {{"residual", tol}});
  out["z"] = io::to_json(z);
  out["w"] = io::to_json(w);
  out["requested"] = a.n;
  out["returned"] = cloud.points.size();
  out["max_abs_residual"] = worst;
  Json pts = Json::array();
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    pts.push_back({{"point", io::to_json(cloud.points[i])}, {"k", cloud.k_values[i]}, {"residual", cloud.residuals[i]}});
  }
  out["points"] = pts;
  if (res.failure) out["failure"] = {{"message", res.failure->what()}, {"k", res.failed_k}};
  add_timing(c, out, start);
  emit(c, dump(out));
  return code;
}

struct VerifyArgs {
  std::string g1, g2;
  bool random_pair = false;
  int power_range = 6;
  int samples = 500;
  int face_samples = 200;
  int restarts = 50;
  bool no_lemma = false;
  std::string basepoint;
  std::string counterexamples;
};

int run_verify(const Common& c, const VerifyArgs& a) {
  require_format(c, {"json"});
  const auto start = Clock::now();
  if (a.random_pair == !(a.g1.empty() && a.g2.empty())) {
    throw Error(ErrorKind::BadParameter, "give --g1 and --g2, or --random-pair");
  }
  if (!a.random_pair && (a.g1.empty() || a.g2.empty())) throw Error(ErrorKind::BadParameter, "give both --g1 and --g2");
  const SpecialUnitaryElement g1 = a.random_pair ? random_element(substream_seed(c.seed, 11), IsometryLabel::Loxodromic)
                                                 : io::element_from(io::load_json(a.g1));
  const SpecialUnitaryElement g2 = a.random_pair ? random_element(substream_seed(c.seed, 12), IsometryLabel::Loxodromic)
                                                 : io::element_from(io::load_json(a.g2));
  VerifyConfig cfg;
  cfg.seed = c.seed;
  cfg.power_range = a.power_range;
  cfg.samples = a.samples;
  cfg.face_samples = a.face_samples;
  cfg.certify.restarts = a.restarts;
  cfg.certify.threshold = tolerance_or(c, cfg.certify.threshold);
  cfg.check_lemma = !a.no_lemma;
  cfg.threads = c.threads;
  if (!a.basepoint.empty()) cfg.basepoint = io::bidisk_point_from(io::load_json(a.basepoint));

  const VerificationReport report = two_face_verify(g1, g2, cfg);
  Json out = io::header("dirichlet-verify", c.seed,
                        {{"disjointness_threshold", cfg.certify.threshold},
                         {"control", cfg.control_tolerance},
                         {"collinearity", cfg.collinearity_tolerance},
                         {"face", cfg.face_tolerance},
                         {"visibility_band", kVisibilityBand}});
  out["report"] = io::to_json(report);
  add_timing(c, out, start);
  emit(c, dump(out));

  if (!a.counterexamples.empty()) {
    const auto [cloud, notes] = io::counterexample_cloud(report);
    std::vector<std::string> comments = {"tool chb " + std::string(kToolVersion),
                                         "report_version " + std::to_string(kReportVersion),
                                         "command dirichlet-verify", "seed " + std::to_string(c.seed)};
    comments.insert(comments.end(), notes.begin(), notes.end());
    std::ostringstream csv;
    io::write_cloud_csv(csv, cloud, comments);
    Common to_file = c;
    to_file.out = a.counterexamples;
    emit(to_file, csv.str());
  }

  if (report.experimental_basepoint) return kOk;  // off-axis runs carry no verdict
  if (report.passed) return kOk;
  auto failed = [&](const char* name) {
    const StageStatus* s = report.stage(name);
    return s && !s->passed;
  };
  if (failed("disjointness") || failed("control")) return kDisjointness;
  if (failed("invisibility") || failed("lemma")) return kInvisibility;
  return kFaces;
}

struct AccumulationArgs {
  std::string a, b;
  double k = 0.0;
  int paths = 4;
  int degree = 6;
  std::string depths;
};

int run_accumulation(const Common& c, const AccumulationArgs& a) {
  require_format(c, {"json"});
  const auto start = Clock::now();
  const BallPoint pa = io::ball_point_from(io::load_json(a.a)), pb = io::ball_point_from(io::load_json(a.b));
  AccumulationOptions opt;
  opt.paths = a.paths;
  opt.degree = a.degree;
  opt.threads = c.threads;
  opt.angle_tolerance = opt.busemann_tolerance = tolerance_or(c, 1e-3);
  const std::vector<double> depths = a.depths.empty() ? default_depth_schedule() : parse_list(a.depths);
  const AccumulationReport report = boundary_accumulation_check(pa, pb, a.k, depths, c.seed, opt);
  const bool passed = report.passed(opt.angle_tolerance, opt.busemann_tolerance);
  Json out = io::header("accumulation-check", c.seed,
                        {{"angle", opt.angle_tolerance}, {"busemann", opt.busemann_tolerance}});
  out["report"] = io::to_json(report);
  out["passed"] = passed;
  add_timing(c, out, start);
  emit(c, dump(out));
  if (!report.converged) return kNumerical;
  return passed ? kOk : kAccumulation;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "seed of all random draws");
  sub->add_option("--tol", c.tol, "tolerance override for the command's main check");
  sub->add_option("--out", c.out, "output path (default: standard output)");
  sub->add_option("--format", c.format, "json, csv or svg");
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 1024));
  sub->add_flag("--timing", c.timing, "include wall-clock time in JSON output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chb: computations in the complex hyperbolic plane and the complex bidisk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "classify an SU(2,1) matrix");
  classify_cmd->add_option("--matrix", classify_args.matrix, "matrix JSON (file or inline)");
  classify_cmd->add_flag("--random", classify_args.random, "classify a seeded random element");
  classify_cmd->add_option("--hint", classify_args.hint, "class of the random element");
  add_common(classify_cmd, common);

  PairArgs distance_args;
  auto* distance_cmd = app.add_subcommand("distance", "distance in the ball or the bidisk");
  distance_cmd->add_option("--x", distance_args.x, "point JSON")->required();
  distance_cmd->add_option("--y", distance_args.y, "point JSON")->required();
  add_common(distance_cmd, common);

  GeodesicArgs geodesic_args;
  auto* geodesic_cmd = app.add_subcommand("geodesic", "sample the geodesic through two points");
  geodesic_cmd->add_option("--x", geodesic_args.x, "start point JSON")->required();
  geodesic_cmd->add_option("--y", geodesic_args.y, "end point JSON")->required();
  geodesic_cmd->add_option("--samples", geodesic_args.samples, "number of samples");
  geodesic_cmd->add_option("--extend", geodesic_args.extend, "extra length beyond both ends");
  add_common(geodesic_cmd, common);

  BusemannArgs busemann_args;
  auto* busemann_cmd = app.add_subcommand("busemann", "Busemann function and boundary asymptotics");
  busemann_cmd->add_option("--z", busemann_args.z, "interior point JSON")->required();
  busemann_cmd->add_option("--xi", busemann_args.xi, "boundary point JSON")->required();
  busemann_cmd->add_option("--closeness", busemann_args.closeness, "depth of the limit estimate");
  busemann_cmd->add_option("--depths", busemann_args.depths, "comma-separated depths of the residual curve");
  add_common(busemann_cmd, common);

  BisectorArgs bisector_args;
  auto* bisector_cmd = app.add_subcommand("bisector-sample", "sample the equidistant hypersurface E(z,w)");
  bisector_cmd->add_option("--z", bisector_args.z, "bidisk point JSON")->required();
  bisector_cmd->add_option("--w", bisector_args.w, "bidisk point JSON")->required();
  bisector_cmd->add_option("--n", bisector_args.n, "number of samples");
  bisector_cmd->add_option("--k-mode", bisector_args.k_mode, "normal, fixed or uniform");
  bisector_cmd->add_option("--k", bisector_args.k, "level for --k-mode fixed");
  bisector_cmd->add_option("--sigma", bisector_args.sigma, "deviation for --k-mode normal");
  bisector_cmd->add_option("--k-lo", bisector_args.k_lo, "lower level for --k-mode uniform");
  bisector_cmd->add_option("--k-hi", bisector_args.k_hi, "upper level for --k-mode uniform");
  bisector_cmd->add_option("--svg-x", bisector_args.svg_x, "column on the horizontal axis of the SVG");
  bisector_cmd->add_option("--svg-y", bisector_args.svg_y, "column on the vertical axis of the SVG");
  add_common(bisector_cmd, common);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("dirichlet-verify", "two-face verification for a loxodromic pair");
  verify_cmd->add_option("--g1", verify_args.g1, "first generator matrix JSON");
  verify_cmd->add_option("--g2", verify_args.g2, "second generator matrix JSON");
  verify_cmd->add_flag("--random-pair", verify_args.random_pair, "use a seeded random loxodromic pair");
  verify_cmd->add_option("--power-range", verify_args.power_range, "largest |j| tested");
  verify_cmd->add_option("--samples", verify_args.samples, "samples per bisector in the invisibility sweep");
  verify_cmd->add_option("--face-samples", verify_args.face_samples, "samples per face");
  verify_cmd->add_option("--restarts", verify_args.restarts, "optimizer restarts for disjointness");
  verify_cmd->add_flag("--no-lemma", verify_args.no_lemma, "skip the E_0 slice comparison");
  verify_cmd->add_option("--basepoint", verify_args.basepoint, "experimental: off-axis basepoint JSON");
  verify_cmd->add_option("--counterexamples", verify_args.counterexamples,
                         "CSV path for sampled points that were visible");
  add_common(verify_cmd, common);

  AccumulationArgs acc_args;
  auto* acc_cmd = app.add_subcommand("accumulation-check", "boundary accumulation of level sets S_k(a,b)");
  acc_cmd->add_option("--a", acc_args.a, "point JSON")->required();
  acc_cmd->add_option("--b", acc_args.b, "point JSON")->required();
  acc_cmd->add_option("--k", acc_args.k, "level");
  acc_cmd->add_option("--paths", acc_args.paths, "number of boundary paths");
  acc_cmd->add_option("--degree", acc_args.degree, "degree of the extrapolation fit");
  acc_cmd->add_option("--depths", acc_args.depths, "comma-separated decreasing depths");
  add_common(acc_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  // point clouds default to CSV
  if (*bisector_cmd && bisector_cmd->get_option("--format")->count() == 0) common.format = "csv";

  try {
    if (common.tol) tolerance_or(common, 0.0);
    if (*classify_cmd) return run_classify(common, classify_args);
    if (*distance_cmd) return run_distance(common, distance_args);
    if (*geodesic_cmd) return run_geodesic(common, geodesic_args);
    if (*busemann_cmd) return run_busemann(common, busemann_args);
    if (*bisector_cmd) return run_bisector(common, bisector_args);
    if (*verify_cmd) return run_verify(common, verify_args);
    if (*acc_cmd) return run_accumulation(common, acc_args);
  } catch (const Error& e) {
    std::cerr << "chb: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const OutputError& e) {
    std::cerr << "chb: " << e.what() << '\n';
    return kOutput;
  } catch (const std::exception& e) {
    std::cerr << "chb: internal error: " << e.what() << '\n';
    return kOutput;
  }
  return kUsage;
}
