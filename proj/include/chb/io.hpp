#pragma once

// JSON, CSV and SVG encodings of points, matrices, clouds and reports.

#include "chb/dirichlet.hpp"
#include "chb/equidistant.hpp"
#include "chb/isometry.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace chb {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportVersion = 1;

// ---------------------------------------------------------------------------
// Reading

namespace io {

[[noreturn]] inline void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

/// Inline JSON when the text starts with '[' or '{', otherwise a file path.
inline Json load_json(const std::string& text_or_path) {
  std::string text = text_or_path;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (text[first] != '[' && text[first] != '{')) {
    std::ifstream in(text_or_path);
    if (!in) parse_error("cannot open " + text_or_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

inline double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

/// A complex number is [re, im]; a bare number is real.
inline cplx complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parse_error("complex numbers are [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

inline Vec2 vec2_from(const Json& j) {
  const Json& v = j.is_object() && j.contains("coords") ? j["coords"] : j;
  if (!v.is_array() || v.size() != 2) parse_error("points of C^2 are [z1, z2]");
  return {complex_from(v[0]), complex_from(v[1])};
}

inline BallPoint ball_point_from(const Json& j) {
  const Vec2 v = vec2_from(j);
  try {
    return {v(0), v(1)};
  } catch (const Error& e) {
    parse_error(e.what());
  }
}

/// Boundary points must be given on the unit sphere.
inline BoundaryPoint boundary_point_from(const Json& j) {
  const Vec2 v = vec2_from(j);
  if (std::abs(v.squaredNorm() - 1.0) > 1e-9) parse_error("boundary point is not on the unit sphere");
  return BoundaryPoint::normalized(v);
}

inline bool is_bidisk_point(const Json& j) { return j.is_object() && j.contains("first") && j.contains("second"); }

inline BidiskPoint bidisk_point_from(const Json& j) {
  if (!is_bidisk_point(j)) parse_error("bidisk points are {\"first\": ..., \"second\": ...}");
  return {ball_point_from(j["first"]), ball_point_from(j["second"])};
}

inline HermitianForm form_from(const Json& j) {
  if (!j.is_string()) parse_error("form must be \"ball\" or \"siegel\"");
  const auto s = j.get<std::string>();
  if (s == "ball") return HermitianForm::ball();
  if (s == "siegel") return HermitianForm::siegel();
  parse_error("unknown form " + s);
}

inline Mat3 matrix_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) parse_error("matrices are 3 rows of 3 entries");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    if (!j[r].is_array() || j[r].size() != 3) parse_error("matrices are 3 rows of 3 entries");
    for (int c = 0; c < 3; ++c) m(r, c) = complex_from(j[r][c]);
  }
  return m;
}

/// {"form": "ball" | "siegel", "matrix": [[...], [...], [...]]}; the form
/// defaults to the ball. Membership is verified (NotUnitaryForForm).
inline SpecialUnitaryElement element_from(const Json& j) {
  if (!j.is_object() || !j.contains("matrix")) parse_error("matrix files need a \"matrix\" entry");
  const HermitianForm form = j.contains("form") ? form_from(j["form"]) : HermitianForm::ball();
  return verify_membership(matrix_from(j["matrix"]), form);
}

inline BidiskIsometry bidisk_isometry_from(const Json& j) {
  if (!j.is_object() || !j.contains("g1") || !j.contains("g2")) parse_error("bidisk isometries need g1 and g2");
  const bool swap = j.contains("swap") && j["swap"].get<bool>();
  return {element_from(j["g1"]), element_from(j["g2"]), swap};
}

// ---------------------------------------------------------------------------
// Writing

inline Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }
inline Json to_json(const Vec2& v) { return Json::array({to_json(v(0)), to_json(v(1))}); }
inline Json to_json(const BallPoint& p) { return to_json(p.coords()); }
inline Json to_json(const BoundaryPoint& p) { return to_json(p.coords()); }
inline Json to_json(const BidiskPoint& x) { return {{"first", to_json(x.first)}, {"second", to_json(x.second)}}; }

inline Json to_json(const Mat3& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 3; ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const SpecialUnitaryElement& g) {
  return {{"form", to_string(g.form().kind())}, {"matrix", to_json(g.matrix())}};
}

inline Json to_json(const BidiskIsometry& g) {
  return {{"g1", to_json(g.g1())}, {"g2", to_json(g.g2())}, {"swap", g.has_swap()}};
}

/// Common header of every emitted artifact.
inline Json header(const std::string& command, std::uint64_t seed, const Json& tolerances) {
  return {{"tool", "chb"},
          {"tool_version", kToolVersion},
          {"report_version", kReportVersion},
          {"command", command},
          {"seed", seed},
          {"tolerances", tolerances}};
}

inline Json classification_json(const SpecialUnitaryElement& g) {
  const IsometryClass cls = classify(g);
  Json out;
  out["label"] = to_string(cls.label);
  out["form"] = to_string(g.form().kind());
  Json eig = Json::array(), mod = Json::array();
  for (int i = 0; i < 3; ++i) {
    eig.push_back(to_json(cls.eigenvalues[static_cast<std::size_t>(i)]));
    mod.push_back(cls.eigenvalue_moduli[static_cast<std::size_t>(i)]);
  }
  out["eigenvalues"] = eig;
  out["eigenvalue_moduli"] = mod;
  out["diagonalizable"] = cls.diagonalizable;
  out["eigenvector_condition"] = cls.eigenvector_condition;
  if (cls.label == IsometryLabel::Loxodromic) {
    const LoxodromicData d = loxodromic_data(g);
    out["fixed_points"] = Json::array({to_json(d.attracting), to_json(d.repelling)});
    out["attracting"] = to_json(d.attracting);
    out["repelling"] = to_json(d.repelling);
    out["translation_length"] = d.translation_length;
  } else if (cls.label == IsometryLabel::Parabolic) {
    Json pts = Json::array();
    for (const auto& p : fixed_boundary_points(g)) pts.push_back(to_json(p));
    out["fixed_points"] = pts;
  } else {
    out["fixed_points"] = Json::array();
  }
  return out;
}

inline Json to_json(const AccumulationReport& r) {
  Json paths = Json::array();
  for (const auto& p : r.paths) {
    Json jp;
    jp["index"] = p.index;
    jp["converged"] = p.converged;
    jp["status"] = p.status;
    if (p.converged) {
      jp["direction_k"] = to_json(*p.direction_k);
      jp["direction_0"] = to_json(*p.direction_0);
      jp["angle"] = p.angle;
      jp["busemann_mismatch_k"] = p.busemann_mismatch_k;
      jp["busemann_mismatch_0"] = p.busemann_mismatch_0;
    }
    Json per_depth = Json::array();
    for (std::size_t i = 0; i < p.samples_k.size(); ++i) {
      Json s;
      s["depth"] = p.samples_k[i].depth;
      s["point"] = to_json(p.samples_k[i].point);
      if (i < p.raw_angles.size()) {
        s["raw_angle"] = p.raw_angles[i];
        s["raw_busemann_mismatch"] = p.raw_busemann_mismatch[i];
      }
      per_depth.push_back(s);
    }
    jp["samples_k"] = per_depth;
    jp["samples_0"] = p.samples_0.size();
    paths.push_back(jp);
  }
  Json out;
  out["a"] = to_json(r.a);
  out["b"] = to_json(r.b);
  out["k"] = r.k;
  out["depths"] = r.depths;
  out["converged"] = r.converged;
  out["max_angle"] = r.max_angle;
  out["max_busemann_mismatch"] = r.max_busemann_mismatch;
  out["paths"] = paths;
  return out;
}

inline Json to_json(const DisjointnessCertificate& c) {
  return {{"margin", c.margin},
          {"grid_margin", c.grid_margin},
          {"optimizer_margin", c.optimizer_margin},
          {"argmin", to_json(c.argmin)},
          {"radius", c.radius},
          {"evaluations", c.evaluations},
          {"certified", c.certified}};
}

inline Json to_json(const PowerSweep& s) {
  Json out{{"power", s.power},
           {"orbit_distance", s.orbit_distance},
           {"samples", s.samples},
           {"invisible", s.invisible},
           {"fraction_invisible", s.fraction_invisible},
           {"weakest_invisibility", s.weakest_invisibility},
           {"full_verdict", s.full_verdict}};
  if (s.precondition_checked || s.e0_samples > 0) {
    out["e0_samples"] = s.e0_samples;
    out["e0_invisible"] = s.e0_invisible;
    out["e0_fraction"] = s.e0_fraction;
    out["e0_verdict"] = s.e0_verdict;
    out["precondition_holds"] = s.precondition_holds;
    out["precondition_margin"] = s.precondition_margin;
    out["lemma_consistent"] = s.lemma_consistent;
  }
  Json v = Json::array();
  for (const auto& p : s.violations) v.push_back(to_json(p));
  out["violations"] = v;
  return out;
}

inline Json to_json(const VerificationReport& r) {
  Json out;
  out["generator"] = to_json(r.generator);
  out["basepoint"] = to_json(r.basepoint);
  out["experimental_basepoint"] = r.experimental_basepoint;
  out["translation_lengths"] = r.translation_lengths;
  out["face_powers"] = r.face_powers;
  out["passed"] = r.passed;
  out["disjointness_margin"] = r.disjointness_margin;
  out["certificate"] = to_json(r.certificate);
  out["control_margin"] = r.control_margin;
  out["collinearity_deviation"] = r.collinearity_deviation;
  Json sweeps = Json::array();
  for (const auto& s : r.sweeps) sweeps.push_back(to_json(s));
  out["invisibility"] = sweeps;
  Json faces = Json::array();
  for (const auto& f : r.faces) {
    faces.push_back({{"power", f.power},
                     {"samples", f.samples},
                     {"max_face_margin", f.max_face_margin},
                     {"min_other_margin", f.min_other_margin},
                     {"passed", f.passed}});
  }
  out["faces"] = faces;
  Json stages = Json::array();
  for (const auto& s : r.stages) stages.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
  out["stages"] = stages;
  out["config"] = {{"power_range", r.config.power_range},
                   {"samples", r.config.samples},
                   {"face_samples", r.config.face_samples},
                   {"restarts", r.config.certify.restarts},
                   {"grid", r.config.certify.grid}};
  return out;
}

// ---------------------------------------------------------------------------
// CSV and SVG

inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline const char* kCloudColumns = "x1_re,x1_im,x2_re,x2_im,y1_re,y1_im,y2_re,y2_im,k,residual";

/// Rows for the cloud, preceded by '#' comment lines.
inline void write_cloud_csv(std::ostream& out, const SampleCloud& cloud, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << kCloudColumns << '\n';
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const auto& p = cloud.points[i];
    const double v[] = {p.first.z1().real(),  p.first.z1().imag(),  p.first.z2().real(),  p.first.z2().imag(),
                        p.second.z1().real(), p.second.z1().imag(), p.second.z2().real(), p.second.z2().imag(),
                        cloud.k_values[i],    cloud.residuals[i]};
    for (std::size_t c = 0; c < 10; ++c) out << (c ? "," : "") << format_g17(v[c]);
    out << '\n';
  }
}

/// Visible samples of every sweep, with their levels and residuals against
/// E(z, g^j z), in the cloud layout. Rows are grouped by power as listed in
/// the returned comments.
inline std::pair<SampleCloud, std::vector<std::string>> counterexample_cloud(const VerificationReport& r) {
  SampleCloud cloud;
  cloud.seed = r.config.seed;
  std::vector<std::string> comments;
  for (const auto& s : r.sweeps) {
    if (s.violations.empty()) continue;
    const BisectorSpec spec(r.basepoint, apply_bidisk(power(r.generator, s.power), r.basepoint));
    comments.push_back("power " + std::to_string(s.power) + ": " + std::to_string(s.violations.size()) + " rows");
    for (const auto& x : s.violations) {
      cloud.points.push_back(x);
      cloud.k_values.push_back(signed_difference(x.first, spec.z().first, spec.w().first));
      cloud.residuals.push_back(bisector_residual(x, spec));
    }
  }
  return {cloud, comments};
}

struct CsvCloud {
  std::vector<std::string> comments;
  std::vector<std::array<double, 10>> rows;
};

inline CsvCloud read_cloud_csv(std::istream& in) {
  CsvCloud out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      out.comments.push_back(line.substr(2));
      continue;
    }
    if (!header) {
      if (line != kCloudColumns) parse_error("unexpected CSV header: " + line);
      header = true;
      continue;
    }
    std::array<double, 10> row{};
    std::stringstream ss(line);
    std::string cell;
    for (std::size_t c = 0; c < 10; ++c) {
      if (!std::getline(ss, cell, ',')) parse_error("short CSV row");
      char* end = nullptr;
      row[c] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') parse_error("bad CSV number: " + cell);
    }
    out.rows.push_back(row);
  }
  return out;
}

/// Scatter plot of 2-D points with fixed-precision coordinates.
inline std::string scatter_svg(const std::vector<std::array<double, 2>>& pts, const std::string& title,
                               const std::string& x_label, const std::string& y_label) {
  const double size = 480.0, pad = 40.0;
  double lo_x = -1.0, hi_x = 1.0, lo_y = -1.0, hi_y = 1.0;
  auto px = [&](double x) { return pad + (x - lo_x) / (hi_x - lo_x) * (size - 2.0 * pad); };
  auto py = [&](double y) { return size - pad - (y - lo_y) / (hi_y - lo_y) * (size - 2.0 * pad); };
  std::ostringstream s;
  char buf[160];
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
  s << "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"#888\"/>\n", px(0.0),
                py(0.0), px(1.0) - px(0.0));
  s << buf;
  s << "<text x=\"240\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  s << "<text x=\"240\" y=\"470\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
  s << "<text x=\"12\" y=\"240\" font-size=\"12\" transform=\"rotate(-90 12 240)\">" << y_label << "</text>\n";
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.5\" fill=\"#1f5fa8\"/>\n", px(p[0]), py(p[1]));
    s << buf;
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace io

}  // namespace chb
