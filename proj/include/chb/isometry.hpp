#pragma once

// SU(2,1) elements: membership, action, classification, fixed points, axes.

#include "chb/hermitian.hpp"
#include "chb/random.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace chb {

enum class IsometryLabel { Loxodromic, Elliptic, Parabolic };

inline const char* to_string(IsometryLabel label) {
  switch (label) {
    case IsometryLabel::Loxodromic: return "loxodromic";
    case IsometryLabel::Elliptic: return "elliptic";
    case IsometryLabel::Parabolic: return "parabolic";
  }
  return "unknown";
}

inline constexpr double kMembershipTolerance = 1e-10;

class SpecialUnitaryElement;
SpecialUnitaryElement verify_membership(const Mat3& matrix, const HermitianForm& form);

class SpecialUnitaryElement {
 public:
  static SpecialUnitaryElement identity(const HermitianForm& form = HermitianForm::ball()) {
    return {Mat3::Identity(), form, cplx(1.0)};
  }

  const Mat3& matrix() const { return matrix_; }
  const HermitianForm& form() const { return form_; }
  cplx det() const { return det_; }

  SpecialUnitaryElement inverse() const { return {form_.inverse_of_preserving(matrix_), form_, std::conj(det_)}; }

  friend SpecialUnitaryElement operator*(const SpecialUnitaryElement& a, const SpecialUnitaryElement& b) {
    if (!(a.form_ == b.form_)) throw Error(ErrorKind::FormMismatch, "composing elements of different forms");
    return {a.matrix_ * b.matrix_, a.form_, a.det_ * b.det_};
  }

  SpecialUnitaryElement power(int n) const {
    SpecialUnitaryElement base = n < 0 ? inverse() : *this;
    SpecialUnitaryElement out = identity(form_);
    for (int i = 0; i < std::abs(n); ++i) out = out * base;
    return out;
  }

 private:
  friend SpecialUnitaryElement verify_membership(const Mat3&, const HermitianForm&);
  SpecialUnitaryElement(const Mat3& m, HermitianForm form, cplx det) : matrix_(m), form_(std::move(form)), det_(det) {}

  Mat3 matrix_;
  HermitianForm form_;
  cplx det_;
};

/// Scales the matrix by a cube root of its determinant and checks A*JA = J.
inline SpecialUnitaryElement verify_membership(const Mat3& matrix, const HermitianForm& form) {
  const cplx det = matrix.determinant();
  if (!(std::abs(det) > 0.0) || !std::isfinite(std::abs(det))) {
    throw Error(ErrorKind::NotUnitaryForForm, "matrix is singular");
  }
  const Mat3 a = matrix / std::pow(det, 1.0 / 3.0);
  const Mat3& j = form.matrix();
  const double err = (a.adjoint() * j * a - j).cwiseAbs().maxCoeff();
  if (!(err < kMembershipTolerance)) {
    throw Error(ErrorKind::NotUnitaryForForm, "||A*JA - J||_max = " + std::to_string(err));
  }
  return {a, form, a.determinant()};
}

// ---------------------------------------------------------------------------
// Siegel <-> ball congruence

namespace detail {

/// C with C* J_ball C = J_siegel; C is its own inverse. It sends the Siegel
/// fixed points [1,0,0] and [0,0,1] to the ball boundary points (1,0), (-1,0).
inline const Mat3& siegel_to_ball() {
  static const Mat3 c = [] {
    const double s = 1.0 / std::sqrt(2.0);
    Mat3 m;
    m << s, 0, s, 0, 1, 0, s, 0, -s;
    const double err =
        (m.adjoint() * HermitianForm::ball().matrix() * m - HermitianForm::siegel().matrix()).cwiseAbs().maxCoeff();
    if (err > 1e-15) throw Error(ErrorKind::InternalError, "Siegel/ball congruence check failed");
    return m;
  }();
  return c;
}

/// Vector in ball coordinates for a vector given in coordinates of `form`.
inline Vec3 to_ball_coords(const Vec3& v, const HermitianForm& form) {
  switch (form.kind()) {
    case FormKind::Ball: return v;
    case FormKind::Siegel: return siegel_to_ball() * v;
    case FormKind::Custom: break;
  }
  throw Error(ErrorKind::UnsupportedConversion, "no congruence to the ball form for a custom form");
}

}  // namespace detail

/// C g C^{-1} where C* J_to C = J_from.
inline SpecialUnitaryElement change_form(const SpecialUnitaryElement& g, const HermitianForm& from,
                                         const HermitianForm& to) {
  if (!(g.form() == from)) throw Error(ErrorKind::FormMismatch, "element does not preserve the source form");
  if (from == to) return g;
  const bool ball_siegel = (from.kind() == FormKind::Siegel && to.kind() == FormKind::Ball) ||
                           (from.kind() == FormKind::Ball && to.kind() == FormKind::Siegel);
  if (!ball_siegel) throw Error(ErrorKind::UnsupportedConversion, "only ball <-> Siegel conversions exist");
  const Mat3& c = detail::siegel_to_ball();
  return verify_membership(c * g.matrix() * c, to);
}

inline SpecialUnitaryElement to_ball_form(const SpecialUnitaryElement& g) {
  return change_form(g, g.form(), HermitianForm::ball());
}

// ---------------------------------------------------------------------------
// Action

inline BallPoint apply(const SpecialUnitaryElement& g, const BallPoint& p) {
  if (g.form().kind() != FormKind::Ball) throw Error(ErrorKind::FormMismatch, "apply needs a ball-form element");
  try {
    return detail::apply_ball(g.matrix(), p);
  } catch (const Error& e) {
    throw Error(ErrorKind::InternalError, std::string("image left the ball: ") + e.what());
  }
}

inline BoundaryPoint apply(const SpecialUnitaryElement& g, const BoundaryPoint& p) {
  if (g.form().kind() != FormKind::Ball) throw Error(ErrorKind::FormMismatch, "apply needs a ball-form element");
  return detail::apply_ball(g.matrix(), p);
}

/// g with g(0,0) = p.
inline SpecialUnitaryElement frame_at(const BallPoint& p) {
  return verify_membership(detail::ball_frame(p), HermitianForm::ball());
}

// ---------------------------------------------------------------------------
// Classification

struct EigenCluster {
  cplx eigenvalue;
  int algebraic_multiplicity = 0;
  std::vector<Vec3> eigenvectors;  // basis of the (numerical) eigenspace
  std::vector<SignClass> sign_classes;
};

struct IsometryClass {
  IsometryLabel label = IsometryLabel::Elliptic;
  std::array<double, 3> eigenvalue_moduli{};  // descending
  std::array<cplx, 3> eigenvalues{};          // in the order of the moduli
  std::vector<EigenCluster> clusters;
  double eigenvector_condition = 1.0;
  bool diagonalizable = true;
};

namespace detail {

inline constexpr double kClusterTolerance = 1e-5;
inline constexpr double kNullTolerance = 1e-7;
inline constexpr double kConditionLimit = 1e8;
inline constexpr double kLoxodromicThreshold = 1e-8;

/// Sign classes of an eigenspace: signs of the form restricted to it.
inline std::vector<SignClass> eigenspace_signs(const std::vector<Vec3>& basis, const HermitianForm& form) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = form.pair(basis[j], basis[i]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  std::vector<SignClass> out;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double ev = es.eigenvalues()(i);
    out.push_back(ev < -1e-9 ? SignClass::Negative : ev > 1e-9 ? SignClass::Positive : SignClass::Null);
  }
  return out;
}

}  // namespace detail

inline IsometryClass classify(const SpecialUnitaryElement& g) {
  const Mat3& a = g.matrix();
  Eigen::ComplexEigenSolver<Mat3> es(a, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigenvalue solver failed");
  const auto& ev = es.eigenvalues();
  if (!ev.allFinite()) throw Error(ErrorKind::NumericalFailure, "non-finite eigenvalues");

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return std::abs(ev(i)) > std::abs(ev(j)); });

  IsometryClass out;
  for (int i = 0; i < 3; ++i) {
    out.eigenvalues[i] = ev(order[i]);
    out.eigenvalue_moduli[i] = std::abs(ev(order[i]));
  }

  // Group nearly equal eigenvalues.
  std::array<int, 3> cluster_of{0, 1, 2};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(out.eigenvalues[i] - out.eigenvalues[j]) < detail::kClusterTolerance) {
        const int from = cluster_of[j], to = cluster_of[i];
        for (auto& c : cluster_of) {
          if (c == from) c = to;
        }
      }
    }
  }

  const double scale = std::max(1.0, a.norm());
  std::vector<Vec3> all_vectors;
  for (int id = 0; id < 3; ++id) {
    std::vector<int> members;
    for (int i = 0; i < 3; ++i) {
      if (cluster_of[i] == id) members.push_back(i);
    }
    if (members.empty()) continue;
    EigenCluster cl;
    cl.algebraic_multiplicity = static_cast<int>(members.size());
    for (int i : members) cl.eigenvalue += out.eigenvalues[i];
    cl.eigenvalue /= static_cast<double>(members.size());

    const Mat3 m = a - cl.eigenvalue * Mat3::Identity();
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int null_dim = 0;
    for (int i = 0; i < 3; ++i) {
      if (sv(i) < detail::kNullTolerance * scale) ++null_dim;
    }
    null_dim = std::max(null_dim, 1);
    if (null_dim < cl.algebraic_multiplicity) out.diagonalizable = false;
    for (int i = 3 - std::min(null_dim, cl.algebraic_multiplicity); i < 3; ++i) {
      cl.eigenvectors.push_back(svd.matrixV().col(i));
      all_vectors.push_back(svd.matrixV().col(i));
    }
    cl.sign_classes = detail::eigenspace_signs(cl.eigenvectors, g.form());
    out.clusters.push_back(std::move(cl));
  }

  if (out.diagonalizable && all_vectors.size() == 3) {
    Mat3 v;
    for (int i = 0; i < 3; ++i) v.col(i) = all_vectors[i];
    Eigen::JacobiSVD<Mat3> svd(v);
    const auto& sv = svd.singularValues();
    out.eigenvector_condition = sv(2) > 0.0 ? sv(0) / sv(2) : INFINITY;
  } else {
    out.eigenvector_condition = INFINITY;
  }

  // Near-Jordan blocks produce spurious modulus splitting, so the defect test
  // runs before the modulus test.
  bool has_negative = false;
  for (const auto& cl : out.clusters) {
    for (auto s : cl.sign_classes) has_negative = has_negative || s == SignClass::Negative;
  }
  if (!out.diagonalizable || out.eigenvector_condition > detail::kConditionLimit) {
    out.label = IsometryLabel::Parabolic;
  } else if (out.eigenvalue_moduli[0] > 1.0 + detail::kLoxodromicThreshold) {
    out.label = IsometryLabel::Loxodromic;
  } else if (has_negative) {
    out.label = IsometryLabel::Elliptic;
  } else {
    out.label = IsometryLabel::Parabolic;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed points, axis, translation length

struct LoxodromicData {
  BoundaryPoint attracting;
  BoundaryPoint repelling;
  double translation_length;
  cplx attracting_eigenvalue;
  cplx repelling_eigenvalue;
};

namespace detail {

inline Vec3 eigenvector_for(const Mat3& a, cplx lambda) {
  Eigen::JacobiSVD<Mat3> svd(a - lambda * Mat3::Identity(), Eigen::ComputeFullV);
  return svd.matrixV().col(2);
}

inline BoundaryPoint null_vector_to_boundary(const Vec3& v, const HermitianForm& form) {
  return dehomogenize_boundary(to_ball_coords(v, form));
}

}  // namespace detail

/// Boundary fixed points; for a loxodromic the attracting point comes first.
inline std::vector<BoundaryPoint> fixed_boundary_points(const SpecialUnitaryElement& g) {
  const IsometryClass cls = classify(g);
  std::vector<BoundaryPoint> out;
  if (cls.label == IsometryLabel::Elliptic) throw Error(ErrorKind::WrongClass, "elliptic elements fix an interior point");
  if (cls.label == IsometryLabel::Loxodromic) {
    out.push_back(detail::null_vector_to_boundary(detail::eigenvector_for(g.matrix(), cls.eigenvalues[0]), g.form()));
    out.push_back(detail::null_vector_to_boundary(detail::eigenvector_for(g.matrix(), cls.eigenvalues[2]), g.form()));
    return out;
  }
  for (const auto& cl : cls.clusters) {
    for (std::size_t i = 0; i < cl.eigenvectors.size(); ++i) {
      const Vec3& v = cl.eigenvectors[i];
      if (std::abs(g.form().pair(v, v)) < 1e-8 * v.squaredNorm()) {
        out.push_back(detail::null_vector_to_boundary(v, g.form()));
        return out;
      }
    }
  }
  throw Error(ErrorKind::NumericalFailure, "no null eigenvector found for a parabolic element");
}

inline LoxodromicData loxodromic_data(const SpecialUnitaryElement& g) {
  const IsometryClass cls = classify(g);
  if (cls.label != IsometryLabel::Loxodromic) {
    throw Error(ErrorKind::WrongClass, std::string("element is ") + to_string(cls.label));
  }
  const auto pts = fixed_boundary_points(g);
  const double r = cls.eigenvalue_moduli[0];
  return {pts[0], pts[1], 2.0 * std::log(r), cls.eigenvalues[0], cls.eigenvalues[2]};
}

/// Unit-speed axis from the repelling to the attracting fixed point.
inline Geodesic axis(const SpecialUnitaryElement& g) {
  const LoxodromicData data = loxodromic_data(g);
  return geodesic_between(data.repelling, data.attracting);
}

/// d(p, g p) for p on the axis.
inline double translation_length(const SpecialUnitaryElement& g) {
  const SpecialUnitaryElement b = to_ball_form(g);
  const BallPoint p = axis(g).at(0.0);
  return distance(p, apply(b, p));
}

// ---------------------------------------------------------------------------
// Random elements

namespace detail {

/// exp of a random element of su(2,1) with respect to the ball form.
inline Mat3 random_group_matrix(Rng& rng, double scale) {
  const Mat3 j = HermitianForm::ball().matrix();
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m(r, c) = scale * complex_normal(rng);
  }
  // X = J A with A anti-Hermitian satisfies X* J + J X = 0.
  const Mat3 anti = 0.5 * (m - m.adjoint());
  Mat3 x = j * anti;
  x -= (x.trace() / 3.0) * Mat3::Identity();
  return x.exp();
}

}  // namespace detail

inline SpecialUnitaryElement random_element(std::uint64_t seed,
                                            std::optional<IsometryLabel> hint = std::nullopt) {
  Rng rng(seed);
  const HermitianForm ball = HermitianForm::ball();
  const Mat3 h = detail::random_group_matrix(rng, 0.5);
  if (!hint) return verify_membership(h, ball);

  const Mat3& c = detail::siegel_to_ball();
  Mat3 core = Mat3::Identity();
  switch (*hint) {
    case IsometryLabel::Loxodromic: {
      const double modulus = uniform(rng, 1.1, 3.0);
      const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      const cplx lambda = std::polar(modulus, phase);
      Mat3 d = Mat3::Zero();
      d(0, 0) = lambda;
      d(1, 1) = 1.0;
      d(2, 2) = 1.0 / std::conj(lambda);
      core = c * d * c;
      break;
    }
    case IsometryLabel::Elliptic: {
      const double alpha = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      const double beta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
      core = Mat3::Zero();
      core(0, 0) = std::polar(1.0, alpha);
      core(1, 1) = std::polar(1.0, beta);
      core(2, 2) = std::polar(1.0, -alpha - beta);
      break;
    }
    case IsometryLabel::Parabolic: {
      // Heisenberg translation in Siegel coordinates.
      const cplx a = complex_normal(rng);
      const double b = normal(rng);
      Mat3 t;
      t << 1.0, a, cplx(-0.5 * std::norm(a), b), 0.0, 1.0, -std::conj(a), 0.0, 0.0, 1.0;
      core = c * t * c;
      break;
    }
  }
  const Mat3 hinv = ball.inverse_of_preserving(h);
  return verify_membership(h * core * hinv, ball);
}

}  // namespace chb
