#pragma once

// Derivative-free minimizers: Nelder-Mead simplex search and golden-section
// search on an interval.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace chb {

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = INFINITY;
  int evaluations = 0;
};

struct NelderMeadOptions {
  double initial_step = 1.0;
  int max_evaluations = 4000;
  double f_tolerance = 1e-15;
  double x_tolerance = 1e-12;
  int max_restarts = 4;  // fresh simplices around the incumbent
};

namespace detail {

// One simplex descent with dimension-adapted coefficients.
inline MinimizeResult nelder_mead_once(const std::function<double(const Eigen::VectorXd&)>& f,
                                       const Eigen::VectorXd& x0, double step, int budget, double ftol, double xtol) {
  const auto n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, beta = 1.0 + 2.0 / dn, gamma = 0.75 - 0.5 / dn, delta = 1.0 - 1.0 / dn;

  MinimizeResult out;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isnan(v) ? INFINITY : v;
  };

  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  values[0] = eval(x0);
  for (Eigen::Index i = 0; i < n; ++i) {
    simplex[static_cast<std::size_t>(i + 1)](i) += step;
    values[static_cast<std::size_t>(i + 1)] = eval(simplex[static_cast<std::size_t>(i + 1)]);
  }
  std::vector<std::size_t> order(simplex.size());

  while (out.evaluations < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

    double spread = 0.0;
    for (const auto& p : simplex) spread = std::max(spread, (p - simplex[best]).cwiseAbs().maxCoeff());
    if (std::abs(values[worst] - values[best]) <= ftol && spread <= xtol) break;
    if (spread <= xtol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= dn;

    const Eigen::VectorXd xr = centroid + alpha * (centroid - simplex[worst]);
    const double fr = eval(xr);
    if (fr < values[best]) {
      const Eigen::VectorXd xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe, values[worst] = fe;
      } else {
        simplex[worst] = xr, values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = xr, values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + gamma * (xr - centroid))
                                       : Eigen::VectorXd(centroid - gamma * (centroid - simplex[worst]));
    const double fc = eval(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = xc, values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + delta * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto it = std::min_element(values.begin(), values.end());
  out.x = simplex[static_cast<std::size_t>(it - values.begin())];
  out.value = *it;
  return out;
}

}  // namespace detail

/// Nelder-Mead from x0; after each convergence a new simplex is built around
/// the best point found, until a restart brings no improvement.
inline MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                                  const NelderMeadOptions& opt = {}) {
  MinimizeResult best;
  best.x = x0;
  double step = opt.initial_step;
  for (int r = 0; r <= opt.max_restarts && best.evaluations < opt.max_evaluations; ++r) {
    const MinimizeResult run = detail::nelder_mead_once(f, best.x, step, opt.max_evaluations - best.evaluations,
                                                        opt.f_tolerance, opt.x_tolerance);
    best.evaluations += run.evaluations;
    const bool improved = run.value < best.value;
    if (improved) {
      best.x = run.x;
      best.value = run.value;
    }
    if (!improved && r > 0) break;
    step *= 0.5;
  }
  return best;
}

struct ScalarMinimum {
  double x;
  double value;
};

/// Golden-section search for a minimum of a unimodal f on [lo, hi].
inline ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                                    double tol = 1e-12, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ScalarMinimum out{0.5 * (a + b), 0.0};
  out.value = f(out.x);
  for (const auto& [x, v] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (v < out.value) out = {x, v};
  }
  return out;
}

}  // namespace chb
