#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace chb {

using cplx = std::complex<double>;
using Vec2 = Eigen::Matrix<cplx, 2, 1>;
using Vec3 = Eigen::Matrix<cplx, 3, 1>;
using Mat3 = Eigen::Matrix<cplx, 3, 3>;

namespace detail {

// Error-free transformations (Knuth TwoSum, FMA TwoProduct).
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

/// 1 - (a^2 + b^2 + c^2 + d^2) evaluated with compensated arithmetic. Near the
/// ideal boundary the naive expression loses every significant digit of the
/// depth; this keeps the result accurate relative to itself.
inline double one_minus_sum_squares(double a, double b, double c, double d) {
  double sum = 1.0;
  double comp = 0.0;
  for (const double x : {a, b, c, d}) {
    const double p = x * x;
    const double pe = std::fma(x, x, -p);
    double s, e;
    two_sum(sum, -p, s, e);
    sum = s;
    comp += e - pe;
  }
  return sum + comp;
}

}  // namespace detail

}  // namespace chb
