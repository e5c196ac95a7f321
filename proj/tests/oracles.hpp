#pragma once

// Closed forms typed in by hand, kept apart from the catalog implementation so
// tests compare two independent routes.

#include <cmath>

#include "adscurve/pseudo_metric.hpp"

namespace oracle {

using adscurve::Vec4;

inline const double r2 = std::sqrt(2.0);
inline const double r7 = std::sqrt(7.0);

// Timelike example.
inline Vec4 gamma_t(double s) {
  double a = s / r2, b = r2 * s;
  return {r2 * std::cosh(a), std::cosh(b) + r2 * std::sinh(b), r2 * std::sinh(a),
          r2 * std::cosh(b) + std::sinh(b)};
}

inline Vec4 mu_t(double s) {
  double a = s / r2, b = r2 * s;
  return {std::sinh(a), 2 * std::cosh(b) + r2 * std::sinh(b), std::cosh(a),
          r2 * std::cosh(b) + 2 * std::sinh(b)};
}

inline Vec4 evolute_t(double s) {
  double a = s / r2, b = r2 * s;
  return {2 * r2 / r7 * std::cosh(a), (std::cosh(b) + r2 * std::sinh(b)) / r7,
          2 * r2 / r7 * std::sinh(a), (std::sinh(b) + r2 * std::cosh(b)) / r7};
}

// Spacelike example with the cusp at 0.
inline Vec4 gamma_s(double s) {
  return Vec4{std::sqrt(1 + std::pow(s, 4)), std::sqrt(1 + std::pow(s, 6)), s * s, s * s * s} / r2;
}

struct Quad {
  double alpha, ell, m, n;
};

inline Quad curvature_s(double s) {
  double p4 = std::sqrt(1 + std::pow(s, 4)), p6 = std::sqrt(1 + std::pow(s, 6));
  double a = 8 + 18 * s * s + std::pow(s, 6);
  double b = 4 + 9 * s * s + 13 * std::pow(s, 6);
  Quad q;
  q.alpha = s * std::sqrt(b) / (r2 * p4 * p6);
  q.ell = 6 * r2 * s * s * (2 - 3 * s * s - std::pow(s, 6)) / (a * std::sqrt(b));
  q.m = (12 + 16 * std::pow(s, 4) + 21 * std::pow(s, 6) + 25 * std::pow(s, 10)) /
        (r2 * p4 * p6 * std::sqrt(a) * std::sqrt(b));
  q.n = s *
        (-16 + 30 * s * s + 81 * std::pow(s, 4) + 58 * std::pow(s, 6) + 102 * std::pow(s, 8) +
         65 * std::pow(s, 12)) /
        (p4 * p6 * std::sqrt(a) * b);
  return q;
}

inline std::array<double, 3> hopf_s(double s) {
  double p4 = std::sqrt(1 + std::pow(s, 4)), p6 = std::sqrt(1 + std::pow(s, 6));
  return {0.5 * s * s * (p4 + s * p6), 0.5 * s * s * (s * p4 - p6),
          0.5 * (1 + std::pow(s, 4) + std::pow(s, 6))};
}

inline double quadric(double y1, double y2, double y3) { return y1 * y1 + y2 * y2 - y3 * y3; }

}  // namespace oracle
