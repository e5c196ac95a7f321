#include "adscurve/pseudo_metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adscurve/error.hpp"

namespace adscurve {

Vec4::Vec4(double u1, double u2, double u3, double u4) : u_{u1, u2, u3, u4} {
  for (double c : u_)
    if (!std::isfinite(c)) throw Error(ErrorCode::NonFinite, "vector component is not finite");
}

Vec4 Vec4::basis(std::size_t i) {
  std::array<double, 4> u{};
  u.at(i) = 1.0;
  return Vec4(u);
}

double inner(const Vec4& a, const Vec4& b) { return detail::inner_of(a, b); }

double euclidean_norm(const Vec4& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

double pseudo_norm(const Vec4& a) { return std::sqrt(std::abs(inner(a, a))); }

double max_abs_diff(const Vec4& a, const Vec4& b) {
  double m = 0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Vec4 triple_product(const Vec4& u, const Vec4& v, const Vec4& w) {
  return Vec4(detail::triple_of<double>(u, v, w));
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  // Laplace expansion along the first row.
  double m0 = detail::det3<double>(b[1], b[2], b[3], c[1], c[2], c[3], d[1], d[2], d[3]);
  double m1 = detail::det3<double>(b[0], b[2], b[3], c[0], c[2], c[3], d[0], d[2], d[3]);
  double m2 = detail::det3<double>(b[0], b[1], b[3], c[0], c[1], c[3], d[0], d[1], d[3]);
  double m3 = detail::det3<double>(b[0], b[1], b[2], c[0], c[1], c[2], d[0], d[1], d[2]);
  return a[0] * m0 - a[1] * m1 + a[2] * m2 - a[3] * m3;
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Lightlike: return "lightlike";
    case CausalClass::Zero: return "zero";
  }
  return "?";
}

CausalClass causal_class(const Vec4& u, double eps) {
  if (u == Vec4{}) return CausalClass::Zero;
  double q = inner(u, u);
  if (q > eps) return CausalClass::Spacelike;
  if (q < -eps) return CausalClass::Timelike;
  return CausalClass::Lightlike;
}

const char* to_string(Sphere s) {
  switch (s) {
    case Sphere::AdS3: return "AdS3";
    case Sphere::S32: return "S32";
    case Sphere::Nullcone: return "nullcone";
    case Sphere::None: return "none";
  }
  return "?";
}

Sphere sphere_membership(const Vec4& u, double eps) {
  double q = inner(u, u);
  if (std::abs(q + 1) <= eps) return Sphere::AdS3;
  if (std::abs(q - 1) <= eps) return Sphere::S32;
  if (std::abs(q) <= eps) return Sphere::Nullcone;
  return Sphere::None;
}

double sphere_value(Sphere s) {
  switch (s) {
    case Sphere::AdS3: return -1;
    case Sphere::S32: return 1;
    default: return 0;
  }
}

FrameMatrix FrameMatrix::identity() {
  return {Vec4::basis(0), Vec4::basis(1), Vec4::basis(2), Vec4::basis(3)};
}

FrameMatrix FrameMatrix::eta() {
  return {Vec4(-1, 0, 0, 0), Vec4(0, -1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1)};
}

FrameMatrix FrameMatrix::transpose() const {
  std::array<Vec4, 4> r;
  for (std::size_t i = 0; i < 4; ++i)
    r[i] = Vec4(rows_[0][i], rows_[1][i], rows_[2][i], rows_[3][i]);
  return FrameMatrix(r);
}

double FrameMatrix::det() const { return det4(rows_[0], rows_[1], rows_[2], rows_[3]); }

FrameMatrix FrameMatrix::gram() const {
  std::array<std::array<double, 4>, 4> g{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) g[i][j] = inner(rows_[i], rows_[j]);
  return {Vec4(g[0]), Vec4(g[1]), Vec4(g[2]), Vec4(g[3])};
}

Vec4 FrameMatrix::apply(const Vec4& x) const {
  std::array<double, 4> r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r[i] += rows_[i][j] * x[j];
  return Vec4(r);
}

FrameMatrix FrameMatrix::operator*(const FrameMatrix& o) const {
  std::array<Vec4, 4> r;
  FrameMatrix ot = o.transpose();
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<double, 4> row{};
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) row[j] += rows_[i][k] * ot.rows_[j][k];
    r[i] = Vec4(row);
  }
  return FrameMatrix(r);
}

FrameMatrix FrameMatrix::operator-(const FrameMatrix& o) const {
  return {rows_[0] - o.rows_[0], rows_[1] - o.rows_[1], rows_[2] - o.rows_[2],
          rows_[3] - o.rows_[3]};
}

double FrameMatrix::max_abs() const {
  double m = 0;
  for (const auto& r : rows_)
    for (std::size_t j = 0; j < 4; ++j) m = std::max(m, std::abs(r[j]));
  return m;
}

FrameResiduals frame_residuals(const FrameMatrix& f, const std::array<int, 4>& signature,
                               double expected_det) {
  FrameMatrix g = f.gram();
  double orth = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double want = i == j ? signature[i] : 0.0;
      orth = std::max(orth, std::abs(g(i, j) - want));
    }
  return {orth, std::abs(f.det() - expected_det)};
}

FrameResiduals frame_residuals(const FrameMatrix& f) {
  FrameMatrix g = f.gram();
  std::array<int, 4> sig{};
  for (std::size_t i = 0; i < 4; ++i) sig[i] = g(i, i) < 0 ? -1 : 1;
  return frame_residuals(f, sig, 1.0);
}

HopfPoint hopf_project(const Vec4& u, double tol) {
  double q = inner(u, u);
  if (std::abs(q + 1) > tol)
    throw Error(ErrorCode::NotOnAdS, "<u,u> = " + std::to_string(q));
  return {u[0] * u[2] + u[1] * u[3], u[0] * u[3] - u[1] * u[2],
          0.5 * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3])};
}

}  // namespace adscurve
