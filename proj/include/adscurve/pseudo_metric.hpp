#pragma once

#include <array>
#include <cstddef>

namespace adscurve {

/// Metric signature of R^4_2: two negative, then two positive.
inline constexpr std::array<int, 4> kEta{-1, -1, 1, 1};

namespace detail {

// Shared by the double and the Taylor-jet vector types.
template <class V>
auto inner_of(const V& a, const V& b) {
  return -(a[0] * b[0]) - a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

template <class T>
T det3(const T& a, const T& b, const T& c, const T& d, const T& e, const T& f,
       const T& g, const T& h, const T& i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// Cofactor expansion of the formal determinant whose first row is
// (-e1, -e2, e3, e4).
template <class T, class V>
std::array<T, 4> triple_of(const V& u, const V& v, const V& w) {
  T m1 = det3<T>(u[1], u[2], u[3], v[1], v[2], v[3], w[1], w[2], w[3]);
  T m2 = det3<T>(u[0], u[2], u[3], v[0], v[2], v[3], w[0], w[2], w[3]);
  T m3 = det3<T>(u[0], u[1], u[3], v[0], v[1], v[3], w[0], w[1], w[3]);
  T m4 = det3<T>(u[0], u[1], u[2], v[0], v[1], v[2], w[0], w[1], w[2]);
  return {-m1, m2, m3, -m4};
}

}  // namespace detail

/// A point or tangent vector in R^4_2. Components are always finite; the
/// constructor throws NonFinite otherwise.
class Vec4 {
 public:
  constexpr Vec4() = default;
  Vec4(double u1, double u2, double u3, double u4);
  explicit Vec4(const std::array<double, 4>& u) : Vec4(u[0], u[1], u[2], u[3]) {}

  double operator[](std::size_t i) const { return u_[i]; }
  const std::array<double, 4>& data() const { return u_; }

  static Vec4 basis(std::size_t i);

  Vec4 operator-() const { return {-u_[0], -u_[1], -u_[2], -u_[3]}; }
  Vec4& operator+=(const Vec4& o) { return *this = *this + o; }
  Vec4& operator-=(const Vec4& o) { return *this = *this - o; }
  friend Vec4 operator+(const Vec4& a, const Vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
  }
  friend Vec4 operator-(const Vec4& a, const Vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
  }
  friend Vec4 operator*(double k, const Vec4& a) { return {k * a[0], k * a[1], k * a[2], k * a[3]}; }
  friend Vec4 operator*(const Vec4& a, double k) { return k * a; }
  friend Vec4 operator/(const Vec4& a, double k) { return {a[0] / k, a[1] / k, a[2] / k, a[3] / k}; }
  friend bool operator==(const Vec4&, const Vec4&) = default;

 private:
  std::array<double, 4> u_{};
};

double inner(const Vec4& a, const Vec4& b);
double euclidean_norm(const Vec4& a);
/// sqrt(|<a,a>|)
double pseudo_norm(const Vec4& a);
/// Largest absolute component difference.
double max_abs_diff(const Vec4& a, const Vec4& b);

/// Vector orthogonal (in the pseudo metric) to its three arguments, satisfying
/// <triple_product(u,v,w), x> = det(x,u,v,w).
Vec4 triple_product(const Vec4& u, const Vec4& v, const Vec4& w);

/// Ordinary determinant of the matrix with rows a, b, c, d.
double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

enum class CausalClass { Spacelike, Timelike, Lightlike, Zero };
const char* to_string(CausalClass c);

/// Classify by the sign of <u,u>, with a null band of width `eps`.
CausalClass causal_class(const Vec4& u, double eps = 1e-10);

enum class Sphere { AdS3, S32, Nullcone, None };
const char* to_string(Sphere s);

/// AdS3 is <u,u> = -1, S32 is <u,u> = +1, the null cone is <u,u> = 0.
Sphere sphere_membership(const Vec4& u, double eps = 1e-8);
double sphere_value(Sphere s);

/// 4x4 real matrix stored as rows. Used both for frames (rows gamma, v1, v2,
/// mu) and for linear maps acting on column vectors.
class FrameMatrix {
 public:
  FrameMatrix() = default;
  explicit FrameMatrix(const std::array<Vec4, 4>& rows) : rows_(rows) {}
  FrameMatrix(const Vec4& r0, const Vec4& r1, const Vec4& r2, const Vec4& r3)
      : rows_{r0, r1, r2, r3} {}

  static FrameMatrix identity();
  static FrameMatrix eta();

  const Vec4& row(std::size_t i) const { return rows_[i]; }
  double operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }

  FrameMatrix transpose() const;
  double det() const;
  /// Rows' pairwise inner products: F eta F^T.
  FrameMatrix gram() const;
  /// Matrix-vector product A x.
  Vec4 apply(const Vec4& x) const;
  FrameMatrix operator*(const FrameMatrix& o) const;
  FrameMatrix operator-(const FrameMatrix& o) const;
  double max_abs() const;

 private:
  std::array<Vec4, 4> rows_{};
};

struct FrameResiduals {
  double orth_residual = 0;
  double det_residual = 0;
};

/// Pseudo-orthonormality defect of a frame: the largest entry of
/// F eta F^T - S, where S is the diagonal of signs of the Gram diagonal,
/// together with |det F - 1|.
FrameResiduals frame_residuals(const FrameMatrix& f);

/// Same defect against an explicit signature and determinant.
FrameResiduals frame_residuals(const FrameMatrix& f, const std::array<int, 4>& signature,
                               double expected_det);

struct HopfPoint {
  double y1 = 0, y2 = 0, y3 = 0;
};

/// h(u) = (u1 u3 + u2 u4, u1 u4 - u2 u3, |u|^2 / 2) for u on AdS3.
/// Throws NotOnAdS when |<u,u> + 1| exceeds `tol`.
HopfPoint hopf_project(const Vec4& u, double tol = 1e-8);

}  // namespace adscurve
