#pragma once

#include <array>
#include <cstddef>

#include "adscurve/pseudo_metric.hpp"

namespace adscurve {

inline constexpr int kJetOrder = 3;

/// Truncated Taylor series c0 + c1 t + c2 t^2 + c3 t^3 around a base point.
/// `order` is the highest coefficient that is meaningful; arithmetic keeps the
/// minimum of the operands' orders, and differentiation lowers it by one.
/// Constants carry full order.
class Jet {
 public:
  using Coeffs = std::array<double, kJetOrder + 1>;

  Jet() = default;
  Jet(double value) { c_[0] = value; }  // NOLINT: implicit on purpose

  static Jet variable(double at, int order = kJetOrder);
  static Jet from_coeffs(const Coeffs& c, int order);
  /// From derivative values f, f', f'', ... (up to `order`).
  static Jet from_derivatives(const double* d, int order);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int k) const;
  /// k-th derivative at the base point, k! c_k.
  double derivative(int k) const;
  Jet differentiated() const;
  Jet truncated(int order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }

 private:
  Coeffs c_{};
  int order_ = kJetOrder;
};

Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
/// Sign-flip by the sign of the value; the result is smooth away from zero.
Jet abs(const Jet& a);
Jet square(const Jet& a);

/// A vector of four jets: a curve in R^4_2 known to a few derivatives.
class VecJet {
 public:
  VecJet() = default;
  VecJet(const Jet& a, const Jet& b, const Jet& c, const Jet& d) : u_{a, b, c, d} {}
  static VecJet constant(const Vec4& v);

  const Jet& operator[](std::size_t i) const { return u_[i]; }
  Jet& operator[](std::size_t i) { return u_[i]; }

  int order() const;
  Vec4 value() const;
  Vec4 derivative(int k) const;
  VecJet differentiated() const;
  VecJet truncated(int order) const;

  VecJet operator-() const;
  friend VecJet operator+(const VecJet& a, const VecJet& b);
  friend VecJet operator-(const VecJet& a, const VecJet& b);
  friend VecJet operator*(const Jet& k, const VecJet& a);
  friend VecJet operator*(const VecJet& a, const Jet& k) { return k * a; }
  friend VecJet operator/(const VecJet& a, const Jet& k);

 private:
  std::array<Jet, 4> u_{};
};

Jet inner(const VecJet& a, const VecJet& b);
VecJet triple_product(const VecJet& u, const VecJet& v, const VecJet& w);

}  // namespace adscurve
