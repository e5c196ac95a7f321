#include "adscurve/jet.hpp"

#include <algorithm>
#include <cmath>

#include "adscurve/error.hpp"

namespace adscurve {

namespace {

constexpr double kFactorial[] = {1, 1, 2, 6, 24};

void require_finite(const Jet::Coeffs& c, int order) {
  for (int k = 0; k <= order; ++k)
    if (!std::isfinite(c[k])) throw Error(ErrorCode::NonFinite, "jet coefficient is not finite");
}

// Shared recurrence for (sin, cos) and (sinh, cosh): sign = -1 or +1.
void paired(const Jet& a, double sign, Jet::Coeffs& s, Jet::Coeffs& c, double s0, double c0) {
  s = {};
  c = {};
  s[0] = s0;
  c[0] = c0;
  for (int k = 1; k <= a.order(); ++k) {
    double ss = 0, cc = 0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a.coeff(j) * c[k - j];
      cc += j * a.coeff(j) * s[k - j];
    }
    s[k] = ss / k;
    c[k] = sign * cc / k;
  }
}

}  // namespace

Jet Jet::variable(double at, int order) {
  Jet j(at);
  if (order >= 1) j.c_[1] = 1.0;
  j.order_ = std::clamp(order, 0, kJetOrder);
  return j;
}

Jet Jet::from_coeffs(const Coeffs& c, int order) {
  Jet j;
  j.order_ = std::clamp(order, 0, kJetOrder);
  for (int k = 0; k <= j.order_; ++k) j.c_[k] = c[k];
  require_finite(j.c_, j.order_);
  return j;
}

Jet Jet::from_derivatives(const double* d, int order) {
  Coeffs c{};
  order = std::clamp(order, 0, kJetOrder);
  for (int k = 0; k <= order; ++k) c[k] = d[k] / kFactorial[k];
  return from_coeffs(c, order);
}

double Jet::coeff(int k) const { return k <= order_ ? c_[k] : 0.0; }

double Jet::derivative(int k) const {
  if (k < 0 || k > order_)
    throw Error(ErrorCode::InvalidArgument, "derivative order exceeds the available jet order");
  return kFactorial[k] * c_[k];
}

Jet Jet::differentiated() const {
  if (order_ == 0)
    throw Error(ErrorCode::InvalidArgument, "cannot differentiate a jet of order 0");
  Jet r;
  r.order_ = order_ - 1;
  for (int k = 0; k <= r.order_; ++k) r.c_[k] = (k + 1) * c_[k + 1];
  return r;
}

Jet Jet::truncated(int order) const {
  Jet r = *this;
  r.order_ = std::min(order_, std::max(order, 0));
  for (int k = r.order_ + 1; k <= kJetOrder; ++k) r.c_[k] = 0;
  return r;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int k = 0; k <= kJetOrder; ++k) c_[k] = k <= order_ ? c_[k] + o.c_[k] : 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet& Jet::operator*=(const Jet& o) {
  int ord = std::min(order_, o.order_);
  Coeffs r{};
  for (int k = 0; k <= ord; ++k)
    for (int j = 0; j <= k; ++j) r[k] += c_[j] * o.c_[k - j];
  c_ = r;
  order_ = ord;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  if (o.c_[0] == 0.0) throw Error(ErrorCode::NonFinite, "jet division by zero");
  int ord = std::min(order_, o.order_);
  Coeffs q{};
  for (int k = 0; k <= ord; ++k) {
    double acc = c_[k];
    for (int j = 1; j <= k; ++j) acc -= o.c_[j] * q[k - j];
    q[k] = acc / o.c_[0];
  }
  c_ = q;
  order_ = ord;
  require_finite(c_, order_);
  return *this;
}

Jet sqrt(const Jet& a) {
  if (!(a.value() > 0)) {
    if (a.value() == 0 && a.order() == 0) return Jet(0.0).truncated(0);
    throw Error(ErrorCode::NonFinite, "jet square root of a non-positive value");
  }
  Jet::Coeffs r{};
  r[0] = std::sqrt(a.value());
  for (int k = 1; k <= a.order(); ++k) {
    double acc = a.coeff(k);
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc / (2 * r[0]);
  }
  return Jet::from_coeffs(r, a.order());
}

Jet exp(const Jet& a) {
  Jet::Coeffs e{};
  e[0] = std::exp(a.value());
  for (int k = 1; k <= a.order(); ++k) {
    double acc = 0;
    for (int j = 1; j <= k; ++j) acc += j * a.coeff(j) * e[k - j];
    e[k] = acc / k;
  }
  return Jet::from_coeffs(e, a.order());
}

Jet sin(const Jet& a) {
  Jet::Coeffs s, c;
  paired(a, -1.0, s, c, std::sin(a.value()), std::cos(a.value()));
  return Jet::from_coeffs(s, a.order());
}

Jet cos(const Jet& a) {
  Jet::Coeffs s, c;
  paired(a, -1.0, s, c, std::sin(a.value()), std::cos(a.value()));
  return Jet::from_coeffs(c, a.order());
}

Jet sinh(const Jet& a) {
  Jet::Coeffs s, c;
  paired(a, 1.0, s, c, std::sinh(a.value()), std::cosh(a.value()));
  return Jet::from_coeffs(s, a.order());
}

Jet cosh(const Jet& a) {
  Jet::Coeffs s, c;
  paired(a, 1.0, s, c, std::sinh(a.value()), std::cosh(a.value()));
  return Jet::from_coeffs(c, a.order());
}

Jet abs(const Jet& a) { return a.value() < 0 ? -a : a; }

Jet square(const Jet& a) { return a * a; }

VecJet VecJet::constant(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

int VecJet::order() const {
  return std::min({u_[0].order(), u_[1].order(), u_[2].order(), u_[3].order()});
}

Vec4 VecJet::value() const { return {u_[0].value(), u_[1].value(), u_[2].value(), u_[3].value()}; }

Vec4 VecJet::derivative(int k) const {
  return {u_[0].derivative(k), u_[1].derivative(k), u_[2].derivative(k), u_[3].derivative(k)};
}

VecJet VecJet::differentiated() const {
  return {u_[0].differentiated(), u_[1].differentiated(), u_[2].differentiated(),
          u_[3].differentiated()};
}

VecJet VecJet::truncated(int order) const {
  return {u_[0].truncated(order), u_[1].truncated(order), u_[2].truncated(order),
          u_[3].truncated(order)};
}

VecJet VecJet::operator-() const { return {-u_[0], -u_[1], -u_[2], -u_[3]}; }

VecJet operator+(const VecJet& a, const VecJet& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

VecJet operator-(const VecJet& a, const VecJet& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

VecJet operator*(const Jet& k, const VecJet& a) { return {k * a[0], k * a[1], k * a[2], k * a[3]}; }

VecJet operator/(const VecJet& a, const Jet& k) { return {a[0] / k, a[1] / k, a[2] / k, a[3] / k}; }

Jet inner(const VecJet& a, const VecJet& b) { return detail::inner_of(a, b); }

VecJet triple_product(const VecJet& u, const VecJet& v, const VecJet& w) {
  auto r = detail::triple_of<Jet>(u, v, w);
  return {r[0], r[1], r[2], r[3]};
}

}  // namespace adscurve
