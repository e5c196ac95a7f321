#include "adscurve/catalog.hpp"

#include <cmath>
#include <memory>

#include "adscurve/error.hpp"

namespace adscurve {

namespace {

const double kRt2 = std::sqrt(2.0);

VecJet circle_gamma(const Jet& s) { return {cos(s), sin(s), 0.0, 0.0}; }
VecJet circle_v1(const Jet&) { return {0.0, 0.0, 1.0, 0.0}; }
VecJet circle_v2(const Jet&) { return {0.0, 0.0, 0.0, 1.0}; }

VecJet geodesic_gamma(const Jet& s) { return {cosh(s), 0.0, sinh(s), 0.0}; }
VecJet geodesic_v1(const Jet&) { return {0.0, 1.0, 0.0, 0.0}; }
VecJet geodesic_v2(const Jet&) { return {0.0, 0.0, 0.0, 1.0}; }

// Cusp at s = 0: gamma' vanishes there while the frame stays smooth.
VecJet cusp_gamma(const Jet& s) {
  Jet s2 = s * s, s3 = s2 * s;
  Jet k = 1.0 / kRt2;
  return {k * sqrt(1.0 + s2 * s2), k * sqrt(1.0 + s3 * s3), k * s2, k * s3};
}

VecJet cusp_v1(const Jet& s) {
  Jet s2 = s * s, s3 = s2 * s, s5 = s3 * s2, s6 = s3 * s3;
  Jet q = sqrt(2.0 * (8.0 + 18.0 * s2 + s6));
  return VecJet{s3 * sqrt(1.0 + s2 * s2), s3 * sqrt(1.0 + s6), s5 + 6.0 * s, s6 - 4.0} / q;
}

VecJet cusp_v2(const Jet& s) {
  Jet s2 = s * s, s3 = s2 * s, s4 = s2 * s2, s6 = s3 * s3;
  Jet q = sqrt(8.0 + 18.0 * s2 + s6) * sqrt(4.0 + 9.0 * s2 + 13.0 * s6);
  Jet tail = -2.0 + 3.0 * s2 + s6;
  return VecJet{-sqrt(1.0 + s4) * (4.0 + 9.0 * s2 - 2.0 * s6),
                sqrt(1.0 + s6) * (4.0 + 9.0 * s2 + 3.0 * s6), 2.0 * s2 * tail, 3.0 * s3 * tail} /
         q;
}

VecJet hyperbolic_gamma(const Jet& s) {
  Jet a = s / kRt2, b = kRt2 * s;
  return {kRt2 * cosh(a), cosh(b) + kRt2 * sinh(b), kRt2 * sinh(a), kRt2 * cosh(b) + sinh(b)};
}

VecJet hyperbolic_v1(const Jet& s) {
  Jet a = s / kRt2, b = kRt2 * s;
  return {cosh(a), kRt2 * cosh(b) + 2.0 * sinh(b), sinh(a), kRt2 * sinh(b) + 2.0 * cosh(b)};
}

VecJet hyperbolic_v2(const Jet& s) {
  Jet a = s / kRt2, b = kRt2 * s;
  return {-kRt2 * sinh(a), -(kRt2 * cosh(b) + sinh(b)), -kRt2 * cosh(a),
          -(kRt2 * sinh(b) + cosh(b))};
}

}  // namespace

std::vector<CatalogEntry> catalog() {
  return {
      {"circle-trivial", CurveKind::Timelike, {-100, 100}, "timelike great circle (cos s, sin s, 0, 0)"},
      {"spacelike-example", CurveKind::Spacelike, {-3, 3}, "spacelike framed immersion, singular at s=0"},
      {"timelike-example", CurveKind::Timelike, {-5, 5}, "timelike framed immersion with constant curvature"},
      {"geodesic-spacelike", CurveKind::Spacelike, {-10, 10}, "spacelike geodesic (cosh s, 0, sinh s, 0)"},
  };
}

SourcePtr catalog_curve(std::string_view name, bool derivatives) {
  for (const auto& e : catalog()) {
    if (e.name != name) continue;
    auto make = [&](AnalyticCurve::Field g, AnalyticCurve::Field a, AnalyticCurve::Field b) {
      return std::make_shared<AnalyticCurve>(e.name, e.kind, e.domain, g, a, b, derivatives);
    };
    if (name == "circle-trivial") return make(circle_gamma, circle_v1, circle_v2);
    if (name == "spacelike-example") return make(cusp_gamma, cusp_v1, cusp_v2);
    if (name == "timelike-example") return make(hyperbolic_gamma, hyperbolic_v1, hyperbolic_v2);
    return make(geodesic_gamma, geodesic_v1, geodesic_v2);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown catalog curve '" + std::string(name) + "'");
}

}  // namespace adscurve
