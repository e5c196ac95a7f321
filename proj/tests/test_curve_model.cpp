#include <cmath>
#include <sstream>

#include "adscurve/catalog.hpp"
#include "adscurve/curve_model.hpp"
#include "adscurve/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adscurve;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an adscurve::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("catalog lists the four curves") {
  auto c = catalog();
  REQUIRE(c.size() == 4);
  CHECK(catalog_curve("timelike-example")->kind() == CurveKind::Timelike);
  CHECK(catalog_curve("spacelike-example")->kind() == CurveKind::Spacelike);
  CHECK(catalog_curve("circle-trivial")->kind() == CurveKind::Timelike);
  CHECK(catalog_curve("geodesic-spacelike")->kind() == CurveKind::Spacelike);
  CHECK(code_of([] { catalog_curve("nope"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("catalog curves agree with hand-typed closed forms") {
  auto t = catalog_curve("timelike-example");
  auto s = catalog_curve("spacelike-example");
  for (double x : {-1.0, -0.3, 0.0, 0.55, 1.0}) {
    FrameJet fj = t->jet(x);
    CHECK(max_abs_diff(fj.gamma.value(), oracle::gamma_t(x)) < 1e-13);
    CHECK(max_abs_diff(fj.mu().value(), oracle::mu_t(x)) < 1e-12);
    CHECK(max_abs_diff(s->jet(x).gamma.value(), oracle::gamma_s(x)) < 1e-14);
  }
}

TEST_CASE("sampling validates membership and framed conditions") {
  for (const char* name : {"timelike-example", "spacelike-example", "circle-trivial", "geodesic-spacelike"}) {
    FramedCurve fc = sample(catalog_curve(name), {-1, 1}, 41);
    CHECK(fc.size() == 41);
    for (std::size_t i = 0; i < fc.size(); ++i) {
      CHECK(std::abs(inner(fc.gamma[i], fc.gamma[i]) + 1) < 1e-12);
      CHECK(std::abs(inner(fc.mu[i], fc.gamma[i])) < 1e-12);
    }
  }
  CHECK(code_of([] { sample(catalog_curve("timelike-example"), {-9, 1}, 11); }) ==
        ErrorCode::DomainError);
}

TEST_CASE("the second normal with -2 s^6 is not orthogonal to the curve") {
  // Corrected second component: sqrt(1+s^6)(4 + 9s^2 + 3s^6).
  const double s = 0.8;
  double p4 = std::sqrt(1 + std::pow(s, 4)), p6 = std::sqrt(1 + std::pow(s, 6));
  auto v2 = [&](double c6) {
    double k = 4 + 9 * s * s - 2 * std::pow(s, 6);
    return Vec4{-p4 * k, p6 * (4 + 9 * s * s + c6 * std::pow(s, 6)),
                2 * s * s * (-2 + 3 * s * s + std::pow(s, 6)),
                3 * s * s * s * (-2 + 3 * s * s + std::pow(s, 6))};
  };
  Vec4 g = oracle::gamma_s(s);
  CHECK(std::abs(inner(v2(-2), g)) > 1e-2);
  CHECK(std::abs(inner(v2(3), g)) < 1e-12);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  auto src = catalog_curve("spacelike-example");
  DiffConfig fine{1e-4, 4};
  DiffConfig coarse{5e-3, 4};
  for (double s : {-0.7, -0.1, 0.0, 0.35, 0.9}) {
    for (FrameField f : {FrameField::Gamma, FrameField::V1, FrameField::V2, FrameField::Mu}) {
      for (int k = 1; k <= 2; ++k)
        CHECK(max_abs_diff(differentiate(*src, f, k, s), finite_difference(*src, f, k, s, fine)) <
              1e-6);
      CHECK(max_abs_diff(differentiate(*src, f, 3, s), finite_difference(*src, f, 3, s, coarse)) <
            1e-5);
    }
  }
}

TEST_CASE("value-only sources fall back to finite differences") {
  auto exact = catalog_curve("timelike-example");
  auto values = catalog_curve("timelike-example", false);
  FrameJet a = exact->jet(0.3);
  FrameJet b = frame_jet(*values, 0.3);
  CHECK(max_abs_diff(a.gamma.derivative(1), b.gamma.derivative(1)) < 1e-9);
  CHECK(max_abs_diff(a.v2.derivative(2), b.v2.derivative(2)) < 1e-6);
}

TEST_CASE("stencils must stay in the domain") {
  auto src = catalog_curve("spacelike-example");
  CHECK(code_of([&] { finite_difference(*src, FrameField::Gamma, 1, 3.0); }) ==
        ErrorCode::StencilOutOfDomain);
}

TEST_CASE("uniform grid endpoints are exact") {
  auto g = uniform_grid({-1, 1}, 201);
  CHECK(g.front() == -1);
  CHECK(g.back() == 1);
  CHECK(g[100] == 0);
}

TEST_CASE("sampled tables reproduce derivatives of the source") {
  FramedCurve fc = sample(catalog_curve("timelike-example"), {-1, 1}, 401);
  auto table = table_from(fc, "t");
  auto exact = catalog_curve("timelike-example");
  for (double s : {-1.0, -0.5, 0.0, 0.123, 0.995}) {
    FrameJet a = exact->jet(s), b = table->jet(s);
    CHECK(max_abs_diff(a.gamma.value(), b.gamma.value()) < 1e-10);
    CHECK(max_abs_diff(a.gamma.derivative(1), b.gamma.derivative(1)) < 1e-8);
    CHECK(max_abs_diff(a.v1.derivative(2), b.v1.derivative(2)) < 1e-6);
  }
}

TEST_CASE("CSV round trip is exact") {
  FramedCurve fc = sample(catalog_curve("spacelike-example"), {-0.5, 0.5}, 11);
  std::stringstream ss;
  write_sampled_csv(ss, fc);
  auto t = read_sampled_csv(ss, "rt");
  CHECK(t->kind() == CurveKind::Spacelike);
  REQUIRE(t->grid().size() == 11);
  for (std::size_t i = 0; i < 11; ++i) {
    CHECK(t->grid()[i] == fc.s[i]);
    CHECK(t->jet(fc.s[i]).gamma.value() == fc.gamma[i]);
  }
}

TEST_CASE("CSV input errors") {
  const std::string header = "s,g1,g2,g3,g4,v11,v12,v13,v14,v21,v22,v23,v24\n";
  std::istringstream bad_header("s,a,b\n");
  CHECK(code_of([&] { read_sampled_csv(bad_header, "x"); }) == ErrorCode::ParseError);

  std::istringstream bad_row(header + "0,1,2\n");
  try {
    read_sampled_csv(bad_row, "x");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::ostringstream rows;
  rows << header;
  for (double s : {0.0, 0.1, 0.3, 0.4, 0.5, 0.6, 0.7}) rows << s << ",1,0,0,0,0,0,1,0,0,0,0,1\n";
  std::istringstream uneven(rows.str());
  CHECK(code_of([&] { read_sampled_csv(uneven, "x"); }) == ErrorCode::GridNotUniform);

  std::ostringstream off;
  off << header;
  for (int i = 0; i < 7; ++i) off << 0.1 * i << ",2,0,0,0,0,0,1,0,0,0,0,1\n";
  std::istringstream not_ads(off.str());
  CHECK(code_of([&] { read_sampled_csv(not_ads, "x"); }) == ErrorCode::MembershipViolated);

  CHECK(code_of([] { load_sampled_csv("/nonexistent/file.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("reparametrized and transformed sources") {
  auto base = catalog_curve("timelike-example");
  auto rep = std::make_shared<ReparametrizedSource>(
      base, [](const Jet& s) { return s * s * s / 3.0 + s; }, Interval{-1, 1});
  const double s = 0.4, u = s * s * s / 3 + s;
  FrameJet a = rep->jet(s), b = base->jet(u);
  CHECK(max_abs_diff(a.gamma.value(), b.gamma.value()) < 1e-14);
  CHECK(max_abs_diff(a.gamma.derivative(1), (s * s + 1) * b.gamma.derivative(1)) < 1e-12);

  FrameMatrix boost{Vec4{std::cosh(0.3), 0, std::sinh(0.3), 0}, Vec4{0, 1, 0, 0},
                    Vec4{std::sinh(0.3), 0, std::cosh(0.3), 0}, Vec4{0, 0, 0, 1}};
  auto moved = std::make_shared<TransformedSource>(base, boost);
  CHECK(max_abs_diff(moved->jet(s).gamma.value(), boost.apply(base->jet(s).gamma.value())) < 1e-14);
  FramedCurve fc = sample(moved, {-1, 1}, 21);
  CHECK(fc.kind == CurveKind::Timelike);
}
