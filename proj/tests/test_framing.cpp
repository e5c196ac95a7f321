#include <algorithm>
#include <cmath>

#include "adscurve/catalog.hpp"
#include "adscurve/error.hpp"
#include "adscurve/framing.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adscurve;

namespace {

double max_abs_error(const std::vector<double>& v, double want) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x - want));
  return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("constant curvature of the timelike example") {
  CurvatureQuad cq = framed_curvature(sample(catalog_curve("timelike-example"), {-1, 1}, 201));
  CHECK(max_abs_error(cq.alpha, 1) < 1e-10);
  CHECK(max_abs_error(cq.ell, 1) < 1e-10);
  CHECK(max_abs_error(cq.m, 3 / std::sqrt(2.0)) < 1e-10);
  CHECK(max_abs_error(cq.n, 0) < 1e-10);
  CHECK(singular_parameters(cq).empty());
}

TEST_CASE("curvature of the cusp example") {
  CurvatureQuad cq = framed_curvature(sample(catalog_curve("spacelike-example"), {-1, 1}, 201));
  for (std::size_t i = 0; i < cq.s.size(); ++i) {
    auto q = oracle::curvature_s(cq.s[i]);
    CHECK(cq.alpha[i] == doctest::Approx(q.alpha).epsilon(1e-9));
    CHECK(cq.ell[i] == doctest::Approx(q.ell).epsilon(1e-9));
    CHECK(cq.m[i] == doctest::Approx(q.m).epsilon(1e-9));
    CHECK(cq.n[i] == doctest::Approx(q.n).epsilon(1e-9));
  }
  CHECK(cq.m[100] == doctest::Approx(1.5));
  auto sing = singular_parameters(cq);
  REQUIRE(sing.size() == 1);
  CHECK(std::abs(sing[0]) < 1e-10);
}

TEST_CASE("singular parameter found between grid nodes") {
  CurvatureQuad cq = framed_curvature(sample(catalog_curve("spacelike-example"), {-0.95, 1}, 40));
  auto sing = singular_parameters(cq);
  REQUIRE(sing.size() == 1);
  CHECK(std::abs(sing[0]) < 1e-10);
}

TEST_CASE("trivial catalog curves") {
  CurvatureQuad c = framed_curvature(sample(catalog_curve("circle-trivial"), {-3, 3}, 61));
  CHECK(max_abs_error(c.alpha, 1) < 1e-12);
  CHECK(max_abs_error(c.ell, 0) < 1e-12);
  CHECK(max_abs_error(c.m, 0) < 1e-12);
  CHECK(singular_parameters(c).empty());

  FramedCurve g = sample(catalog_curve("geodesic-spacelike"), {-2, 2}, 41);
  CHECK(g.eps == -1);
  RegularFrenetData rf = regular_frenet(g);
  CHECK(std::all_of(rf.geodesic.begin(), rf.geodesic.end(), [](bool b) { return b; }));
  CHECK(max_abs_error(rf.kappa_g, 0) < 1e-12);
}

TEST_CASE("Frenet data of the timelike example") {
  RegularFrenetData rf = regular_frenet(sample(catalog_curve("timelike-example"), {-1, 1}, 21));
  CHECK(rf.kappa_g[10] == doctest::Approx(3 / std::sqrt(2.0)));
  for (std::size_t i = 0; i < rf.s.size(); ++i) {
    CHECK(inner(rf.t[i], rf.t[i]) == doctest::Approx(-1));
    CHECK(std::abs(inner(rf.t[i], rf.n1[i])) < 1e-10);
  }
}

TEST_CASE("Frenet data needs a regular curve") {
  FramedCurve fc = sample(catalog_curve("spacelike-example"), {-0.5, 0.5}, 11);
  CHECK_THROWS_AS(regular_frenet(fc), Error);
}

TEST_CASE("adapted frame of the timelike example") {
  FramedCurve fc = sample(catalog_curve("timelike-example"), {-1, 1}, 21);
  AdaptedFrameData a = adapted_frame(fc);
  for (std::size_t i = 0; i < fc.size(); ++i) {
    CHECK(max_abs_diff(a.f1[i], -fc.v2[i]) < 1e-12);
    CHECK(max_abs_diff(a.f2[i], fc.v1[i]) < 1e-12);
    CHECK(a.ell_hat[i] == doctest::Approx(1));
    CHECK(a.n_hat[i] == doctest::Approx(3 / std::sqrt(2.0)));
  }
  CHECK(a.max_m_residual < 1e-10);
}

TEST_CASE("adapted frame needs (m, n) away from the null directions") {
  FramedCurve fc = sample(catalog_curve("circle-trivial"), {-1, 1}, 11);
  try {
    adapted_frame(fc);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AdaptedFrameDegenerate);
  }
}

TEST_CASE("adapted frame of the cusp example") {
  FramedCurve fc = sample(catalog_curve("spacelike-example"), {-0.5, 0.5}, 21);
  AdaptedFrameData a = adapted_frame(fc);
  CHECK(a.max_m_residual < 1e-8);
  for (std::size_t i = 0; i < fc.size(); ++i) {
    CHECK(std::abs(inner(a.f1[i], fc.gamma[i])) < 1e-12);
    CHECK(std::abs(inner(a.f1[i], a.f2[i])) < 1e-12);
  }
}

TEST_CASE("Bishop frame removes the ell coefficient") {
  for (const char* name : {"timelike-example", "spacelike-example"}) {
    FramedCurve fc = sample(catalog_curve(name), {-0.8, 0.8}, 81);
    CurvatureQuad cq = framed_curvature(fc);
    BishopData b = bishop_frame(fc, 0.2);
    CHECK(b.max_ell_residual < 1e-8);
    for (std::size_t i = 0; i < fc.size(); ++i) {
      double before, after;
      if (fc.kind == CurveKind::Timelike) {
        before = cq.m[i] * cq.m[i] + cq.n[i] * cq.n[i];
        after = b.mbar[i] * b.mbar[i] + b.nbar[i] * b.nbar[i];
      } else {
        before = cq.m[i] * cq.m[i] - cq.n[i] * cq.n[i];
        after = b.mbar[i] * b.mbar[i] - b.nbar[i] * b.nbar[i];
      }
      CHECK(after == doctest::Approx(before).epsilon(1e-8));
    }
  }
}

TEST_CASE("parallel curves follow the predicted curvature") {
  for (const char* name : {"timelike-example", "spacelike-example"}) {
    for (double phi : {0.3, 1.0}) {
      FramedCurve fc = sample(catalog_curve(name), {-0.5, 0.5}, 41);
      ParallelParams p;
      p.phi = phi;
      ParallelResult r = parallel_curve(fc, p);
      CurvatureQuad got = framed_curvature(r.curve);
      CHECK(max_diff(got.alpha, r.predicted.alpha) < 1e-7);
      CHECK(max_diff(got.m, r.predicted.m) < 1e-7);
      CHECK(max_diff(got.n, r.predicted.n) < 1e-7);
      CHECK(max_abs_error(got.ell, 0) < 1e-7);
    }
  }
}
