#include <algorithm>
#include <cmath>

#include "adscurve/catalog.hpp"
#include "adscurve/error.hpp"
#include "adscurve/reconstruction.hpp"
#include "adscurve/singular_geometry.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adscurve;

namespace {

const double kR2 = std::sqrt(2.0);

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an adscurve::Error");
  return ErrorCode::InvalidArgument;
}

FramedCurve timelike(Interval r = {-1, 1}, int n = 41) {
  return sample(catalog_curve("timelike-example"), r, n);
}

FramedCurve cusp(Interval r = {-0.5, 0.5}, int n = 41) {
  return sample(catalog_curve("spacelike-example"), r, n);
}

// Timelike curve with ell = 1, m = 3/sqrt2, n = 0 and the given alpha.
FramedCurve synthetic(CurvatureSpec::Fn alpha, Interval r, int n) {
  CurvatureSpec spec = CurvatureSpec::constant(CurveKind::Timelike, 1, 1, 3 / kR2, 0);
  spec.alpha = std::move(alpha);
  FrameMatrix init = canonical_frame(CurveKind::Timelike);
  return reconstruct(spec, init, init.row(0), r, n).curve;
}

double sup_diff(const Vec4& a, const Vec4& b) { return std::min(max_abs_diff(a, b), max_abs_diff(a, -b)); }

}  // namespace

TEST_CASE("evolute of the timelike example") {
  FramedCurve fc = timelike();
  EvoluteResult r = evolute(fc);
  REQUIRE(r.samples.size() == fc.size());
  CHECK(r.gaps.empty());
  for (const auto& e : r.samples) {
    CHECK(max_abs_diff(e.point, oracle::evolute_t(e.s)) < 1e-12);
    CHECK(e.branch == Branch::AdS);
    CHECK(e.disc == doctest::Approx(-63.0 / 4));
    CHECK(e.causal_sign == -1);
    CHECK(std::abs(inner(e.point, e.point) + 1) < 1e-12);
  }
  EvoluteResult neg = evolute(fc, {-1, false, false});
  CHECK(max_abs_diff(neg.samples[5].point, -r.samples[5].point) == 0);
}

TEST_CASE("evolute frame of the timelike example") {
  FramedCurve fc = timelike();
  EvoluteResult r = evolute(fc);
  EvoluteFrame f = evolute_frame(fc, r.samples);
  for (std::size_t i = 0; i < f.s.size(); ++i) {
    CHECK(f.alpha_E[i] == doctest::Approx(-std::sqrt(14.0) / 7).epsilon(1e-12));
    CHECK(f.ell_hat_E[i] == doctest::Approx(-std::sqrt(3.5)));
    CHECK(f.n_hat_E[i] == doctest::Approx(-3 / std::sqrt(7.0)));
    CHECK(inner(f.eta[i], f.eta[i]) == doctest::Approx(1));
    CHECK(inner(f.mu_E[i], f.mu_E[i]) == doctest::Approx(1));
    CHECK(std::abs(inner(f.mu_E[i], r.samples[i].point)) < 1e-12);
  }
  CHECK(f.max_mu_residual < 1e-8);
  CHECK(f.max_eta_residual < 1e-8);
}

TEST_CASE("three routes to the evolute curvature agree") {
  for (FramedCurve fc : {timelike(), cusp()}) {
    EvoluteResult r = evolute(fc);
    EvoluteFrame f = evolute_frame(fc, r.samples);
    auto projected = alpha_evolute_projected(fc, f);
    for (std::size_t i = 0; i < f.s.size(); ++i) CHECK(std::abs(projected[i] - f.alpha_E[i]) < 1e-6);
    if (fc.kind == CurveKind::Timelike) {
      auto compact = alpha_evolute_compact(fc);
      for (std::size_t i = 0; i < f.s.size(); ++i) CHECK(std::abs(compact[i] - f.alpha_E[i]) < 1e-9);
    } else {
      CHECK(code_of([&] { alpha_evolute_compact(fc); }) == ErrorCode::KindMismatch);
    }
  }
}

TEST_CASE("the evolute frame completes the evolute with mu and eta") {
  FramedCurve fc = cusp();
  EvoluteResult r = evolute(fc);
  EvoluteFrame f = evolute_frame(fc, r.samples);
  CHECK(f.max_mu_residual < 1e-7);
  CHECK(f.max_eta_residual < 1e-7);
  for (std::size_t i = 0; i < f.s.size(); ++i)
    CHECK(max_abs_diff(triple_product(r.samples[i].point, fc.mu[i], f.eta[i]), f.mu_E[i]) < 1e-10);
}

TEST_CASE("evolute at the cusp matches the reduced formula") {
  auto src = catalog_curve("spacelike-example");
  Vec4 general = evolute_at(*src, 0, 1).point.value();
  Vec4 reduced = evolute_at_singular_point(*src, 0, 1);
  CHECK(sup_diff(general, reduced) < 1e-12);
  // independent: at s = 0 the cusp has gamma = (1,1,0,0)/sqrt2, f1 along the
  // curve's second normal and the reduced numerator is dominated by gamma
  CHECK(std::abs(inner(reduced, reduced) + 1) < 1e-12);
}

TEST_CASE("guards and branch errors") {
  FramedCurve fc = sample(catalog_curve("spacelike-example"), {-1, 1}, 41);
  CHECK(code_of([&] { evolute(fc); }) != ErrorCode::InvalidArgument);
  try {
    evolute(fc);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Degeneracy);
    CHECK(e.where().has_value());
  }
  EvoluteSample ps;
  ps.branch = Branch::PS;
  CHECK(code_of([&] { evolute_frame(timelike(), {ps}); }) == ErrorCode::BranchMismatch);
}

TEST_CASE("continuity pass removes sign flips") {
  FramedCurve fc = timelike({-1, 1}, 11);
  EvoluteResult r = evolute(fc);
  auto flipped = r.samples;
  for (std::size_t i = 1; i < flipped.size(); i += 2) {
    flipped[i].point = -flipped[i].point;
    flipped[i].sign_choice = -1;
  }
  auto fixed = continuity_fixed(flipped);
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    CHECK(fixed[i].point == r.samples[i].point);
    CHECK(fixed[i].sign_choice == 1);
  }
}

TEST_CASE("parametrization invariance") {
  auto base = catalog_curve("timelike-example");
  auto rep = std::make_shared<ReparametrizedSource>(
      base, [](const Jet& s) { return s * s * s / 3.0 + s; }, Interval{-1, 1});
  EvoluteResult r = evolute(sample(rep, {-1, 1}, 41));
  for (const auto& e : r.samples) {
    double u = e.s * e.s * e.s / 3 + e.s;
    CHECK(sup_diff(e.point, evolute_at(*base, u, 1).point.value()) < 1e-6);
  }
}

TEST_CASE("parallel invariance") {
  for (FramedCurve fc : {timelike({-0.5, 0.5}, 21), cusp({-0.5, 0.5}, 21)}) {
    EvoluteResult base = evolute(fc);
    for (double phi : {0.3, 1.0}) {
      ParallelParams p;
      p.phi = phi;
      ParallelResult par = parallel_curve(fc, p);
      EvoluteResult moved = evolute(par.curve);
      REQUIRE(moved.samples.size() == base.samples.size());
      for (std::size_t i = 0; i < base.samples.size(); ++i) {
        CHECK(moved.samples[i].branch == base.samples[i].branch);
        CHECK(sup_diff(moved.samples[i].point, base.samples[i].point) < 1e-9);
      }
    }
  }
}

TEST_CASE("F3 focal surface of the timelike example") {
  FramedCurve fc = timelike();
  FocalGrid g = focal_surface(fc, parse_focal_case("f3"), {-1, 1}, 21, 11);
  CHECK(g.points.size() == 21 * 11);
  CHECK(g.target == Sphere::AdS3);
  for (std::size_t i = 0; i < g.s.size(); ++i)
    for (std::size_t j = 0; j < g.theta.size(); ++j) {
      const Vec4& p = g.at(i, j);
      CHECK(std::abs(inner(p, p) + 1) < 1e-10);
      CHECK(g.density[i * g.theta.size() + j] ==
            doctest::Approx(std::sinh(g.theta[j]) * 3 / kR2).epsilon(1e-10));
    }
  FocalGrid f4 = focal_surface(fc, parse_focal_case("f4"), {-1, 1}, 11, 5);
  CHECK(f4.target == Sphere::S32);
  for (const auto& p : f4.points) CHECK(std::abs(inner(p, p) - 1) < 1e-10);
}

TEST_CASE("focal case preconditions") {
  FramedCurve fc = timelike();
  CHECK(code_of([&] { focal_surface(fc, parse_focal_case("f5"), {-1, 1}, 5, 5); }) ==
        ErrorCode::CasePreconditionViolated);
  CHECK(code_of([&] { focal_surface(fc, parse_focal_case("f1"), {-1, 1}, 5, 5); }) ==
        ErrorCode::CasePreconditionViolated);
  CHECK(code_of([] { parse_focal_case("f7"); }) == ErrorCode::InvalidArgument);
  CHECK(to_string(parse_focal_case("f2:sinh-cosh")) == "f2:sinh-cosh");
}

TEST_CASE("F3 singular locus is the evolute and is a cuspidal edge") {
  FramedCurve fc = timelike();
  auto locus = focal_singular_locus(fc, parse_focal_case("f3"));
  REQUIRE(locus.size() == fc.size());
  for (const auto& p : locus) {
    CHECK(std::abs(p.theta0) < 1e-9);
    REQUIRE(p.image.has_value());
    CHECK(max_abs_diff(*p.image, oracle::evolute_t(p.s0)) < 1e-8);
    CHECK(p.classification == SingularityType::CuspidalEdge);
  }
}

TEST_CASE("F4 locus lands on the PS evolute") {
  FramedCurve fc = timelike({-1, 1}, 11);
  auto locus = focal_singular_locus(fc, parse_focal_case("f4"));
  for (const auto& p : locus) CHECK_FALSE(p.real_root);
}

TEST_CASE("rank drops at every reported locus point") {
  FramedCurve fc = cusp({-0.4, 0.4}, 17);
  FocalCase f1 = parse_focal_case("f1");
  auto locus = focal_singular_locus(fc, f1);
  for (const auto& p : locus) {
    FocalPoint fp = focal_point(*fc.source, p.s0, p.theta0, f1);
    CHECK(std::abs(fp.density) < 1e-9);
    CHECK(euclidean_norm(triple_product(fp.point, fp.ds, fp.dtheta)) < 1e-6);
    REQUIRE(p.image.has_value());
    CHECK(sup_diff(*p.image, evolute_at(*fc.source, p.s0, 1).point.value()) < 1e-6);
  }
}

TEST_CASE("F1 locus at the cusp") {
  FramedCurve fc = cusp({-0.4, 0.4}, 17);
  auto locus = focal_singular_locus(fc, parse_focal_case("f1"));
  auto at0 = std::find_if(locus.begin(), locus.end(), [](const auto& p) { return p.s0 == 0; });
  REQUIRE(at0 != locus.end());
  // D = 3 sqrt2 / 2, c = 3/2, ell_hat n_hat = -sqrt2  =>  tan theta0 = 1
  CHECK(at0->theta0 == doctest::Approx(std::atan(1.0)));
}

TEST_CASE("density against the determinant definition") {
  FramedCurve fc = cusp({-0.3, 0.3}, 7);
  FocalCase f1 = parse_focal_case("f1");
  for (double s : {-0.2, 0.1}) {
    for (double th : {-0.5, 0.3, 1.2}) {
      FocalPoint fp = focal_point(*fc.source, s, th, f1);
      FocalPoint ref = focal_point(*fc.source, s, 0.0, f1);
      Vec4 mu = adapted_jets(*fc.source, s).mu.value();
      double det = det4(fp.point, fp.ds, fp.dtheta, mu);
      double det0 = det4(ref.point, ref.ds, ref.dtheta, mu);
      // same function up to a positive factor independent of theta
      CHECK(det * ref.density == doctest::Approx(det0 * fp.density).epsilon(1e-8));
    }
  }
}

TEST_CASE("synthetic swallowtail") {
  // alpha'' + alpha has a simple zero at 1/sqrt2
  FramedCurve fc = synthetic([](const Jet& s) { return 1.0 - 0.4 * s * s; }, {0.4, 1.0}, 61);
  auto locus = focal_singular_locus(fc, parse_focal_case("f3"));
  auto sw = std::find_if(locus.begin(), locus.end(), [](const auto& p) {
    return p.classification == SingularityType::Swallowtail;
  });
  REQUIRE(sw != locus.end());
  CHECK(sw->s0 == doctest::Approx(1 / kR2).epsilon(1e-8));
  CHECK(std::count_if(locus.begin(), locus.end(), [](const auto& p) {
          return p.classification == SingularityType::CuspidalEdge;
        }) == static_cast<long>(locus.size()) - 1);
}

TEST_CASE("synthetic degenerate locus") {
  FramedCurve fc = synthetic([](const Jet& s) { return cos(s); }, {0.2, 0.8}, 31);
  auto locus = focal_singular_locus(fc, parse_focal_case("f3"));
  for (const auto& p : locus) {
    CHECK(std::abs(p.alpha_E_value) < 1e-7);
    CHECK(p.classification == SingularityType::Degenerate);
  }
}

TEST_CASE("omega reaching one is reported") {
  // alpha = 1 + b s^2 with b^2 = 9/2 - (1 + b/4)^2 puts |omega| = 1 at s = 1/2
  const double b = (-0.5 + std::sqrt(0.25 + 4 * 1.0625 * 3.5)) / (2 * 1.0625);
  FramedCurve fc = synthetic([b](const Jet& s) { return 1.0 + b * s * s; }, {0.3, 0.7}, 41);
  AdaptedScalars a = adapted_jets(*fc.source, 0.5).scalars;
  CHECK(std::abs(std::abs(omega(a).value()) - 1) < 1e-9);
  CHECK(code_of([&] { alpha_evolute_compact(a, Tolerances{}, 0.5); }) == ErrorCode::OmegaSingular);
  EvoluteResult r = evolute(fc);
  REQUIRE(r.gaps.size() == 1);
  CHECK(r.gaps[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(code_of([&] { evolute(fc, {1, false, true}); }) == ErrorCode::DiscriminantVanishes);
}

TEST_CASE("height functions vanish on the evolute") {
  FramedCurve fc = timelike({-1, 1}, 21);
  EvoluteResult r = evolute(fc);
  for (const auto& e : r.samples) {
    HeightCheck h = height_check(fc, e.point, e.s, HeightKind::AdsTimelike);
    CHECK(std::abs(h.h) < 1e-8);
    CHECK(std::abs(h.hs) < 1e-8);
    CHECK(std::abs(h.hss) < 1e-8);
  }
  HeightCheck generic = height_check(fc, Vec4{1, 0, 0, 0}, 0.3, HeightKind::AdsTimelike);
  CHECK(std::abs(generic.h) > 1e-3);
  CHECK(code_of([&] { height_check(fc, Vec4::basis(2), 0.0, HeightKind::AdsTimelike); }) ==
        ErrorCode::SphereMismatch);
  CHECK(code_of([&] { height_check(fc, Vec4::basis(0), 0.0, HeightKind::PsTimelike); }) ==
        ErrorCode::KindMismatch);
}

TEST_CASE("first discriminant family lies on the F3 focal surface") {
  FramedCurve fc = timelike({-0.5, 0.5}, 11);
  std::vector<double> bs{-1.5, -0.4, 0.0, 0.7, 2.0};
  DiscriminantScan d = discriminant_scan(fc, HeightKind::AdsTimelike, bs);
  CHECK(d.first.size() == fc.size() * bs.size() * 2);
  FocalCase f3 = parse_focal_case("f3");
  for (const auto& p : d.first) {
    HeightCheck h = height_check(fc, p.v, p.s, HeightKind::AdsTimelike);
    CHECK(std::abs(h.h) < 1e-10);
    CHECK(std::abs(h.hs) < 1e-10);
    // n_hat > 0 here, so the sign of a picks the sheet of F3
    const double sheet = p.a < 0 ? -1.0 : 1.0;
    Vec4 f = sheet * focal_point(*fc.source, p.s, sheet * std::asinh(p.b), f3).point;
    CHECK(sup_diff(f, p.v) < 1e-10);
  }
}

TEST_CASE("secondary discriminant of the cusp example is its evolute") {
  FramedCurve fc = cusp({-0.3, 0.3}, 13);
  EvoluteResult r = evolute(fc);
  DiscriminantScan d = discriminant_scan(fc, HeightKind::PsTimelike, {});
  REQUIRE(d.second.size() == r.samples.size());
  for (std::size_t i = 0; i < d.second.size(); ++i) {
    CHECK(sup_diff(d.second[i], r.samples[i].point) < 1e-8);
    HeightCheck h = height_check(fc, d.second[i], d.second_s[i], HeightKind::PsTimelike);
    CHECK(std::abs(h.hss) < 1e-8);
  }
}
