#include "adscurve/framing.hpp"

#include <algorithm>
#include <cmath>

#include "adscurve/error.hpp"
#include "numfmt.hpp"

namespace adscurve {

namespace {

int sign_of(double x) { return x < 0 ? -1 : 1; }

int eps_of(const FrameJet& fj) { return sign_of(inner(fj.v1.value(), fj.v1.value())); }

// Bisection on a bracketing interval [a, b] with f(a) f(b) < 0.
double bisect(const std::function<double(double)>& f, double a, double b, double width) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > width; ++it) {
    double c = 0.5 * (a + b);
    double fc = f(c);
    if (fc == 0) return c;
    if ((fc < 0) == (fa < 0)) {
      a = c;
      fa = fc;
    } else {
      b = c;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

CurvatureJets curvature_jets(const FrameJet& fj, CurveKind kind, int eps) {
  VecJet mu = fj.mu();
  VecJet dg = fj.gamma.differentiated();
  VecJet d1 = fj.v1.differentiated();
  VecJet d2 = fj.v2.differentiated();
  CurvatureJets c;
  c.kind = kind;
  c.eps = eps;
  if (kind == CurveKind::Spacelike) {
    c.alpha = inner(dg, mu);
    c.ell = Jet(-eps) * inner(d1, fj.v2);
    c.m = inner(d1, mu);
    c.n = inner(d2, mu);
  } else {
    c.alpha = -inner(dg, mu);
    c.ell = inner(d1, fj.v2);
    c.m = -inner(d1, mu);
    c.n = -inner(d2, mu);
  }
  return c;
}

AdaptedScalars adapt(const CurvatureJets& c, double tol, double s) {
  AdaptedScalars a;
  a.kind = c.kind;
  a.alpha = c.alpha;
  const Jet twist = c.m * c.n.differentiated() - c.n * c.m.differentiated();
  if (c.kind == CurveKind::Spacelike) {
    Jet q = c.n * c.n - c.m * c.m;
    if (std::abs(q.value()) < tol)
      throw Error(ErrorCode::AdaptedFrameDegenerate, "n^2 - m^2 vanishes", s);
    const int sigma = sign_of(q.value());
    a.eps_hat = c.eps * sigma;
    a.ell_hat = c.ell + twist / q;
    a.n_hat = Jet(sigma) * sqrt(Jet(sigma) * q);
  } else {
    Jet q = c.n * c.n + c.m * c.m;
    if (q.value() < tol) throw Error(ErrorCode::AdaptedFrameDegenerate, "m and n both vanish", s);
    a.eps_hat = 1;
    a.ell_hat = c.ell + twist / q;
    a.n_hat = sqrt(q);
  }
  return a;
}

AdaptedJets adapted_jets(const CurveSource& src, double s, const Tolerances& tol) {
  FrameJet fj = frame_jet(src, s);
  AdaptedJets r;
  r.curvature = curvature_jets(fj, src.kind(), eps_of(fj));
  r.scalars = adapt(r.curvature, tol.sing, s);
  const Jet& m = r.curvature.m;
  const Jet& n = r.curvature.n;
  r.gamma = fj.gamma;
  r.mu = fj.mu();
  if (src.kind() == CurveKind::Spacelike) {
    Jet q = n * n - m * m;
    Jet rr = sqrt(Jet(sign_of(q.value())) * q);
    r.f1 = (n * fj.v1 - m * fj.v2) / rr;
    r.f2 = (-m * fj.v1 + n * fj.v2) / rr;
  } else {
    Jet rr = sqrt(n * n + m * m);
    r.f1 = (n * fj.v1 - m * fj.v2) / rr;
    r.f2 = (m * fj.v1 + n * fj.v2) / rr;
  }
  return r;
}

CurvatureQuad framed_curvature(const FramedCurve& fc) {
  CurvatureQuad cq;
  cq.kind = fc.kind;
  cq.eps = fc.eps;
  cq.s = fc.s;
  cq.source = fc.source;
  for (double s : fc.s) {
    CurvatureJets c = curvature_jets(frame_jet(*fc.source, s), fc.kind, fc.eps);
    cq.alpha.push_back(c.alpha.value());
    cq.ell.push_back(c.ell.value());
    cq.m.push_back(c.m.value());
    cq.n.push_back(c.n.value());
  }
  return cq;
}

std::vector<double> singular_parameters(const CurvatureQuad& cq, const Tolerances& tol) {
  std::vector<double> roots;
  const std::size_t n = cq.s.size();
  auto alpha = [&](double s) {
    if (!cq.source) throw Error(ErrorCode::InvalidArgument, "curvature has no source to refine");
    return curvature_jets(frame_jet(*cq.source, s), cq.kind, cq.eps).alpha.value();
  };
  auto push = [&](double r) {
    if (roots.empty() || std::abs(r - roots.back()) > 10 * tol.bisect) roots.push_back(r);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double a = cq.alpha[i];
    if (std::abs(a) < tol.sing) {
      // A root sitting on a node: refine between its neighbours if they bracket.
      if (i > 0 && i + 1 < n && (cq.alpha[i - 1] < 0) != (cq.alpha[i + 1] < 0) &&
          std::abs(cq.alpha[i - 1]) >= tol.sing && std::abs(cq.alpha[i + 1]) >= tol.sing && cq.source)
        push(bisect(alpha, cq.s[i - 1], cq.s[i + 1], tol.bisect));
      else
        push(cq.s[i]);
      continue;
    }
    if (i + 1 < n && std::abs(cq.alpha[i + 1]) >= tol.sing && (a < 0) != (cq.alpha[i + 1] < 0)) {
      if (cq.source)
        push(bisect(alpha, cq.s[i], cq.s[i + 1], tol.bisect));
      else  // linear interpolation as a fallback
        push(cq.s[i] - a * (cq.s[i + 1] - cq.s[i]) / (cq.alpha[i + 1] - a));
    }
  }
  return roots;
}

RegularFrenetData regular_frenet(const FramedCurve& fc, const Tolerances& tol) {
  RegularFrenetData d;
  const int want = fc.kind == CurveKind::Spacelike ? 1 : -1;
  for (double s : fc.s) {
    FrameJet fj = frame_jet(*fc.source, s);
    VecJet g = fj.gamma;
    VecJet g1 = g.differentiated();
    Jet v2 = inner(g1, g1);
    if (std::abs(v2.value()) < tol.sing) throw Error(ErrorCode::NotRegular, "gamma' vanishes", s);
    if (sign_of(v2.value()) != want)
      throw Error(ErrorCode::MixedCausality, "tangent changes causal type", s);
    Jet speed = sqrt(abs(v2));
    VecJet t = g1 / speed;
    VecJet tt = t.differentiated() / speed;
    VecJet ttt = tt.differentiated() / speed;
    Vec4 gv = g.value(), tv = t.value();
    Vec4 nn = want > 0 ? tt.value() - gv : tt.value() + gv;
    double kappa = pseudo_norm(nn);
    d.s.push_back(s);
    d.t.push_back(tv);
    d.kappa_g.push_back(kappa);
    if (kappa < tol.sing) {
      d.geodesic.push_back(true);
      d.n1.emplace_back();
      d.n2.emplace_back();
      d.tau_g.push_back(0);
      continue;
    }
    Vec4 n1 = nn / kappa;
    double det = det4(gv, tv, tt.value(), ttt.value());
    double tau = want > 0 ? sign_of(inner(n1, n1)) * det / (kappa * kappa) : -det / (kappa * kappa);
    d.geodesic.push_back(false);
    d.n1.push_back(n1);
    d.n2.push_back(triple_product(gv, tv, n1));
    d.tau_g.push_back(tau);
  }
  return d;
}

ThetaFunction::ThetaFunction(SourcePtr src, std::vector<double> grid, double theta0, double sign)
    : src_(std::move(src)), grid_(std::move(grid)), sign_(sign) {
  if (grid_.size() < 2) throw Error(ErrorCode::InvalidArgument, "theta needs a grid");
  theta_.resize(grid_.size());
  theta_[0] = theta0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    double a = grid_[i], h = grid_[i + 1] - a;
    double k1 = ell(a), k2 = ell(a + h / 2), k4 = ell(a + h);
    theta_[i + 1] = theta_[i] + sign_ * h * (k1 + 4 * k2 + k4) / 6;
  }
}

double ThetaFunction::ell(double s) const {
  FrameJet fj = frame_jet(*src_, s);
  return curvature_jets(fj, src_->kind(), eps_of(fj)).ell.value();
}

double ThetaFunction::value(double s) const {
  const double h = (grid_.back() - grid_.front()) / static_cast<double>(grid_.size() - 1);
  long i = std::lround((s - grid_.front()) / h);
  i = std::clamp<long>(i, 0, static_cast<long>(grid_.size()) - 1);
  double a = grid_[i], step = s - a;
  if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(s))) return theta_[i];
  // theta' depends only on s, so RK4 reduces to Simpson's rule.
  return theta_[i] + sign_ * step * (ell(a) + 4 * ell(a + step / 2) + ell(s)) / 6;
}

Jet ThetaFunction::jet(double s) const {
  FrameJet fj = frame_jet(*src_, s);
  Jet l = curvature_jets(fj, src_->kind(), eps_of(fj)).ell;
  Jet::Coeffs c{};
  c[0] = value(s);
  for (int k = 0; k < kJetOrder; ++k) c[k + 1] = sign_ * l.coeff(k) / (k + 1);
  return Jet::from_coeffs(c, l.order() + 1);
}

BishopSource::BishopSource(SourcePtr base, std::vector<double> grid, double theta0)
    : base_(base),
      theta_(base, std::move(grid), theta0, base->kind() == CurveKind::Spacelike ? -1.0 : 1.0) {}

FrameJet BishopSource::jet(double s) const {
  FrameJet fj = frame_jet(*base_, s);
  Jet th = theta_.jet(s);
  if (base_->kind() == CurveKind::Spacelike) {
    Jet c = cosh(th), sh = sinh(th);
    return {fj.gamma, c * fj.v1 + sh * fj.v2, sh * fj.v1 + c * fj.v2};
  }
  Jet c = cos(th), sn = sin(th);
  return {fj.gamma, c * fj.v1 - sn * fj.v2, sn * fj.v1 + c * fj.v2};
}

BishopData bishop_frame(const FramedCurve& fc, double theta0) {
  auto src = std::make_shared<BishopSource>(fc.source, fc.s, theta0);
  BishopData d;
  d.curve.kind = fc.kind;
  d.curve.source = src;
  for (double s : fc.s) {
    FrameJet fj = src->jet(s);
    int eps = eps_of(fj);
    CurvatureJets c = curvature_jets(fj, fc.kind, eps);
    d.s.push_back(s);
    d.theta.push_back(src->theta().value(s));
    d.mbar.push_back(c.m.value());
    d.nbar.push_back(c.n.value());
    d.vbar1.push_back(fj.v1.value());
    d.vbar2.push_back(fj.v2.value());
    d.max_ell_residual = std::max(d.max_ell_residual, std::abs(c.ell.value()));
    d.curve.s.push_back(s);
    d.curve.eps = eps;
    d.curve.gamma.push_back(fj.gamma.value());
    d.curve.v1.push_back(fj.v1.value());
    d.curve.v2.push_back(fj.v2.value());
    d.curve.mu.push_back(fj.mu().value());
  }
  return d;
}

AdaptedFrameData adapted_frame(const FramedCurve& fc, const Tolerances& tol) {
  AdaptedFrameData d;
  const double tf = framed_tolerance(*fc.source, tol);
  for (double s : fc.s) {
    AdaptedJets a = adapted_jets(*fc.source, s, tol);
    double res = std::abs(inner(a.f1.derivative(1), a.mu.value()));
    if (res > 5 * tf)
      throw Error(ErrorCode::FramedConditionViolated, "<f1', mu> residual " + detail::fmt17(res), s);
    d.max_m_residual = std::max(d.max_m_residual, res);
    d.s.push_back(s);
    d.f1.push_back(a.f1.value());
    d.f2.push_back(a.f2.value());
    d.ell_hat.push_back(a.scalars.ell_hat.value());
    d.n_hat.push_back(a.scalars.n_hat.value());
    d.eps_hat.push_back(a.scalars.eps_hat);
  }
  return d;
}

ParallelSource::ParallelSource(SourcePtr base, std::vector<double> grid, const ParallelParams& p)
    : base_(base), p_(p), theta_(base, std::move(grid), p.theta0, -1.0) {
  if (base_->kind() == CurveKind::Spacelike) {
    int eps = eps_of(frame_jet(*base_, base_->domain().lo + 0.5 * base_->domain().length()));
    sigma_ = p.variant == ParallelVariant::CoshSinh ? eps : -eps;
  }
}

FrameJet ParallelSource::jet(double s) const {
  FrameJet fj = frame_jet(*base_, s);
  Jet th = theta_.jet(s);
  const double phi = p_.phi;
  if (base_->kind() == CurveKind::Timelike) {
    Jet c = cos(th), sn = sin(th);
    VecJet w = c * fj.v1 + sn * fj.v2;
    return {std::cosh(phi) * fj.gamma + std::sinh(phi) * w,
            std::sinh(phi) * fj.gamma + std::cosh(phi) * w, -sn * fj.v1 + c * fj.v2};
  }
  const bool cs = p_.variant == ParallelVariant::CoshSinh;
  Jet pp = cs ? cosh(th) : sinh(th);
  Jet rr = cs ? sinh(th) : cosh(th);
  const double f = sigma_ < 0 ? std::cos(phi) : std::cosh(phi);
  const double g = sigma_ < 0 ? std::sin(phi) : std::sinh(phi);
  VecJet w = pp * fj.v1 + rr * fj.v2;
  return {f * fj.gamma + g * w, (sigma_ * g) * fj.gamma + f * w, rr * fj.v1 + pp * fj.v2};
}

ParallelResult parallel_curve(const FramedCurve& fc, const ParallelParams& p,
                              const Tolerances& tol) {
  auto src = std::make_shared<ParallelSource>(fc.source, fc.s, p);
  ParallelResult r;
  r.curve = sample(src, fc.range(), static_cast<int>(fc.size()), tol);
  CurvatureQuad base = framed_curvature(fc);
  CurvatureQuad& q = r.predicted;
  q.kind = fc.kind;
  q.s = fc.s;
  q.source = src;
  q.eps = fc.kind == CurveKind::Spacelike ? src->sigma() : 1;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    double th = src->theta().value(fc.s[i]);
    double a = base.alpha[i], m = base.m[i], n = base.n[i];
    if (fc.kind == CurveKind::Timelike) {
      double w = std::cos(th) * m + std::sin(th) * n;
      q.alpha.push_back(std::cosh(p.phi) * a + std::sinh(p.phi) * w);
      q.m.push_back(std::sinh(p.phi) * a + std::cosh(p.phi) * w);
      q.n.push_back(-std::sin(th) * m + std::cos(th) * n);
    } else {
      const bool cs = p.variant == ParallelVariant::CoshSinh;
      double pp = cs ? std::cosh(th) : std::sinh(th);
      double rr = cs ? std::sinh(th) : std::cosh(th);
      const int sigma = src->sigma();
      double f = sigma < 0 ? std::cos(p.phi) : std::cosh(p.phi);
      double g = sigma < 0 ? std::sin(p.phi) : std::sinh(p.phi);
      double w = pp * m + rr * n;
      q.alpha.push_back(f * a + g * w);
      q.m.push_back(sigma * g * a + f * w);
      q.n.push_back(rr * m + pp * n);
    }
    q.ell.push_back(0.0);
  }
  return r;
}

}  // namespace adscurve
