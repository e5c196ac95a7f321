#include "adscurve/singular_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "adscurve/error.hpp"
#include "numfmt.hpp"

namespace adscurve {

namespace {

constexpr double kPi = 3.14159265358979323846;

int sign_of(double x) { return x < 0 ? -1 : 1; }

bool spacelike(const AdaptedScalars& a) { return a.kind == CurveKind::Spacelike; }

// First derivative of f at s by Fornberg weights on a stencil shifted to
// stay inside `dom`.
double derivative_within(const std::function<double(double)>& f, double s, Interval dom,
                         const DiffConfig& cfg) {
  const int half = cfg.accuracy >= 4 ? 2 : 1;
  const double h = cfg.h;
  int shift = 0;
  while (s + (half + shift) * h > dom.hi + 1e-12 && shift > -2 * half) --shift;
  while (s + (-half + shift) * h < dom.lo - 1e-12 && shift < 2 * half) ++shift;
  std::vector<double> nodes;
  for (int k = -half; k <= half; ++k) nodes.push_back((k + shift) * h);
  for (double x : nodes)
    if (!dom.contains(s + x, 1e-12))
      throw Error(ErrorCode::StencilOutOfDomain, "range too short for the derivative stencil", s);
  auto w = fornberg_weights(0.0, nodes, 1);
  double acc = 0;
  for (std::size_t j = 0; j < nodes.size(); ++j) acc += w[1][j] * f(s + nodes[j]);
  return acc;
}

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

struct PR {
  double p, r, dp, dr;
};

enum class PairType { Trig, CoshSinh, SinhCosh };

PairType pair_type(const FocalCase& fc) {
  switch (fc.kind) {
    case FocalKind::F1:
    case FocalKind::F5: return PairType::Trig;
    case FocalKind::F3: return PairType::CoshSinh;
    case FocalKind::F4: return PairType::SinhCosh;
    case FocalKind::F2:
      return fc.variant == ParallelVariant::CoshSinh ? PairType::CoshSinh : PairType::SinhCosh;
  }
  return PairType::Trig;
}

PR pair(PairType t, double th) {
  switch (t) {
    case PairType::Trig: return {std::cos(th), std::sin(th), -std::sin(th), std::cos(th)};
    case PairType::CoshSinh: return {std::cosh(th), std::sinh(th), std::sinh(th), std::cosh(th)};
    case PairType::SinhCosh: return {std::sinh(th), std::cosh(th), std::cosh(th), std::sinh(th)};
  }
  return {};
}

Sphere target_sphere(const FocalCase& fc, int eps_zeta) {
  switch (fc.kind) {
    case FocalKind::F1:
    case FocalKind::F3: return Sphere::AdS3;
    case FocalKind::F4:
    case FocalKind::F5: return Sphere::S32;
    case FocalKind::F2: {
      // <P zeta + R f1, same> = eps_zeta (P^2 - R^2) since eps_hat = -eps_zeta.
      int q = fc.variant == ParallelVariant::CoshSinh ? eps_zeta : -eps_zeta;
      return q < 0 ? Sphere::AdS3 : Sphere::S32;
    }
  }
  return Sphere::None;
}

bool timelike_height(HeightKind k) {
  return k == HeightKind::PsTimelike || k == HeightKind::AdsTimelike;
}

CurveKind height_curve_kind(HeightKind k) {
  return k == HeightKind::PsTimelike || k == HeightKind::PsSpacelike ? CurveKind::Spacelike
                                                                     : CurveKind::Timelike;
}

struct MuDerivatives {
  Vec4 mu, d1, d2;
};

// mu, mu', mu'' expanded with the adapted frame equations.
MuDerivatives mu_expansion(const AdaptedJets& aj) {
  const AdaptedScalars& a = aj.scalars;
  double al = a.alpha.value(), al1 = a.alpha.derivative(1);
  double nh = a.n_hat.value(), nh1 = a.n_hat.derivative(1);
  double lh = a.ell_hat.value();
  Vec4 g = aj.gamma.value(), f1 = aj.f1.value(), f2 = aj.f2.value(), mu = aj.mu.value();
  if (spacelike(a)) {
    double e = a.eps_hat;
    return {mu, al * g + e * nh * f2,
            al1 * g + e * nh * lh * f1 + e * nh1 * f2 + (al * al + e * nh * nh) * mu};
  }
  return {mu, -al * g + nh * f2, -al1 * g - nh * lh * f1 + nh1 * f2 + (nh * nh - al * al) * mu};
}

}  // namespace

const char* to_string(Branch b) { return b == Branch::AdS ? "AdS" : "PS"; }

const char* to_string(SingularityType t) {
  switch (t) {
    case SingularityType::CuspidalEdge: return "CuspidalEdge";
    case SingularityType::Swallowtail: return "Swallowtail";
    case SingularityType::Degenerate: return "Degenerate";
    case SingularityType::Unclassified: return "Unclassified";
  }
  return "?";
}

Jet twist_term(const AdaptedScalars& a) {
  return a.alpha * a.n_hat.differentiated() - a.n_hat * a.alpha.differentiated();
}

Jet discriminant(const AdaptedScalars& a) {
  Jet d = twist_term(a);
  Jet ln2 = square(a.ell_hat * a.n_hat);
  Jet n2 = square(a.n_hat), al2 = square(a.alpha);
  if (spacelike(a)) {
    Jet e(static_cast<double>(a.eps_hat));
    return e * d * d - ln2 * (n2 + e * al2);
  }
  return d * d - ln2 * (n2 - al2);
}

Jet standing_term(const AdaptedScalars& a) {
  if (spacelike(a)) return square(a.alpha) + Jet(static_cast<double>(a.eps_hat)) * square(a.n_hat);
  return square(a.alpha) - square(a.n_hat);
}

EvoluteCurvature evolute_curvature(const AdaptedScalars& a, double s) {
  Jet disc = discriminant(a);
  if (!(disc.value() < 0)) throw Error(ErrorCode::BranchMismatch, "evolute is on the PS branch", s);
  const Jet& al = a.alpha;
  const Jet& nh = a.n_hat;
  const Jet& lh = a.ell_hat;
  Jet al1 = al.differentiated(), al2 = al1.differentiated();
  Jet nh1 = nh.differentiated(), nh2 = nh1.differentiated();
  Jet lh1 = lh.differentiated();
  Jet x = standing_term(a);
  Jet neg = -disc;
  EvoluteCurvature r;
  if (spacelike(a)) {
    Jet e(static_cast<double>(a.eps_hat));
    Jet num = nh * (2.0 * lh * al1 * nh1 + nh * (al1 * lh1 - lh * al2)) -
              al * (-(lh * lh * lh) * nh * nh + nh * lh1 * nh1 + lh * (2.0 * nh1 * nh1 - nh * nh2));
    Jet root = sqrt(abs(x));
    r.alpha_E = e * root * num / neg;
    r.ell_hat_E = root.value();
    r.n_hat_E = -a.eps_hat * std::sqrt(neg.value()) / x.value();
  } else {
    Jet num = nh * (2.0 * lh * al1 * nh1 - nh * (-(al1 * lh1) + lh * al2)) -
              al * (lh * lh * lh * nh * nh + nh * lh1 * nh1 + lh * (2.0 * nh1 * nh1 - nh * nh2));
    Jet root = sqrt(-x);
    r.alpha_E = root * num / neg;
    r.ell_hat_E = -root.value();
    r.n_hat_E = std::sqrt(neg.value()) / x.value();
  }
  return r;
}

Jet omega(const AdaptedScalars& a) {
  if (spacelike(a)) throw Error(ErrorCode::KindMismatch, "omega is defined for timelike curves");
  return -twist_term(a) / (a.ell_hat * a.n_hat * sqrt(-standing_term(a)));
}

double alpha_evolute_compact(const AdaptedScalars& a, const Tolerances& tol, double s) {
  Jet w = omega(a);
  if (std::abs(1 - std::abs(w.value())) < tol.root)
    throw Error(ErrorCode::OmegaSingular, "|omega| = 1", s);
  double c = std::sqrt(-standing_term(a).value());
  return -(a.alpha.value() * a.ell_hat.value() / c +
           w.derivative(1) / (1 - w.value() * w.value()));
}

EvolutePoint evolute_at(const CurveSource& src, double s, int sign, const Tolerances& tol) {
  EvolutePoint ep;
  ep.frame = adapted_jets(src, s, tol);
  const AdaptedScalars& a = ep.frame.scalars;
  const double x = standing_term(a).value();
  if (std::abs(x) < tol.root)
    throw Error(ErrorCode::GuardViolated,
                spacelike(a) ? "alpha^2 + eps_hat n_hat^2 vanishes" : "alpha^2 = n_hat^2", s);
  Jet disc = discriminant(a);
  const double dv = disc.value();
  if (std::abs(dv) < tol.root) throw Error(ErrorCode::DiscriminantVanishes, "", s);
  const double n2 = a.n_hat.value() * a.n_hat.value(), al2 = a.alpha.value() * a.alpha.value();
  if (spacelike(a) && dv > 0 && a.eps_hat < 0 && !(n2 < al2))
    throw Error(ErrorCode::GuardViolated, "PS branch with eps_hat = -1 needs n_hat^2 < alpha^2", s);
  if (!spacelike(a) && dv < 0 && !(n2 > al2))
    throw Error(ErrorCode::GuardViolated, "AdS branch needs n_hat^2 > alpha^2", s);

  const AdaptedJets& f = ep.frame;
  Jet ln = a.ell_hat * a.n_hat;
  VecJet num = ln * (a.n_hat * f.gamma - a.alpha * f.f2) - twist_term(a) * f.f1;
  ep.point = Jet(static_cast<double>(sign)) * num / sqrt(abs(disc));
  ep.disc = dv;
  ep.branch = dv < 0 ? Branch::AdS : Branch::PS;
  Vec4 p = ep.point.value();
  double want = ep.branch == Branch::AdS ? -1.0 : 1.0;
  if (std::abs(inner(p, p) - want) > tol.memb)
    throw Error(ErrorCode::MembershipViolated, "evolute point off its sphere", s);
  return ep;
}

EvoluteResult evolute(const FramedCurve& fc, const EvoluteOptions& opt, const Tolerances& tol) {
  if (opt.sign != 1 && opt.sign != -1) throw Error(ErrorCode::InvalidArgument, "sign must be +1 or -1");
  EvoluteResult r;
  const CurveSource& src = *fc.source;
  auto disc_at = [&](double s) { return discriminant(adapted_jets(src, s, tol).scalars).value(); };
  auto standing_at = [&](double s) { return standing_term(adapted_jets(src, s, tol).scalars).value(); };
  auto q_at = [&](double s) {
    CurvatureJets c = curvature_jets(src.jet(s), fc.kind, fc.eps);
    return c.n.value() * c.n.value() - c.m.value() * c.m.value();
  };
  // Guards must hold on the whole interval, not only at the nodes.
  int prev_eps = 0, prev_x = 0;
  double prev_s = 0;
  for (double s : fc.s) {
    AdaptedScalars a = adapted_jets(src, s, tol).scalars;
    int x = sign_of(standing_term(a).value());
    if (prev_eps != 0 && a.eps_hat != prev_eps)
      throw Error(ErrorCode::AdaptedFrameDegenerate, "n^2 = m^2 between samples",
                  bisect(q_at, prev_s, s, tol.bisect));
    if (prev_x != 0 && x != prev_x)
      throw Error(ErrorCode::GuardViolated, "standing term changes sign between samples",
                  bisect(standing_at, prev_s, s, tol.bisect));
    prev_eps = a.eps_hat;
    prev_x = x;
    prev_s = s;
  }
  for (double s : fc.s) {
    try {
      EvolutePoint ep = evolute_at(src, s, opt.sign, tol);
      Vec4 p = ep.point.value();
      r.samples.push_back({s, p, ep.branch, ep.disc, opt.sign, inner(p, p) < 0 ? -1 : 1});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DiscriminantVanishes || opt.strict) throw;
      r.gaps.push_back(s);
    }
  }
  // Zero crossings of the discriminant between neighbouring samples, unless a
  // node between them already sits on the zero.
  const std::size_t node_gaps = r.gaps.size();
  for (std::size_t i = 0; i + 1 < r.samples.size(); ++i) {
    const double lo = r.samples[i].s, hi = r.samples[i + 1].s;
    if (r.samples[i].branch == r.samples[i + 1].branch) continue;
    bool covered = std::any_of(r.gaps.begin(), r.gaps.begin() + static_cast<std::ptrdiff_t>(node_gaps),
                               [&](double g) { return g > lo && g < hi; });
    if (covered) continue;
    double root = bisect(disc_at, lo, hi, tol.bisect);
    if (opt.strict) throw Error(ErrorCode::DiscriminantVanishes, "sign change", root);
    r.gaps.push_back(root);
  }
  std::sort(r.gaps.begin(), r.gaps.end());
  std::vector<EvoluteSample> kept;
  for (const auto& smp : r.samples) {
    bool near_gap = std::any_of(r.gaps.begin(), r.gaps.end(),
                                [&](double g) { return std::abs(g - smp.s) <= tol.root; });
    if (!near_gap) kept.push_back(smp);
  }
  r.samples = std::move(kept);
  if (opt.continuity) r.samples = continuity_fixed(std::move(r.samples));
  return r;
}

std::vector<EvoluteSample> continuity_fixed(std::vector<EvoluteSample> samples) {
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const EvoluteSample& prev = samples[i - 1];
    EvoluteSample& cur = samples[i];
    if (cur.branch != prev.branch) continue;
    if (euclidean_norm(cur.point + prev.point) < euclidean_norm(cur.point - prev.point)) {
      cur.point = -cur.point;
      cur.sign_choice = -cur.sign_choice;
    }
  }
  return samples;
}

Vec4 evolute_at_singular_point(const CurveSource& src, double s, int sign, const Tolerances& tol) {
  AdaptedJets aj = adapted_jets(src, s, tol);
  const AdaptedScalars& a = aj.scalars;
  double al1 = a.alpha.derivative(1);
  double ln = a.ell_hat.value() * a.n_hat.value();
  double den = std::sqrt(std::abs(a.eps_hat * al1 * al1 - ln * ln));
  if (den < tol.root) throw Error(ErrorCode::DiscriminantVanishes, "reduced denominator vanishes", s);
  return sign * (ln * aj.gamma.value() + al1 * aj.f1.value()) / den;
}

EvoluteFrame evolute_frame(const FramedCurve& fc, const std::vector<EvoluteSample>& samples,
                           const Tolerances& tol) {
  EvoluteFrame fr;
  for (const auto& smp : samples) {
    if (smp.branch != Branch::AdS)
      throw Error(ErrorCode::BranchMismatch, "evolute frame needs AdS-branch samples", smp.s);
    EvolutePoint ep = evolute_at(*fc.source, smp.s, smp.sign_choice, tol);
    const AdaptedJets& f = ep.frame;
    const AdaptedScalars& a = f.scalars;
    double al = a.alpha.value(), nh = a.n_hat.value(), lh = a.ell_hat.value();
    double d = twist_term(a).value();
    double x = standing_term(a).value();
    double root_x = std::sqrt(std::abs(x)), root_g = std::sqrt(-ep.disc);
    Vec4 g = f.gamma.value(), f1 = f.f1.value(), f2 = f.f2.value(), mu = f.mu.value();
    Vec4 eta, me;
    if (spacelike(a)) {
      double e = a.eps_hat;
      eta = (al * g + e * nh * f2) / root_x;
      me = (d * (nh * g - al * f2) - lh * nh * (e * nh * nh + al * al) * f1) / (root_x * root_g);
    } else {
      eta = (al * g - nh * f2) / root_x;
      me = (d * (nh * g - al * f2) - lh * nh * (nh * nh - al * al) * f1) / (root_x * root_g);
    }
    me = smp.sign_choice * me;
    EvoluteCurvature ec = evolute_curvature(a, smp.s);
    Vec4 de = ep.point.derivative(1);
    fr.s.push_back(smp.s);
    fr.eta.push_back(eta);
    fr.mu_E.push_back(me);
    fr.alpha_E.push_back(ec.alpha_E.value());
    fr.ell_hat_E.push_back(ec.ell_hat_E);
    fr.n_hat_E.push_back(ec.n_hat_E);
    fr.sign.push_back(smp.sign_choice);
    fr.max_mu_residual = std::max(fr.max_mu_residual, std::abs(inner(de, mu)));
    fr.max_eta_residual = std::max(fr.max_eta_residual, std::abs(inner(de, eta)));
  }
  return fr;
}

std::vector<double> alpha_evolute_compact(const FramedCurve& fc, const Tolerances& tol) {
  if (fc.kind != CurveKind::Timelike)
    throw Error(ErrorCode::KindMismatch, "compact form applies to timelike curves");
  std::vector<double> out;
  for (double s : fc.s) out.push_back(alpha_evolute_compact(adapted_jets(*fc.source, s, tol).scalars, tol, s));
  return out;
}

std::vector<double> alpha_evolute_projected(const FramedCurve& fc, const EvoluteFrame& frame,
                                            const DiffConfig& cfg, const Tolerances& tol) {
  std::vector<double> out;
  const Interval dom = fc.source->domain();
  for (std::size_t i = 0; i < frame.s.size(); ++i) {
    const double s = frame.s[i];
    const int sign = frame.sign[i];
    std::array<double, 4> d{};
    for (std::size_t k = 0; k < 4; ++k)
      d[k] = derivative_within(
          [&](double t) { return evolute_at(*fc.source, t, sign, tol).point.value()[k]; }, s, dom, cfg);
    Vec4 de(d);
    const Vec4& me = frame.mu_E[i];
    out.push_back(inner(de, me) / inner(me, me));
  }
  return out;
}

FocalCase parse_focal_case(std::string_view t) {
  if (t == "f1") return {FocalKind::F1};
  if (t == "f2:cosh-sinh") return {FocalKind::F2, ParallelVariant::CoshSinh};
  if (t == "f2:sinh-cosh") return {FocalKind::F2, ParallelVariant::SinhCosh};
  if (t == "f3") return {FocalKind::F3};
  if (t == "f4") return {FocalKind::F4};
  if (t == "f5") return {FocalKind::F5};
  throw Error(ErrorCode::InvalidArgument, "unknown focal case '" + std::string(t) + "'");
}

std::string to_string(const FocalCase& c) {
  switch (c.kind) {
    case FocalKind::F1: return "f1";
    case FocalKind::F2:
      return c.variant == ParallelVariant::CoshSinh ? "f2:cosh-sinh" : "f2:sinh-cosh";
    case FocalKind::F3: return "f3";
    case FocalKind::F4: return "f4";
    case FocalKind::F5: return "f5";
  }
  return "?";
}

FocalBasis focal_basis(const CurveSource& src, double s, const FocalCase& fcase,
                       const Tolerances& tol) {
  AdaptedJets aj = adapted_jets(src, s, tol);
  const AdaptedScalars& a = aj.scalars;
  Jet x = spacelike(a) ? -square(a.n_hat) - Jet(static_cast<double>(a.eps_hat)) * square(a.alpha)
                       : square(a.alpha) - square(a.n_hat);
  if (std::abs(x.value()) < tol.root)
    throw Error(ErrorCode::GuardViolated, "zeta is null", s);
  FocalBasis b;
  b.eps_zeta = sign_of(x.value());
  bool ok = false;
  switch (fcase.kind) {
    case FocalKind::F1: ok = spacelike(a) && b.eps_zeta * a.eps_hat == 1; break;
    case FocalKind::F2: ok = spacelike(a) && b.eps_zeta * a.eps_hat == -1; break;
    case FocalKind::F3:
    case FocalKind::F4: ok = !spacelike(a) && b.eps_zeta == -1; break;
    case FocalKind::F5: ok = !spacelike(a) && b.eps_zeta == 1; break;
  }
  if (!ok)
    throw Error(ErrorCode::CasePreconditionViolated,
                "causal signs do not fit case " + to_string(fcase), s);
  Jet c = sqrt(abs(x));
  b.zeta = (a.n_hat * aj.gamma - a.alpha * aj.f2) / c;
  b.f1 = aj.f1;
  b.c = c.value();
  b.D = twist_term(a).value();
  b.ell_n = a.ell_hat.value() * a.n_hat.value();
  return b;
}

FocalPoint focal_point(const CurveSource& src, double s, double theta, const FocalCase& fcase,
                       const Tolerances& tol) {
  FocalBasis b = focal_basis(src, s, fcase, tol);
  PR pr = pair(pair_type(fcase), theta);
  FocalPoint fp;
  Vec4 z = b.zeta.value(), f1 = b.f1.value();
  fp.point = pr.p * z + pr.r * f1;
  fp.ds = pr.p * b.zeta.derivative(1) + pr.r * b.f1.derivative(1);
  fp.dtheta = pr.dp * z + pr.dr * f1;
  double core = pr.p * b.D / b.c + pr.r * b.ell_n;
  switch (fcase.kind) {
    case FocalKind::F1: fp.density = -core / b.c; break;
    case FocalKind::F2: fp.density = (pr.r * pr.r - pr.p * pr.p) / b.c * core; break;
    default: fp.density = core; break;
  }
  return fp;
}

FocalGrid focal_surface(const FramedCurve& fc, const FocalCase& fcase, Interval theta_range,
                        int n_s, int n_theta, const Tolerances& tol) {
  FocalGrid g;
  g.fcase = fcase;
  g.s = uniform_grid(fc.range(), n_s);
  g.theta = uniform_grid(theta_range, n_theta);
  for (double s : g.s) {
    FocalBasis b = focal_basis(*fc.source, s, fcase, tol);
    g.target = target_sphere(fcase, b.eps_zeta);
    for (double th : g.theta) {
      FocalPoint p = focal_point(*fc.source, s, th, fcase, tol);
      if (std::abs(inner(p.point, p.point) - sphere_value(g.target)) > tol.memb)
        throw Error(ErrorCode::MembershipViolated, "focal point off its sphere", s);
      g.points.push_back(p.point);
      g.density.push_back(p.density);
    }
  }
  return g;
}

double classification_value(const CurveSource& src, double s, const Tolerances& tol) {
  EvolutePoint ep = evolute_at(src, s, 1, tol);
  const AdaptedScalars& a = ep.frame.scalars;
  if (ep.branch == Branch::AdS) return evolute_curvature(a, s).alpha_E.value();
  const AdaptedJets& f = ep.frame;
  double al = a.alpha.value(), nh = a.n_hat.value(), lh = a.ell_hat.value();
  double x = spacelike(a) ? a.eps_hat * nh * nh + al * al : nh * nh - al * al;
  Vec4 w = twist_term(a).value() * (nh * f.gamma.value() - al * f.f2.value()) - lh * nh * x * f.f1.value();
  double q = inner(w, w);
  if (std::abs(q) < tol.root) return 0.0;
  Vec4 unit = w / std::sqrt(std::abs(q));
  return inner(ep.point.derivative(1), unit) / inner(unit, unit);
}

SingularityType classify(const FramedCurve& fc, const FocalCase& fcase, SingularLocusPoint& p,
                         const Tolerances& tol, const DiffConfig& cfg) {
  if (fcase.kind == FocalKind::F5) return p.classification = SingularityType::Unclassified;
  if (!p.real_root) return p.classification = SingularityType::Degenerate;
  const CurveSource& src = *fc.source;
  p.alpha_E_value = classification_value(src, p.s0, tol);
  p.alpha_E_prime_value = derivative_within(
      [&](double t) { return classification_value(src, t, tol); }, p.s0, src.domain(), cfg);
  if (std::abs(p.alpha_E_value) > tol.cls) return p.classification = SingularityType::CuspidalEdge;
  if (std::abs(p.alpha_E_prime_value) > tol.cls) return p.classification = SingularityType::Swallowtail;
  return p.classification = SingularityType::Degenerate;
}

namespace {

SingularLocusPoint locus_at(const FramedCurve& fc, const FocalCase& fcase, double s,
                            const Tolerances& tol, const DiffConfig& cfg) {
  FocalBasis b = focal_basis(*fc.source, s, fcase, tol);
  const double dc = b.D / b.c, ln = b.ell_n;
  if (std::abs(dc) < tol.root && std::abs(ln) < tol.root)
    throw Error(ErrorCode::DegenerateDensity, "both density coefficients vanish", s);
  SingularLocusPoint p;
  p.s0 = s;
  switch (pair_type(fcase)) {
    case PairType::Trig:
      p.theta0 = std::abs(ln) < tol.root ? kPi / 2 : std::atan(-dc / ln);
      break;
    case PairType::CoshSinh: {
      double ratio = std::abs(ln) < tol.root ? 2.0 : -dc / ln;
      p.real_root = std::abs(ratio) < 1;
      p.theta0 = p.real_root ? std::atanh(ratio) : std::nan("");
      break;
    }
    case PairType::SinhCosh: {
      double ratio = std::abs(dc) < tol.root ? 2.0 : -ln / dc;
      p.real_root = std::abs(ratio) < 1;
      p.theta0 = p.real_root ? std::atanh(ratio) : std::nan("");
      break;
    }
  }
  if (p.real_root) p.image = focal_point(*fc.source, s, p.theta0, fcase, tol).point;
  classify(fc, fcase, p, tol, cfg);
  return p;
}

}  // namespace

std::vector<SingularLocusPoint> focal_singular_locus(const FramedCurve& fc, const FocalCase& fcase,
                                                     const Tolerances& tol, const DiffConfig& cfg) {
  std::vector<SingularLocusPoint> pts;
  for (double s : fc.s) pts.push_back(locus_at(fc, fcase, s, tol, cfg));
  if (fcase.kind == FocalKind::F5) return pts;
  // Add the parameters where the evolute curvature crosses zero.
  std::vector<SingularLocusPoint> extra;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    if (!a.real_root || !b.real_root) continue;
    if (std::abs(a.alpha_E_value) <= tol.cls || std::abs(b.alpha_E_value) <= tol.cls) continue;
    if ((a.alpha_E_value < 0) == (b.alpha_E_value < 0)) continue;
    double root = bisect([&](double t) { return classification_value(*fc.source, t, tol); }, a.s0,
                         b.s0, tol.bisect);
    extra.push_back(locus_at(fc, fcase, root, tol, cfg));
  }
  pts.insert(pts.end(), extra.begin(), extra.end());
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto& x, const auto& y) { return x.s0 < y.s0; });
  return pts;
}

HeightKind parse_height_kind(std::string_view t) {
  if (t == "ps-timelike") return HeightKind::PsTimelike;
  if (t == "ps-spacelike") return HeightKind::PsSpacelike;
  if (t == "ads-timelike") return HeightKind::AdsTimelike;
  if (t == "ads-spacelike") return HeightKind::AdsSpacelike;
  throw Error(ErrorCode::InvalidArgument, "unknown height function '" + std::string(t) + "'");
}

HeightCheck height_check(const FramedCurve& fc, const Vec4& v, double s, HeightKind which,
                         const Tolerances& tol) {
  if (fc.kind != height_curve_kind(which))
    throw Error(ErrorCode::KindMismatch, "height function does not fit the curve kind");
  const double want = timelike_height(which) ? -1.0 : 1.0;
  if (std::abs(inner(v, v) - want) > tol.memb)
    throw Error(ErrorCode::SphereMismatch, "v is not on the height function's sphere", s);
  MuDerivatives m = mu_expansion(adapted_jets(*fc.source, s, tol));
  return {v, inner(m.mu, v), inner(m.d1, v), inner(m.d2, v), which};
}

DiscriminantScan discriminant_scan(const FramedCurve& fc, HeightKind which,
                                   const std::vector<double>& b_values, const Tolerances& tol) {
  if (fc.kind != height_curve_kind(which))
    throw Error(ErrorCode::KindMismatch, "height function does not fit the curve kind");
  const double want = timelike_height(which) ? -1.0 : 1.0;
  DiscriminantScan out;
  for (double s : fc.s) {
    AdaptedJets aj = adapted_jets(*fc.source, s, tol);
    const AdaptedScalars& a = aj.scalars;
    const double al = a.alpha.value(), nh = a.n_hat.value();
    const double e1 = spacelike(a) ? a.eps_hat : 1.0;   // <f1,f1>
    const double e2 = spacelike(a) ? -a.eps_hat : 1.0;  // <f2,f2>
    Vec4 g = aj.gamma.value(), f1 = aj.f1.value(), f2 = aj.f2.value();
    if (std::abs(nh) >= tol.root) {
      const double den = -1 + al * al * e2 / (nh * nh);
      for (double b : b_values) {
        if (std::abs(den) < tol.root) break;
        double a2 = (want - b * b * e1) / den;
        if (!(a2 > 0)) continue;
        for (double sgn : {1.0, -1.0}) {
          double av = sgn * std::sqrt(a2);
          out.first.push_back({s, av, b, av * g + b * f1 - (av * al / nh) * f2});
        }
      }
    }
    MuDerivatives m = mu_expansion(aj);
    Vec4 w = triple_product(m.mu, m.d1, m.d2);
    double q = inner(w, w);
    if (std::abs(q) < tol.root || (q < 0) != (want < 0)) continue;
    Vec4 v = w / std::sqrt(std::abs(q));
    if (inner(v, g) > 0) v = -v;
    out.second_s.push_back(s);
    out.second.push_back(v);
  }
  return out;
}

}  // namespace adscurve
