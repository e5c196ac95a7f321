#include "adscurve/export.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "adscurve/error.hpp"
#include "json.hpp"
#include "numfmt.hpp"

namespace adscurve {

using detail::fmt17;
using nlohmann::json;

namespace {

json vec_json(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

// JSON has no NaN; degenerate adapted values become null.
json num_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

Projection parse_projection(std::string_view t) {
  if (t == "hopf") return Projection::Hopf;
  if (t == "drop4") return Projection::Drop4;
  throw Error(ErrorCode::InvalidArgument, "unknown projection '" + std::string(t) + "'");
}

std::array<double, 3> project(const Vec4& u, Projection p, const Tolerances& tol) {
  if (p == Projection::Drop4) return {u[0], u[1], u[2]};
  HopfPoint h = hopf_project(u, tol.hopf);
  return {h.y1, h.y2, h.y3};
}

Analysis analyze(const FramedCurve& fc, const Tolerances& tol) {
  Analysis a;
  a.kind = fc.kind;
  CurvatureQuad cq = framed_curvature(fc);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < fc.size(); ++i) {
    AnalysisRow r{cq.s[i], cq.alpha[i], cq.ell[i], cq.m[i], cq.n[i], nan, nan, fc.eps, 0, false};
    try {
      AdaptedScalars sc = adapted_jets(*fc.source, fc.s[i], tol).scalars;
      r.ell_hat = sc.ell_hat.value();
      r.n_hat = sc.n_hat.value();
      r.eps_hat = sc.eps_hat;
      r.adapted = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AdaptedFrameDegenerate) throw;
    }
    a.rows.push_back(r);
  }
  a.singular = singular_parameters(cq, tol);
  return a;
}

void write_analysis_csv(std::ostream& out, const Analysis& a) {
  out << "# kind=" << to_string(a.kind) << '\n';
  out << "# singular_parameters=";
  for (std::size_t i = 0; i < a.singular.size(); ++i) out << (i ? ";" : "") << fmt17(a.singular[i]);
  out << '\n';
  for (const auto& r : a.rows)
    if (!r.adapted) out << "# adapted frame degenerate at s=" << fmt17(r.s) << '\n';
  out << "s,alpha,ell,m,n,ell_hat,n_hat,eps,eps_hat\n";
  for (const auto& r : a.rows) {
    out << fmt17(r.s) << ',' << fmt17(r.alpha) << ',' << fmt17(r.ell) << ',' << fmt17(r.m) << ','
        << fmt17(r.n) << ',' << fmt17(r.ell_hat) << ',' << fmt17(r.n_hat) << ',' << r.eps << ',';
    if (r.adapted)
      out << r.eps_hat;
    else
      out << "nan";
    out << '\n';
  }
}

void write_analysis_json(std::ostream& out, const Analysis& a) {
  json rows = json::array();
  for (const auto& r : a.rows)
    rows.push_back({{"s", r.s},
                    {"alpha", r.alpha},
                    {"ell", r.ell},
                    {"m", r.m},
                    {"n", r.n},
                    {"ell_hat", num_or_null(r.ell_hat)},
                    {"n_hat", num_or_null(r.n_hat)},
                    {"eps", r.eps},
                    {"eps_hat", r.adapted ? json(r.eps_hat) : json(nullptr)}});
  json j{{"kind", to_string(a.kind)}, {"singular_parameters", a.singular}, {"samples", rows}};
  out << j.dump(2) << '\n';
}

void write_evolute_csv(std::ostream& out, const EvoluteResult& r) {
  for (double g : r.gaps) out << "# gap s=" << fmt17(g) << '\n';
  out << "s,e1,e2,e3,e4,branch,disc,sign,causal\n";
  for (const auto& e : r.samples)
    out << fmt17(e.s) << ',' << fmt17(e.point[0]) << ',' << fmt17(e.point[1]) << ','
        << fmt17(e.point[2]) << ',' << fmt17(e.point[3]) << ',' << to_string(e.branch) << ','
        << fmt17(e.disc) << ',' << e.sign_choice << ',' << e.causal_sign << '\n';
}

void write_evolute_json(std::ostream& out, const EvoluteResult& r, const EvoluteFrame* frame) {
  json samples = json::array();
  for (const auto& e : r.samples)
    samples.push_back({{"s", e.s},
                       {"point", vec_json(e.point)},
                       {"branch", to_string(e.branch)},
                       {"disc", e.disc},
                       {"sign", e.sign_choice},
                       {"causal", e.causal_sign}});
  json j{{"samples", samples}, {"gaps", r.gaps}};
  if (frame) {
    json fr = json::array();
    for (std::size_t i = 0; i < frame->s.size(); ++i)
      fr.push_back({{"s", frame->s[i]},
                    {"alpha_E", frame->alpha_E[i]},
                    {"ell_hat_E", frame->ell_hat_E[i]},
                    {"n_hat_E", frame->n_hat_E[i]},
                    {"mu_E", vec_json(frame->mu_E[i])},
                    {"eta", vec_json(frame->eta[i])}});
    j["frame"] = fr;
  }
  out << j.dump(2) << '\n';
}

void write_focal_csv(std::ostream& out, const FocalGrid& g) {
  out << "# case=" << to_string(g.fcase) << '\n';
  out << "s,theta,x1,x2,x3,x4,density\n";
  for (std::size_t i = 0; i < g.s.size(); ++i)
    for (std::size_t j = 0; j < g.theta.size(); ++j) {
      const Vec4& p = g.at(i, j);
      out << fmt17(g.s[i]) << ',' << fmt17(g.theta[j]) << ',' << fmt17(p[0]) << ',' << fmt17(p[1])
          << ',' << fmt17(p[2]) << ',' << fmt17(p[3]) << ','
          << fmt17(g.density[i * g.theta.size() + j]) << '\n';
    }
}

void write_focal_json(std::ostream& out, const FocalGrid& g) {
  json pts = json::array();
  for (const auto& p : g.points) pts.push_back(vec_json(p));
  json j{{"case", to_string(g.fcase)},
         {"target", g.target == Sphere::AdS3 ? "AdS3" : "S32"},
         {"s", g.s},
         {"theta", g.theta},
         {"points", pts},
         {"density", g.density}};
  out << j.dump(2) << '\n';
}

void write_focal_obj(std::ostream& out, const FocalGrid& g, Projection p, const Tolerances& tol) {
  if (p == Projection::Hopf && g.target != Sphere::AdS3)
    throw Error(ErrorCode::InvalidArgument, "hopf projection needs AdS3-valued data; use drop4");
  out << "# focal surface " << to_string(g.fcase) << ", " << g.s.size() << "x" << g.theta.size()
      << '\n';
  for (const auto& v : g.points) {
    auto y = project(v, p, tol);
    out << "v " << fmt17(y[0]) << ' ' << fmt17(y[1]) << ' ' << fmt17(y[2]) << '\n';
  }
  const std::size_t nt = g.theta.size();
  for (std::size_t i = 0; i + 1 < g.s.size(); ++i)
    for (std::size_t j = 0; j + 1 < nt; ++j) {
      std::size_t a = i * nt + j + 1, b = a + 1, c = a + nt, d = c + 1;
      out << "f " << a << ' ' << b << ' ' << d << '\n';
      out << "f " << a << ' ' << d << ' ' << c << '\n';
    }
}

void write_locus_csv(std::ostream& out, const std::vector<SingularLocusPoint>& locus) {
  out << "s,theta0,real_root,class,alpha_E,alpha_E_prime,p1,p2,p3,p4\n";
  for (const auto& p : locus) {
    out << fmt17(p.s0) << ',' << fmt17(p.theta0) << ',' << (p.real_root ? 1 : 0) << ','
        << to_string(p.classification) << ',' << fmt17(p.alpha_E_value) << ','
        << fmt17(p.alpha_E_prime_value);
    for (std::size_t k = 0; k < 4; ++k)
      out << ',' << (p.image ? fmt17((*p.image)[k]) : std::string("nan"));
    out << '\n';
  }
}

void write_hopf_csv(std::ostream& out, const std::vector<double>& s, const std::vector<Vec4>& points,
                    const Tolerances& tol) {
  out << "s,y1,y2,y3\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    HopfPoint h = hopf_project(points[i], tol.hopf);
    out << fmt17(s[i]) << ',' << fmt17(h.y1) << ',' << fmt17(h.y2) << ',' << fmt17(h.y3) << '\n';
  }
}

void write_gnuplot(std::ostream& out, const std::string& data_file, const std::string& title) {
  out << "set datafile separator ','\n"
      << "set title '" << title << "'\n"
      << "set xlabel 'y1'\nset ylabel 'y2'\nset zlabel 'y3'\n"
      << "set view equal xyz\n"
      << "# hyperboloid y1^2 + y2^2 - y3^2 = -1/4, upper sheet\n"
      << "set parametric\nset isosamples 24, 24\nset urange [0:2*pi]\nset vrange [0:1.5]\n"
      << "splot 0.5*sinh(v)*cos(u), 0.5*sinh(v)*sin(u), 0.5*cosh(v) with lines lc rgb '#cccccc' "
         "notitle, \\\n"
      << "      '" << data_file << "' using 2:3:4 skip 1 with lines lw 2 title '" << title << "'\n";
}

void write_drift_json(std::ostream& out, const DriftReport& d, double step, std::size_t samples) {
  json j{{"max_orth", d.max_orth_residual},
         {"max_det", d.max_det_residual},
         {"step", step},
         {"samples", samples}};
  out << j.dump(2) << '\n';
}

}  // namespace adscurve
