#include "adscurve/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "adscurve/catalog.hpp"
#include "adscurve/error.hpp"
#include "adscurve/export.hpp"
#include "numfmt.hpp"

namespace adscurve {

namespace {

const char* kColumns =
    "Output columns:\n"
    "  analyze  csv: s,alpha,ell,m,n,ell_hat,n_hat,eps,eps_hat\n"
    "           (# singular_parameters= comment line; nan where the adapted frame degenerates)\n"
    "  evolute  csv: s,e1,e2,e3,e4,branch,disc,sign,causal  (# gap s= comment lines)\n"
    "  focal    obj: one vertex per grid point (s-major), triangulated quads\n"
    "           csv: s,theta,x1,x2,x3,x4,density\n"
    "           <out>.locus.csv: s,theta0,real_root,class,alpha_E,alpha_E_prime,p1,p2,p3,p4\n"
    "  reconstruct csv: s,g1..g4,v11..v14,v21..v24; <out>.drift.json\n"
    "  hopf     csv: s,y1,y2,y3; <out>.gp gnuplot script\n"
    "Exit codes: 0 ok, 2 invalid input, 3 degeneracy, 4 I/O.\n";

struct Config {
  std::string command;
  std::string curve, input, init, kind = "timelike";
  std::string range, theta_range = "-2:2", grid = "101x41", sign = "+";
  std::string fcase = "f3", proj = "hopf", out, format;
  std::vector<std::string> tol;
  int samples = 0, eps = 1;
  bool continuity = false, renormalize = false, evolute = false, strict = false;
};

Interval parse_range(const std::string& text, const char* what) {
  auto colon = text.find(':', text[0] == '-' ? 1 : 0);
  if (colon == std::string::npos)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must look like a:b");
  Interval r;
  try {
    r.lo = std::stod(text.substr(0, colon));
    r.hi = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not numeric: " + text);
  }
  if (!(r.lo < r.hi)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs a < b");
  return r;
}

std::pair<int, int> parse_grid(const std::string& text) {
  auto x = text.find('x');
  if (x == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--grid must look like NxM");
  int n = 0, m = 0;
  try {
    n = std::stoi(text.substr(0, x));
    m = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "--grid is not numeric: " + text);
  }
  if (n < 5 || m < 5) throw Error(ErrorCode::InvalidArgument, "grid counts must be >= 5");
  return {n, m};
}

int check_samples(int n, int fallback) {
  int v = n ? n : fallback;
  if (v < 5) throw Error(ErrorCode::InvalidArgument, "--samples must be >= 5");
  return v;
}

// Primary output: --out file or the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::IoError, "cannot write " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw Error(ErrorCode::IoError, "write failed for " + path_);
    }
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void write_side_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  body(f);
  f.close();
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
}

SourcePtr curve_source(const Config& c, const Tolerances& tol) {
  if (!c.curve.empty() && !c.input.empty())
    throw Error(ErrorCode::InvalidArgument, "give either --curve or --input");
  if (!c.input.empty()) return load_sampled_csv(c.input, tol);
  if (c.curve.empty()) throw Error(ErrorCode::InvalidArgument, "--curve or --input is required");
  return catalog_curve(c.curve);
}

FramedCurve framed_from(const Config& c, const Tolerances& tol) {
  SourcePtr src = curve_source(c, tol);
  Interval range = c.range.empty() ? (c.input.empty() ? Interval{-1, 1} : src->domain())
                                   : parse_range(c.range, "--range");
  return sample(src, range, check_samples(c.samples, 201), tol);
}

std::string format_or(const Config& c, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
  std::string f = c.format.empty() ? fallback : c.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw Error(ErrorCode::InvalidArgument, "format '" + f + "' is not available for " + c.command);
}

void cmd_analyze(const Config& c, const Tolerances& tol, std::ostream& out) {
  std::string fmt = format_or(c, "csv", {"csv", "json"});
  Analysis a = analyze(framed_from(c, tol), tol);
  Sink sink(c.out, out);
  if (fmt == "csv")
    write_analysis_csv(sink.stream(), a);
  else
    write_analysis_json(sink.stream(), a);
  sink.close();
}

void cmd_evolute(const Config& c, const Tolerances& tol, std::ostream& out) {
  std::string fmt = format_or(c, "csv", {"csv", "json"});
  if (c.sign != "+" && c.sign != "-") throw Error(ErrorCode::InvalidArgument, "--sign is + or -");
  FramedCurve fc = framed_from(c, tol);
  EvoluteOptions opt;
  opt.sign = c.sign == "+" ? 1 : -1;
  opt.continuity = c.continuity;
  opt.strict = c.strict;
  EvoluteResult r = evolute(fc, opt, tol);
  Sink sink(c.out, out);
  if (fmt == "csv") {
    write_evolute_csv(sink.stream(), r);
  } else {
    bool all_ads = std::all_of(r.samples.begin(), r.samples.end(),
                               [](const EvoluteSample& e) { return e.branch == Branch::AdS; });
    std::optional<EvoluteFrame> frame;
    if (all_ads && !r.samples.empty()) frame = evolute_frame(fc, r.samples, tol);
    write_evolute_json(sink.stream(), r, frame ? &*frame : nullptr);
  }
  sink.close();
}

void cmd_focal(const Config& c, const Tolerances& tol, std::ostream& out) {
  std::string fmt = format_or(c, "obj", {"obj", "csv", "json"});
  auto [ns, nt] = parse_grid(c.grid);
  FocalCase fcase = parse_focal_case(c.fcase);
  Projection proj = parse_projection(c.proj);
  Interval theta = parse_range(c.theta_range, "--theta-range");
  Config cc = c;
  cc.samples = ns;
  FramedCurve fc = framed_from(cc, tol);
  FocalGrid g = focal_surface(fc, fcase, theta, ns, nt, tol);
  std::vector<SingularLocusPoint> locus = focal_singular_locus(fc, fcase, tol);
  Sink sink(c.out, out);
  if (fmt == "obj")
    write_focal_obj(sink.stream(), g, proj, tol);
  else if (fmt == "csv")
    write_focal_csv(sink.stream(), g);
  else
    write_focal_json(sink.stream(), g);
  sink.close();
  if (!c.out.empty())
    write_side_file(c.out + ".locus.csv", [&](std::ostream& os) { write_locus_csv(os, locus); });
}

CurvatureSpec catalog_constants(const std::string& name) {
  if (name == "timelike-example")
    return CurvatureSpec::constant(CurveKind::Timelike, 1, 1, 3 / std::sqrt(2.0), 0);
  if (name == "circle-trivial") return CurvatureSpec::constant(CurveKind::Timelike, 1, 0, 0, 0);
  if (name == "geodesic-spacelike")
    return CurvatureSpec::constant(CurveKind::Spacelike, 1, 0, 0, 0, -1);
  throw Error(ErrorCode::InvalidArgument,
              "no constant curvature for '" + name + "'; pass a curvature table with --input");
}

void cmd_reconstruct(const Config& c, const Tolerances& tol, std::ostream& out) {
  format_or(c, "csv", {"csv"});
  Interval range = c.range.empty() ? Interval{0, 1} : parse_range(c.range, "--range");
  int n = check_samples(c.samples, 1001);
  CurvatureSpec spec;
  FrameMatrix init;
  if (!c.curve.empty() && !c.input.empty())
    throw Error(ErrorCode::InvalidArgument, "give either --curve or --input");
  if (!c.curve.empty()) {
    spec = catalog_constants(c.curve);
    FrameJet fj = catalog_curve(c.curve)->jet(range.lo);
    init = {fj.gamma.value(), fj.v1.value(), fj.v2.value(), fj.mu().value()};
  } else if (!c.input.empty()) {
    spec = load_curvature_csv(c.input, parse_kind(c.kind), c.eps);
    init = canonical_frame(spec.kind, spec.eps);
  } else {
    throw Error(ErrorCode::InvalidArgument, "--curve or --input is required");
  }
  if (!c.init.empty()) init = load_init_json(c.init);
  ReconstructOptions opt;
  opt.renormalize = c.renormalize;
  ReconstructionResult r = reconstruct(spec, init, init.row(0), range, n, opt, tol);
  DriftReport d = drift_report(r);
  double step = range.length() / (n - 1);
  Sink sink(c.out, out);
  write_sampled_csv(sink.stream(), r.curve);
  if (c.out.empty())
    sink.stream() << "# max_orth=" << detail::fmt17(d.max_orth_residual)
                  << " max_det=" << detail::fmt17(d.max_det_residual) << '\n';
  sink.close();
  if (!c.out.empty())
    write_side_file(c.out + ".drift.json",
                    [&](std::ostream& os) { write_drift_json(os, d, step, r.curve.size()); });
}

void cmd_hopf(const Config& c, const Tolerances& tol, std::ostream& out) {
  format_or(c, "csv", {"csv"});
  FramedCurve fc = framed_from(c, tol);
  std::vector<double> s;
  std::vector<Vec4> pts;
  std::string title = fc.source->name();
  if (c.evolute) {
    EvoluteOptions opt;
    opt.sign = c.sign == "-" ? -1 : 1;
    EvoluteResult r = evolute(fc, opt, tol);
    for (const auto& e : r.samples) {
      if (e.branch != Branch::AdS)
        throw Error(ErrorCode::BranchMismatch, "hopf projection needs the AdS-evolute", e.s);
      s.push_back(e.s);
      pts.push_back(e.point);
    }
    title += " evolute";
  } else {
    s = fc.s;
    pts = fc.gamma;
  }
  Sink sink(c.out, out);
  write_hopf_csv(sink.stream(), s, pts, tol);
  sink.close();
  if (!c.out.empty()) {
    std::string data = std::filesystem::path(c.out).filename().string();
    write_side_file(c.out + ".gp", [&](std::ostream& os) { write_gnuplot(os, data, title); });
  }
}

void cmd_catalog(const Config& c, std::ostream& out) {
  Sink sink(c.out, out);
  sink.stream() << "name,kind,domain,description\n";
  for (const auto& e : catalog())
    sink.stream() << e.name << ',' << to_string(e.kind) << ',' << detail::fmt17(e.domain.lo) << ':'
                  << detail::fmt17(e.domain.hi) << ',' << e.description << '\n';
  sink.close();
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Validation: return kExitValidation;
    case ErrorCategory::Degeneracy: return kExitDegeneracy;
    case ErrorCategory::Io: return kExitIo;
  }
  return kExitValidation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-spherical framed curves in anti-de Sitter 3-space", "adscurve"};
  app.footer(kColumns);
  app.require_subcommand(1, 1);
  Config c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--curve", c.curve, "catalog curve name");
    sub->add_option("--input", c.input, "input table (CSV)");
    sub->add_option("--range", c.range, "parameter range a:b");
    sub->add_option("--samples", c.samples, "number of samples (>= 5)");
    sub->add_option("--tol", c.tol, "tolerance override key=value")->take_all()->expected(1);
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--format", c.format, "csv|json|obj");
  };

  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {{"analyze", "curvature, adapted frame and singular parameters"},
                      {"evolute", "evolute samples with branch and discriminant"},
                      {"focal", "focal surface mesh and its singular locus"},
                      {"reconstruct", "integrate the frame equations from curvature data"},
                      {"hopf", "Hopf projection of a curve or its evolute"},
                      {"catalog", "list built-in curves"}};
  for (const auto& cmd : cmds) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->callback([&c, name = cmd.name] { c.command = name; });
    if (std::string(cmd.name) == "catalog") {
      sub->add_option("--out", c.out, "output path (default stdout)");
      continue;
    }
    add_common(sub);
    const std::string name = cmd.name;
    if (name == "evolute" || name == "hopf") sub->add_option("--sign", c.sign, "+ or -");
    if (name == "evolute") {
      sub->add_flag("--continuity", c.continuity, "flip samples to keep neighbours close");
      sub->add_flag("--strict", c.strict, "fail where the discriminant vanishes");
    }
    if (name == "focal") {
      sub->add_option("--case", c.fcase, "f1|f2:cosh-sinh|f2:sinh-cosh|f3|f4|f5");
      sub->add_option("--theta-range", c.theta_range, "theta range a:b");
      sub->add_option("--grid", c.grid, "NxM samples in s and theta");
      sub->add_option("--proj", c.proj, "hopf|drop4 (obj vertices)");
    }
    if (name == "reconstruct") {
      sub->add_option("--init", c.init, "initial frame JSON");
      sub->add_option("--kind", c.kind, "timelike|spacelike (curvature tables)");
      sub->add_option("--eps", c.eps, "<v1,v1> for spacelike curvature tables");
      sub->add_flag("--renormalize", c.renormalize, "Gram-Schmidt after each step");
    }
    if (name == "hopf") sub->add_flag("--evolute", c.evolute, "project the evolute");
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    Tolerances tol;
    tol.apply_environment();
    for (const auto& t : c.tol) tol.apply(t);
    if (c.command == "analyze") cmd_analyze(c, tol, out);
    else if (c.command == "evolute") cmd_evolute(c, tol, out);
    else if (c.command == "focal") cmd_focal(c, tol, out);
    else if (c.command == "reconstruct") cmd_reconstruct(c, tol, out);
    else if (c.command == "hopf") cmd_hopf(c, tol, out);
    else cmd_catalog(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace adscurve
