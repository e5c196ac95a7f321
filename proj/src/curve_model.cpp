#include "adscurve/curve_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adscurve/error.hpp"
#include "numfmt.hpp"

namespace adscurve {

namespace {

constexpr int kStencil = 7;

double grid_slack(double s) { return 1e-12 * std::max(1.0, std::abs(s)); }

void check_in_domain(const Interval& d, double s) {
  if (!d.contains(s, grid_slack(s)))
    throw Error(ErrorCode::DomainError,
                "outside [" + detail::fmt17(d.lo) + ", " + detail::fmt17(d.hi) + "]", s);
}

// f(u(s)) from the Taylor coefficients of f at u(s0) and the jet of u.
Jet compose(const Jet& f, const Jet& u) {
  Jet delta = u - Jet(u.value());
  Jet result = Jet(f.coeff(0));
  Jet power = Jet(1.0);
  for (int k = 1; k <= kJetOrder; ++k) {
    power = power * delta;
    result = result + Jet(f.coeff(k)) * power;
  }
  return result.truncated(std::min(f.order(), u.order()));
}

VecJet compose(const VecJet& f, const Jet& u) {
  return {compose(f[0], u), compose(f[1], u), compose(f[2], u), compose(f[3], u)};
}

Vec4 field_value(const FrameJet& fj, FrameField field) {
  switch (field) {
    case FrameField::Gamma: return fj.gamma.value();
    case FrameField::V1: return fj.v1.value();
    case FrameField::V2: return fj.v2.value();
    case FrameField::Mu: return triple_product(fj.gamma.value(), fj.v1.value(), fj.v2.value());
  }
  return {};
}

VecJet field_jet(const FrameJet& fj, FrameField field) {
  switch (field) {
    case FrameField::Gamma: return fj.gamma;
    case FrameField::V1: return fj.v1;
    case FrameField::V2: return fj.v2;
    case FrameField::Mu: return fj.mu();
  }
  return {};
}

int central_half_width(int order, int accuracy) {
  if (order < 1 || order > 3) throw Error(ErrorCode::InvalidArgument, "derivative order must be 1..3");
  if (accuracy != 2 && accuracy != 4)
    throw Error(ErrorCode::InvalidArgument, "finite-difference accuracy must be 2 or 4");
  int nodes = 2 * ((order + 1) / 2) - 1 + accuracy;
  return (nodes - 1) / 2;
}

std::vector<double> central_weights(int order, int accuracy) {
  int p = central_half_width(order, accuracy);
  std::vector<double> nodes;
  for (int k = -p; k <= p; ++k) nodes.push_back(k);
  return fornberg_weights(0.0, nodes, order)[order];
}

VecJet jet_from_columns(const Vec4 d[4], int order) {
  VecJet r;
  for (std::size_t i = 0; i < 4; ++i) {
    double c[4] = {d[0][i], d[1][i], d[2][i], d[3][i]};
    r[i] = Jet::from_derivatives(c, order);
  }
  return r;
}

}  // namespace

const char* to_string(CurveKind k) { return k == CurveKind::Spacelike ? "spacelike" : "timelike"; }

CurveKind parse_kind(std::string_view text) {
  if (text == "spacelike") return CurveKind::Spacelike;
  if (text == "timelike") return CurveKind::Timelike;
  throw Error(ErrorCode::InvalidArgument, "unknown curve kind '" + std::string(text) + "'");
}

std::array<int, 4> frame_signature(CurveKind kind, int eps) {
  if (kind == CurveKind::Timelike) return {-1, 1, 1, -1};
  return {-1, eps, -eps, 1};
}

double frame_determinant(CurveKind kind) { return kind == CurveKind::Timelike ? 1.0 : -1.0; }

AnalyticCurve::AnalyticCurve(std::string name, CurveKind kind, Interval domain, Field gamma,
                             Field v1, Field v2, bool derivatives)
    : name_(std::move(name)),
      kind_(kind),
      domain_(domain),
      gamma_(std::move(gamma)),
      v1_(std::move(v1)),
      v2_(std::move(v2)),
      derivatives_(derivatives) {}

FrameJet AnalyticCurve::jet(double s) const {
  check_in_domain(domain_, s);
  Jet t = Jet::variable(s, derivatives_ ? kJetOrder : 0);
  return {gamma_(t), v1_(t), v2_(t)};
}

std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& x, int m) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  if (n == 0) return c;
  double c1 = 1.0, c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0, c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

SampledTable::SampledTable(std::string name, CurveKind kind, std::vector<double> s,
                           std::vector<Vec4> gamma, std::vector<Vec4> v1, std::vector<Vec4> v2)
    : name_(std::move(name)),
      kind_(kind),
      s_(std::move(s)),
      gamma_(std::move(gamma)),
      v1_(std::move(v1)),
      v2_(std::move(v2)) {
  const std::size_t n = s_.size();
  if (gamma_.size() != n || v1_.size() != n || v2_.size() != n)
    throw Error(ErrorCode::InvalidArgument, "table columns have different lengths");
  if (n < 2) throw Error(ErrorCode::GridNotUniform, "a table needs at least two rows");
  h_ = (s_.back() - s_.front()) / static_cast<double>(n - 1);
  if (!(h_ > 0)) throw Error(ErrorCode::GridNotUniform, "parameter column is not increasing");
  for (std::size_t i = 1; i < n; ++i) {
    double step = s_[i] - s_[i - 1];
    if (!(step > 0)) throw Error(ErrorCode::GridNotUniform, "parameter column is not increasing", s_[i]);
    if (std::abs(step - h_) > 1e-9 * std::max(h_, 1.0))
      throw Error(ErrorCode::GridNotUniform, "spacing differs from the mean spacing", s_[i]);
  }
}

FrameJet SampledTable::jet(double s) const {
  check_in_domain(domain(), s);
  const int n = static_cast<int>(s_.size());
  const int width = std::min(kStencil, n);
  int centre = static_cast<int>(std::lround((s - s_.front()) / h_));
  centre = std::clamp(centre, 0, n - 1);
  int start = std::clamp(centre - width / 2, 0, n - width);
  std::vector<double> nodes(s_.begin() + start, s_.begin() + start + width);
  const int order = std::min(kJetOrder, width - 1);
  auto w = fornberg_weights(s, nodes, order);
  const bool on_node = std::abs(s - s_[centre]) <= grid_slack(s);

  auto build = [&](const std::vector<Vec4>& col) {
    Vec4 d[4];
    for (int k = 0; k <= order; ++k) {
      std::array<double, 4> acc{};
      for (int j = 0; j < width; ++j)
        for (std::size_t i = 0; i < 4; ++i) acc[i] += w[k][j] * col[start + j][i];
      d[k] = Vec4(acc);
    }
    if (on_node) d[0] = col[centre];
    return jet_from_columns(d, order);
  };
  return {build(gamma_), build(v1_), build(v2_)};
}

ReparametrizedSource::ReparametrizedSource(SourcePtr base, Map u, Interval domain)
    : base_(std::move(base)), u_(std::move(u)), domain_(domain) {}

FrameJet ReparametrizedSource::jet(double s) const {
  check_in_domain(domain_, s);
  Jet u = u_(Jet::variable(s));
  FrameJet b = base_->jet(u.value());
  return {compose(b.gamma, u), compose(b.v1, u), compose(b.v2, u)};
}

TransformedSource::TransformedSource(SourcePtr base, FrameMatrix a)
    : base_(std::move(base)), a_(a) {}

FrameJet TransformedSource::jet(double s) const {
  FrameJet b = base_->jet(s);
  auto move = [&](const VecJet& v) {
    VecJet r;
    for (std::size_t i = 0; i < 4; ++i) {
      Jet acc(0.0);
      for (std::size_t j = 0; j < 4; ++j) acc += Jet(a_(i, j)) * v[j];
      r[i] = acc;
    }
    return r;
  };
  return {move(b.gamma), move(b.v1), move(b.v2)};
}

Vec4 finite_difference(const CurveSource& src, FrameField field, int order, double s,
                       const DiffConfig& cfg) {
  int p = central_half_width(order, cfg.accuracy);
  Interval d = src.domain();
  if (!d.contains(s - p * cfg.h, grid_slack(s)) || !d.contains(s + p * cfg.h, grid_slack(s)))
    throw Error(ErrorCode::StencilOutOfDomain, "finite-difference stencil leaves the domain", s);
  auto w = central_weights(order, cfg.accuracy);
  std::array<double, 4> acc{};
  for (int k = -p; k <= p; ++k) {
    double wk = w[k + p];
    if (wk == 0.0) continue;
    Vec4 v = field_value(src.jet(s + k * cfg.h), field);
    for (std::size_t i = 0; i < 4; ++i) acc[i] += wk * v[i];
  }
  double scale = std::pow(cfg.h, order);
  return Vec4(acc[0] / scale, acc[1] / scale, acc[2] / scale, acc[3] / scale);
}

double finite_difference(const std::function<double(double)>& f, int order, double s,
                         const DiffConfig& cfg) {
  int p = central_half_width(order, cfg.accuracy);
  auto w = central_weights(order, cfg.accuracy);
  double acc = 0;
  for (int k = -p; k <= p; ++k)
    if (w[k + p] != 0.0) acc += w[k + p] * f(s + k * cfg.h);
  return acc / std::pow(cfg.h, order);
}

Vec4 differentiate(const CurveSource& src, FrameField field, int order, double s,
                   const DiffConfig& cfg) {
  if (order == 0) return field_value(src.jet(s), field);
  VecJet j = field_jet(src.jet(s), field);
  if (j.order() >= order) return j.derivative(order);
  return finite_difference(src, field, order, s, cfg);
}

FrameJet frame_jet(const CurveSource& src, double s, const DiffConfig& cfg) {
  FrameJet fj = src.jet(s);
  if (fj.gamma.order() >= kJetOrder && fj.v1.order() >= kJetOrder && fj.v2.order() >= kJetOrder)
    return fj;
  auto fill = [&](FrameField f, const VecJet& base) {
    Vec4 d[4] = {base.value(), {}, {}, {}};
    for (int k = 1; k <= kJetOrder; ++k) d[k] = finite_difference(src, f, k, s, cfg);
    return jet_from_columns(d, kJetOrder);
  };
  return {fill(FrameField::Gamma, fj.gamma), fill(FrameField::V1, fj.v1),
          fill(FrameField::V2, fj.v2)};
}

std::vector<double> uniform_grid(Interval range, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  if (!(range.hi > range.lo)) throw Error(ErrorCode::InvalidArgument, "empty parameter range");
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i)
    s[i] = range.lo + (range.hi - range.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  s.back() = range.hi;
  return s;
}

double framed_tolerance(const CurveSource& src, const Tolerances& tol) {
  return src.exact() ? tol.framed_catalog : tol.framed;
}

FramedCurve sample(SourcePtr src, Interval range, int n, const Tolerances& tol) {
  Interval d = src->domain();
  if (!d.contains(range.lo, grid_slack(range.lo)) || !d.contains(range.hi, grid_slack(range.hi)))
    throw Error(ErrorCode::DomainError, "sample range leaves the curve's domain");
  FramedCurve fc;
  fc.kind = src->kind();
  fc.s = uniform_grid(range, n);
  fc.source = src;
  const double tf = framed_tolerance(*src, tol);
  for (std::size_t i = 0; i < fc.s.size(); ++i) {
    const double s = fc.s[i];
    FrameJet fj = frame_jet(*src, s);
    Vec4 g = fj.gamma.value(), a = fj.v1.value(), b = fj.v2.value();
    Vec4 mu = triple_product(g, a, b);
    Vec4 dg = fj.gamma.derivative(1);
    if (std::abs(inner(g, g) + 1) > tf)
      throw Error(ErrorCode::MembershipViolated, "gamma is not on AdS3", s);
    int eps = inner(a, a) < 0 ? -1 : 1;
    if (i == 0) fc.eps = eps;
    auto sig = frame_signature(fc.kind, fc.eps);
    auto res = frame_residuals(FrameMatrix(g, a, b, mu), sig, frame_determinant(fc.kind));
    if (eps != fc.eps || res.orth_residual > tf)
      throw Error(ErrorCode::FramedConditionViolated,
                  "frame is not pseudo-orthonormal, residual " + detail::fmt17(res.orth_residual), s);
    double r = std::max(std::abs(inner(dg, a)), std::abs(inner(dg, b)));
    if (r > tf)
      throw Error(ErrorCode::FramedConditionViolated,
                  "<gamma', v_i> residual " + detail::fmt17(r), s);
    fc.gamma.push_back(g);
    fc.v1.push_back(a);
    fc.v2.push_back(b);
    fc.mu.push_back(mu);
  }
  return fc;
}

std::shared_ptr<SampledTable> read_sampled_csv(std::istream& in, const std::string& name,
                                               const Tolerances& tol) {
  static const std::string kHeader = "s,g1,g2,g3,g4,v11,v12,v13,v14,v21,v22,v23,v24";
  CurveKind kind = CurveKind::Timelike;
  bool header_seen = false;
  std::vector<double> s;
  std::vector<Vec4> g, a, b;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string t) {
    auto first = t.find_first_not_of(" \t\r");
    auto last = t.find_last_not_of(" \t\r");
    return first == std::string::npos ? std::string() : t.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string body = trim(t.substr(1));
      if (body.rfind("kind=", 0) == 0) {
        try {
          kind = parse_kind(trim(body.substr(5)));
        } catch (const Error&) {
          throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad kind");
        }
      }
      continue;
    }
    if (!header_seen) {
      std::string compact;
      for (char c : t)
        if (c != ' ') compact += c;
      if (compact != kHeader)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected header " + kHeader);
      header_seen = true;
      continue;
    }
    std::vector<double> v;
    std::stringstream ss(t);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell = trim(cell);
      char* end = nullptr;
      double x = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(x))
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      v.push_back(x);
    }
    if (v.size() != 13)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 13 columns");
    Vec4 gi(v[1], v[2], v[3], v[4]);
    if (std::abs(inner(gi, gi) + 1) > tol.framed)
      throw Error(ErrorCode::MembershipViolated, "gamma is not on AdS3", v[0]);
    s.push_back(v[0]);
    g.push_back(gi);
    a.emplace_back(v[5], v[6], v[7], v[8]);
    b.emplace_back(v[9], v[10], v[11], v[12]);
  }
  if (!header_seen) throw Error(ErrorCode::ParseError, "missing header");
  return std::make_shared<SampledTable>(name, kind, std::move(s), std::move(g), std::move(a),
                                        std::move(b));
}

std::shared_ptr<SampledTable> load_sampled_csv(const std::filesystem::path& path,
                                               const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_sampled_csv(in, path.stem().string(), tol);
}

void write_sampled_csv(std::ostream& out, const FramedCurve& fc) {
  out << "# kind=" << to_string(fc.kind) << "\n";
  out << "s,g1,g2,g3,g4,v11,v12,v13,v14,v21,v22,v23,v24\n";
  for (std::size_t i = 0; i < fc.size(); ++i) {
    out << detail::fmt17(fc.s[i]);
    for (const Vec4* v : {&fc.gamma[i], &fc.v1[i], &fc.v2[i]})
      for (std::size_t k = 0; k < 4; ++k) out << ',' << detail::fmt17((*v)[k]);
    out << '\n';
  }
}

void save_sampled_csv(const std::filesystem::path& path, const FramedCurve& fc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_sampled_csv(out, fc);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::shared_ptr<SampledTable> table_from(const FramedCurve& fc, const std::string& name) {
  return std::make_shared<SampledTable>(name, fc.kind, fc.s, fc.gamma, fc.v1, fc.v2);
}

}  // namespace adscurve
