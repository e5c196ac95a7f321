#include "adscurve/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "adscurve/error.hpp"
#include "json.hpp"
#include "numfmt.hpp"

namespace adscurve {

namespace {

using Mat = std::array<std::array<double, 4>, 4>;

Mat to_mat(const FrameMatrix& f) {
  Mat m{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m[i][j] = f(i, j);
  return m;
}

FrameMatrix to_frame(const Mat& m) {
  return {Vec4(m[0]), Vec4(m[1]), Vec4(m[2]), Vec4(m[3])};
}

Mat mul(const Mat& a, const Mat& b) {
  Mat r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat axpy(const Mat& x, double a, const Mat& y) {
  Mat r = x;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r[i][j] += a * y[i][j];
  return r;
}

Mat coefficients(CurveKind kind, int eps, double a, double l, double m, double n) {
  if (kind == CurveKind::Spacelike)
    return {{{0, 0, 0, a}, {0, 0, l, m}, {0, l, 0, n}, {a, -eps * m, eps * n, 0}}};
  return {{{0, 0, 0, a}, {0, 0, l, m}, {0, -l, 0, n}, {-a, m, n, 0}}};
}

Mat matrix_at(const CurvatureSpec& spec, int eps, double s) {
  CurvatureJets c = spec.jets(s);
  return coefficients(spec.kind, eps, c.alpha.value(), c.ell.value(), c.m.value(), c.n.value());
}

Mat rk4_step(const CurvatureSpec& spec, int eps, double s, double h, const Mat& f) {
  Mat a1 = matrix_at(spec, eps, s), a2 = matrix_at(spec, eps, s + h / 2),
      a4 = matrix_at(spec, eps, s + h);
  Mat k1 = mul(a1, f);
  Mat k2 = mul(a2, axpy(f, h / 2, k1));
  Mat k3 = mul(a2, axpy(f, h / 2, k2));
  Mat k4 = mul(a4, axpy(f, h, k3));
  Mat r = f;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      r[i][j] += h / 6 * (k1[i][j] + 2 * k2[i][j] + 2 * k3[i][j] + k4[i][j]);
  return r;
}

double inner_rows(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return -a[0] * b[0] - a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

void gram_schmidt(Mat& f) {
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      double c = inner_rows(f[k], f[j]) / inner_rows(f[j], f[j]);
      for (std::size_t i = 0; i < 4; ++i) f[k][i] -= c * f[j][i];
    }
    double nrm = std::sqrt(std::abs(inner_rows(f[k], f[k])));
    for (auto& x : f[k]) x /= nrm;
  }
}

// Frame from a reconstruction: node frames plus the frame equations, which
// give exact Taylor coefficients anywhere.
class ReconstructedSource final : public CurveSource {
 public:
  ReconstructedSource(CurvatureSpec spec, int eps, std::vector<double> grid, std::vector<Mat> frames)
      : spec_(std::move(spec)), eps_(eps), grid_(std::move(grid)), frames_(std::move(frames)) {}

  CurveKind kind() const override { return spec_.kind; }
  Interval domain() const override { return {grid_.front(), grid_.back()}; }
  bool exact() const override { return true; }
  std::string name() const override { return "reconstructed"; }

  FrameJet jet(double s) const override {
    if (!domain().contains(s, 1e-12 * std::max(1.0, std::abs(s))))
      throw Error(ErrorCode::DomainError, "outside the reconstructed range", s);
    const double h = (grid_.back() - grid_.front()) / static_cast<double>(grid_.size() - 1);
    long i = std::clamp<long>(std::lround((s - grid_.front()) / h), 0,
                              static_cast<long>(grid_.size()) - 1);
    Mat f = frames_[i];
    double step = s - grid_[i];
    if (step != 0.0) f = rk4_step(spec_, eps_, grid_[i], step, f);

    CurvatureJets c = spec_.jets(s);
    int order = std::min({c.alpha.order(), c.ell.order(), c.m.order(), c.n.order()}) + 1;
    order = std::min(order, kJetOrder);
    std::array<Mat, kJetOrder + 1> a{}, t{};
    for (int k = 0; k < kJetOrder; ++k)
      a[k] = coefficients(spec_.kind, eps_, c.alpha.coeff(k), c.ell.coeff(k), c.m.coeff(k),
                          c.n.coeff(k));
    t[0] = f;
    for (int k = 0; k < order; ++k) {
      Mat acc{};
      for (int j = 0; j <= k; ++j) acc = axpy(acc, 1.0, mul(a[j], t[k - j]));
      t[k + 1] = axpy(Mat{}, 1.0 / (k + 1), acc);
    }
    auto row = [&](std::size_t r) {
      VecJet v;
      for (std::size_t col = 0; col < 4; ++col) {
        Jet::Coeffs cc{};
        for (int k = 0; k <= order; ++k) cc[k] = t[k][r][col];
        v[col] = Jet::from_coeffs(cc, order);
      }
      return v;
    };
    return {row(0), row(1), row(2)};
  }

 private:
  CurvatureSpec spec_;
  int eps_;
  std::vector<double> grid_;
  std::vector<Mat> frames_;
};

std::vector<double> parse_row(const std::string& line, int lineno) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto a = cell.find_first_not_of(" \t\r"), b = cell.find_last_not_of(" \t\r");
    cell = a == std::string::npos ? "" : cell.substr(a, b - a + 1);
    char* end = nullptr;
    double x = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(x))
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad number '" + cell + "'");
    v.push_back(x);
  }
  return v;
}

}  // namespace

CurvatureJets CurvatureSpec::jets(double s) const {
  if (!domain.contains(s, 1e-12 * std::max(1.0, std::abs(s))))
    throw Error(ErrorCode::DomainError, "outside the curvature domain", s);
  Jet t = Jet::variable(s);
  return {kind, eps, alpha(t), ell(t), m(t), n(t)};
}

CurvatureSpec CurvatureSpec::constant(CurveKind kind, double a, double l, double m, double n,
                                      int eps) {
  CurvatureSpec c;
  c.kind = kind;
  c.eps = eps;
  c.alpha = [a](const Jet&) { return Jet(a); };
  c.ell = [l](const Jet&) { return Jet(l); };
  c.m = [m](const Jet&) { return Jet(m); };
  c.n = [n](const Jet&) { return Jet(n); };
  return c;
}

CurvatureSpec read_curvature_csv(std::istream& in, CurveKind kind, int eps) {
  std::vector<double> s;
  std::array<std::vector<double>, 4> cols;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t;
    for (char c : line)
      if (c != ' ' && c != '\t' && c != '\r') t += c;
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (t.rfind("#kind=", 0) == 0) kind = parse_kind(t.substr(6));
      if (t.rfind("#eps=", 0) == 0) eps = std::stoi(t.substr(5)) < 0 ? -1 : 1;
      continue;
    }
    if (!header) {
      if (t != "s,alpha,ell,m,n")
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected header s,alpha,ell,m,n");
      header = true;
      continue;
    }
    auto v = parse_row(t, lineno);
    if (v.size() != 5)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 5 columns");
    s.push_back(v[0]);
    for (std::size_t k = 0; k < 4; ++k) cols[k].push_back(v[k + 1]);
  }
  if (!header) throw Error(ErrorCode::ParseError, "missing header");
  if (s.size() < 2) throw Error(ErrorCode::GridNotUniform, "need at least two rows");
  const double h = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1]) || std::abs(s[i] - s[i - 1] - h) > 1e-9 * std::max(1.0, h))
      throw Error(ErrorCode::GridNotUniform, "curvature grid is not uniform", s[i]);

  auto grid = std::make_shared<std::vector<double>>(s);
  auto make = [grid, h](std::vector<double> col) {
    auto data = std::make_shared<std::vector<double>>(std::move(col));
    return [grid, data, h](const Jet& t) {
      const int n = static_cast<int>(grid->size());
      const int width = std::min(7, n);
      int centre = std::clamp(static_cast<int>(std::lround((t.value() - grid->front()) / h)), 0, n - 1);
      int start = std::clamp(centre - width / 2, 0, n - width);
      std::vector<double> nodes(grid->begin() + start, grid->begin() + start + width);
      int order = std::min(kJetOrder, width - 1);
      auto w = fornberg_weights(t.value(), nodes, order);
      double d[4] = {0, 0, 0, 0};
      for (int k = 0; k <= order; ++k)
        for (int j = 0; j < width; ++j) d[k] += w[k][j] * (*data)[start + j];
      return Jet::from_derivatives(d, order);
    };
  };
  CurvatureSpec spec;
  spec.kind = kind;
  spec.eps = eps;
  spec.alpha = make(cols[0]);
  spec.ell = make(cols[1]);
  spec.m = make(cols[2]);
  spec.n = make(cols[3]);
  spec.domain = {s.front(), s.back()};
  return spec;
}

CurvatureSpec load_curvature_csv(const std::filesystem::path& path, CurveKind kind, int eps) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_curvature_csv(in, kind, eps);
}

void write_curvature_csv(std::ostream& out, const CurvatureQuad& cq) {
  out << "# kind=" << to_string(cq.kind) << "\n# eps=" << cq.eps << "\n";
  out << "s,alpha,ell,m,n\n";
  for (std::size_t i = 0; i < cq.s.size(); ++i)
    out << detail::fmt17(cq.s[i]) << ',' << detail::fmt17(cq.alpha[i]) << ','
        << detail::fmt17(cq.ell[i]) << ',' << detail::fmt17(cq.m[i]) << ','
        << detail::fmt17(cq.n[i]) << '\n';
}

FrameMatrix frame_equation_matrix(CurveKind kind, int eps, double alpha, double ell, double m,
                                  double n) {
  return to_frame(coefficients(kind, eps, alpha, ell, m, n));
}

FrameMatrix canonical_frame(CurveKind kind, int eps) {
  Vec4 g = Vec4::basis(0), a, b;
  if (kind == CurveKind::Timelike) {
    a = Vec4::basis(2);
    b = Vec4::basis(3);
  } else if (eps < 0) {
    a = Vec4::basis(1);
    b = Vec4::basis(2);
  } else {
    a = Vec4::basis(2);
    b = Vec4::basis(1);
  }
  return {g, a, b, triple_product(g, a, b)};
}

FrameMatrix read_init_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("init frame: ") + e.what());
  }
  auto vec = [&](const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_array() || j[key].size() != 4)
      throw Error(ErrorCode::ParseError, std::string("init frame: '") + key + "' must be an array of 4 numbers");
    std::array<double, 4> u{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!j[key][i].is_number())
        throw Error(ErrorCode::ParseError, std::string("init frame: '") + key + "' must hold numbers");
      u[i] = j[key][i].get<double>();
    }
    return Vec4(u);
  };
  return {vec("gamma"), vec("v1"), vec("v2"), vec("mu")};
}

FrameMatrix load_init_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_init_json(in);
}

ReconstructionResult reconstruct(const CurvatureSpec& spec, const FrameMatrix& init,
                                 const Vec4& x0, Interval range, int n,
                                 const ReconstructOptions& opt, const Tolerances& tol) {
  if (max_abs_diff(x0, init.row(0)) > tol.orth)
    throw Error(ErrorCode::InvalidArgument, "initial point differs from the frame's first row");
  const int eps = inner(init.row(1), init.row(1)) < 0 ? -1 : 1;
  if (spec.kind == CurveKind::Spacelike && eps != spec.eps)
    throw Error(ErrorCode::InitNotOrthonormal, "<v1,v1> disagrees with the curvature's eps");
  auto sig = frame_signature(spec.kind, eps);
  auto res = frame_residuals(init, sig, frame_determinant(spec.kind));
  double mu_err = max_abs_diff(init.row(3), triple_product(init.row(0), init.row(1), init.row(2)));
  if (res.orth_residual > tol.orth || mu_err > tol.orth)
    throw Error(ErrorCode::InitNotOrthonormal,
                "frame residual " + detail::fmt17(std::max(res.orth_residual, mu_err)));

  ReconstructionResult r;
  FramedCurve& fc = r.curve;
  fc.kind = spec.kind;
  fc.eps = eps;
  fc.s = uniform_grid(range, n);
  const Mat g0 = to_mat(init.gram());
  const double det0 = init.det();
  std::vector<Mat> frames;
  Mat f = to_mat(init);
  for (std::size_t i = 0; i < fc.s.size(); ++i) {
    if (i > 0) {
      f = rk4_step(spec, eps, fc.s[i - 1], fc.s[i] - fc.s[i - 1], f);
      if (opt.renormalize) gram_schmidt(f);
    }
    frames.push_back(f);
    FrameMatrix fm = to_frame(f);
    Mat g = to_mat(fm.gram());
    double orth = 0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) orth = std::max(orth, std::abs(g[a][b] - g0[a][b]));
    double det = std::abs(fm.det() - det0);
    if (orth > tol.drift * std::max(1.0, fc.s[i] - fc.s.front()))
      throw Error(ErrorCode::ToleranceExceeded, "frame drift " + detail::fmt17(orth), fc.s[i]);
    r.orth_residual.push_back(orth);
    r.det_residual.push_back(det);
    fc.gamma.push_back(fm.row(0));
    fc.v1.push_back(fm.row(1));
    fc.v2.push_back(fm.row(2));
    fc.mu.push_back(fm.row(3));
  }
  CurvatureSpec local = spec;
  local.eps = eps;
  fc.source = std::make_shared<ReconstructedSource>(local, eps, fc.s, std::move(frames));
  return r;
}

DriftReport drift_report(const ReconstructionResult& r) {
  DriftReport d;
  for (double x : r.orth_residual) d.max_orth_residual = std::max(d.max_orth_residual, x);
  for (double x : r.det_residual) d.max_det_residual = std::max(d.max_det_residual, x);
  return d;
}

std::optional<FrameMatrix> congruence_find(const FramedCurve& a, const FramedCurve& b,
                                           const Tolerances& tol) {
  if (a.kind != b.kind) throw Error(ErrorCode::KindMismatch, "curves are of different kinds");
  if (a.size() != b.size() || a.size() == 0) throw Error(ErrorCode::GridMismatch, "sample counts differ");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a.s[i] - b.s[i]) > 1e-12 * std::max(1.0, std::abs(a.s[i])))
      throw Error(ErrorCode::GridMismatch, "parameter grids differ", a.s[i]);

  // A F1^T = F2^T with (F1^T)^{-1} = G1^{-1} F1 eta, G1 = F1 eta F1^T.
  FrameMatrix f1 = a.frame(0), f2 = b.frame(0);
  FrameMatrix g1 = f1.gram();
  std::array<Vec4, 4> ginv_rows;
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<double, 4> row{};
    row[i] = 1.0 / g1(i, i);
    ginv_rows[i] = Vec4(row);
  }
  FrameMatrix m = f2.transpose() * FrameMatrix(ginv_rows) * f1 * FrameMatrix::eta();
  FrameMatrix check = m.transpose() * FrameMatrix::eta() * m - FrameMatrix::eta();
  if (check.max_abs() > tol.congr || std::abs(m.det() - 1) > tol.congr) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = std::max({max_abs_diff(m.apply(a.gamma[i]), b.gamma[i]),
                         max_abs_diff(m.apply(a.v1[i]), b.v1[i]),
                         max_abs_diff(m.apply(a.v2[i]), b.v2[i]),
                         max_abs_diff(m.apply(a.mu[i]), b.mu[i])});
    if (r > tol.congr) return std::nullopt;
  }
  return m;
}

}  // namespace adscurve
