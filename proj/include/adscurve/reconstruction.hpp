#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "adscurve/curve_model.hpp"
#include "adscurve/framing.hpp"

namespace adscurve {

/// Curvature functions (alpha, ell, m, n) of the parameter. Evaluators receive
/// Jet::variable(s) and return the Taylor jet of the function there.
struct CurvatureSpec {
  using Fn = std::function<Jet(const Jet&)>;

  CurveKind kind = CurveKind::Timelike;
  int eps = 1;  // <v1,v1> for spacelike curves
  Fn alpha, ell, m, n;
  Interval domain{-std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};

  CurvatureJets jets(double s) const;

  static CurvatureSpec constant(CurveKind kind, double alpha, double ell, double m, double n,
                                int eps = 1);
};

/// Table with columns s,alpha,ell,m,n; derivatives by Fornberg weights.
/// Comment lines may carry "# kind=..." and "# eps=...".
CurvatureSpec read_curvature_csv(std::istream& in, CurveKind kind = CurveKind::Timelike,
                                 int eps = 1);
CurvatureSpec load_curvature_csv(const std::filesystem::path& path,
                                 CurveKind kind = CurveKind::Timelike, int eps = 1);
void write_curvature_csv(std::ostream& out, const CurvatureQuad& cq);

/// Coefficient matrix of the frame equations F' = A F, F = rows (gamma, v1, v2, mu).
FrameMatrix frame_equation_matrix(CurveKind kind, int eps, double alpha, double ell, double m,
                                  double n);

/// A simple frame of the right signature: gamma = e1 and mu their triple product.
FrameMatrix canonical_frame(CurveKind kind, int eps = 1);

/// JSON object with arrays "gamma", "v1", "v2", "mu".
FrameMatrix read_init_json(std::istream& in);
FrameMatrix load_init_json(const std::filesystem::path& path);

struct ReconstructOptions {
  bool renormalize = false;  // Gram-Schmidt in the pseudo metric after each step
};

struct ReconstructionResult {
  FramedCurve curve;
  /// Per-sample drift relative to the initial frame: max |G(s) - G(s0)| with
  /// G = F eta F^T, and |det F(s) - det F(s0)|.
  std::vector<double> orth_residual, det_residual;
};

/// RK4 integration of the frame equations from `init` at range.lo, with
/// n samples. `x0` must equal the first row of `init`.
/// Throws InitNotOrthonormal, ToleranceExceeded.
ReconstructionResult reconstruct(const CurvatureSpec& spec, const FrameMatrix& init,
                                 const Vec4& x0, Interval range, int n,
                                 const ReconstructOptions& opt = {}, const Tolerances& tol = {});

struct DriftReport {
  double max_orth_residual = 0;
  double max_det_residual = 0;
};

DriftReport drift_report(const ReconstructionResult& r);

/// A in SO(2,2) with A x1 = x2 for every frame vector and sample, if one exists.
/// Throws GridMismatch or KindMismatch.
std::optional<FrameMatrix> congruence_find(const FramedCurve& a, const FramedCurve& b,
                                           const Tolerances& tol = {});

}  // namespace adscurve
