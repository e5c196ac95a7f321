#pragma once

#include <vector>

#include "adscurve/curve_model.hpp"

namespace adscurve {

/// Curvature (alpha, ell, m, n) as jets, read off the frame equations.
struct CurvatureJets {
  CurveKind kind = CurveKind::Timelike;
  int eps = 1;
  Jet alpha, ell, m, n;
};

CurvatureJets curvature_jets(const FrameJet& fj, CurveKind kind, int eps);

/// Curvature of the adapted frame (f1, f2): alpha, ell_hat, n_hat and, for
/// spacelike curves, eps_hat = <f1,f1>. Timelike curves use eps_hat = 1.
struct AdaptedScalars {
  CurveKind kind = CurveKind::Timelike;
  int eps_hat = 1;
  Jet alpha, ell_hat, n_hat;
};

/// Throws AdaptedFrameDegenerate when n^2 - m^2 (spacelike) or n^2 + m^2
/// (timelike) is within `tol` of zero.
AdaptedScalars adapt(const CurvatureJets& c, double tol, double s);

/// Everything known about the adapted frame at one parameter value.
struct AdaptedJets {
  CurvatureJets curvature;
  AdaptedScalars scalars;
  VecJet gamma, f1, f2, mu;
};

AdaptedJets adapted_jets(const CurveSource& src, double s, const Tolerances& tol = {});

/// Sampled curvature of a framed curve. The source is kept for refinement.
struct CurvatureQuad {
  CurveKind kind = CurveKind::Timelike;
  int eps = 1;
  std::vector<double> s, alpha, ell, m, n;
  SourcePtr source;
};

CurvatureQuad framed_curvature(const FramedCurve& fc);

/// Zeros of alpha: sign changes refined by bisection, plus samples where
/// |alpha| < tol.sing.
std::vector<double> singular_parameters(const CurvatureQuad& cq, const Tolerances& tol = {});

/// Frenet data of a regular curve in arc-length parametrization.
struct RegularFrenetData {
  std::vector<double> s;
  std::vector<Vec4> t, n1, n2;
  std::vector<double> kappa_g, tau_g;
  std::vector<bool> geodesic;  // kappa_g vanishes; n1, n2, tau_g are zero then
};

RegularFrenetData regular_frenet(const FramedCurve& fc, const Tolerances& tol = {});

/// Solution of theta' = sign * ell with theta(grid.front()) = theta0, by RK4
/// on the grid and one more RK4 step for off-grid points.
class ThetaFunction {
 public:
  ThetaFunction(SourcePtr src, std::vector<double> grid, double theta0, double sign);
  double value(double s) const;
  Jet jet(double s) const;

 private:
  double ell(double s) const;
  SourcePtr src_;
  std::vector<double> grid_, theta_;
  double sign_;
};

/// Frame rotated by theta(s) so that the rotated v1' has no v2-component.
/// Spacelike curves use the hyperbolic rotation and theta' = -ell; timelike
/// curves the Euclidean rotation and theta' = +ell.
class BishopSource final : public CurveSource {
 public:
  BishopSource(SourcePtr base, std::vector<double> grid, double theta0);
  CurveKind kind() const override { return base_->kind(); }
  Interval domain() const override { return base_->domain(); }
  FrameJet jet(double s) const override;
  bool exact() const override { return base_->exact(); }
  std::string name() const override { return base_->name() + "-bishop"; }
  const ThetaFunction& theta() const { return theta_; }

 private:
  SourcePtr base_;
  ThetaFunction theta_;
};

struct BishopData {
  std::vector<double> s, theta, mbar, nbar;
  std::vector<Vec4> vbar1, vbar2;
  double max_ell_residual = 0;  // max |<vbar1', vbar2>|
  FramedCurve curve;
};

BishopData bishop_frame(const FramedCurve& fc, double theta0 = 0);

struct AdaptedFrameData {
  std::vector<double> s;
  std::vector<Vec4> f1, f2;
  std::vector<double> ell_hat, n_hat;
  std::vector<int> eps_hat;
  double max_m_residual = 0;  // max |<f1', mu>|
};

AdaptedFrameData adapted_frame(const FramedCurve& fc, const Tolerances& tol = {});

/// Which pair multiplies (v1, v2) in a spacelike parallel.
enum class ParallelVariant { CoshSinh, SinhCosh };

struct ParallelParams {
  double phi = 0;
  ParallelVariant variant = ParallelVariant::CoshSinh;
  double theta0 = 0;
};

/// Parallel framed curve built on the rotation angle theta' = -ell.
class ParallelSource final : public CurveSource {
 public:
  ParallelSource(SourcePtr base, std::vector<double> grid, const ParallelParams& p);
  CurveKind kind() const override { return base_->kind(); }
  Interval domain() const override { return base_->domain(); }
  FrameJet jet(double s) const override;
  bool exact() const override { return base_->exact(); }
  std::string name() const override { return base_->name() + "-parallel"; }

  /// For spacelike curves: sigma = eps (P^2 - R^2); -1 selects (cos, sin) in
  /// phi, +1 selects (cosh, sinh).
  int sigma() const { return sigma_; }
  const ThetaFunction& theta() const { return theta_; }
  const ParallelParams& params() const { return p_; }

 private:
  SourcePtr base_;
  ParallelParams p_;
  ThetaFunction theta_;
  int sigma_ = 1;
};

struct ParallelResult {
  FramedCurve curve;
  /// Curvature predicted from the base curvature and theta, without
  /// differentiating the parallel.
  CurvatureQuad predicted;
};

ParallelResult parallel_curve(const FramedCurve& fc, const ParallelParams& p,
                              const Tolerances& tol = {});

}  // namespace adscurve
