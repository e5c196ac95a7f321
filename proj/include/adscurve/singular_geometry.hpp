#pragma once

#include <optional>
#include <vector>

#include "adscurve/curve_model.hpp"
#include "adscurve/framing.hpp"

namespace adscurve {

/// AdS branch: the discriminant is negative and the evolute lies on AdS3.
/// PS branch: positive discriminant, evolute on S32.
enum class Branch { AdS, PS };
const char* to_string(Branch b);

// ---------------------------------------------------------------------------
// Scalar layer: quantities that depend only on (alpha, ell_hat, n_hat).

/// D = alpha n_hat' - n_hat alpha'.
Jet twist_term(const AdaptedScalars& a);

/// g = eps_hat D^2 - ell_hat^2 n_hat^2 (n_hat^2 + eps_hat alpha^2) for
/// spacelike curves, f = D^2 - ell_hat^2 n_hat^2 (n_hat^2 - alpha^2) for
/// timelike curves.
Jet discriminant(const AdaptedScalars& a);

/// alpha^2 + eps_hat n_hat^2 (spacelike) or alpha^2 - n_hat^2 (timelike);
/// must not vanish for the evolute to be defined.
Jet standing_term(const AdaptedScalars& a);

/// Curvature of the AdS-evolute's frame in closed form.
struct EvoluteCurvature {
  Jet alpha_E;  // one order below the inputs' second derivatives
  double ell_hat_E = 0, n_hat_E = 0;
};

/// Throws BranchMismatch on the PS branch.
EvoluteCurvature evolute_curvature(const AdaptedScalars& a, double s = 0);

/// omega = -D / (ell_hat n_hat sqrt(n_hat^2 - alpha^2)), timelike only.
Jet omega(const AdaptedScalars& a);

/// -(alpha ell_hat / sqrt(n_hat^2 - alpha^2) + omega' / (1 - omega^2)).
/// Throws OmegaSingular when |omega| is within tol.root of 1.
double alpha_evolute_compact(const AdaptedScalars& a, const Tolerances& tol, double s = 0);

// ---------------------------------------------------------------------------
// Evolutes.

struct EvoluteSample {
  double s = 0;
  Vec4 point;
  Branch branch = Branch::AdS;
  double disc = 0;
  int sign_choice = 1;
  int causal_sign = -1;  // <E,E>
};

struct EvoluteOptions {
  int sign = 1;
  bool continuity = false;  // flip samples to minimise jumps between neighbours
  bool strict = false;      // throw DiscriminantVanishes instead of leaving gaps
};

struct EvoluteResult {
  std::vector<EvoluteSample> samples;
  /// Parameters where the discriminant vanishes, located by bisection; the
  /// samples within tol.root of them are left out.
  std::vector<double> gaps;
};

/// Evolute point and its jet at one parameter; throws GuardViolated or
/// DiscriminantVanishes.
struct EvolutePoint {
  VecJet point;
  AdaptedJets frame;
  double disc = 0;
  Branch branch = Branch::AdS;
};

EvolutePoint evolute_at(const CurveSource& src, double s, int sign, const Tolerances& tol = {});

EvoluteResult evolute(const FramedCurve& fc, const EvoluteOptions& opt = {},
                      const Tolerances& tol = {});

/// Flip individual samples so that successive points stay close.
std::vector<EvoluteSample> continuity_fixed(std::vector<EvoluteSample> samples);

/// Evolute at a singular point of gamma (alpha = 0):
/// +-(n_hat ell_hat gamma + alpha' f1) / sqrt|eps_hat alpha'^2 - ell_hat^2 n_hat^2|.
Vec4 evolute_at_singular_point(const CurveSource& src, double s, int sign,
                               const Tolerances& tol = {});

struct EvoluteFrame {
  std::vector<double> s;
  std::vector<Vec4> eta, mu_E;
  std::vector<double> alpha_E, ell_hat_E, n_hat_E;
  std::vector<int> sign;
  double max_mu_residual = 0;   // max |<E', mu>|
  double max_eta_residual = 0;  // max |<E', eta>|
};

/// Frame (E, mu, eta) of the AdS-evolute with mu_E and its curvature.
/// Samples with sign -1 get mu_E negated so that E' = alpha_E mu_E still holds.
EvoluteFrame evolute_frame(const FramedCurve& fc, const std::vector<EvoluteSample>& samples,
                           const Tolerances& tol = {});

/// Compact-form alpha_E per sample (timelike curves).
std::vector<double> alpha_evolute_compact(const FramedCurve& fc, const Tolerances& tol = {});

/// alpha_E as <E', mu_E> / <mu_E, mu_E> with E' from central differences of
/// evolute points.
std::vector<double> alpha_evolute_projected(const FramedCurve& fc, const EvoluteFrame& frame,
                                            const DiffConfig& cfg = {}, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Focal surfaces.

enum class FocalKind { F1, F2, F3, F4, F5 };

/// F2 needs the pair (P, R) multiplying (zeta, f1).
struct FocalCase {
  FocalKind kind = FocalKind::F3;
  ParallelVariant variant = ParallelVariant::CoshSinh;
};

FocalCase parse_focal_case(std::string_view text);
std::string to_string(const FocalCase& c);

struct FocalGrid {
  FocalCase fcase;
  Sphere target = Sphere::AdS3;
  std::vector<double> s, theta;
  std::vector<Vec4> points;      // s-major: index i * theta.size() + j
  std::vector<double> density;   // signed density lambda
  const Vec4& at(std::size_t i, std::size_t j) const { return points[i * theta.size() + j]; }
};

/// zeta = (n_hat gamma - alpha f2) / c and its causal sign.
struct FocalBasis {
  VecJet zeta, f1;
  int eps_zeta = 1;
  double c = 0;
  double D = 0, ell_n = 0;  // coefficients of the singular condition
};

FocalBasis focal_basis(const CurveSource& src, double s, const FocalCase& fc,
                       const Tolerances& tol = {});

/// Point of the focal surface and its two partial derivatives.
struct FocalPoint {
  Vec4 point, ds, dtheta;
  double density = 0;
};

FocalPoint focal_point(const CurveSource& src, double s, double theta, const FocalCase& fc,
                       const Tolerances& tol = {});

FocalGrid focal_surface(const FramedCurve& fc, const FocalCase& fcase, Interval theta_range,
                        int n_s, int n_theta, const Tolerances& tol = {});

enum class SingularityType { CuspidalEdge, Swallowtail, Degenerate, Unclassified };
const char* to_string(SingularityType t);

struct SingularLocusPoint {
  double s0 = 0;
  double theta0 = 0;
  bool real_root = true;  // false when the tanh relation has no solution
  SingularityType classification = SingularityType::Degenerate;
  double alpha_E_value = 0;
  double alpha_E_prime_value = 0;
  std::optional<Vec4> image;
};

/// Locus at each grid parameter plus bisection-refined points where the
/// evolute curvature changes sign. Throws DegenerateDensity.
std::vector<SingularLocusPoint> focal_singular_locus(const FramedCurve& fc, const FocalCase& fcase,
                                                     const Tolerances& tol = {},
                                                     const DiffConfig& cfg = {});

/// Fills alpha_E_value, alpha_E_prime_value and classification.
/// F5 points are left Unclassified.
SingularityType classify(const FramedCurve& fc, const FocalCase& fcase, SingularLocusPoint& p,
                         const Tolerances& tol = {}, const DiffConfig& cfg = {});

/// Evolute-curvature value used for classification at s: the closed form on
/// the AdS branch, otherwise the signed speed of the evolute along the unit
/// normal of its frame.
double classification_value(const CurveSource& src, double s, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Height functions H(s, v) = <mu(s), v>.

/// PsTimelike / PsSpacelike: spacelike curves with v on AdS3 / S32.
/// AdsTimelike / AdsSpacelike: timelike curves with v on AdS3 / S32.
enum class HeightKind { PsTimelike, PsSpacelike, AdsTimelike, AdsSpacelike };
HeightKind parse_height_kind(std::string_view text);

struct HeightCheck {
  Vec4 v;
  double h = 0, hs = 0, hss = 0;
  HeightKind which = HeightKind::AdsTimelike;
};

/// Throws SphereMismatch when v is not on the sphere of `which`, KindMismatch
/// when the curve kind does not fit.
HeightCheck height_check(const FramedCurve& fc, const Vec4& v, double s, HeightKind which,
                         const Tolerances& tol = {});

struct DiscriminantPoint {
  double s = 0, a = 0, b = 0;
  Vec4 v;
};

struct DiscriminantScan {
  std::vector<DiscriminantPoint> first;  // H = H_s = 0
  std::vector<double> second_s;
  std::vector<Vec4> second;              // H = H_s = H_ss = 0, oriented with <v, gamma> < 0
};

/// For each grid parameter: v = a gamma + b f1 - (a alpha / n_hat) f2 for
/// every b in `b_values` with a real a (both signs), and the direction
/// orthogonal to mu, mu', mu''.
DiscriminantScan discriminant_scan(const FramedCurve& fc, HeightKind which,
                                   const std::vector<double>& b_values,
                                   const Tolerances& tol = {});

}  // namespace adscurve
