#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "adscurve/jet.hpp"
#include "adscurve/pseudo_metric.hpp"
#include "adscurve/tolerances.hpp"

namespace adscurve {

/// Spacelike framed curves live in AdS3 with a spacelike unit normal mu and
/// frame vectors of opposite causal type; timelike framed curves have a
/// timelike mu and both frame vectors in S32.
enum class CurveKind { Spacelike, Timelike };

const char* to_string(CurveKind k);
CurveKind parse_kind(std::string_view text);

struct Interval {
  double lo = 0, hi = 0;
  bool contains(double s, double slack = 0) const { return s >= lo - slack && s <= hi + slack; }
  double length() const { return hi - lo; }
};

/// Row signature of the frame (gamma, v1, v2, mu) for a kind and eps = <v1,v1>.
std::array<int, 4> frame_signature(CurveKind kind, int eps);
/// det(gamma, v1, v2, mu) = -<mu,mu>.
double frame_determinant(CurveKind kind);

/// Jets of the frame at one parameter value. mu is recovered as the triple
/// product.
struct FrameJet {
  VecJet gamma, v1, v2;
  VecJet mu() const { return triple_product(gamma, v1, v2); }
};

/// Anything that can report (gamma, v1, v2) and their derivatives.
class CurveSource {
 public:
  virtual ~CurveSource() = default;
  virtual CurveKind kind() const = 0;
  virtual Interval domain() const = 0;
  /// Throws DomainError outside domain().
  virtual FrameJet jet(double s) const = 0;
  /// True when jet() is exact up to rounding (closed form or ODE based).
  virtual bool exact() const = 0;
  virtual std::string name() const = 0;
};

using SourcePtr = std::shared_ptr<const CurveSource>;

/// Closed-form curve. Components are written once as functions of a Taylor
/// jet, so derivatives come out of the arithmetic. With `derivatives = false`
/// only values are exposed and derivatives fall back to finite differences.
class AnalyticCurve final : public CurveSource {
 public:
  using Field = std::function<VecJet(const Jet&)>;

  AnalyticCurve(std::string name, CurveKind kind, Interval domain, Field gamma, Field v1,
                Field v2, bool derivatives = true);

  CurveKind kind() const override { return kind_; }
  Interval domain() const override { return domain_; }
  FrameJet jet(double s) const override;
  bool exact() const override { return derivatives_; }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  CurveKind kind_;
  Interval domain_;
  Field gamma_, v1_, v2_;
  bool derivatives_;
};

/// Uniform table of frame samples. Derivatives come from Fornberg weights on
/// the seven nearest nodes (one-sided near the ends).
class SampledTable final : public CurveSource {
 public:
  SampledTable(std::string name, CurveKind kind, std::vector<double> s, std::vector<Vec4> gamma,
               std::vector<Vec4> v1, std::vector<Vec4> v2);

  CurveKind kind() const override { return kind_; }
  Interval domain() const override { return {s_.front(), s_.back()}; }
  FrameJet jet(double s) const override;
  bool exact() const override { return false; }
  std::string name() const override { return name_; }

  const std::vector<double>& grid() const { return s_; }
  double spacing() const { return h_; }

 private:
  std::string name_;
  CurveKind kind_;
  std::vector<double> s_;
  std::vector<Vec4> gamma_, v1_, v2_;
  double h_;
};

/// The curve s -> base(u(s)). `u` must be increasing on `domain`.
class ReparametrizedSource final : public CurveSource {
 public:
  using Map = std::function<Jet(const Jet&)>;
  ReparametrizedSource(SourcePtr base, Map u, Interval domain);

  CurveKind kind() const override { return base_->kind(); }
  Interval domain() const override { return domain_; }
  FrameJet jet(double s) const override;
  bool exact() const override { return base_->exact(); }
  std::string name() const override { return base_->name() + "-reparametrized"; }

 private:
  SourcePtr base_;
  Map u_;
  Interval domain_;
};

/// The image of a curve and its frame under a fixed linear map (normally an
/// element of SO(2,2)).
class TransformedSource final : public CurveSource {
 public:
  TransformedSource(SourcePtr base, FrameMatrix a);

  CurveKind kind() const override { return base_->kind(); }
  Interval domain() const override { return base_->domain(); }
  FrameJet jet(double s) const override;
  bool exact() const override { return base_->exact(); }
  std::string name() const override { return base_->name() + "-moved"; }

 private:
  SourcePtr base_;
  FrameMatrix a_;
};

/// Weights w[k][j] such that sum_j w[k][j] f(nodes[j]) approximates f^(k)(x0)
/// for k = 0..m.
std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& nodes,
                                                  int m);

struct DiffConfig {
  double h = 1e-3;
  int accuracy = 4;  // 2 or 4
};

enum class FrameField { Gamma, V1, V2, Mu };

/// k-th derivative of a frame field: from the source's jets when it supplies
/// them, otherwise by central differences.
Vec4 differentiate(const CurveSource& src, FrameField field, int order, double s,
                   const DiffConfig& cfg = {});

/// Central finite difference of a frame field, using values only.
/// Throws StencilOutOfDomain when the stencil leaves the domain.
Vec4 finite_difference(const CurveSource& src, FrameField field, int order, double s,
                       const DiffConfig& cfg = {});

/// Central-difference derivative of an arbitrary scalar function.
double finite_difference(const std::function<double(double)>& f, int order, double s,
                         const DiffConfig& cfg = {});

/// Frame jets with full order, filling in finite differences when the source
/// only provides values.
FrameJet frame_jet(const CurveSource& src, double s, const DiffConfig& cfg = {});

/// Uniform grid a + (b - a) i / (n - 1).
std::vector<double> uniform_grid(Interval range, int n);

/// Framed curve sampled on a uniform grid. The source is kept so that
/// derivative information stays available downstream.
struct FramedCurve {
  CurveKind kind = CurveKind::Timelike;
  int eps = 1;  // sign of <v1,v1>
  std::vector<double> s;
  std::vector<Vec4> gamma, v1, v2, mu;
  SourcePtr source;

  std::size_t size() const { return s.size(); }
  FrameMatrix frame(std::size_t i) const { return {gamma[i], v1[i], v2[i], mu[i]}; }
  Interval range() const { return {s.front(), s.back()}; }
};

/// Sample and validate: AdS3 membership, frame signature and the framed
/// conditions <gamma', v_i> = 0.
FramedCurve sample(SourcePtr src, Interval range, int n, const Tolerances& tol = {});

/// The framed-condition tolerance that applies to a source.
double framed_tolerance(const CurveSource& src, const Tolerances& tol);

/// CSV columns: s,g1..g4,v11..v14,v21..v24. Lines starting with '#' are
/// comments; "# kind=spacelike|timelike" sets the kind (default timelike).
std::shared_ptr<SampledTable> read_sampled_csv(std::istream& in, const std::string& name,
                                               const Tolerances& tol = {});
std::shared_ptr<SampledTable> load_sampled_csv(const std::filesystem::path& path,
                                               const Tolerances& tol = {});
void write_sampled_csv(std::ostream& out, const FramedCurve& fc);
void save_sampled_csv(const std::filesystem::path& path, const FramedCurve& fc);

/// Freeze a framed curve as a table source.
std::shared_ptr<SampledTable> table_from(const FramedCurve& fc, const std::string& name);

}  // namespace adscurve
