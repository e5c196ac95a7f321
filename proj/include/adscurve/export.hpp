#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "adscurve/reconstruction.hpp"
#include "adscurve/singular_geometry.hpp"

namespace adscurve {

/// hopf: the hyperbolic Hopf map, AdS3 data only. drop4: first three coordinates.
enum class Projection { Hopf, Drop4 };
Projection parse_projection(std::string_view text);
std::array<double, 3> project(const Vec4& u, Projection p, const Tolerances& tol = {});

/// One row per sample. Adapted quantities are NaN where the adapted frame
/// does not exist.
struct AnalysisRow {
  double s, alpha, ell, m, n, ell_hat, n_hat;
  int eps, eps_hat;
  bool adapted;
};

struct Analysis {
  CurveKind kind = CurveKind::Timelike;
  std::vector<AnalysisRow> rows;
  std::vector<double> singular;
};

Analysis analyze(const FramedCurve& fc, const Tolerances& tol = {});

void write_analysis_csv(std::ostream& out, const Analysis& a);
void write_analysis_json(std::ostream& out, const Analysis& a);

void write_evolute_csv(std::ostream& out, const EvoluteResult& r);
/// `frame` may be null (PS samples present).
void write_evolute_json(std::ostream& out, const EvoluteResult& r, const EvoluteFrame* frame);

void write_focal_csv(std::ostream& out, const FocalGrid& g);
void write_focal_json(std::ostream& out, const FocalGrid& g);
void write_focal_obj(std::ostream& out, const FocalGrid& g, Projection p, const Tolerances& tol = {});
void write_locus_csv(std::ostream& out, const std::vector<SingularLocusPoint>& locus);

/// Columns s,y1,y2,y3.
void write_hopf_csv(std::ostream& out, const std::vector<double>& s, const std::vector<Vec4>& points,
                    const Tolerances& tol = {});
void write_gnuplot(std::ostream& out, const std::string& data_file, const std::string& title);

void write_drift_json(std::ostream& out, const DriftReport& d, double step, std::size_t samples);

}  // namespace adscurve
