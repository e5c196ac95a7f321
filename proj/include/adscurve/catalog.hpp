#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adscurve/curve_model.hpp"

namespace adscurve {

struct CatalogEntry {
  std::string name;
  CurveKind kind;
  Interval domain;
  std::string description;
};

/// Built-in closed-form framed curves:
///   circle-trivial      timelike great circle, curvature (1, 0, 0, 0)
///   spacelike-example   spacelike framed immersion with a cusp at s = 0
///   timelike-example    timelike immersion, curvature (1, 1, 3/sqrt2, 0)
///   geodesic-spacelike  spacelike geodesic with a constant normal frame
std::vector<CatalogEntry> catalog();

/// Throws InvalidArgument for unknown names. With `derivatives = false` the
/// curve exposes values only.
SourcePtr catalog_curve(std::string_view name, bool derivatives = true);

}  // namespace adscurve
