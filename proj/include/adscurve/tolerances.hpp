#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace adscurve {

/// Numerical thresholds used across the library.
/// Every field can be overridden from the CLI (`--tol key=value`) or from the
/// environment (`ADSCURVE_TOL_<KEY>`).
struct Tolerances {
  double causal = 1e-10;          // null band of the causal classifier
  double orth = 1e-8;             // frame pseudo-orthonormality
  double hopf = 1e-8;             // AdS membership before projecting
  double framed = 1e-6;           // framed conditions on sampled/user data
  double framed_catalog = 1e-10;  // framed conditions on closed-form curves
  double sing = 1e-9;             // |alpha| threshold for singular samples
  double bisect = 1e-12;          // bisection stopping width in s
  double drift = 1e-8;            // reconstruction drift per unit length
  double congr = 1e-6;            // congruence residual
  double cls = 1e-7;              // evolute-curvature zero test
  double root = 1e-9;             // discriminant / omega closeness to zero
  double memb = 1e-8;             // sphere membership of outputs

  /// Set a field by its key (`causal`, `orth`, ..., `class`, ...).
  /// Throws InvalidArgument for unknown keys.
  void set(std::string_view key, double value);
  double get(std::string_view key) const;

  /// Parse "key=value".
  void apply(std::string_view assignment);

  /// Apply every ADSCURVE_TOL_* variable found in the environment.
  void apply_environment();

  static std::vector<std::string> keys();
};

}  // namespace adscurve
