#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tdc {

/// Numerical tolerances shared by every module.
///
/// The process-wide set returned by `Tolerances::current()` is read by all
/// validation code. It may be replaced with `set_current()` once at program
/// start (the CLI does this for `--tol` overrides); it must not be changed
/// while other threads are computing.
struct Tolerances {
  double herm = 1e-9;     ///< X == X^dagger, max-entry distance
  double trace = 1e-9;    ///< unit trace / unit norm
  double cptp = 1e-9;     ///< trace preservation, Kraus/Choi agreement
  double povm = 1e-9;     ///< POVM completeness
  double psd = 1e-8;      ///< eigenvalue floor for positivity
  double schmidt = 1e-10; ///< Schmidt coefficients below this are dropped
  double eig = 1e-10;     ///< eigen-reconstruction residual
  double margin = 1e-7;   ///< strictness of the witness inequality

  static const Tolerances& current();
  static void set_current(const Tolerances& t);

  /// Sets a tolerance by name. Returns false for unknown keys.
  bool set(std::string_view key, double value);

  /// All tolerances as (name, value) pairs in a fixed order.
  std::vector<std::pair<std::string, double>> entries() const;
};

inline const Tolerances& tol() { return Tolerances::current(); }

}  // namespace tdc
