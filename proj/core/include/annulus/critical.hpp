#pragma once

// The radial critical point r0 of the Robin function, R'(r0) = 0.
//
// For n >= 3 the root is found on f(r) = r R'(r), which decreases from +inf
// at r = a to -inf at r = 1. For n = 2, f = r R'(r) with R' increasing from
// -inf to +inf.

#include <string>
#include <vector>

#include "annulus/core.hpp"

namespace annulus::critical {

/// No sign change was found before the sweep reached the boundary standoff.
class BracketError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// The sweep saw more than one sign change of f; the critical point is not
/// unique at the requested truncation.
class MultipleRootsError : public Error {
 public:
  using Error::Error;
};

struct CriticalPointReport {
  double r0 = 0.0;
  double lo = 0.0;  ///< final bracket, f(lo) f(hi) < 0
  double hi = 0.0;
  double residual = 0.0;  ///< |f(r0)|
  double solver_tol = 0.0;

  double second_derivative = 0.0;  ///< R''(r0) from the series
  double second_derivative_uncertainty = 0.0;
  double second_derivative_fd = 0.0;  ///< central difference of R' at r0
  int second_derivative_sign = 0;
  bool nondegenerate = false;
  /// Whether the observed sign matches the stated convexity R''(r0) > 0.
  bool agrees_with_stated_convexity = false;

  double newton_r0 = 0.0;  ///< Newton refinement on f using f'
  bool methods_agree = false;  ///< |newton_r0 - r0| <= 1e-10

  std::string method;
  int evaluations = 0;
};

/// Boundary standoff used by the bracket sweep and the sign-change witness.
double default_standoff(double a);

/// f(r) = r R'(r) for any n >= 2 (n = 2 through the planar series).
EvalResult radial_gradient(const AnnulusGeometry& geom, double r, const TruncationPolicy& policy);

CriticalPointReport find_critical_point(const AnnulusGeometry& geom,
                                        const TruncationPolicy& policy,
                                        double solver_tol = 1e-10);

/// S(r) = sum_m d_m B_m(r) / ((2m+n-2)(1 - a^{2m+n-2})) with
/// B_m = (2-m-n) a^{2m+n-2} r^{-(2m+2n-4)} + m r^{2m} + (n-2) a^{2m+n-2} r^{-(n-2)}.
/// S = -(omega/2) f. Requires n >= 3 and a < r < 1.
EvalResult c3_series_eval(const AnnulusGeometry& geom, double r, const TruncationPolicy& policy);

/// Root of S by the same bracketing bisection. |S(root)| <= solver_tol.
double c3_root(const AnnulusGeometry& geom, const TruncationPolicy& policy,
               double solver_tol = 1e-10);

struct SignChangeWitness {
  int points = 0;
  double standoff = 0.0;
  int sign_changes = 0;
  std::vector<double> crossings;  ///< midpoints of the grid cells that change sign
  int unconverged = 0;            ///< grid points whose series missed the tolerance
};

/// Counts sign changes of f on a uniform grid over [a + delta, 1 - delta].
SignChangeWitness sign_change_witness(const AnnulusGeometry& geom, const TruncationPolicy& policy,
                                      int points = 2000, double standoff = -1.0);

}  // namespace annulus::critical
