#pragma once

// Zonal expansions of the Newtonian potential and the annulus Poisson kernel.

#include <functional>
#include <span>
#include <stdexcept>

#include "annulus/core.hpp"
#include "annulus/quadrature.hpp"

namespace annulus::kernels {

// |xi - y|^{2-n} = sum_m ((n-2)/(2m+n-2)) |y|^m Z_m(xi, y/|y|),  |y| < 1.
// Returns a non-converged NaN result when |y| >= 1.
EvalResult newtonian_series_outer(const AnnulusGeometry& geom, const Point& xi, const Point& y,
                                  const TruncationPolicy& policy);

// |a xi - y|^{2-n} = sum_m ((n-2)/(2m+n-2)) a^m |y|^{-(n+m-2)} Z_m(xi, y/|y|),  |y| > a.
// Returns a non-converged NaN result when |y| <= a.
EvalResult newtonian_series_inner(const AnnulusGeometry& geom, const Point& xi, const Point& y,
                                  const TruncationPolicy& policy);

// |x - y|^{2-n} = |x|^{2-n} sum_m ((n-2)/(2m+n-2)) (|y|/|x|)^m Z_m(x/|x|, y/|y|),  |x| > |y|.
// Returns a non-converged NaN result when |x| <= |y|.
EvalResult newtonian_series_exterior(const AnnulusGeometry& geom, const Point& x, const Point& y,
                                     const TruncationPolicy& policy);

/// b_m(r) = (1 - (a/r)^{2m+n-2}) / (1 - a^{2m+n-2}),  a <= r <= 1.
double poisson_coeff_b(const AnnulusGeometry& geom, int m, double r);

/// c_m(r) = r^{-m} (a/r)^{m+n-2} (1 - r^{2m+n-2}) / (1 - a^{2m+n-2}),  a <= r <= 1.
double poisson_coeff_c(const AnnulusGeometry& geom, int m, double r);

/// Continuous data on the two boundary spheres. `inner` receives the unit
/// direction xi and returns f(a xi).
struct BoundaryData {
  std::function<double(std::span<const double>)> outer;
  std::function<double(std::span<const double>)> inner;
};

/// The harmonic extension needs zonal degrees beyond what the quadrature
/// integrates exactly.
class QuadratureDegreeError : public Error {
 public:
  QuadratureDegreeError(int needed, int available);
  int needed() const noexcept { return needed_; }
  int available() const noexcept { return available_; }

 private:
  int needed_;
  int available_;
};

/// P_A[f](x) = int_S f(xi) P_A(x, xi) dsigma + int_S f(a xi) P_A(x, a xi) dsigma
/// with normalized surface measure, using the caller's quadrature.
///
/// Kernel modes are summed until the certified tail (with sup|f| taken over
/// the quadrature nodes) meets the policy. Throws QuadratureDegreeError if a
/// mode beyond quad.max_exact_degree would be required.
EvalResult harmonic_extension(const AnnulusGeometry& geom, const BoundaryData& f, const Point& x,
                              const SphereQuadrature& quad, const TruncationPolicy& policy);

/// n = 3 convenience overload: builds product rules aligned with x/|x| of
/// exact degree 2M + 2, doubling M until the truncation fits.
EvalResult harmonic_extension(const AnnulusGeometry& geom, const BoundaryData& f, const Point& x,
                              const TruncationPolicy& policy);

}  // namespace annulus::kernels
