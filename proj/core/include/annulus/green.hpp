#pragma once

// Green function, Robin function and radial derivatives of the annulus
// a < |x| < 1 as zonal-harmonic series.
//
// For n >= 3 the Green function is the Newtonian potential plus a regular
// part H,
//
//   H(x, y) = -(1/omega) sum_m [ (rs)^{2m+n-2} - a^{2m+n-2}(r^{2m+n-2} + s^{2m+n-2})
//             + a^{2m+n-2} ] / ((2m+n-2) (rs)^{n+m-2} (1 - a^{2m+n-2})) Z_m(xhat, yhat),
//
// with r = |x|, s = |y|, and the Robin function is R(r) = H(x, x). All series
// report a certified tail bound; see series.hpp.

#include "annulus/core.hpp"

namespace annulus::green {

/// Pairs closer than this are refused by green_eval: the Newtonian part would
/// swamp the regular part.
inline constexpr double kNearDiagonal = 1e-6;

/// Coefficient of Z_m(xhat, yhat) in the Green series, including 1/omega:
///   (r^beta - a^beta)(1 - s^beta) / (omega beta (rs)^{n+m-2} (1 - a^beta)),
/// beta = 2m + n - 2, evaluated at r = min, s = max. Requires a <= r, s <= 1.
double modal_coefficient(const AnnulusGeometry& geom, int m, double r, double s);

/// Regular part H(x, y) = G(x, y) - Newtonian(x, y), both points in the closed
/// annulus. x = y is allowed and gives the Robin function.
EvalResult regular_part(const AnnulusGeometry& geom, const Point& x, const Point& y,
                        const TruncationPolicy& policy);

/// G(x, y) = Newtonian + regular part. Points on the boundary are accepted;
/// when both lie on the same boundary sphere the series cannot converge and
/// the Dirichlet value 0 is returned exactly (terms_used = 0).
EvalResult green_eval(const AnnulusGeometry& geom, const Point& x, const Point& y,
                      const TruncationPolicy& policy);

/// G(x, y) = sum_m modal_coefficient(m, |x|, |y|) Z_m(xhat, yhat) for |x| != |y|.
/// Throws DomainError for equal radii (use green_eval there).
EvalResult green_piecewise_eval(const AnnulusGeometry& geom, const Point& x, const Point& y,
                                const TruncationPolicy& policy);

/// R(r) for a < r < 1, n >= 3.
EvalResult robin_eval(const AnnulusGeometry& geom, double r, const TruncationPolicy& policy);

/// r R'(r) (the radial derivative grad R(x) . x) for a < r < 1, n >= 3.
EvalResult robin_radial_gradient(const AnnulusGeometry& geom, double r,
                                 const TruncationPolicy& policy);

/// d/dr [r R'(r)] for a < r < 1, n >= 3.
EvalResult f_prime_eval(const AnnulusGeometry& geom, double r, const TruncationPolicy& policy);

// Planar annulus, 0 < a < r < 1:
//   R(r) = -log^2 r / log a + sum_{m>=1} (r^{2m} - 2a^{2m} + a^{2m} r^{-2m}) / (m (1 - a^{2m})).
// This is -2 pi times the regular part of the planar Green function.
EvalResult robin2d_eval(double a, double r, const TruncationPolicy& policy);
EvalResult robin2d_first(double a, double r, const TruncationPolicy& policy);
EvalResult robin2d_second(double a, double r, const TruncationPolicy& policy);

}  // namespace annulus::green
