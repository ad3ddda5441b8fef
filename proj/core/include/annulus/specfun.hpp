#pragma once

// Gegenbauer polynomials, zonal harmonics and the dimensions d_m of the
// spaces of degree-m spherical harmonics.

#include <cstdint>

#include "annulus/core.hpp"

namespace annulus::specfun {

/// P_m^lambda(t) by the three-term recurrence
///   m P_m = 2 (m + lambda - 1) t P_{m-1} - (m + 2 lambda - 2) P_{m-2}.
/// Requires lambda > 0, m >= 0, |t| <= 1 + 1e-12 (t is clamped to [-1, 1]).
double gegenbauer_eval(double lambda, int m, double t);

/// Streams P_0^lambda(t), P_1^lambda(t), ... one degree at a time.
class GegenbauerSequence {
 public:
  GegenbauerSequence(double lambda, double t);

  int degree() const noexcept { return degree_; }
  double value() const noexcept { return current_; }
  void advance() noexcept;

 private:
  double lambda_;
  double t_;
  int degree_ = 0;
  double previous_ = 0.0;
  double current_ = 1.0;
};

/// sum_{m=0}^{terms} P_m^lambda(t) r^m for 0 <= r < 1.
double gegenbauer_generating_partial_sum(double lambda, double t, double r, int terms);

/// Same series summed under a truncation policy. Tail majorant uses
/// |P_m^lambda(t)| <= P_m^lambda(1) = binom(m + 2 lambda - 1, m).
EvalResult gegenbauer_generating_sum(double lambda, double t, double r,
                                     const TruncationPolicy& policy);

/// binom(n, k) in exact integer arithmetic; throws std::overflow_error.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// d_m = Z_m(xi, xi) = ((2m + n - 2) / (n - 2)) binom(n + m - 3, m), exact.
/// Requires n >= 3, m >= 0; throws std::overflow_error past 64 bits.
std::uint64_t dim_hm(int n, int m);

/// d_m as a double, valid far beyond the 64-bit range of dim_hm.
double dim_hm_real(int n, int m);

/// Zonal harmonic by its explicit finite sum, homogeneous of degree m in x:
///   Z_m(x, xi) = (n + 2m - 2) sum_k (-1)^k n(n+2)...(n+2m-2k-4)
///                / (2^k k! (m - 2k)!) (x.xi)^{m-2k} |x|^{2k}.
/// Empty products are 1. Requires n >= 3 and |xi| = 1.
double zonal_direct(int n, int m, const Point& x, const Point& xi);

/// Z_m(x', y') = ((2m + n - 2) / (n - 2)) P_m^{(n-2)/2}(x'.y') for unit
/// arguments. Requires n >= 3.
double zonal_from_gegenbauer(int n, int m, const Point& xprime, const Point& yprime);

/// Planar zonal harmonic 2 cos(m (theta - phi)), m >= 1.
double zonal_2d(int m, double theta, double phi);

/// Throws DomainError unless | |p| - 1 | <= kUnitTolerance.
void require_unit(const Point& p, const char* what);

}  // namespace annulus::specfun
