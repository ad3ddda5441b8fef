#pragma once

// Geometry, configuration and result types shared by every numerical module.
//
// The annulus is A = {x in R^n : a < |x| < 1}. All quantities are
// dimensionless.

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace annulus {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: violated precondition or type invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at (or numerically too close to) a pole.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series or solver could not meet its tolerance within budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  explicit Point(std::span<const double> coords)
      : coords_(coords.begin(), coords.end()) {}

  /// Point r * e_1 in R^n.
  static Point on_axis(std::size_t n, double r);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  double norm() const noexcept;
  double dot(const Point& other) const;
  double distance(const Point& other) const;
  Point scaled(double factor) const;
  /// x / |x|; throws DomainError for the origin.
  Point direction() const;

  friend Point operator+(const Point& lhs, const Point& rhs);
  friend Point operator-(const Point& lhs, const Point& rhs);
  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// Default absolute tolerance on |x| for boundary membership.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Tolerance on |xi| - 1 for arguments documented as unit vectors.
inline constexpr double kUnitTolerance = 1e-12;

class AnnulusGeometry {
 public:
  /// Requires n >= 2 and 0 < a < 1.
  AnnulusGeometry(int n, double a);

  int n() const noexcept { return n_; }
  double a() const noexcept { return a_; }
  /// Surface measure omega_{n-1} of the unit sphere in R^n.
  double omega() const noexcept { return omega_; }

  /// Throws DomainError unless n >= 3 (the zonal series need lambda > 0).
  void require_series_dimension(const char* operation) const;
  /// Throws DomainError unless the point has n coordinates.
  void require_dimension(const Point& p) const;

  bool contains(const Point& p) const;  ///< a < |x| < 1
  bool on_boundary(const Point& p, double tol = kBoundaryTolerance) const;
  bool in_closure(const Point& p, double tol = kBoundaryTolerance) const;

  /// |x| clamped into [a, 1]; throws DomainError if |x| is outside the
  /// closed annulus by more than tol.
  double closed_radius(const Point& p, double tol = kBoundaryTolerance) const;
  /// Same for a bare radius.
  double closed_radius(double r, double tol = kBoundaryTolerance) const;

 private:
  int n_;
  double a_;
  double omega_;
};

// ---------------------------------------------------------------------------
// Truncation and results
// ---------------------------------------------------------------------------

struct TruncationPolicy {
  double abs_tol = 1e-12;
  int max_terms = 100000;
  /// Consecutive indices with tail <= abs_tol required before stopping.
  int tail_safety = 2;

  void validate() const;
};

struct EvalResult {
  double value = 0.0;
  int terms_used = 0;
  /// Certified bound on the discarded remainder; +inf when no bound applies.
  double tail_bound = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// omega_{n-1} = 2 pi^{n/2} / Gamma(n/2), evaluated through lgamma.
double sphere_surface_area(int n);

/// Fundamental solution 1 / ((n-2) omega_{n-1} |x-y|^{n-2}) for n >= 3.
double newtonian_potential(const AnnulusGeometry& geom, const Point& x,
                           const Point& y);

}  // namespace annulus
