#include "annulus/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace annulus {

Point Point::on_axis(std::size_t n, double r) {
  std::vector<double> coords(n, 0.0);
  if (n > 0) coords[0] = r;
  return Point(std::move(coords));
}

double Point::norm() const noexcept {
  // Scaled two-pass norm; coordinates here are O(1) but callers may pass
  // tiny radii when probing limits.
  double scale = 0.0;
  for (double c : coords_) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double c : coords_) {
    const double t = c / scale;
    sum += t * t;
  }
  return scale * std::sqrt(sum);
}

double Point::dot(const Point& other) const {
  if (other.dim() != dim()) throw DomainError("dot: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) sum += coords_[i] * other.coords_[i];
  return sum;
}

double Point::distance(const Point& other) const { return (*this - other).norm(); }

Point Point::scaled(double factor) const {
  std::vector<double> out(coords_);
  for (double& c : out) c *= factor;
  return Point(std::move(out));
}

Point Point::direction() const {
  const double r = norm();
  if (r == 0.0) throw DomainError("direction of the origin is undefined");
  return scaled(1.0 / r);
}

Point operator+(const Point& lhs, const Point& rhs) {
  if (lhs.dim() != rhs.dim()) throw DomainError("point sum: dimension mismatch");
  std::vector<double> out(lhs.coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs.coords_[i];
  return Point(std::move(out));
}

Point operator-(const Point& lhs, const Point& rhs) {
  if (lhs.dim() != rhs.dim()) throw DomainError("point difference: dimension mismatch");
  std::vector<double> out(lhs.coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs.coords_[i];
  return Point(std::move(out));
}

AnnulusGeometry::AnnulusGeometry(int n, double a) : n_(n), a_(a), omega_(0.0) {
  if (n < 2) throw DomainError("annulus dimension must satisfy n >= 2");
  if (!(a > 0.0 && a < 1.0)) throw DomainError("inner radius must satisfy 0 < a < 1");
  omega_ = sphere_surface_area(n);
}

void AnnulusGeometry::require_series_dimension(const char* operation) const {
  if (n_ < 3) {
    std::ostringstream msg;
    msg << operation << ": requires n >= 3 (got n = " << n_ << ")";
    throw DomainError(msg.str());
  }
}

void AnnulusGeometry::require_dimension(const Point& p) const {
  if (p.dim() != static_cast<std::size_t>(n_)) {
    std::ostringstream msg;
    msg << "point has " << p.dim() << " coordinates, annulus dimension is " << n_;
    throw DomainError(msg.str());
  }
}

bool AnnulusGeometry::contains(const Point& p) const {
  require_dimension(p);
  const double r = p.norm();
  return r > a_ && r < 1.0;
}

bool AnnulusGeometry::on_boundary(const Point& p, double tol) const {
  require_dimension(p);
  const double r = p.norm();
  return std::abs(r - a_) <= tol || std::abs(r - 1.0) <= tol;
}

bool AnnulusGeometry::in_closure(const Point& p, double tol) const {
  require_dimension(p);
  const double r = p.norm();
  return r >= a_ - tol && r <= 1.0 + tol;
}

double AnnulusGeometry::closed_radius(const Point& p, double tol) const {
  require_dimension(p);
  return closed_radius(p.norm(), tol);
}

double AnnulusGeometry::closed_radius(double r, double tol) const {
  if (!(r >= a_ - tol && r <= 1.0 + tol)) {
    std::ostringstream msg;
    msg << "radius " << r << " lies outside the closed annulus [" << a_ << ", 1]";
    throw DomainError(msg.str());
  }
  return std::clamp(r, a_, 1.0);
}

void TruncationPolicy::validate() const {
  if (!(abs_tol >= 0.0)) throw DomainError("policy: abs_tol must be >= 0");
  if (max_terms < 1) throw DomainError("policy: max_terms must be >= 1");
  if (tail_safety < 1) throw DomainError("policy: tail_safety must be >= 1");
}

double sphere_surface_area(int n) {
  if (n < 2) throw DomainError("sphere_surface_area: requires n >= 2");
  const double half = 0.5 * n;
  return 2.0 * std::exp(half * std::log(std::numbers::pi) - std::lgamma(half));
}

double newtonian_potential(const AnnulusGeometry& geom, const Point& x, const Point& y) {
  geom.require_series_dimension("newtonian_potential");
  geom.require_dimension(x);
  geom.require_dimension(y);
  const double d = x.distance(y);
  if (d == 0.0) throw SingularityError("newtonian_potential: x = y");
  const int n = geom.n();
  return 1.0 / ((n - 2) * geom.omega() * std::pow(d, n - 2));
}

}  // namespace annulus
