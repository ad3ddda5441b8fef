#pragma once

#include <span>
#include <vector>

#include "annulus/core.hpp"

namespace annulus::kernels {

struct GaussLegendreRule {
  std::vector<double> nodes;    ///< ascending, in (-1, 1)
  std::vector<double> weights;  ///< positive, summing to 2
};

/// N-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree
/// 2N - 1. Requires N >= 1.
GaussLegendreRule gauss_legendre(int points);

/// Quadrature on the unit sphere S^{n-1} with positive weights summing to
/// omega_{n-1}.
///
/// Rules built by product_quadrature_3d are organised in rings of constant
/// polar angle about `pole`; harmonic_extension uses that structure when the
/// evaluation direction coincides with the pole.
struct SphereQuadrature {
  int dimension = 0;
  std::vector<double> nodes;    ///< row-major, dimension coordinates per node
  std::vector<double> weights;
  /// Spherical polynomials up to this degree are integrated exactly.
  int max_exact_degree = 0;

  std::vector<double> pole;          ///< empty for unstructured rules
  std::vector<double> ring_cosines;  ///< pole . node for each ring
  int ring_size = 0;                 ///< nodes per ring, ring-major layout

  std::size_t size() const noexcept { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return std::span<const double>(nodes).subspan(i * dimension, dimension);
  }
  bool has_rings() const noexcept { return ring_size > 0; }
};

/// Product rule on S^2: Gauss-Legendre in cos(polar angle) times the uniform
/// trapezoid in azimuth, exact for spherical polynomials of degree
/// `exact_degree`. The polar axis is `pole` (unit, defaults to e_3).
SphereQuadrature product_quadrature_3d(int exact_degree, const Point& pole = Point{0.0, 0.0, 1.0});

}  // namespace annulus::kernels
