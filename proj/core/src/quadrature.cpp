#include "annulus/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "annulus/specfun.hpp"

namespace annulus::kernels {

GaussLegendreRule gauss_legendre(int points) {
  if (points < 1) throw DomainError("gauss_legendre: need at least one node");
  const int n = points;
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

SphereQuadrature product_quadrature_3d(int exact_degree, const Point& pole) {
  if (exact_degree < 0) throw DomainError("product_quadrature_3d: degree must be >= 0");
  if (pole.dim() != 3) throw DomainError("product_quadrature_3d: pole must lie in R^3");
  specfun::require_unit(pole, "product_quadrature_3d: pole");

  const int polar = exact_degree / 2 + 1;
  const int azimuth = exact_degree + 1;
  const GaussLegendreRule gl = gauss_legendre(polar);

  // Orthonormal frame (u, v, pole).
  const std::array<double, 3> p{pole[0], pole[1], pole[2]};
  std::array<double, 3> seed{1.0, 0.0, 0.0};
  if (std::abs(p[0]) > 0.9) seed = {0.0, 1.0, 0.0};
  const double proj = seed[0] * p[0] + seed[1] * p[1] + seed[2] * p[2];
  std::array<double, 3> u{seed[0] - proj * p[0], seed[1] - proj * p[1], seed[2] - proj * p[2]};
  const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  for (double& c : u) c /= un;
  const std::array<double, 3> v{p[1] * u[2] - p[2] * u[1], p[2] * u[0] - p[0] * u[2],
                                p[0] * u[1] - p[1] * u[0]};

  SphereQuadrature q;
  q.dimension = 3;
  q.max_exact_degree = exact_degree;
  q.pole = {p[0], p[1], p[2]};
  q.ring_size = azimuth;
  q.ring_cosines = gl.nodes;
  q.nodes.reserve(static_cast<std::size_t>(3) * polar * azimuth);
  q.weights.reserve(static_cast<std::size_t>(polar) * azimuth);
  const double dphi = 2.0 * std::numbers::pi / azimuth;
  for (int i = 0; i < polar; ++i) {
    const double t = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int j = 0; j < azimuth; ++j) {
      const double phi = j * dphi;
      const double c = std::cos(phi);
      const double sn = std::sin(phi);
      for (int d = 0; d < 3; ++d) q.nodes.push_back(s * (c * u[d] + sn * v[d]) + t * p[d]);
      q.weights.push_back(gl.weights[i] * dphi);
    }
  }
  return q;
}

}  // namespace annulus::kernels
