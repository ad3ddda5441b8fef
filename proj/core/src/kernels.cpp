#include "annulus/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "annulus/series.hpp"
#include "annulus/specfun.hpp"

namespace annulus::kernels {

namespace {

using specfun::GegenbauerSequence;

double lambda_of(const AnnulusGeometry& geom) { return 0.5 * (geom.n() - 2); }

double clamped_cosine(double t) { return std::clamp(t, -1.0, 1.0); }

// Sum of P_k(t) * base^k * scale, the common shape of the three distance
// expansions; the envelope is scale * binom(k+n-3, k) * base^k.
EvalResult gegenbauer_power_series(const AnnulusGeometry& geom, double t, double base, double scale,
                                   const TruncationPolicy& policy) {
  TailEnvelope envelope(geom.n() - 2.0);
  envelope.add(scale, base);
  GegenbauerSequence seq(lambda_of(geom), clamped_cosine(t));
  double power = 1.0;
  return sum_series(policy, [&](int m) {
    while (seq.degree() < m) seq.advance();
    if (m > 0) power *= base;
    return SeriesTerm{scale * seq.value() * power, envelope.tail_after(m)};
  });
}

EvalResult single_term(double value) { return EvalResult{value, 1, 0.0, true}; }

// Zonal moments of boundary data about the evaluation direction: groups of
// quadrature nodes sharing t = xhat . xi, with weighted sums of the data.
struct ZonalMoments {
  std::vector<double> cosines;
  std::vector<double> outer;  // sum of w * f_outer over the group
  std::vector<double> inner;
  double outer_sup = 0.0;
  double inner_sup = 0.0;
};

double checked(double v) {
  if (!std::isfinite(v)) throw DomainError("boundary data returned a non-finite value");
  return v;
}

ZonalMoments moments_from_quadrature(const BoundaryData& f, const std::vector<double>& xhat,
                                     const SphereQuadrature& quad) {
  ZonalMoments out;
  const std::size_t dim = xhat.size();
  const bool aligned =
      quad.has_rings() && quad.pole.size() == dim &&
      std::inner_product(quad.pole.begin(), quad.pole.end(), xhat.begin(), 0.0) >= 1.0 - 1e-14;
  if (aligned) {
    const std::size_t rings = quad.ring_cosines.size();
    out.cosines = quad.ring_cosines;
    out.outer.assign(rings, 0.0);
    out.inner.assign(rings, 0.0);
    for (std::size_t i = 0; i < rings; ++i) {
      KahanSum so;
      KahanSum si;
      for (int j = 0; j < quad.ring_size; ++j) {
        const std::size_t k = i * quad.ring_size + j;
        const double fo = checked(f.outer(quad.node(k)));
        const double fi = checked(f.inner(quad.node(k)));
        out.outer_sup = std::max(out.outer_sup, std::abs(fo));
        out.inner_sup = std::max(out.inner_sup, std::abs(fi));
        so.add(quad.weights[k] * fo);
        si.add(quad.weights[k] * fi);
      }
      out.outer[i] = so.value();
      out.inner[i] = si.value();
    }
    return out;
  }
  const std::size_t count = quad.size();
  out.cosines.resize(count);
  out.outer.resize(count);
  out.inner.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto node = quad.node(k);
    out.cosines[k] = clamped_cosine(std::inner_product(node.begin(), node.end(), xhat.begin(), 0.0));
    const double fo = checked(f.outer(node));
    const double fi = checked(f.inner(node));
    out.outer_sup = std::max(out.outer_sup, std::abs(fo));
    out.inner_sup = std::max(out.inner_sup, std::abs(fi));
    out.outer[k] = quad.weights[k] * fo;
    out.inner[k] = quad.weights[k] * fi;
  }
  return out;
}

// Pole-aligned product rule generated ring by ring without storing nodes.
ZonalMoments moments_on_aligned_rings(const BoundaryData& f, const std::vector<double>& xhat,
                                      int exact_degree) {
  const int polar = exact_degree / 2 + 1;
  const int azimuth = exact_degree + 1;
  const GaussLegendreRule gl = gauss_legendre(polar);

  std::array<double, 3> u{1.0, 0.0, 0.0};
  if (std::abs(xhat[0]) > 0.9) u = {0.0, 1.0, 0.0};
  const double proj = u[0] * xhat[0] + u[1] * xhat[1] + u[2] * xhat[2];
  for (int d = 0; d < 3; ++d) u[d] -= proj * xhat[d];
  const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  for (double& c : u) c /= un;
  const std::array<double, 3> v{xhat[1] * u[2] - xhat[2] * u[1], xhat[2] * u[0] - xhat[0] * u[2],
                                xhat[0] * u[1] - xhat[1] * u[0]};

  std::vector<double> cos_phi(azimuth);
  std::vector<double> sin_phi(azimuth);
  const double dphi = 2.0 * std::numbers::pi / azimuth;
  for (int j = 0; j < azimuth; ++j) {
    cos_phi[j] = std::cos(j * dphi);
    sin_phi[j] = std::sin(j * dphi);
  }

  ZonalMoments out;
  out.cosines = gl.nodes;
  out.outer.assign(polar, 0.0);
  out.inner.assign(polar, 0.0);
  std::array<double, 3> node{};
  for (int i = 0; i < polar; ++i) {
    const double t = gl.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    KahanSum so;
    KahanSum si;
    for (int j = 0; j < azimuth; ++j) {
      for (int d = 0; d < 3; ++d) node[d] = s * (cos_phi[j] * u[d] + sin_phi[j] * v[d]) + t * xhat[d];
      const double fo = checked(f.outer(node));
      const double fi = checked(f.inner(node));
      out.outer_sup = std::max(out.outer_sup, std::abs(fo));
      out.inner_sup = std::max(out.inner_sup, std::abs(fi));
      so.add(fo);
      si.add(fi);
    }
    out.outer[i] = gl.weights[i] * dphi * so.value();
    out.inner[i] = gl.weights[i] * dphi * si.value();
  }
  return out;
}

// Number of indices sum_series will visit for this envelope, or -1 when the
// policy budget runs out first.
template <typename TailFn>
int planned_terms(const TruncationPolicy& policy, TailFn&& tail_after) {
  int below = 0;
  for (int m = 0; m < policy.max_terms; ++m) {
    if (tail_after(m) <= policy.abs_tol) {
      if (++below >= policy.tail_safety) return m + 1;
    } else {
      below = 0;
    }
  }
  return -1;
}

EvalResult sum_extension(const AnnulusGeometry& geom, double r, const ZonalMoments& mom,
                         int max_exact_degree, const TruncationPolicy& policy) {
  const int n = geom.n();
  const double a = geom.a();
  const double lambda = lambda_of(geom);
  const double inv_omega = 1.0 / geom.omega();
  const double ar = a / r;

  // |I_m| <= sup|f| d_m and d_m = binom(m+n-3, m) (2/(n-2)) (m + (n-2)/2).
  TailEnvelope envelope(n - 2.0);
  const double dscale = 2.0 / (n - 2.0);
  envelope.add(dscale * mom.outer_sup, r, 1.0, 0.5 * (n - 2));
  envelope.add(dscale * mom.inner_sup * std::pow(ar, n - 2), ar, 1.0, 0.5 * (n - 2));
  auto tail = [&](int m) {
    const double beta_next = 2.0 * (m + 1) + n - 2.0;
    return envelope.tail_after(m) / (-std::expm1(beta_next * std::log(a)));
  };

  // A budget that runs out first yields an unconverged result rather than a
  // degree error.
  TruncationPolicy effective = policy;
  const int planned = planned_terms(policy, tail);
  if (planned > 0 && planned - 1 > max_exact_degree) {
    throw QuadratureDegreeError(planned - 1, max_exact_degree);
  }
  if (planned < 0) effective.max_terms = std::min(policy.max_terms, max_exact_degree + 1);

  const std::size_t groups = mom.cosines.size();
  std::vector<double> prev(groups, 0.0);
  std::vector<double> cur(groups, 1.0);
  return sum_series(effective, [&](int m) {
    if (m > max_exact_degree) throw QuadratureDegreeError(m, max_exact_degree);
    if (m == 1) {
      for (std::size_t g = 0; g < groups; ++g) {
        prev[g] = cur[g];
        cur[g] = 2.0 * lambda * mom.cosines[g];
      }
    } else if (m > 1) {
      for (std::size_t g = 0; g < groups; ++g) {
        const double next = (2.0 * (m + lambda - 1.0) * mom.cosines[g] * cur[g] -
                             (m + 2.0 * lambda - 2.0) * prev[g]) / m;
        prev[g] = cur[g];
        cur[g] = next;
      }
    }
    KahanSum so;
    KahanSum si;
    for (std::size_t g = 0; g < groups; ++g) {
      so.add(mom.outer[g] * cur[g]);
      si.add(mom.inner[g] * cur[g]);
    }
    const double zscale = (2.0 * m + n - 2.0) / (n - 2.0) * inv_omega;
    const double beta = 2.0 * m + n - 2.0;
    const double denom = -std::expm1(beta * std::log(a));
    // b_m r^m and c_m r^m, both bounded by 1 / (1 - a^beta).
    const double outer_radial = std::pow(r, m) * -std::expm1(beta * std::log(ar)) / denom;
    const double inner_radial = std::pow(ar, m + n - 2.0) * (-std::expm1(beta * std::log(r))) / denom;
    const double value = zscale * (outer_radial * so.value() + inner_radial * si.value());
    return SeriesTerm{value, tail(m)};
  });
}

}  // namespace

EvalResult newtonian_series_outer(const AnnulusGeometry& geom, const Point& xi, const Point& y,
                                  const TruncationPolicy& policy) {
  geom.require_series_dimension("newtonian_series_outer");
  geom.require_dimension(xi);
  geom.require_dimension(y);
  specfun::require_unit(xi, "newtonian_series_outer: xi");
  policy.validate();
  const double s = y.norm();
  if (!(s < 1.0)) return diverged_result();
  if (s == 0.0) return single_term(1.0);
  return gegenbauer_power_series(geom, xi.dot(y) / s, s, 1.0, policy);
}

EvalResult newtonian_series_inner(const AnnulusGeometry& geom, const Point& xi, const Point& y,
                                  const TruncationPolicy& policy) {
  geom.require_series_dimension("newtonian_series_inner");
  geom.require_dimension(xi);
  geom.require_dimension(y);
  specfun::require_unit(xi, "newtonian_series_inner: xi");
  policy.validate();
  const double s = y.norm();
  if (!(s > geom.a())) return diverged_result();
  return gegenbauer_power_series(geom, xi.dot(y) / s, geom.a() / s, std::pow(s, 2.0 - geom.n()),
                                 policy);
}

EvalResult newtonian_series_exterior(const AnnulusGeometry& geom, const Point& x, const Point& y,
                                     const TruncationPolicy& policy) {
  geom.require_series_dimension("newtonian_series_exterior");
  geom.require_dimension(x);
  geom.require_dimension(y);
  policy.validate();
  const double r = x.norm();
  const double s = y.norm();
  if (!(r > s)) return diverged_result();
  const double scale = std::pow(r, 2.0 - geom.n());
  if (s == 0.0) return single_term(scale);
  return gegenbauer_power_series(geom, x.dot(y) / (r * s), s / r, scale, policy);
}

double poisson_coeff_b(const AnnulusGeometry& geom, int m, double r) {
  geom.require_series_dimension("poisson_coeff_b");
  if (m < 0) throw DomainError("poisson_coeff_b: mode must be >= 0");
  r = geom.closed_radius(r);
  const double beta = 2.0 * m + geom.n() - 2.0;
  return std::expm1(beta * std::log(geom.a() / r)) / std::expm1(beta * std::log(geom.a()));
}

double poisson_coeff_c(const AnnulusGeometry& geom, int m, double r) {
  geom.require_series_dimension("poisson_coeff_c");
  if (m < 0) throw DomainError("poisson_coeff_c: mode must be >= 0");
  r = geom.closed_radius(r);
  const int n = geom.n();
  const double beta = 2.0 * m + n - 2.0;
  return std::pow(r, -m) * std::pow(geom.a() / r, m + n - 2.0) * std::expm1(beta * std::log(r)) /
         std::expm1(beta * std::log(geom.a()));
}

QuadratureDegreeError::QuadratureDegreeError(int needed, int available)
    : Error([&] {
        std::ostringstream msg;
        msg << "harmonic_extension: truncation needs zonal degree " << needed
            << " but the quadrature is exact only up to degree " << available;
        return msg.str();
      }()),
      needed_(needed),
      available_(available) {}

EvalResult harmonic_extension(const AnnulusGeometry& geom, const BoundaryData& f, const Point& x,
                              const SphereQuadrature& quad, const TruncationPolicy& policy) {
  geom.require_series_dimension("harmonic_extension");
  geom.require_dimension(x);
  policy.validate();
  if (quad.dimension != geom.n()) throw DomainError("harmonic_extension: quadrature dimension mismatch");
  if (!f.outer || !f.inner) throw DomainError("harmonic_extension: boundary data incomplete");
  if (!geom.contains(x)) throw DomainError("harmonic_extension: x must lie inside the annulus");
  const double r = x.norm();
  const Point xhat = x.direction();
  const std::vector<double> dir(xhat.coords().begin(), xhat.coords().end());
  const ZonalMoments mom = moments_from_quadrature(f, dir, quad);
  return sum_extension(geom, r, mom, quad.max_exact_degree, policy);
}

EvalResult harmonic_extension(const AnnulusGeometry& geom, const BoundaryData& f, const Point& x,
                              const TruncationPolicy& policy) {
  if (geom.n() != 3) {
    throw DomainError("harmonic_extension: the built-in quadrature covers n = 3 only");
  }
  geom.require_dimension(x);
  policy.validate();
  if (!f.outer || !f.inner) throw DomainError("harmonic_extension: boundary data incomplete");
  if (!geom.contains(x)) throw DomainError("harmonic_extension: x must lie inside the annulus");
  const double r = x.norm();
  const Point xhat = x.direction();
  const std::vector<double> dir(xhat.coords().begin(), xhat.coords().end());

  constexpr int kMaxDegree = 1 << 15;
  int truncation = 15;
  while (true) {
    const int degree = 2 * truncation + 2;
    const ZonalMoments mom = moments_on_aligned_rings(f, dir, degree);
    try {
      return sum_extension(geom, r, mom, degree, policy);
    } catch (const QuadratureDegreeError& e) {
      truncation = std::max(2 * truncation, e.needed() + e.needed() / 8 + 4);
      if (2 * truncation + 2 > kMaxDegree) {
        throw ConvergenceError("harmonic_extension: required quadrature degree is too large");
      }
    }
  }
}

}  // namespace annulus::kernels
