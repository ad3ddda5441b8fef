#include <doctest.h>

#include <cmath>
#include <numbers>

#include "annulus/kernels.hpp"
#include "annulus/quadrature.hpp"

using namespace annulus;
using namespace annulus::kernels;

namespace {

double inverse_power(const Point& x, const Point& y, int n) { return std::pow(x.distance(y), 2 - n); }

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("newtonian expansions reproduce the direct kernel") {
  const TruncationPolicy policy;
  for (int n : {3, 4, 5}) {
    const AnnulusGeometry g(n, 0.4);
    Point xi = Point::on_axis(n, 1.0);
    Point y = Point::on_axis(n, 0.0);
    y[0] = 0.3;
    y[1] = 0.2;  // |y| ~ 0.36

    const EvalResult outer = newtonian_series_outer(g, xi, y, policy);
    CHECK(outer.converged);
    CHECK(std::abs(outer.value - inverse_power(xi, y, n)) <= outer.tail_bound + 1e-13);

    Point z = y.scaled(2.0);  // |z| ~ 0.72 > a
    const EvalResult inner = newtonian_series_inner(g, xi, z, policy);
    CHECK(inner.converged);
    CHECK(std::abs(inner.value - inverse_power(xi.scaled(0.4), z, n)) <= inner.tail_bound + 1e-13);

    const EvalResult ext = newtonian_series_exterior(g, z, y, policy);
    CHECK(ext.converged);
    CHECK(std::abs(ext.value - inverse_power(z, y, n)) <= ext.tail_bound + 1e-13);
  }
}

TEST_CASE("newtonian expansions outside their range are not converged") {
  const AnnulusGeometry g(3, 0.5);
  const Point xi{1.0, 0.0, 0.0};
  const EvalResult out = newtonian_series_outer(g, xi, Point{0.0, 1.2, 0.0}, TruncationPolicy{});
  CHECK(std::isnan(out.value));
  CHECK_FALSE(out.converged);
  const EvalResult in = newtonian_series_inner(g, xi, Point{0.0, 0.4, 0.0}, TruncationPolicy{});
  CHECK(std::isnan(in.value));
  const EvalResult ext =
      newtonian_series_exterior(g, Point{0.6, 0.0, 0.0}, Point{0.0, 0.7, 0.0}, TruncationPolicy{});
  CHECK_FALSE(ext.converged);
  CHECK_THROWS_AS(newtonian_series_outer(g, Point{0.9, 0.0, 0.0}, Point{0.1, 0.0, 0.0},
                                         TruncationPolicy{}),
                  DomainError);
}

TEST_CASE("poisson radial coefficients meet their boundary values") {
  for (int n : {3, 4, 6}) {
    const AnnulusGeometry g(n, 0.35);
    for (int m : {0, 1, 5, 20}) {
      CHECK(poisson_coeff_b(g, m, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(std::abs(poisson_coeff_b(g, m, 0.35)) <= 1e-15);
      CHECK(std::abs(poisson_coeff_c(g, m, 1.0)) <= 1e-15);
      CHECK(poisson_coeff_c(g, m, 0.35) * std::pow(0.35, m) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(poisson_coeff_b(AnnulusGeometry(3, 0.5), -1, 0.7), DomainError);
}

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int N : {1, 2, 5, 12, 40}) {
    const GaussLegendreRule rule = gauss_legendre(N);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(N));
    for (int d = 0; d <= 2 * N - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], d);
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("sphere product rule") {
  const SphereQuadrature q = product_quadrature_3d(10);
  double total = 0.0;
  double second = 0.0;
  double mixed = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto p = q.node(i);
    total += q.weights[i];
    second += q.weights[i] * p[0] * p[0];
    mixed += q.weights[i] * p[0] * p[1] * p[2] * p[2];
  }
  CHECK(total == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(second == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
  CHECK(std::abs(mixed) <= 1e-14);
  CHECK(q.max_exact_degree >= 10);
  CHECK(q.has_rings());
  CHECK_THROWS_AS(product_quadrature_3d(4, Point{1.0, 0.0}), DomainError);
}

TEST_CASE("harmonic extension reproduces harmonic functions") {
  const AnnulusGeometry g(3, 0.5);
  const TruncationPolicy policy;
  BoundaryData one{[](std::span<const double>) { return 1.0; },
                   [](std::span<const double>) { return 1.0; }};
  const Point x{0.3, 0.4, 0.35};
  const EvalResult u = harmonic_extension(g, one, x, policy);
  CHECK(u.converged);
  CHECK(u.value == doctest::Approx(1.0).epsilon(1e-12));

  // u = x_1 has outer data xi_1 and inner data a xi_1.
  BoundaryData lin{[](std::span<const double> p) { return p[0]; },
                   [](std::span<const double> p) { return 0.5 * p[0]; }};
  const EvalResult v = harmonic_extension(g, lin, x, policy);
  CHECK(v.converged);
  CHECK(std::abs(v.value - 0.3) <= 1e-10);

  // Radial solution 1/|x| on both spheres: f = 1 outside, 2 inside.
  BoundaryData radial{[](std::span<const double>) { return 1.0; },
                      [](std::span<const double>) { return 2.0; }};
  const EvalResult w = harmonic_extension(g, radial, x, policy);
  CHECK(std::abs(w.value - 1.0 / x.norm()) <= 1e-10);
}

TEST_CASE("harmonic extension with a caller-supplied rule") {
  const AnnulusGeometry g(3, 0.5);
  BoundaryData one{[](std::span<const double>) { return 1.0; },
                   [](std::span<const double>) { return 1.0; }};
  const Point x{0.0, 0.0, 0.7};
  const SphereQuadrature small = product_quadrature_3d(4);
  CHECK_THROWS_AS(harmonic_extension(g, one, x, small, TruncationPolicy{}), QuadratureDegreeError);

  TruncationPolicy budget;
  budget.max_terms = 3;
  const EvalResult cut = harmonic_extension(g, one, x, small, budget);
  CHECK_FALSE(cut.converged);

  const SphereQuadrature big = product_quadrature_3d(200);
  const EvalResult ok = harmonic_extension(g, one, x, big, TruncationPolicy{});
  CHECK(ok.converged);
  CHECK(ok.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("harmonic extension argument checks") {
  BoundaryData one{[](std::span<const double>) { return 1.0; },
                   [](std::span<const double>) { return 1.0; }};
  CHECK_THROWS_AS(harmonic_extension(AnnulusGeometry(4, 0.5), one, Point{0.7, 0.0, 0.0, 0.0},
                                     TruncationPolicy{}),
                  DomainError);
  CHECK_THROWS_AS(
      harmonic_extension(AnnulusGeometry(3, 0.5), one, Point{0.2, 0.0, 0.0}, TruncationPolicy{}),
      DomainError);
  BoundaryData partial{[](std::span<const double>) { return 1.0; }, {}};
  CHECK_THROWS_AS(
      harmonic_extension(AnnulusGeometry(3, 0.5), partial, Point{0.7, 0.0, 0.0}, TruncationPolicy{}),
      DomainError);
}

}  // TEST_SUITE
