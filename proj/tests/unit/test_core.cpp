#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "annulus/core.hpp"
#include "annulus/series.hpp"
#include "fixtures.hpp"

using namespace annulus;
using annulus_test::golden;

TEST_SUITE("core") {

TEST_CASE("sphere surface area matches reference values") {
  for (int n = 2; n <= 10; ++n) {
    const double ref = golden("omega_n" + std::to_string(n));
    CHECK(std::abs(sphere_surface_area(n) - ref) <= 4e-15 * ref);
  }
  CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
  CHECK_THROWS_AS(sphere_surface_area(1), DomainError);
}

TEST_CASE("geometry validates its parameters") {
  CHECK_THROWS_AS(AnnulusGeometry(1, 0.5), DomainError);
  CHECK_THROWS_AS(AnnulusGeometry(3, 0.0), DomainError);
  CHECK_THROWS_AS(AnnulusGeometry(3, 1.0), DomainError);
  CHECK_THROWS_AS(AnnulusGeometry(3, -0.2), DomainError);
  CHECK_THROWS_AS(AnnulusGeometry(3, std::nan("")), DomainError);
  const AnnulusGeometry g(4, 0.3);
  CHECK(g.n() == 4);
  CHECK(g.a() == 0.3);
  CHECK_THROWS_AS(AnnulusGeometry(2, 0.3).require_series_dimension("op"), DomainError);
  CHECK_NOTHROW(g.require_series_dimension("op"));
}

TEST_CASE("membership and closed radius") {
  const AnnulusGeometry g(3, 0.5);
  CHECK(g.contains(Point{0.7, 0.0, 0.0}));
  CHECK_FALSE(g.contains(Point{0.5, 0.0, 0.0}));
  CHECK_FALSE(g.contains(Point{0.0, 0.0, 1.0}));
  CHECK(g.on_boundary(Point{0.0, 1.0, 0.0}));
  CHECK(g.on_boundary(Point{0.0, 0.0, 0.5 + 1e-13}));
  CHECK_FALSE(g.on_boundary(Point{0.0, 0.7, 0.0}));
  CHECK(g.in_closure(Point{1.0, 0.0, 0.0}));
  CHECK_FALSE(g.in_closure(Point{0.3, 0.0, 0.0}));
  CHECK(g.closed_radius(1.0 + 1e-13) == 1.0);
  CHECK(g.closed_radius(0.5 - 1e-13) == 0.5);
  CHECK_THROWS_AS(g.closed_radius(1.01), DomainError);
  CHECK_THROWS_AS(g.closed_radius(Point{0.1, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(g.contains(Point{0.7, 0.0}), DomainError);
}

TEST_CASE("point arithmetic") {
  const Point p{3.0, 4.0};
  CHECK(p.norm() == 5.0);
  CHECK(p.direction().distance(Point{0.6, 0.8}) <= 4e-16);
  CHECK(p.dot(Point{1.0, 1.0}) == 7.0);
  CHECK(p.distance(Point{0.0, 0.0}) == 5.0);
  CHECK((p + Point{1.0, 1.0}) == Point{4.0, 5.0});
  CHECK(Point::on_axis(3, 0.4) == Point{0.4, 0.0, 0.0});
  CHECK((Point{1e-200, 1e-200}).norm() > 0.0);
  CHECK_THROWS_AS((Point{0.0, 0.0}).direction(), DomainError);
  CHECK_THROWS_AS(p.dot(Point{1.0}), DomainError);
}

TEST_CASE("newtonian potential") {
  const AnnulusGeometry g(3, 0.5);
  const Point x{0.6, 0.0, 0.0};
  const Point y{0.0, 0.8, 0.0};
  CHECK(newtonian_potential(g, x, y) == doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-15));
  CHECK_THROWS_AS(newtonian_potential(g, x, x), SingularityError);
  CHECK_THROWS_AS(newtonian_potential(AnnulusGeometry(2, 0.5), Point{0.6, 0.0}, Point{0.0, 0.7}),
                  DomainError);
}

TEST_CASE("truncation policy validation") {
  TruncationPolicy p;
  CHECK_NOTHROW(p.validate());
  p.max_terms = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = TruncationPolicy{};
  p.abs_tol = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = TruncationPolicy{};
  p.tail_safety = 0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("series summation stops on the certified tail") {
  // sum 2^-k with envelope 2^-k: tail after m is 2^-m.
  TailEnvelope env;
  env.add(1.0, 0.5);
  TruncationPolicy p;
  p.abs_tol = 1e-10;
  const EvalResult r = sum_series(p, [&](int k) { return SeriesTerm{std::ldexp(1.0, -k), env.tail_after(k)}; });
  CHECK(r.converged);
  CHECK(r.tail_bound <= 1e-10);
  CHECK(std::abs(r.value - 2.0) <= r.tail_bound);

  p.max_terms = 3;
  const EvalResult cut = sum_series(p, [&](int k) { return SeriesTerm{std::ldexp(1.0, -k), env.tail_after(k)}; });
  CHECK_FALSE(cut.converged);
  CHECK(cut.terms_used == 3);
  CHECK(cut.value == 1.75);
  CHECK(cut.tail_bound == doctest::Approx(0.25));
}

TEST_CASE("an increasing tail bound is a logic error") {
  TruncationPolicy p;
  CHECK_THROWS_AS(sum_series(p, [](int k) { return SeriesTerm{0.0, 1.0 + k}; }), std::logic_error);
}

TEST_CASE("tail envelope handles polynomial growth") {
  TailEnvelope env(3.0);
  env.add(1.0, 0.5, 2.0, 1.0);
  // Direct majorant sum for comparison.
  for (int m : {0, 5, 40}) {
    double direct = 0.0;
    for (int k = m + 1; k < m + 400; ++k) {
      const double g = (k + 1.0) * (k + 2.0) / 2.0;
      direct += g * (k + 1.0) * (k + 1.0) * std::pow(0.5, k);
    }
    CHECK(env.tail_after(m) >= direct * (1.0 - 1e-12));
  }
  TailEnvelope slow;
  slow.add(1.0, 0.99, 4.0);
  CHECK(std::isinf(slow.tail_after(1)));
}

}  // TEST_SUITE
