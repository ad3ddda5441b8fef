#include <doctest.h>

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

#include "annulus/critical.hpp"
#include "annulus/green.hpp"
#include "fixtures.hpp"

using namespace annulus;
using namespace annulus::critical;
using annulus_test::golden;

TEST_SUITE("critical") {

TEST_CASE("critical radius matches reference values") {
  const TruncationPolicy policy;
  for (auto [n, a, key] : {std::tuple{2, 0.2, "r0_n2_a0.2"}, std::tuple{3, 0.5, "r0_n3_a0.5"},
                           std::tuple{4, 0.3, "r0_n4_a0.3"}}) {
    const AnnulusGeometry g(n, a);
    const CriticalPointReport rep = find_critical_point(g, policy);
    INFO("n = " << n << " a = " << a);
    CHECK(std::abs(rep.r0 - golden(key)) <= 1e-11);
    CHECK(rep.residual <= rep.solver_tol);
    CHECK(rep.lo <= rep.r0);
    CHECK(rep.r0 <= rep.hi);
    CHECK(rep.methods_agree);
    CHECK(std::abs(rep.newton_r0 - rep.r0) <= 1e-10);
    CHECK(rep.nondegenerate);
    CHECK(std::abs(rep.second_derivative - rep.second_derivative_fd) <=
          1e-5 * std::abs(rep.second_derivative));
  }
}

TEST_CASE("convexity at the critical point depends on dimension") {
  const TruncationPolicy policy;
  const CriticalPointReport planar = find_critical_point(AnnulusGeometry(2, 0.2), policy);
  CHECK(planar.second_derivative_sign == 1);
  CHECK(planar.agrees_with_stated_convexity);
  for (int n : {3, 4, 5}) {
    const CriticalPointReport rep = find_critical_point(AnnulusGeometry(n, 0.4), policy);
    CHECK(rep.second_derivative_sign == -1);
    CHECK_FALSE(rep.agrees_with_stated_convexity);
    CHECK(rep.second_derivative + rep.second_derivative_uncertainty < 0.0);
  }
}

TEST_CASE("the alternative series has the same root") {
  const TruncationPolicy policy;
  for (auto [n, a] : {std::pair{3, 0.5}, std::pair{4, 0.3}, std::pair{5, 0.6}}) {
    const AnnulusGeometry g(n, a);
    const double r0 = find_critical_point(g, policy).r0;
    CHECK(std::abs(c3_root(g, policy) - r0) <= 1e-8);
    // S = -(omega/2) f away from the root.
    const double r = 0.5 * (a + 1.0) + 0.1 * (1.0 - a);
    const EvalResult s = c3_series_eval(g, r, policy);
    const EvalResult f = radial_gradient(g, r, policy);
    CHECK(s.value == doctest::Approx(-0.5 * g.omega() * f.value).epsilon(1e-12));
  }
  CHECK_THROWS_AS(c3_series_eval(AnnulusGeometry(2, 0.5), 0.7, policy), DomainError);
}

TEST_CASE("sign-change witness sees exactly one crossing at the root") {
  const TruncationPolicy policy;
  const AnnulusGeometry g(3, 0.5);
  const SignChangeWitness w = sign_change_witness(g, policy);
  CHECK(w.points == 2000);
  CHECK(w.sign_changes == 1);
  CHECK(w.unconverged == 0);
  REQUIRE(w.crossings.size() == 1);
  const double r0 = find_critical_point(g, policy).r0;
  const double cell = (1.0 - 0.5 - 2.0 * w.standoff) / (w.points - 1);
  CHECK(std::abs(w.crossings[0] - r0) <= cell);
  CHECK(w.standoff == default_standoff(0.5));
}

TEST_CASE("critical radius moves with the inner radius") {
  const TruncationPolicy policy;
  const double r_small = find_critical_point(AnnulusGeometry(3, 0.3), policy).r0;
  const double r_large = find_critical_point(AnnulusGeometry(3, 0.5), policy).r0;
  CHECK(r_small > 0.3);
  CHECK(r_large > 0.5);
  CHECK(r_small < r_large);
}

TEST_CASE("radial gradient changes sign across the root") {
  const TruncationPolicy policy;
  for (int n : {2, 3}) {
    const AnnulusGeometry g(n, 0.4);
    const double r0 = find_critical_point(g, policy).r0;
    const double below = radial_gradient(g, r0 - 0.05, policy).value;
    const double above = radial_gradient(g, r0 + 0.05, policy).value;
    CHECK(below * above < 0.0);
  }
}

TEST_CASE("solver reports failure under a starved truncation") {
  TruncationPolicy tight;
  tight.max_terms = 2;
  CHECK_THROWS_AS(find_critical_point(AnnulusGeometry(3, 0.5), tight), ConvergenceError);
  CHECK_THROWS_AS(find_critical_point(AnnulusGeometry(3, 0.5), TruncationPolicy{}, 0.0),
                  DomainError);
}

}  // TEST_SUITE
