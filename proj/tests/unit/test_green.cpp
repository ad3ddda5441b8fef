#include <doctest.h>

#include <cmath>
#include <string>
#include <tuple>

#include "annulus/core.hpp"
#include "annulus/green.hpp"
#include "fixtures.hpp"

using namespace annulus;
using namespace annulus::green;
using annulus_test::golden;

namespace {

void check_against(const EvalResult& r, const std::string& key, double slack) {
  const double ref = golden(key);
  INFO(key << ": got " << r.value << " expected " << ref << " tail " << r.tail_bound);
  CHECK(r.converged);
  CHECK(std::abs(r.value - ref) <= r.tail_bound + slack * std::max(1.0, std::abs(ref)));
}

struct RadialCase {
  int n;
  double a;
  double r;
  const char* tag;
};

constexpr RadialCase kRadial[] = {
    {3, 0.5, 0.7, "n3_a0.5_r0.7"},
    {4, 0.3, 0.6, "n4_a0.3_r0.6"},
    {5, 0.4, 0.75, "n5_a0.4_r0.75"},
};

}  // namespace

TEST_SUITE("green") {

TEST_CASE("robin function and radial derivatives match reference values") {
  const TruncationPolicy policy;
  for (const auto& c : kRadial) {
    const AnnulusGeometry g(c.n, c.a);
    check_against(robin_eval(g, c.r, policy), std::string("robin_") + c.tag, 1e-14);
    check_against(robin_radial_gradient(g, c.r, policy), std::string("gradient_") + c.tag, 1e-14);
    check_against(f_prime_eval(g, c.r, policy), std::string("fprime_") + c.tag, 1e-14);
  }
}

TEST_CASE("planar robin function matches reference values") {
  const TruncationPolicy policy;
  for (auto [a, r, tag] : {std::tuple{0.2, 0.5, "a0.2_r0.5"}, std::tuple{0.5, 0.8, "a0.5_r0.8"}}) {
    check_against(robin2d_eval(a, r, policy), std::string("robin2d_") + tag, 1e-14);
    check_against(robin2d_first(a, r, policy), std::string("robin2d_first_") + tag, 1e-14);
    check_against(robin2d_second(a, r, policy), std::string("robin2d_second_") + tag, 1e-14);
  }
}

TEST_CASE("green function matches reference values on both paths") {
  const TruncationPolicy policy;
  {
    const AnnulusGeometry g(3, 0.5);
    const Point x{0.7, 0.0, 0.0};
    const Point y{0.3, 0.5, 0.1};
    check_against(green_eval(g, x, y, policy), "green_n3_a0.5", 1e-14);
    check_against(green_piecewise_eval(g, x, y, policy), "green_n3_a0.5", 1e-14);
  }
  {
    const AnnulusGeometry g(4, 0.3);
    const Point x{0.2, 0.4, 0.0, 0.1};
    const Point y{0.6, -0.2, 0.3, 0.2};
    check_against(green_eval(g, x, y, policy), "green_n4_a0.3", 1e-14);
    check_against(green_piecewise_eval(g, x, y, policy), "green_n4_a0.3", 1e-14);
  }
}

TEST_CASE("modal coefficient reference value and symmetry") {
  const AnnulusGeometry g(3, 0.5);
  const double ref = golden("modal_coefficient_n3_a0.5_m0_r0.6_s0.8");
  CHECK(modal_coefficient(g, 0, 0.6, 0.8) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(modal_coefficient(g, 0, 0.8, 0.6) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(modal_coefficient(g, 7, 0.5, 0.8) == 0.0);
  CHECK(modal_coefficient(g, 7, 0.6, 1.0) == 0.0);
}

TEST_CASE("robin function equals the regular part on the diagonal") {
  const AnnulusGeometry g(4, 0.3);
  const Point x{0.0, 0.6, 0.0, 0.0};
  const EvalResult h = regular_part(g, x, x, TruncationPolicy{});
  const EvalResult r = robin_eval(g, 0.6, TruncationPolicy{});
  CHECK(std::abs(h.value - r.value) <= h.tail_bound + r.tail_bound + 1e-14);
}

TEST_CASE("green function is symmetric and vanishes on the boundary") {
  const AnnulusGeometry g(3, 0.4);
  const TruncationPolicy policy;
  const Point x{0.5, 0.2, -0.1};
  const Point y{-0.3, 0.6, 0.4};
  const EvalResult gxy = green_eval(g, x, y, policy);
  const EvalResult gyx = green_eval(g, y, x, policy);
  CHECK(std::abs(gxy.value - gyx.value) <= 1e-13);
  CHECK(gxy.value > 0.0);

  for (const Point& b : {Point{0.0, 1.0, 0.0}, Point{0.0, 0.0, -0.4}}) {
    const EvalResult v = green_eval(g, x, b, policy);
    CHECK(std::abs(v.value) <= v.tail_bound + 1e-13);
  }
  const EvalResult same = green_eval(g, Point{1.0, 0.0, 0.0}, Point{0.0, 1.0, 0.0}, policy);
  CHECK(same.value == 0.0);
  CHECK(same.converged);
  CHECK(same.terms_used == 0);
}

TEST_CASE("green function argument checks") {
  const AnnulusGeometry g(3, 0.5);
  const TruncationPolicy policy;
  const Point x{0.7, 0.0, 0.0};
  CHECK_THROWS_AS(green_eval(g, x, x, policy), SingularityError);
  CHECK_THROWS_AS(green_eval(g, x, Point{0.7, 1e-7, 0.0}, policy), SingularityError);
  CHECK_THROWS_AS(green_eval(g, x, Point{0.2, 0.0, 0.0}, policy), DomainError);
  CHECK_THROWS_AS(green_eval(g, x, Point{0.0, 0.7}, policy), DomainError);
  CHECK_THROWS_AS(green_piecewise_eval(g, x, Point{0.0, 0.7, 0.0}, policy), DomainError);
  CHECK_THROWS_AS(green_eval(AnnulusGeometry(2, 0.5), Point{0.7, 0.0}, Point{0.0, 0.8}, policy),
                  DomainError);
  CHECK_THROWS_AS(robin_eval(g, 0.5, policy), DomainError);
  CHECK_THROWS_AS(robin_eval(g, 1.0, policy), DomainError);
  CHECK_THROWS_AS(robin2d_eval(0.5, 0.3, policy), DomainError);
  CHECK_THROWS_AS(modal_coefficient(g, -1, 0.6, 0.7), DomainError);
}

TEST_CASE("a tiny term budget is reported as unconverged") {
  TruncationPolicy tight;
  tight.max_terms = 2;
  const AnnulusGeometry g(3, 0.5);
  const EvalResult r = robin_eval(g, 0.95, tight);
  CHECK_FALSE(r.converged);
  CHECK(r.terms_used == 2);
  CHECK(r.tail_bound > tight.abs_tol);
  CHECK_FALSE(green_eval(g, Point{0.9, 0.0, 0.0}, Point{0.0, 0.95, 0.0}, tight).converged);
}

TEST_CASE("robin function diverges to minus infinity at the boundary") {
  const AnnulusGeometry g(3, 0.5);
  const TruncationPolicy policy;
  const double mid = robin_eval(g, 0.75, policy).value;
  CHECK(robin_eval(g, 0.51, policy).value < mid);
  CHECK(robin_eval(g, 0.99, policy).value < mid);
  CHECK(robin_eval(g, 0.999, policy).value < robin_eval(g, 0.99, policy).value);
}

}  // TEST_SUITE
