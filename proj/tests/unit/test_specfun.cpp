#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "annulus/specfun.hpp"
#include "fixtures.hpp"

using namespace annulus;
using namespace annulus::specfun;

TEST_SUITE("specfun") {

TEST_CASE("gegenbauer reference value") {
  CHECK(std::abs(gegenbauer_eval(1.0, 2, 0.5) - annulus_test::golden("gegenbauer_l1_m2_t0.5")) <=
        1e-15);
}

TEST_CASE("gegenbauer low degrees match closed forms") {
  for (double lambda : {0.5, 1.0, 1.5, 2.5}) {
    for (double t : {-1.0, -0.3, 0.0, 0.42, 1.0}) {
      CHECK(gegenbauer_eval(lambda, 0, t) == 1.0);
      CHECK(gegenbauer_eval(lambda, 1, t) == doctest::Approx(2.0 * lambda * t).epsilon(1e-15));
      const double p2 = 2.0 * lambda * (lambda + 1.0) * t * t - lambda;
      CHECK(gegenbauer_eval(lambda, 2, t) == doctest::Approx(p2).epsilon(1e-14));
    }
  }
  // lambda = 1/2 gives Legendre: P_3(t) = (5t^3 - 3t) / 2.
  const double t = 0.3;
  CHECK(gegenbauer_eval(0.5, 3, t) == doctest::Approx(0.5 * (5 * t * t * t - 3 * t)).epsilon(1e-14));
}

TEST_CASE("gegenbauer endpoint equals the binomial") {
  for (int n = 3; n <= 8; ++n) {
    const double lambda = 0.5 * (n - 2);
    for (int m = 0; m <= 30; ++m) {
      const double expect = static_cast<double>(binomial(m + n - 3, m));
      CHECK(gegenbauer_eval(lambda, m, 1.0) == expect);
    }
  }
}

TEST_CASE("gegenbauer sequence agrees with direct evaluation") {
  GegenbauerSequence seq(1.5, -0.7);
  for (int m = 0; m <= 40; ++m) {
    CHECK(seq.degree() == m);
    CHECK(seq.value() == doctest::Approx(gegenbauer_eval(1.5, m, -0.7)).epsilon(1e-13));
    seq.advance();
  }
}

TEST_CASE("gegenbauer argument validation") {
  CHECK_THROWS_AS(gegenbauer_eval(1.0, 3, 1.1), DomainError);
  CHECK_THROWS_AS(gegenbauer_eval(0.0, 3, 0.5), DomainError);
  CHECK_THROWS_AS(gegenbauer_eval(1.0, -1, 0.5), DomainError);
  CHECK_NOTHROW(gegenbauer_eval(1.0, 3, 1.0 + 1e-13));
}

TEST_CASE("generating function") {
  for (double lambda : {0.5, 1.0, 1.5}) {
    for (double t : {-0.9, 0.1, 0.8}) {
      for (double r : {0.2, 0.6, 0.9}) {
        const double exact = std::pow(1.0 - 2.0 * r * t + r * r, -lambda);
        const EvalResult s = gegenbauer_generating_sum(lambda, t, r, TruncationPolicy{});
        CHECK(s.converged);
        CHECK(std::abs(s.value - exact) <= s.tail_bound + 1e-13 * exact);
      }
    }
  }
  const double partial = gegenbauer_generating_partial_sum(1.0, 0.3, 0.5, 400);
  CHECK(partial == doctest::Approx(1.0 / (1.0 - 0.3 + 0.25)).epsilon(1e-13));
}

TEST_CASE("binomials and harmonic dimensions") {
  CHECK(binomial(10, 3) == 120u);
  CHECK(binomial(5, 7) == 0u);
  CHECK(binomial(66, 33) == 7219428434016265740ull);
  CHECK_THROWS_AS(binomial(200, 100), std::overflow_error);
  for (int m = 0; m <= 20; ++m) {
    CHECK(dim_hm(3, m) == static_cast<std::uint64_t>(2 * m + 1));
    CHECK(dim_hm(4, m) == static_cast<std::uint64_t>((m + 1) * (m + 1)));
  }
  for (int n = 3; n <= 9; ++n) {
    for (int m = 2; m <= 25; ++m) {
      const auto lhs = dim_hm(n, m);
      const auto rhs = binomial(n + m - 1, m) - binomial(n + m - 3, m - 2);
      CHECK(lhs == rhs);
      CHECK(dim_hm_real(n, m) == doctest::Approx(static_cast<double>(lhs)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(dim_hm(2, 3), DomainError);
  CHECK(std::isfinite(dim_hm_real(10, 500)));
}

TEST_CASE("zonal harmonics: explicit sum against gegenbauer") {
  const Point xi{0.0, 0.6, 0.8};
  const Point y{0.48, 0.0, 0.64};  // |y| = 0.8
  const Point yhat = y.direction();
  for (int m = 0; m <= 16; ++m) {
    const double direct = zonal_direct(3, m, y, xi);
    const double viag = std::pow(0.8, m) * zonal_from_gegenbauer(3, m, yhat, xi);
    CHECK(std::abs(direct - viag) <= 1e-12 * static_cast<double>(dim_hm(3, m)));
  }
  // Diagonal value equals the dimension.
  const Point e{1.0, 0.0, 0.0, 0.0};
  for (int m = 0; m <= 10; ++m) {
    CHECK(zonal_from_gegenbauer(4, m, e, e) == doctest::Approx(double(dim_hm(4, m))));
    CHECK(zonal_direct(4, m, e, e) == doctest::Approx(double(dim_hm(4, m))));
  }
  CHECK_THROWS_AS(zonal_direct(3, 2, y, y), DomainError);
}

TEST_CASE("planar zonal harmonic") {
  CHECK(zonal_2d(3, 0.4, 0.1) == doctest::Approx(2.0 * std::cos(0.9)));
  CHECK_THROWS_AS(zonal_2d(0, 0.0, 0.0), DomainError);
}

}  // TEST_SUITE
