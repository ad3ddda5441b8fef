#include "annulus/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "annulus/series.hpp"

namespace annulus::specfun {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("Gegenbauer parameter must satisfy lambda > 0");
}

double clamp_argument(double t) {
  if (!(std::abs(t) <= 1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "Gegenbauer argument |t| = " << std::abs(t) << " exceeds 1";
    throw DomainError(msg.str());
  }
  return std::clamp(t, -1.0, 1.0);
}

}  // namespace

double gegenbauer_eval(double lambda, int m, double t) {
  require_lambda(lambda);
  if (m < 0) throw DomainError("Gegenbauer degree must be >= 0");
  GegenbauerSequence seq(lambda, clamp_argument(t));
  while (seq.degree() < m) seq.advance();
  return seq.value();
}

GegenbauerSequence::GegenbauerSequence(double lambda, double t) : lambda_(lambda), t_(t) {}

void GegenbauerSequence::advance() noexcept {
  const int m = degree_ + 1;
  double next;
  if (m == 1) {
    next = 2.0 * lambda_ * t_;
  } else {
    next = (2.0 * (m + lambda_ - 1.0) * t_ * current_ - (m + 2.0 * lambda_ - 2.0) * previous_) / m;
  }
  previous_ = current_;
  current_ = next;
  degree_ = m;
}

double gegenbauer_generating_partial_sum(double lambda, double t, double r, int terms) {
  require_lambda(lambda);
  t = clamp_argument(t);
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("generating function requires 0 <= r < 1");
  if (terms < 0) throw DomainError("term count must be >= 0");
  GegenbauerSequence seq(lambda, t);
  KahanSum acc;
  double rm = 1.0;
  for (int m = 0; m <= terms; ++m) {
    acc.add(seq.value() * rm);
    rm *= r;
    seq.advance();
  }
  return acc.value();
}

EvalResult gegenbauer_generating_sum(double lambda, double t, double r,
                                     const TruncationPolicy& policy) {
  require_lambda(lambda);
  t = clamp_argument(t);
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("generating function requires 0 <= r < 1");
  TailEnvelope envelope(2.0 * lambda);
  envelope.add(1.0, r);
  GegenbauerSequence seq(lambda, t);
  return sum_series(policy, [&](int m) {
    while (seq.degree() < m) seq.advance();
    return SeriesTerm{seq.value() * std::pow(r, m), envelope.tail_after(m)};
  });
}

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // Multiplicative form keeps every intermediate an exact binomial.
  u128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t dim_hm(int n, int m) {
  if (n < 3) throw DomainError("dim_hm: requires n >= 3");
  if (m < 0) throw DomainError("dim_hm: degree must be >= 0");
  const std::uint64_t b = binomial(static_cast<std::uint64_t>(n + m - 3), static_cast<std::uint64_t>(m));
  const u128 num = static_cast<u128>(b) * static_cast<std::uint64_t>(2 * m + n - 2);
  const u128 d = num / static_cast<unsigned>(n - 2);
  if (num % static_cast<unsigned>(n - 2) != 0) {
    throw std::logic_error("dim_hm: non-integral harmonic dimension");
  }
  if (d > UINT64_MAX) throw std::overflow_error("dim_hm exceeds 64 bits");
  return static_cast<std::uint64_t>(d);
}

double dim_hm_real(int n, int m) {
  if (n < 3) throw DomainError("dim_hm: requires n >= 3");
  if (m < 0) throw DomainError("dim_hm: degree must be >= 0");
  double b = 1.0;
  for (int i = 1; i <= n - 3; ++i) b *= static_cast<double>(m + i) / i;
  return b * (2.0 * m + n - 2.0) / (n - 2.0);
}

void require_unit(const Point& p, const char* what) {
  if (std::abs(p.norm() - 1.0) > kUnitTolerance) {
    std::ostringstream msg;
    msg << what << " must be a unit vector (|v| = " << p.norm() << ")";
    throw DomainError(msg.str());
  }
}

double zonal_direct(int n, int m, const Point& x, const Point& xi) {
  if (n < 3) throw DomainError("zonal_direct: requires n >= 3");
  if (m < 0) throw DomainError("zonal_direct: degree must be >= 0");
  if (x.dim() != static_cast<std::size_t>(n) || xi.dim() != static_cast<std::size_t>(n)) {
    throw DomainError("zonal_direct: dimension mismatch");
  }
  require_unit(xi, "zonal_direct: xi");
  if (m == 0) return 1.0;
  const double s = x.dot(xi);
  const double r2 = x.dot(x);
  double sum = 0.0;
  for (int k = 0; 2 * k <= m; ++k) {
    // n (n+2) ... (n + 2m - 2k - 4); empty when the last factor is below n.
    double product = 1.0;
    for (int f = n; f <= n + 2 * m - 2 * k - 4; f += 2) product *= f;
    const double denom = std::ldexp(std::tgamma(k + 1.0) * std::tgamma(m - 2.0 * k + 1.0), k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * product / denom * std::pow(s, m - 2 * k) * std::pow(r2, k);
  }
  return (n + 2.0 * m - 2.0) * sum;
}

double zonal_from_gegenbauer(int n, int m, const Point& xprime, const Point& yprime) {
  if (n < 3) throw DomainError("zonal_from_gegenbauer: requires n >= 3");
  if (xprime.dim() != static_cast<std::size_t>(n) || yprime.dim() != static_cast<std::size_t>(n)) {
    throw DomainError("zonal_from_gegenbauer: dimension mismatch");
  }
  require_unit(xprime, "zonal_from_gegenbauer: x'");
  require_unit(yprime, "zonal_from_gegenbauer: y'");
  const double lambda = 0.5 * (n - 2);
  return (2.0 * m + n - 2.0) / (n - 2.0) * gegenbauer_eval(lambda, m, xprime.dot(yprime));
}

double zonal_2d(int m, double theta, double phi) {
  if (m < 1) throw DomainError("zonal_2d: degree must be >= 1 (Z_0 = 1)");
  return 2.0 * std::cos(m * (theta - phi));
}

}  // namespace annulus::specfun
