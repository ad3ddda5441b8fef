#include "annulus/green.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "annulus/series.hpp"
#include "annulus/specfun.hpp"

namespace annulus::green {

namespace {

using specfun::GegenbauerSequence;

// 1 / (1 - a^beta) for beta = 2k + n - 2.
double inverse_gap(double log_a, int n, int k) {
  return -1.0 / std::expm1((2.0 * k + n - 2.0) * log_a);
}

// binom(k + n - 3, k) = P_k^{(n-2)/2}(1) = (n-2) d_k / (2k + n - 2).
double harmonic_growth(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= n - 3; ++i) b *= static_cast<double>(k + i) / i;
  return b;
}

double open_radius(const AnnulusGeometry& geom, double r, const char* op) {
  if (!(r > geom.a() && r < 1.0)) {
    std::ostringstream msg;
    msg << op << ": radius " << r << " must satisfy a < r < 1 (a = " << geom.a() << ")";
    throw DomainError(msg.str());
  }
  return r;
}

void require_planar(double a, double r, const char* op) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError(std::string(op) + ": requires 0 < a < 1");
  if (!(r > a && r < 1.0)) {
    std::ostringstream msg;
    msg << op << ": radius " << r << " must satisfy a < r < 1 (a = " << a << ")";
    throw DomainError(msg.str());
  }
}

struct PointPair {
  double r;
  double s;
  double cosine;
};

PointPair radial_split(const AnnulusGeometry& geom, const Point& x, const Point& y) {
  const double r = geom.closed_radius(x);
  const double s = geom.closed_radius(y);
  const double t = std::clamp(x.dot(y) / (x.norm() * y.norm()), -1.0, 1.0);
  return {r, s, t};
}

// Slowest geometric rate of the regular-part series.
double regular_rate(double a, double r, double s) {
  return std::max(r * s, a * a / (r * s));
}

}  // namespace

double modal_coefficient(const AnnulusGeometry& geom, int m, double r, double s) {
  geom.require_series_dimension("modal_coefficient");
  if (m < 0) throw DomainError("modal_coefficient: mode must be >= 0");
  r = geom.closed_radius(r);
  s = geom.closed_radius(s);
  const double lo = std::min(r, s);
  const double hi = std::max(r, s);
  const int n = geom.n();
  const double a = geom.a();
  const double beta = 2.0 * m + n - 2.0;
  const double inner_factor = -std::expm1(beta * std::log(a / lo));  // 1 - (a/lo)^beta
  const double outer_factor = -std::expm1(beta * std::log(hi));      // 1 - hi^beta
  return std::pow(lo / hi, m) * std::pow(hi, 2.0 - n) * inner_factor * outer_factor *
         inverse_gap(std::log(a), n, m) / (beta * geom.omega());
}

EvalResult regular_part(const AnnulusGeometry& geom, const Point& x, const Point& y,
                        const TruncationPolicy& policy) {
  geom.require_series_dimension("regular_part");
  policy.validate();
  const auto [r, s, t] = radial_split(geom, x, y);
  const int n = geom.n();
  const double a = geom.a();
  const double log_a = std::log(a);

  const double q_outer = r * s;
  const double q_rs = a * a * r / s;
  const double q_sr = a * a * s / r;
  const double q_inner = a * a / (r * s);
  const double c_rs = std::pow(a / s, n - 2);
  const double c_sr = std::pow(a / r, n - 2);
  // a^{n-2} / (rs)^{n-2}
  const double c_inner = std::pow(a / (r * s), n - 2);
  const double prefactor = 1.0 / (geom.omega() * (n - 2));

  TailEnvelope envelope(n - 2.0);
  envelope.add(prefactor, q_outer)
      .add(prefactor * c_rs, q_rs)
      .add(prefactor * c_sr, q_sr)
      .add(prefactor * c_inner, q_inner);

  GegenbauerSequence seq(0.5 * (n - 2), t);
  return sum_series(policy, [&](int k) {
    while (seq.degree() < k) seq.advance();
    const double radial = std::pow(q_outer, k) - c_rs * std::pow(q_rs, k) -
                          c_sr * std::pow(q_sr, k) + c_inner * std::pow(q_inner, k);
    const double term = -prefactor * radial * seq.value() * inverse_gap(log_a, n, k);
    return SeriesTerm{term, envelope.tail_after(k) * inverse_gap(log_a, n, k + 1)};
  });
}

EvalResult green_eval(const AnnulusGeometry& geom, const Point& x, const Point& y,
                      const TruncationPolicy& policy) {
  geom.require_series_dimension("green_eval");
  geom.require_dimension(x);
  geom.require_dimension(y);
  policy.validate();
  const double d = x.distance(y);
  if (d == 0.0) throw SingularityError("green_eval: x = y is the pole of the Green function");
  if (d < kNearDiagonal) {
    throw SingularityError("green_eval: |x - y| below the near-diagonal threshold; use robin_eval");
  }
  const double r = geom.closed_radius(x);
  const double s = geom.closed_radius(y);
  if (regular_rate(geom.a(), r, s) >= 1.0 - 1e-12) {
    // Both points on the same boundary sphere.
    return EvalResult{0.0, 0, 0.0, true};
  }
  EvalResult h = regular_part(geom, x, y, policy);
  h.value += newtonian_potential(geom, x, y);
  return h;
}

EvalResult green_piecewise_eval(const AnnulusGeometry& geom, const Point& x, const Point& y,
                                const TruncationPolicy& policy) {
  geom.require_series_dimension("green_piecewise_eval");
  geom.require_dimension(x);
  geom.require_dimension(y);
  policy.validate();
  const auto [r, s, t] = radial_split(geom, x, y);
  if (r == s) {
    throw DomainError("green_piecewise_eval: |x| = |y| has no convergent modal form; use green_eval");
  }
  const int n = geom.n();
  const double a = geom.a();
  const double log_a = std::log(a);
  const double lo = std::min(r, s);
  const double hi = std::max(r, s);
  const double ratio = lo / hi;
  const double prefactor = std::pow(hi, 2.0 - n) / (geom.omega() * (n - 2));

  TailEnvelope envelope(n - 2.0);
  envelope.add(prefactor, ratio);

  GegenbauerSequence seq(0.5 * (n - 2), t);
  return sum_series(policy, [&](int k) {
    while (seq.degree() < k) seq.advance();
    const double beta = 2.0 * k + n - 2.0;
    const double radial = std::pow(ratio, k) * -std::expm1(beta * std::log(a / lo)) *
                          -std::expm1(beta * std::log(hi));
    const double term = prefactor * radial * seq.value() * inverse_gap(log_a, n, k);
    return SeriesTerm{term, envelope.tail_after(k) * inverse_gap(log_a, n, k + 1)};
  });
}

// Robin-type radial series share the three geometric rates (a/r)^2, a^2, r^2
// written with bases <= 1:
//   a^beta r^{-(2k+2n-4)} = w (a/r)^{2k},  w = (a/r)^{n-2} r^{2-n}
//   a^beta r^{-(n-2)}     = v a^{2k},      v = (a/r)^{n-2}
namespace {

struct RobinRates {
  double inner;  // (a/r)^2
  double gap;    // a^2
  double outer;  // r^2
  double w;
  double v;
};

RobinRates robin_rates(int n, double a, double r) {
  const double ar = a / r;
  return {ar * ar, a * a, r * r, std::pow(ar, n - 2) * std::pow(r, 2.0 - n), std::pow(ar, n - 2)};
}

}  // namespace

EvalResult robin_eval(const AnnulusGeometry& geom, double r, const TruncationPolicy& policy) {
  geom.require_series_dimension("robin_eval");
  policy.validate();
  open_radius(geom, r, "robin_eval");
  const int n = geom.n();
  const double log_a = std::log(geom.a());
  const RobinRates q = robin_rates(n, geom.a(), r);
  const double prefactor = 1.0 / (geom.omega() * (n - 2));

  TailEnvelope envelope(n - 2.0);
  envelope.add(prefactor * q.w, q.inner).add(prefactor * 2.0 * q.v, q.gap).add(prefactor, q.outer);

  return sum_series(policy, [&](int k) {
    const double bracket =
        q.w * std::pow(q.inner, k) - 2.0 * q.v * std::pow(q.gap, k) + std::pow(q.outer, k);
    const double term = -prefactor * harmonic_growth(n, k) * bracket * inverse_gap(log_a, n, k);
    return SeriesTerm{term, envelope.tail_after(k) * inverse_gap(log_a, n, k + 1)};
  });
}

EvalResult robin_radial_gradient(const AnnulusGeometry& geom, double r,
                                 const TruncationPolicy& policy) {
  geom.require_series_dimension("robin_radial_gradient");
  policy.validate();
  open_radius(geom, r, "robin_radial_gradient");
  const int n = geom.n();
  const double log_a = std::log(geom.a());
  const RobinRates q = robin_rates(n, geom.a(), r);
  const double prefactor = 2.0 / (geom.omega() * (n - 2));

  TailEnvelope envelope(n - 2.0);
  envelope.add(prefactor * q.w, q.inner, 1.0, n - 2.0)
      .add(prefactor, q.outer, 1.0, 0.0)
      .add(prefactor * (n - 2.0) * q.v, q.gap);

  return sum_series(policy, [&](int k) {
    const double bracket = (2.0 - k - n) * q.w * std::pow(q.inner, k) +
                           k * std::pow(q.outer, k) + (n - 2.0) * q.v * std::pow(q.gap, k);
    const double term = -prefactor * harmonic_growth(n, k) * bracket * inverse_gap(log_a, n, k);
    return SeriesTerm{term, envelope.tail_after(k) * inverse_gap(log_a, n, k + 1)};
  });
}

EvalResult f_prime_eval(const AnnulusGeometry& geom, double r, const TruncationPolicy& policy) {
  geom.require_series_dimension("f_prime_eval");
  policy.validate();
  open_radius(geom, r, "f_prime_eval");
  const int n = geom.n();
  const double log_a = std::log(geom.a());
  const RobinRates q = robin_rates(n, geom.a(), r);
  const double prefactor = 2.0 / (geom.omega() * (n - 2) * r);
  const double n2 = n - 2.0;

  TailEnvelope envelope(n - 2.0);
  envelope.add(prefactor * 2.0 * q.w, q.inner, 2.0, n2)
      .add(prefactor * 2.0, q.outer, 2.0, 0.0)
      .add(prefactor * n2 * n2 * q.v, q.gap);

  return sum_series(policy, [&](int k) {
    const double kn = k + n2;
    const double bracket = 2.0 * kn * kn * q.w * std::pow(q.inner, k) +
                           2.0 * k * k * std::pow(q.outer, k) -
                           n2 * n2 * q.v * std::pow(q.gap, k);
    const double term = -prefactor * harmonic_growth(n, k) * bracket * inverse_gap(log_a, n, k);
    return SeriesTerm{term, envelope.tail_after(k) * inverse_gap(log_a, n, k + 1)};
  });
}

// Planar Robin series: index 0 carries the logarithmic part, index m >= 1
// the m-th Fourier mode.
EvalResult robin2d_eval(double a, double r, const TruncationPolicy& policy) {
  require_planar(a, r, "robin2d_eval");
  policy.validate();
  const double la = std::log(a);
  const double lr = std::log(r);
  const double ar2 = (a / r) * (a / r);
  TailEnvelope envelope;
  envelope.add(1.0, r * r, -1.0).add(2.0, a * a, -1.0).add(1.0, ar2, -1.0);
  return sum_series(policy, [&](int m) {
    double term;
    if (m == 0) {
      term = -lr * lr / la;
    } else {
      term = (std::pow(r * r, m) - 2.0 * std::pow(a * a, m) + std::pow(ar2, m)) /
             (m * -std::expm1(2.0 * m * la));
    }
    return SeriesTerm{term, envelope.tail_after(m) / -std::expm1(2.0 * (m + 1) * la)};
  });
}

EvalResult robin2d_first(double a, double r, const TruncationPolicy& policy) {
  require_planar(a, r, "robin2d_first");
  policy.validate();
  const double la = std::log(a);
  const double lr = std::log(r);
  const double ar2 = (a / r) * (a / r);
  TailEnvelope envelope;
  envelope.add(2.0 / r, r * r).add(2.0 / r, ar2);
  return sum_series(policy, [&](int m) {
    double term;
    if (m == 0) {
      term = -2.0 * lr / (r * la);
    } else {
      term = 2.0 / r * (std::pow(r * r, m) - std::pow(ar2, m)) / -std::expm1(2.0 * m * la);
    }
    return SeriesTerm{term, envelope.tail_after(m) / -std::expm1(2.0 * (m + 1) * la)};
  });
}

EvalResult robin2d_second(double a, double r, const TruncationPolicy& policy) {
  require_planar(a, r, "robin2d_second");
  policy.validate();
  const double la = std::log(a);
  const double lr = std::log(r);
  const double ar2 = (a / r) * (a / r);
  const double scale = 2.0 / (r * r);
  TailEnvelope envelope;
  envelope.add(2.0 * scale, r * r, 1.0, -0.5).add(2.0 * scale, ar2, 1.0, 0.5);
  return sum_series(policy, [&](int m) {
    double term;
    if (m == 0) {
      term = -2.0 * (1.0 - lr) / (r * r * la);
    } else {
      term = scale * ((2.0 * m - 1.0) * std::pow(r * r, m) + (2.0 * m + 1.0) * std::pow(ar2, m)) /
             -std::expm1(2.0 * m * la);
    }
    return SeriesTerm{term, envelope.tail_after(m) / -std::expm1(2.0 * (m + 1) * la)};
  });
}

}  // namespace annulus::green
