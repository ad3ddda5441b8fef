#include "annulus/critical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "annulus/green.hpp"
#include "annulus/series.hpp"

namespace annulus::critical {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Counts evaluations and insists on converged series.
class Sampler {
 public:
  explicit Sampler(std::function<EvalResult(double)> fn) : fn_(std::move(fn)) {}

  EvalResult eval(double r) {
    ++evaluations_;
    EvalResult res = fn_(r);
    if (!res.converged) {
      std::ostringstream msg;
      msg << "series did not reach tolerance at r = " << r << " (tail " << res.tail_bound
          << ", " << res.terms_used << " terms)";
      throw ConvergenceError(msg.str());
    }
    return res;
  }
  double operator()(double r) { return eval(r).value; }
  int evaluations() const noexcept { return evaluations_; }

 private:
  std::function<EvalResult(double)> fn_;
  int evaluations_ = 0;
};

struct Root {
  double r0;
  double lo;
  double hi;
  double residual;
};

double sample_checked(Sampler& f, double r, const char* where) {
  try {
    return f(r);
  } catch (const ConvergenceError& e) {
    throw BracketError(std::string(where) + ": " + e.what() +
                       "; truncation budget too small near the boundary");
  }
}

// Sweeps from the midpoint towards the boundary where the sign of f is still
// the left-boundary sign, halving the distance each step down to the standoff,
// then bisects. `left_sign` is the sign of f near r = a.
Root bracket_and_bisect(Sampler& f, double a, int left_sign, double standoff, double solver_tol) {
  const double width = 1.0 - a;
  const double mid = a + 0.5 * width;
  const double fmid = sample_checked(f, mid, "bracket sweep");
  if (fmid == 0.0) return {mid, mid, mid, 0.0};

  const bool walk_right = sign_of(fmid) == left_sign;
  double prev = mid;
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
  for (int j = 2; !found; ++j) {
    double d = width * std::ldexp(1.0, -j);
    const bool last = d <= standoff;
    if (last) d = standoff;
    const double r = walk_right ? 1.0 - d : a + d;
    const double fr = sample_checked(f, r, "bracket sweep");
    const int s = sign_of(fr);
    if (walk_right && s == -left_sign) {
      lo = prev;
      hi = r;
      found = true;
    } else if (!walk_right && s == left_sign) {
      lo = r;
      hi = prev;
      found = true;
    } else if (fr == 0.0) {
      return {r, r, r, 0.0};
    } else {
      prev = r;
    }
    if (!found && last) {
      std::ostringstream msg;
      msg << "no sign change of r R'(r) within standoff " << standoff << " of the "
          << (walk_right ? "outer" : "inner") << " boundary";
      throw BracketError(msg.str());
    }
  }

  // The opposite boundary layer must carry the expected sign; anything else
  // means a second crossing.
  const double far = walk_right ? a + standoff : 1.0 - standoff;
  const double ffar = sample_checked(f, far, "sign check");
  const int expected = walk_right ? left_sign : -left_sign;
  if (sign_of(ffar) != expected) {
    std::ostringstream msg;
    msg << "r R'(r) has sign " << sign_of(ffar) << " at r = " << far << ", expected " << expected
        << ": more than one sign change";
    throw MultipleRootsError(msg.str());
  }

  for (int iter = 0; iter < 400; ++iter) {
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    const double m = lo + 0.5 * (hi - lo);
    const double fm = f(m);
    if (fm == 0.0) {
      lo = std::nextafter(m, a);
      hi = std::nextafter(m, 1.0);
      break;
    }
    if (sign_of(fm) == left_sign) {
      lo = m;
    } else {
      hi = m;
    }
  }
  const double r0 = lo + 0.5 * (hi - lo);
  const double residual = std::abs(f(r0));
  if (residual > solver_tol) {
    std::ostringstream msg;
    msg << "residual " << residual << " at r0 = " << r0 << " exceeds solver tolerance "
        << solver_tol;
    throw ConvergenceError(msg.str());
  }
  return {r0, lo, hi, residual};
}

double harmonic_growth(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= n - 3; ++i) b *= static_cast<double>(k + i) / i;
  return b;
}

}  // namespace

double default_standoff(double a) { return 1e-3 * (1.0 - a); }

EvalResult radial_gradient(const AnnulusGeometry& geom, double r, const TruncationPolicy& policy) {
  if (geom.n() == 2) {
    EvalResult d = green::robin2d_first(geom.a(), r, policy);
    d.value *= r;
    d.tail_bound *= r;
    return d;
  }
  return green::robin_radial_gradient(geom, r, policy);
}

CriticalPointReport find_critical_point(const AnnulusGeometry& geom,
                                        const TruncationPolicy& policy, double solver_tol) {
  policy.validate();
  if (!(solver_tol > 0.0)) throw DomainError("find_critical_point: solver_tol must be positive");
  const int n = geom.n();
  const double a = geom.a();
  const int left_sign = n == 2 ? -1 : 1;

  Sampler f([&](double r) { return radial_gradient(geom, r, policy); });
  const Root root = bracket_and_bisect(f, a, left_sign, default_standoff(a), solver_tol);

  CriticalPointReport rep;
  rep.r0 = root.r0;
  rep.lo = root.lo;
  rep.hi = root.hi;
  rep.residual = root.residual;
  rep.solver_tol = solver_tol;

  // f' = R' + r R''.
  auto f_prime = [&](double r) -> EvalResult {
    if (n == 2) {
      const EvalResult d1 = green::robin2d_first(a, r, policy);
      const EvalResult d2 = green::robin2d_second(a, r, policy);
      return {d1.value + r * d2.value, 0, d1.tail_bound + r * d2.tail_bound,
              d1.converged && d2.converged};
    }
    return green::f_prime_eval(geom, r, policy);
  };

  // Newton on f, started from the bisection root.
  double x = root.r0;
  for (int iter = 0; iter < 50; ++iter) {
    const double fx = f(x);
    const EvalResult fp = f_prime(x);
    ++rep.evaluations;
    if (fp.value == 0.0 || !std::isfinite(fp.value)) break;
    const double step = fx / fp.value;
    const double next = std::clamp(x - step, a + default_standoff(a), 1.0 - default_standoff(a));
    if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * x) {
      x = next;
      break;
    }
    x = next;
  }
  rep.newton_r0 = x;
  rep.methods_agree = std::abs(rep.newton_r0 - rep.r0) <= 1e-10;

  // R''(r0) from the series, with the tail bounds as uncertainty.
  const double r0 = rep.r0;
  constexpr double kRounding = 1e-13;
  if (n == 2) {
    const EvalResult d2 = green::robin2d_second(a, r0, policy);
    rep.second_derivative = d2.value;
    rep.second_derivative_uncertainty = d2.tail_bound + kRounding * std::abs(d2.value);
  } else {
    const EvalResult fv = f.eval(r0);
    const EvalResult fp = green::f_prime_eval(geom, r0, policy);
    rep.second_derivative = (fp.value - fv.value / r0) / r0;
    rep.second_derivative_uncertainty =
        (fp.tail_bound + fv.tail_bound / r0) / r0 +
        kRounding * (std::abs(fp.value) + std::abs(fv.value) / r0) / r0;
  }
  ++rep.evaluations;

  const double h = 1e-4 * (1.0 - a);
  const double up = f(r0 + h) / (r0 + h);
  const double down = f(r0 - h) / (r0 - h);
  rep.second_derivative_fd = (up - down) / (2.0 * h);

  rep.second_derivative_sign = sign_of(rep.second_derivative);
  rep.nondegenerate = std::abs(rep.second_derivative) > rep.second_derivative_uncertainty &&
                      sign_of(rep.second_derivative_fd) == rep.second_derivative_sign;
  rep.agrees_with_stated_convexity = rep.second_derivative_sign > 0;
  rep.method = n == 2 ? "sweep+bisection on r R'(r), planar series; Newton check"
                      : "sweep+bisection on r R'(r), zonal series; Newton check with f'";
  rep.evaluations += f.evaluations();
  return rep;
}

EvalResult c3_series_eval(const AnnulusGeometry& geom, double r, const TruncationPolicy& policy) {
  geom.require_series_dimension("c3_series_eval");
  policy.validate();
  const double a = geom.a();
  if (!(r > a && r < 1.0)) {
    std::ostringstream msg;
    msg << "c3_series_eval: radius " << r << " must satisfy a < r < 1 (a = " << a << ")";
    throw DomainError(msg.str());
  }
  const int n = geom.n();
  const double n2 = n - 2.0;
  const double log_a = std::log(a);
  const double ar = a / r;
  const double inner = ar * ar;
  const double outer = r * r;
  const double gap = a * a;
  const double v = std::pow(ar, n - 2);
  const double w = v * std::pow(r, 2.0 - n);

  TailEnvelope envelope(n2);
  envelope.add(w / n2, inner, 1.0, n2).add(1.0 / n2, outer, 1.0, 0.0).add(v, gap);

  auto inverse_gap = [&](int k) { return -1.0 / std::expm1((2.0 * k + n2) * log_a); };
  return sum_series(policy, [&](int k) {
    const double bracket = (2.0 - k - n) * w * std::pow(inner, k) + k * std::pow(outer, k) +
                           n2 * v * std::pow(gap, k);
    const double term = harmonic_growth(n, k) / n2 * bracket * inverse_gap(k);
    return SeriesTerm{term, envelope.tail_after(k) * inverse_gap(k + 1)};
  });
}

double c3_root(const AnnulusGeometry& geom, const TruncationPolicy& policy, double solver_tol) {
  geom.require_series_dimension("c3_root");
  policy.validate();
  if (!(solver_tol > 0.0)) throw DomainError("c3_root: solver_tol must be positive");
  Sampler s([&](double r) { return c3_series_eval(geom, r, policy); });
  return bracket_and_bisect(s, geom.a(), -1, default_standoff(geom.a()), solver_tol).r0;
}

SignChangeWitness sign_change_witness(const AnnulusGeometry& geom, const TruncationPolicy& policy,
                                      int points, double standoff) {
  if (points < 2) throw DomainError("sign_change_witness: need at least two points");
  const double a = geom.a();
  SignChangeWitness w;
  w.points = points;
  w.standoff = standoff < 0.0 ? default_standoff(a) : standoff;
  const double lo = a + w.standoff;
  const double hi = 1.0 - w.standoff;
  if (!(lo < hi)) throw DomainError("sign_change_witness: standoff leaves an empty interval");
  const double step = (hi - lo) / (points - 1);
  int prev_sign = 0;
  double prev_r = lo;
  for (int i = 0; i < points; ++i) {
    const double r = i == points - 1 ? hi : lo + i * step;
    const EvalResult res = radial_gradient(geom, r, policy);
    if (!res.converged) ++w.unconverged;
    const int s = sign_of(res.value);
    if (s != 0) {
      if (prev_sign != 0 && s != prev_sign) {
        ++w.sign_changes;
        w.crossings.push_back(0.5 * (prev_r + r));
      }
      prev_sign = s;
      prev_r = r;
    }
  }
  return w;
}

}  // namespace annulus::critical
