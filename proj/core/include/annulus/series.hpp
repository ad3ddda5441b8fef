#pragma once

// Truncated summation of the zonal series with certified tail bounds.
//
// Every series in this library is majorized term-by-term by a finite sum of
// components
//
//     e(k) = scale * G(k) * (k + shift)^power * ratio^k,
//     G(k) = binom(k + g - 1, k)        (G == 1 when g == 0),
//
// each of which has a non-increasing consecutive ratio e(k+1)/e(k) for k >= 1.
// Hence  sum_{k > m} e(k) <= e(m+1) / (1 - rho(m+1))  whenever rho(m+1) < 1,
// and the bound itself is non-increasing in m.

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "annulus/core.hpp"

namespace annulus {

/// Neumaier-compensated accumulator.
class KahanSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class TailEnvelope {
 public:
  /// growth = g in G(k) = binom(k+g-1, k). Harmonic-dimension series use
  /// g = n - 2; Gegenbauer coefficients P_k^lambda(1) use g = 2 lambda.
  explicit TailEnvelope(double growth = 0.0) : growth_(growth) {}

  /// Adds scale * G(k) * (k + shift)^power * ratio^k. Requires ratio >= 0,
  /// scale >= 0 and k + shift > 0 for every k >= 1 when power > 0.
  TailEnvelope& add(double scale, double ratio, double power = 0.0, double shift = 0.0) {
    components_.push_back({scale, ratio, power, shift});
    return *this;
  }

  /// Majorant of sum_{k > m} |t_k|; +inf while the geometric regime has not
  /// started.
  double tail_after(int m) const {
    const double k = static_cast<double>(m) + 1.0;
    const double g = growth_factor(k);
    const double g_ratio = growth_ > 1.0 ? (k + growth_) / (k + 1.0) : 1.0;
    double total = 0.0;
    for (const auto& c : components_) {
      if (c.scale == 0.0 || c.ratio == 0.0) continue;
      double poly = 1.0;
      double poly_ratio = 1.0;
      if (c.power != 0.0) {
        poly = std::pow(k + c.shift, c.power);
        if (c.power > 0.0) poly_ratio = std::pow((k + 1.0 + c.shift) / (k + c.shift), c.power);
      }
      const double rho = c.ratio * poly_ratio * g_ratio;
      if (!(rho < 1.0)) return std::numeric_limits<double>::infinity();
      const double e = c.scale * g * poly * std::pow(c.ratio, k);
      total += e / (1.0 - rho);
    }
    return total;
  }

 private:
  struct Component {
    double scale;
    double ratio;
    double power;
    double shift;
  };

  double growth_factor(double k) const {
    if (growth_ == 0.0) return 1.0;
    if (growth_ == 1.0) return 1.0;
    return std::exp(std::lgamma(k + growth_) - std::lgamma(growth_) - std::lgamma(k + 1.0));
  }

  double growth_;
  std::vector<Component> components_;
};

/// One summand together with a bound on everything after it.
struct SeriesTerm {
  double value;
  double tail_after;  ///< >= sum_{k > m} |t_k|
};

/// Sums term(0), term(1), ... until tail_after <= policy.abs_tol has held for
/// policy.tail_safety consecutive indices, or max_terms is reached.
///
/// Once a finite tail bound appears the bound must not increase (up to
/// rounding); a violation means the envelope is not a valid majorant and is
/// raised as std::logic_error.
template <typename TermFn>
EvalResult sum_series(const TruncationPolicy& policy, TermFn&& term) {
  policy.validate();
  KahanSum acc;
  EvalResult out;
  double previous_tail = std::numeric_limits<double>::infinity();
  int below = 0;
  for (int m = 0; m < policy.max_terms; ++m) {
    const SeriesTerm t = term(m);
    acc.add(t.value);
    out.terms_used = m + 1;
    if (std::isfinite(previous_tail) &&
        t.tail_after > previous_tail * (1.0 + 1e-9) + 1e-300) {
      std::ostringstream msg;
      msg << "tail envelope increased at index " << m << " (" << previous_tail << " -> "
          << t.tail_after << ")";
      throw std::logic_error(msg.str());
    }
    previous_tail = t.tail_after;
    if (t.tail_after <= policy.abs_tol) {
      if (++below >= policy.tail_safety) break;
    } else {
      below = 0;
    }
  }
  out.value = acc.value();
  out.tail_bound = previous_tail;
  out.converged = previous_tail <= policy.abs_tol;
  return out;
}

/// Result used when a series cannot be formed at the requested point.
inline EvalResult diverged_result() {
  return EvalResult{std::numeric_limits<double>::quiet_NaN(), 0,
                    std::numeric_limits<double>::infinity(), false};
}

}  // namespace annulus
