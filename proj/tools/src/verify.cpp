#include "annulus/cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "annulus/critical.hpp"
#include "annulus/green.hpp"
#include "annulus/kernels.hpp"
#include "annulus/oracle.hpp"
#include "annulus/specfun.hpp"

namespace annulus::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxNotes = 6;

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  os << std::setprecision(6);
  (os << ... << args);
  return os.str();
}

class Checks {
 public:
  explicit Checks(SuiteResult& r) : r_(r) {}

  /// observed <= limit; NaN counts as a failure.
  bool within(double observed, double limit, const std::string& label) {
    const bool ok = observed <= limit;
    record(ok, ok ? observed / limit : (std::isnan(observed) ? kInf : observed / limit), label);
    return ok;
  }

  bool require(bool ok, const std::string& label) {
    record(ok, ok ? 0.0 : kInf, label);
    return ok;
  }

  /// A series result must meet its tolerance before its value is trusted.
  bool converged(const EvalResult& e, const std::string& label) {
    return require(e.converged, cat(label, ": tail bound ", e.tail_bound, " not met after ",
                                    e.terms_used, " terms"));
  }

  void note(const std::string& s) { r_.notes.push_back(s); }

 private:
  void record(bool ok, double ratio, const std::string& label) {
    ++r_.checks;
    if (ratio > r_.worst_ratio) {
      r_.worst_ratio = ratio;
      r_.worst_check = label;
    }
    if (!ok) {
      ++r_.failures;
      if (r_.failures <= kMaxNotes) r_.notes.push_back("FAIL " + label);
    }
  }

  SuiteResult& r_;
};

class Rng {
 public:
  Rng(std::uint64_t seed, int suite) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite)};
    engine_.seed(seq);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  Point direction(int n) {
    std::normal_distribution<double> gauss;
    std::vector<double> v(n);
    double s = 0.0;
    do {
      s = 0.0;
      for (double& c : v) {
        c = gauss(engine_);
        s += c * c;
      }
    } while (s < 1e-12);
    s = std::sqrt(s);
    for (double& c : v) c /= s;
    return Point(std::move(v));
  }

  Point point(int n, double rlo, double rhi) { return direction(n).scaled(uniform(rlo, rhi)); }

 private:
  std::mt19937_64 engine_;
};

struct Band {
  double lo;
  double hi;
};

Band band(double a, double frac) { return {a + frac * (1.0 - a), 1.0 - frac * (1.0 - a)}; }

SuiteResult make(int id) {
  SuiteResult r;
  r.id = id;
  return r;
}

// --- 1 -----------------------------------------------------------------------
SuiteResult dirichlet_suite(const VerifyOptions& o) {
  SuiteResult res = make(1);
  Checks c(res);
  Rng rng(o.seed, 1);
  double largest = 0.0;
  for (int n : {3, 4}) {
    for (double a : {0.3, 0.5}) {
      const AnnulusGeometry g(n, a);
      const Band b = band(a, 0.02);
      for (int i = 0; i < 50; ++i) {
        const Point x = rng.direction(n).scaled(i % 2 == 0 ? 1.0 : a);
        const Point y = rng.point(n, b.lo, b.hi);
        const EvalResult v = green::green_eval(g, x, y, o.policy);
        const std::string label = cat("n=", n, " a=", a, " |x|=", x.norm(), " G=", v.value);
        if (c.converged(v, label)) c.within(std::abs(v.value) - v.tail_bound, 1e-8, label);
        largest = std::max(largest, std::abs(v.value));
      }
    }
  }
  res.notes.push_back(cat("largest |G| on the boundary ", largest));
  return res;
}

// --- 2 -----------------------------------------------------------------------
SuiteResult symmetry_suite(const VerifyOptions& o) {
  SuiteResult res = make(2);
  Checks c(res);
  Rng rng(o.seed, 2);
  const std::vector<std::pair<int, double>> configs{{3, 0.3}, {3, 0.5}, {4, 0.3}, {4, 0.6}, {5, 0.4}};
  for (int i = 0; i < 200; ++i) {
    const auto [n, a] = configs[i % configs.size()];
    const AnnulusGeometry g(n, a);
    const Band b = band(a, 0.01);
    Point x;
    Point y;
    do {
      x = rng.point(n, b.lo, b.hi);
      y = rng.point(n, b.lo, b.hi);
    } while (x.distance(y) < 1e-3);
    const EvalResult gxy = green::green_eval(g, x, y, o.policy);
    const EvalResult gyx = green::green_eval(g, y, x, o.policy);
    const std::string label = cat("n=", n, " a=", a, " pair ", i);
    if (c.converged(gxy, label) && c.converged(gyx, label)) {
      c.within(std::abs(gxy.value - gyx.value) / std::max(1.0, std::abs(gxy.value)), 1e-10, label);
    }
  }
  return res;
}

// --- 3 -----------------------------------------------------------------------
SuiteResult harmonicity_suite(const VerifyOptions& o) {
  SuiteResult res = make(3);
  Checks c(res);
  Rng rng(o.seed, 3);
  const std::vector<std::pair<int, double>> configs{{3, 0.3}, {4, 0.3}, {5, 0.4}};
  constexpr double h = 1e-3;
  for (int i = 0; i < 50; ++i) {
    const auto [n, a] = configs[i % configs.size()];
    const AnnulusGeometry g(n, a);
    const Band b = band(a, 0.35);
    const Point x = rng.point(n, b.lo, b.hi);
    const Point y = rng.point(n, b.lo, b.hi);
    bool ok = true;
    auto H = [&](const Point& p) {
      const EvalResult e = green::regular_part(g, p, y, o.policy);
      ok = ok && e.converged;
      return e.value;
    };
    const double h0 = H(x);
    double lap = 0.0;
    for (int d = 0; d < n; ++d) {
      Point xp = x;
      Point xm = x;
      xp[d] += h;
      xm[d] -= h;
      lap += H(xp) + H(xm) - 2.0 * h0;
    }
    lap /= h * h;
    const std::string label = cat("n=", n, " a=", a, " pair ", i, " lap=", lap);
    if (c.require(ok, label + ": regular part did not converge")) c.within(std::abs(lap), 1e-4, label);
  }
  return res;
}

// --- 4 -----------------------------------------------------------------------
SuiteResult modal_oracle_suite(const VerifyOptions& o) {
  SuiteResult res = make(4);
  Checks c(res);
  Rng rng(o.seed, 4);
  double lo_ratio = kInf;
  double hi_ratio = -kInf;
  for (auto [n, a] : std::vector<std::pair<int, double>>{{3, 0.5}, {4, 0.3}, {5, 0.4}}) {
    const AnnulusGeometry g(n, a);
    const Band b = band(a, 0.02);
    for (int j = 0; j < 20; ++j) {
      const double r = rng.uniform(b.lo, b.hi);
      const double s = rng.uniform(b.lo, b.hi);
      for (int m = 0; m <= 50; ++m) {
        const double ratio = oracle::modal_green_analytic(n, m, a, r, s) /
                             (g.omega() * green::modal_coefficient(g, m, r, s));
        lo_ratio = std::min(lo_ratio, ratio);
        hi_ratio = std::max(hi_ratio, ratio);
        c.within(std::abs(ratio - 1.0), 1e-10, cat("n=", n, " m=", m, " r=", r, " s=", s));
      }
    }
  }
  c.note(cat("normalization constant in [", std::setprecision(17), lo_ratio, ", ", hi_ratio, "]"));

  struct FdCase {
    int n;
    int m;
    double a;
    double s;
  };
  for (const FdCase& fc : {FdCase{3, 0, 0.5, 0.75}, FdCase{4, 3, 0.3, 0.6}}) {
    const oracle::ConvergenceStudy st =
        oracle::modal_fd_convergence(fc.n, fc.m, fc.a, fc.s, {500, 1000, 2000});
    const std::string tag = cat("fd n=", fc.n, " m=", fc.m, " a=", fc.a);
    c.within(st.errors.back(), 1e-4, tag + " error at N=2000 " + cat(st.errors.back()));
    for (double order : st.orders) c.within(std::abs(order - 2.0), 0.2, tag + cat(" order ", order));
    c.note(cat(tag, ": errors ", st.errors[0], ", ", st.errors[1], ", ", st.errors[2], "; orders ",
               st.orders[0], ", ", st.orders[1]));
  }
  return res;
}

// --- 5 -----------------------------------------------------------------------
SuiteResult ball_limit_suite(const VerifyOptions& o) {
  SuiteResult res = make(5);
  Checks c(res);
  const std::vector<double> radii{0.1, 0.03, 0.01};
  const std::vector<std::pair<Point, Point>> pairs{{Point{0.5, 0.0, 0.0}, Point{0.3, 0.2, 0.0}},
                                                   {Point{0.5, 0.0, 0.0, 0.0}, Point{0.3, 0.2, 0.0, 0.1}}};
  for (const auto& [x, y] : pairs) {
    const int n = static_cast<int>(x.dim());
    const double p = n - 2.0;
    const double ball = oracle::ball_green_closed_form(n, x, y);
    std::vector<double> err;
    bool ok = true;
    for (double a : radii) {
      const EvalResult e = green::green_eval(AnnulusGeometry(n, a), x, y, o.policy);
      ok = c.converged(e, cat("n=", n, " a=", a)) && ok;
      err.push_back(std::abs(e.value - ball));
    }
    if (!ok) continue;
    double C = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) C = std::max(C, err[i] / std::pow(radii[i], p));
    for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
      c.require(err[i + 1] < err[i], cat("n=", n, " error not decreasing at a=", radii[i + 1]));
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
      c.within(err[i], C * std::pow(radii[i], p) * (1.0 + 1e-12), cat("n=", n, " a=", radii[i]));
    }
    // Least-squares slope of log(err) against log(a).
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      mx += std::log(radii[i]) / radii.size();
      my += std::log(err[i]) / radii.size();
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      sxy += (std::log(radii[i]) - mx) * (std::log(err[i]) - my);
      sxx += (std::log(radii[i]) - mx) * (std::log(radii[i]) - mx);
    }
    const double slope = sxy / sxx;
    c.within(std::abs(slope - p), 0.2, cat("n=", n, " log-log slope ", slope));
    c.note(cat("n=", n, ": errors ", err[0], ", ", err[1], ", ", err[2], "; C=", C, " slope=", slope));
  }
  return res;
}

// --- 6 -----------------------------------------------------------------------
SuiteResult critical_point_suite(const VerifyOptions& o) {
  SuiteResult res = make(6);
  Checks c(res);
  for (auto [n, a] : std::vector<std::pair<int, double>>{{2, 0.2}, {3, 0.5}, {4, 0.3}}) {
    const AnnulusGeometry g(n, a);
    const std::string tag = cat("n=", n, " a=", a);
    critical::CriticalPointReport rep;
    try {
      rep = critical::find_critical_point(g, o.policy, 1e-10);
    } catch (const Error& e) {
      c.require(false, tag + ": " + e.what());
      continue;
    }
    int unconverged = 0;
    auto robin = [&](double r) {
      const EvalResult e = n == 2 ? green::robin2d_eval(a, r, o.policy) : green::robin_eval(g, r, o.policy);
      if (!e.converged) ++unconverged;
      return e.value;
    };
    const Band b = band(a, 0.05);
    const oracle::ScanResult scan = oracle::grid_scan_extremum(
        robin, b.lo, b.hi, 100000, n == 2 ? oracle::Extremum::minimum : oracle::Extremum::maximum);
    c.require(unconverged == 0, cat(tag, ": ", unconverged, " scan points did not converge"));
    c.require(!scan.at_edge, tag + ": scan extremum at the grid edge");
    c.within(std::abs(rep.r0 - scan.radius), 1e-6, cat(tag, " |r0 - scan| (scan ", scan.radius, ")"));
    c.within(rep.residual, 1e-10, tag + " residual");
    c.within(std::abs(rep.newton_r0 - rep.r0), 1e-10, tag + " bisection vs Newton");
    c.require(rep.nondegenerate, cat(tag, ": R'' = ", rep.second_derivative, " +- ",
                                     rep.second_derivative_uncertainty, " not certified"));
    if (n >= 3) {
      try {
        const double root = critical::c3_root(g, o.policy, 1e-10);
        c.within(std::abs(root - rep.r0), 1e-8, tag + " c3 root vs r0");
      } catch (const Error& e) {
        c.require(false, tag + ": c3 root: " + e.what());
      }
    }
    const critical::SignChangeWitness w = critical::sign_change_witness(g, o.policy);
    c.require(w.unconverged == 0, cat(tag, ": ", w.unconverged, " witness points did not converge"));
    c.require(w.sign_changes == 1, cat(tag, ": ", w.sign_changes, " sign changes on the standoff grid"));
    c.note(cat(tag, ": r0=", std::setprecision(15), rep.r0, std::setprecision(6), " R''=",
               rep.second_derivative, " (", rep.second_derivative > 0 ? "minimum" : "maximum",
               ", stated R''>0 ", rep.agrees_with_stated_convexity ? "holds" : "does not hold", ")"));
  }
  return res;
}

// --- 7 -----------------------------------------------------------------------
SuiteResult planar_convexity_suite(const VerifyOptions& o) {
  SuiteResult res = make(7);
  Checks c(res);
  for (double a : {0.1, 0.2, 0.5}) {
    for (int i = 0; i < 50; ++i) {
      const double r = a + (i + 0.5) * (1.0 - a) / 50.0;
      const EvalResult d2 = green::robin2d_second(a, r, o.policy);
      const std::string label = cat("a=", a, " r=", r, " R''=", d2.value);
      if (c.converged(d2, label)) c.require(d2.value - d2.tail_bound > 0.0, label + " not positive");
    }
    // R' runs from -inf at r = a to +inf at r = 1.
    double prev_in = 0.0;
    double prev_out = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const double d = eps * (1.0 - a);
      const EvalResult in = green::robin2d_first(a, a + d, o.policy);
      const EvalResult out = green::robin2d_first(a, 1.0 - d, o.policy);
      const std::string tag = cat("a=", a, " offset ", d);
      if (!c.converged(in, tag + " inner") || !c.converged(out, tag + " outer")) continue;
      c.require(in.value < 0.0 && in.value < prev_in, cat(tag, ": R'(a+) = ", in.value));
      c.require(out.value > 0.0 && out.value > prev_out, cat(tag, ": R'(1-) = ", out.value));
      prev_in = in.value;
      prev_out = out.value;
    }
  }
  return res;
}

// --- 8 -----------------------------------------------------------------------
SuiteResult special_functions_suite(const VerifyOptions& o) {
  SuiteResult res = make(8);
  Checks c(res);
  Rng rng(o.seed, 8);
  for (int n = 3; n <= 8; ++n) {
    for (int m = 0; m <= 30; ++m) {
      const double p = specfun::gegenbauer_eval(0.5 * (n - 2), m, 1.0);
      const std::uint64_t b = specfun::binomial(n + m - 3, m);
      c.require(p == static_cast<double>(b), cat("P_", m, "(1) n=", n, ": ", p, " vs ", b));
      // d_m two ways: (2m+n-2)/(n-2) binom(n+m-3, m) and binom(n+m-1, m) - binom(n+m-3, m-2).
      const std::uint64_t diff =
          specfun::binomial(n + m - 1, m) - (m >= 2 ? specfun::binomial(n + m - 3, m - 2) : 0);
      c.require(specfun::dim_hm(n, m) == diff, cat("d_m n=", n, " m=", m));
    }
  }
  for (double lambda : {0.5, 1.0, 1.5, 2.5}) {
    for (double t : {-0.9, -0.3, 0.2, 0.7, 1.0}) {
      for (double r : {0.2, 0.5, 0.8}) {
        const double closed = std::pow(1.0 - 2.0 * r * t + r * r, -lambda);
        const EvalResult s = specfun::gegenbauer_generating_sum(lambda, t, r, o.policy);
        const std::string label = cat("lambda=", lambda, " t=", t, " r=", r);
        if (c.converged(s, label)) c.within(std::abs(s.value - closed), 1e-9, label);
        const double partial = specfun::gegenbauer_generating_partial_sum(lambda, t, r, 400);
        c.within(std::abs(partial - closed), 1e-9, label + " partial sum");
      }
    }
  }
  for (int n = 3; n <= 8; ++n) {
    for (int m = 0; m <= 16; ++m) {
      const double dm = specfun::dim_hm_real(n, m);
      for (int k = 0; k < 10; ++k) {
        const Point x = rng.direction(n);
        const Point y = rng.direction(n);
        const double direct = specfun::zonal_direct(n, m, x, y);
        const double via = specfun::zonal_from_gegenbauer(n, m, x, y);
        c.within(std::abs(direct - via) / std::max(1.0, dm), 1e-10, cat("zonal routes n=", n, " m=", m));
      }
    }
    for (int m = 0; m <= 30; ++m) {
      const Point x = rng.direction(n);
      const double dm = static_cast<double>(specfun::dim_hm(n, m));
      c.within(std::abs(specfun::zonal_from_gegenbauer(n, m, x, x) - dm) / dm, 1e-10,
               cat("Z_m(x,x) n=", n, " m=", m));
    }
  }
  return res;
}

// --- 9 -----------------------------------------------------------------------
SuiteResult newtonian_series_suite(const VerifyOptions& o) {
  SuiteResult res = make(9);
  Checks c(res);
  Rng rng(o.seed, 9);
  for (int n : {3, 4, 5}) {
    for (int i = 0; i < 500; ++i) {
      const double a = rng.uniform(0.3, 0.65);
      const AnnulusGeometry g(n, a);
      EvalResult series;
      double direct = 0.0;
      std::string kind;
      if (i % 3 == 0) {
        const Point xi = rng.direction(n);
        const Point y = rng.direction(n).scaled(rng.uniform(0.0, 0.7));
        series = kernels::newtonian_series_outer(g, xi, y, o.policy);
        direct = std::pow(xi.distance(y), 2.0 - n);
        kind = "outer";
      } else if (i % 3 == 1) {
        const Point xi = rng.direction(n);
        const Point y = rng.direction(n).scaled(rng.uniform(a / 0.7, 1.0));
        series = kernels::newtonian_series_inner(g, xi, y, o.policy);
        direct = std::pow(xi.scaled(a).distance(y), 2.0 - n);
        kind = "inner";
      } else {
        const Point x = rng.direction(n).scaled(rng.uniform(a, 1.0));
        const Point y = rng.direction(n).scaled(x.norm() * rng.uniform(0.0, 0.7));
        series = kernels::newtonian_series_exterior(g, x, y, o.policy);
        direct = std::pow(x.distance(y), 2.0 - n);
        kind = "exterior";
      }
      const std::string label = cat("n=", n, " ", kind, " case ", i);
      if (c.converged(series, label)) {
        c.within(std::abs(series.value - direct), series.tail_bound + 1e-12, label);
      }
    }
  }
  return res;
}

// --- 10 ----------------------------------------------------------------------
SuiteResult harmonic_extension_suite(const VerifyOptions& o) {
  SuiteResult res = make(10);
  Checks c(res);
  Rng rng(o.seed, 10);
  const double a = 0.5;
  const AnnulusGeometry g(3, a);
  const Band b = band(a, 0.05);
  const kernels::BoundaryData one{[](std::span<const double>) { return 1.0; },
                                  [](std::span<const double>) { return 1.0; }};
  const kernels::BoundaryData coord{[](std::span<const double> xi) { return xi[0]; },
                                    [a](std::span<const double> xi) { return a * xi[0]; }};
  const kernels::BoundaryData mode1{[](std::span<const double> xi) { return xi[0]; },
                                    [](std::span<const double>) { return 0.0; }};
  auto run = [&](const kernels::BoundaryData& f, const Point& x, const std::string& label) {
    try {
      const EvalResult e = kernels::harmonic_extension(g, f, x, o.policy);
      c.converged(e, label);
      return e.value;
    } catch (const Error& e) {
      c.require(false, label + ": " + e.what());
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  for (int i = 0; i < 50; ++i) {
    const Point x = rng.point(3, b.lo, b.hi);
    const std::string label = cat("f=1 |x|=", x.norm());
    c.within(std::abs(run(one, x, label) - 1.0), 1e-8, label);
  }
  for (int i = 0; i < 50; ++i) {
    const Point x = rng.point(3, b.lo, b.hi);
    const std::string label = cat("f=x1 |x|=", x.norm());
    c.within(std::abs(run(coord, x, label) - x[0]), 1e-6, label);
  }
  // Degree-1 data on the outer sphere only: u(x) = U(|x|) x1/|x| with U the
  // mode-1 radial solution, U(a) = 0, U(1) = 1.
  const oracle::FDGrid grid = oracle::FDGrid::uniform(a, 2001);
  const std::vector<double> U = oracle::modal_dirichlet_fd(3, 1, a, 0.0, 1.0, grid);
  for (int k = 0; k < 20; ++k) {
    const int idx = 100 + k * 95;
    const double r = grid.node(idx);
    const Point dir = rng.direction(3);
    const std::string label = cat("mode-1 r=", r);
    c.within(std::abs(run(mode1, dir.scaled(r), label) - U[idx] * dir[0]), 1e-6, label);
  }
  return res;
}

// --- 11 ----------------------------------------------------------------------
SuiteResult gradient_suite(const VerifyOptions& o) {
  SuiteResult res = make(11);
  Checks c(res);
  constexpr double h = 1e-5;
  for (auto [n, a] : std::vector<std::pair<int, double>>{{2, 0.2}, {3, 0.5}, {4, 0.3}, {5, 0.4}}) {
    const AnnulusGeometry g(n, a);
    const Band b = band(a, 0.1);
    const std::string tag = cat("n=", n, " a=", a);
    bool ok = true;
    auto val = [&](EvalResult e) {
      ok = ok && e.converged;
      return e.value;
    };
    auto R = [&](double r) { return val(n == 2 ? green::robin2d_eval(a, r, o.policy) : green::robin_eval(g, r, o.policy)); };
    auto f = [&](double r) { return val(critical::radial_gradient(g, r, o.policy)); };
    auto fp = [&](double r) {
      if (n == 2) return val(green::robin2d_first(a, r, o.policy)) + r * val(green::robin2d_second(a, r, o.policy));
      return val(green::f_prime_eval(g, r, o.policy));
    };
    std::vector<double> fs, fds, fps, fpds;
    for (int i = 0; i < 20; ++i) {
      const double r = b.lo + i * (b.hi - b.lo) / 19.0;
      fs.push_back(f(r));
      fds.push_back(r * (R(r + h) - R(r - h)) / (2.0 * h));
      fps.push_back(fp(r));
      fpds.push_back((f(r + h) - f(r - h)) / (2.0 * h));
    }
    if (!c.require(ok, tag + ": a series did not converge")) continue;
    // Errors are relative to the largest magnitude on the grid so that the
    // root of f does not blow up the ratio.
    auto scale = [](const std::vector<double>& v) {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    };
    const double sf = scale(fs);
    const double sfp = scale(fps);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      c.within(std::abs(fs[i] - fds[i]) / sf, 1e-6, cat(tag, " gradient at point ", i));
      c.within(std::abs(fps[i] - fpds[i]) / sfp, 1e-6, cat(tag, " f' at point ", i));
    }
  }
  return res;
}

}  // namespace

const std::vector<SuiteInfo>& verification_suites() {
  static const std::vector<SuiteInfo> suites{
      {1, "dirichlet", "Green function vanishes on both boundary spheres", 30.0, dirichlet_suite},
      {2, "symmetry", "Green function symmetry G(x,y) = G(y,x)", 30.0, symmetry_suite},
      {3, "harmonicity", "regular part is harmonic in x (discrete Laplacian)", 60.0, harmonicity_suite},
      {4, "modal-oracle", "modal coefficients vs Sturm-Liouville oracle and FD convergence", 60.0,
       modal_oracle_suite},
      {5, "ball-limit", "a -> 0 limit against the unit-ball Green function", 30.0, ball_limit_suite},
      {6, "critical-point", "critical radius vs grid scan, residual, uniqueness witness", 120.0,
       critical_point_suite},
      {7, "planar-convexity", "planar Robin function: R'' > 0 and boundary limits of R'", 30.0,
       planar_convexity_suite},
      {8, "special-functions", "Gegenbauer and zonal harmonic identities", 30.0, special_functions_suite},
      {9, "newtonian-series", "zonal series of |x-y|^{2-n} vs direct evaluation", 30.0,
       newtonian_series_suite},
      {10, "harmonic-extension", "Poisson kernel reproduces harmonic data (n = 3)", 60.0,
       harmonic_extension_suite},
      {11, "gradients", "r R'(r) and its derivative vs central differences", 30.0, gradient_suite},
  };
  return suites;
}

const SuiteInfo& find_suite(const std::string& key) {
  for (const SuiteInfo& s : verification_suites()) {
    if (key == s.name || key == std::to_string(s.id)) return s;
  }
  throw DomainError("unknown verification suite '" + key + "'");
}

SuiteResult run_suite(const SuiteInfo& suite, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult res;
  try {
    res = suite.run(options);
  } catch (const std::exception& e) {
    res = SuiteResult{};
    res.id = suite.id;
    res.checks = 1;
    res.failures = 1;
    res.worst_ratio = kInf;
    res.worst_check = std::string("exception: ") + e.what();
    res.notes.push_back("FAIL " + res.worst_check);
  }
  res.id = suite.id;
  res.name = suite.name;
  res.title = suite.title;
  res.time_budget = suite.time_budget;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace annulus::cli
