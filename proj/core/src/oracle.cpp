#include "annulus/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace annulus::oracle {

namespace {

void require_modal(int n, int m, double a, const char* op) {
  if (n < 3) throw DomainError(std::string(op) + ": requires n >= 3");
  if (m < 0) throw DomainError(std::string(op) + ": mode must be >= 0");
  if (!(a > 0.0 && a < 1.0)) throw DomainError(std::string(op) + ": requires 0 < a < 1");
}

// Tridiagonal solve (Thomas). sub[0] and sup[last] are ignored.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> sup, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) throw Error("finite-difference system is singular");
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) throw Error("finite-difference system is singular");
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
  return x;
}

// Interior unknowns 1..N-2 of -(p u')' + q u = rhs with fixed end values.
std::vector<double> modal_solve(int n, int m, const FDGrid& grid, std::vector<double> rhs,
                                double inner_value, double outer_value) {
  const int N = grid.size;
  const int k = N - 2;
  const double h2 = grid.h * grid.h;
  const double lam = static_cast<double>(m) * (m + n - 2);
  std::vector<double> sub(k), diag(k), sup(k);
  for (int j = 0; j < k; ++j) {
    const double r = grid.node(j + 1);
    const double pl = std::pow(r - 0.5 * grid.h, n - 1);
    const double pr = std::pow(r + 0.5 * grid.h, n - 1);
    sub[j] = -pl / h2;
    sup[j] = -pr / h2;
    diag[j] = (pl + pr) / h2 + lam * std::pow(r, n - 3);
  }
  rhs[0] -= sub[0] * inner_value;
  rhs[k - 1] -= sup[k - 1] * outer_value;
  const std::vector<double> interior = solve_tridiagonal(sub, diag, sup, std::move(rhs));
  std::vector<double> u(N);
  u[0] = inner_value;
  u[N - 1] = outer_value;
  std::copy(interior.begin(), interior.end(), u.begin() + 1);
  return u;
}

}  // namespace

double modal_green_analytic(int n, int m, double a, double r, double s) {
  require_modal(n, m, a, "modal_green_analytic");
  constexpr double tol = 1e-12;
  for (double v : {r, s}) {
    if (v < a - tol || v > 1.0 + tol) {
      std::ostringstream msg;
      msg << "modal_green_analytic: radius " << v << " outside [" << a << ", 1]";
      throw DomainError(msg.str());
    }
  }
  r = std::clamp(r, a, 1.0);
  s = std::clamp(s, a, 1.0);
  const double beta = 2.0 * m + n - 2.0;
  const double ab = std::pow(a, beta);
  const double e = 2.0 - n - m;
  auto phi = [&](double x) { return std::pow(x, m) - ab * std::pow(x, e); };
  auto psi = [&](double x) { return std::pow(x, m) - std::pow(x, e); };
  auto dphi = [&](double x) { return m * std::pow(x, m - 1) - ab * e * std::pow(x, e - 1); };
  auto dpsi = [&](double x) { return m * std::pow(x, m - 1) - e * std::pow(x, e - 1); };

  const double x0 = 0.5 * (1.0 + a);
  const double pw = std::pow(x0, n - 1) * (phi(x0) * dpsi(x0) - dphi(x0) * psi(x0));
  if (!(pw > 0.0) || !std::isfinite(pw)) {
    std::ostringstream msg;
    msg << "modal_green_analytic: degenerate Wronskian " << pw;
    throw Error(msg.str());
  }
  const double lo = std::min(r, s);
  const double hi = std::max(r, s);
  if (lo == a || hi == 1.0) return 0.0;
  return -phi(lo) * psi(hi) / pw;
}

FDGrid FDGrid::uniform(double a, int nodes) {
  if (nodes < 3) throw DomainError("FDGrid: need at least 3 nodes");
  if (!(a > 0.0 && a < 1.0)) throw DomainError("FDGrid: requires 0 < a < 1");
  return FDGrid{nodes, a, (1.0 - a) / (nodes - 1)};
}

std::vector<double> FDGrid::nodes() const {
  std::vector<double> r(size);
  for (int i = 0; i < size; ++i) r[i] = node(i);
  return r;
}

ModalProfile modal_green_fd(int n, int m, double a, double s, const FDGrid& grid) {
  require_modal(n, m, a, "modal_green_fd");
  if (grid.size < 100) throw DomainError("modal_green_fd: need at least 100 nodes");
  if (grid.a != a) throw DomainError("modal_green_fd: grid built for a different inner radius");
  if (!(s > a && s < 1.0)) throw DomainError("modal_green_fd: source must satisfy a < s < 1");
  int idx = static_cast<int>(std::lround((s - a) / grid.h));
  idx = std::clamp(idx, 1, grid.size - 2);

  std::vector<double> rhs(grid.size - 2, 0.0);
  rhs[idx - 1] = 1.0 / grid.h;
  ModalProfile out;
  out.grid = grid;
  out.values = modal_solve(n, m, grid, std::move(rhs), 0.0, 0.0);
  out.source_index = idx;
  out.source_radius = grid.node(idx);
  return out;
}

std::vector<double> modal_dirichlet_fd(int n, int m, double a, double inner_value,
                                       double outer_value, const FDGrid& grid) {
  require_modal(n, m, a, "modal_dirichlet_fd");
  if (grid.a != a) throw DomainError("modal_dirichlet_fd: grid built for a different inner radius");
  return modal_solve(n, m, grid, std::vector<double>(grid.size - 2, 0.0), inner_value, outer_value);
}

double modal_fd_relative_error(const ModalProfile& profile, int n, int m) {
  double max_err = 0.0;
  double max_ref = 0.0;
  for (int i = 0; i < profile.grid.size; ++i) {
    const double g =
        modal_green_analytic(n, m, profile.grid.a, profile.grid.node(i), profile.source_radius);
    max_err = std::max(max_err, std::abs(profile.values[i] - g));
    max_ref = std::max(max_ref, std::abs(g));
  }
  return max_err / max_ref;
}

ConvergenceStudy modal_fd_convergence(int n, int m, double a, double s,
                                      const std::vector<int>& sizes) {
  ConvergenceStudy study;
  study.sizes = sizes;
  std::vector<double> hs;
  for (int N : sizes) {
    const FDGrid grid = FDGrid::uniform(a, N);
    study.errors.push_back(modal_fd_relative_error(modal_green_fd(n, m, a, s, grid), n, m));
    hs.push_back(grid.h);
  }
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    study.orders.push_back(std::log(study.errors[i] / study.errors[i + 1]) /
                           std::log(hs[i] / hs[i + 1]));
  }
  return study;
}

double ball_green_closed_form(int n, const Point& x, const Point& y) {
  if (n < 3) throw DomainError("ball_green_closed_form: requires n >= 3");
  if (x.dim() != static_cast<std::size_t>(n) || y.dim() != static_cast<std::size_t>(n)) {
    throw DomainError("ball_green_closed_form: point dimension does not match n");
  }
  const double x2 = x.dot(x);
  const double y2 = y.dot(y);
  if (x2 > 1.0 + 1e-12 || y2 > 1.0 + 1e-12) {
    throw DomainError("ball_green_closed_form: points must lie in the closed unit ball");
  }
  const double d = x.distance(y);
  if (d == 0.0) throw SingularityError("ball_green_closed_form: x = y");
  const double reflected = x2 * y2 - 2.0 * x.dot(y) + 1.0;
  const double e = 2.0 - n;
  return (std::pow(d, e) - std::pow(reflected, 0.5 * e)) / ((n - 2) * sphere_surface_area(n));
}

ScanResult grid_scan_extremum(const std::function<double(double)>& fn, double lo, double hi, int N,
                              Extremum kind) {
  if (N < 1000) throw DomainError("grid_scan_extremum: need at least 1000 nodes");
  if (!(lo < hi)) throw DomainError("grid_scan_extremum: requires lo < hi");
  const double h = (hi - lo) / (N - 1);
  const double sgn = kind == Extremum::maximum ? 1.0 : -1.0;
  std::vector<double> v(N);
  int best = 0;
  for (int i = 0; i < N; ++i) {
    v[i] = fn(i == N - 1 ? hi : lo + i * h);
    if (sgn * v[i] > sgn * v[best]) best = i;
  }
  ScanResult out;
  out.index = best;
  out.radius = best == N - 1 ? hi : lo + best * h;
  out.value = v[best];
  if (best == 0 || best == N - 1) {
    out.at_edge = true;
    return out;
  }
  // Vertex of the parabola through the three nodes around the best one.
  const double fm = v[best - 1];
  const double f0 = v[best];
  const double fp = v[best + 1];
  const double curv = fm - 2.0 * f0 + fp;
  if (curv != 0.0) {
    const double shift = 0.5 * (fm - fp) / curv;
    if (std::abs(shift) <= 1.0) {
      out.radius += shift * h;
      out.value = f0 - 0.25 * (fm - fp) * shift;
    }
  }
  return out;
}

}  // namespace annulus::oracle
