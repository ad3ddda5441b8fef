#pragma once

// Brute-force references used to check the series: the radial (modal)
// Sturm-Liouville problem, solved in closed form and by finite differences,
// the unit-ball Green function, and dense grid scans.
//
// Mode m of -Laplacian on the annulus reduces to
//   -(r^{n-1} u')' + m(m+n-2) r^{n-3} u = r^{n-1} F,   u(a) = u(1) = 0.

#include <functional>
#include <vector>

#include "annulus/core.hpp"

namespace annulus::oracle {

/// Two-point Green function g(r, s) of the modal operator above, i.e. the
/// response at r to a unit point mass at s under the r^{n-1} dr measure.
/// Built from phi = r^m - a^beta r^{2-n-m} and psi = r^m - r^{2-n-m}
/// with the Wronskian evaluated from their derivatives. Requires n >= 3.
double modal_green_analytic(int n, int m, double a, double r, double s);

struct FDGrid {
  int size = 0;
  double a = 0.0;
  double h = 0.0;

  /// N uniform nodes on [a, 1]; N >= 3.
  static FDGrid uniform(double a, int nodes);
  double node(int i) const { return i == size - 1 ? 1.0 : a + i * h; }
  std::vector<double> nodes() const;
};

struct ModalProfile {
  FDGrid grid;
  std::vector<double> values;  ///< u at every node, zero at both ends
  int source_index = 0;        ///< node carrying the discrete delta
  double source_radius = 0.0;
};

/// Second-order conservative finite-difference solve with a discrete delta
/// 1/h at the node nearest s. Requires a < s < 1 and N >= 100.
ModalProfile modal_green_fd(int n, int m, double a, double s, const FDGrid& grid);

/// Same discretization for the homogeneous equation with u(a) = inner_value,
/// u(1) = outer_value.
std::vector<double> modal_dirichlet_fd(int n, int m, double a, double inner_value,
                                       double outer_value, const FDGrid& grid);

/// max_i |u_i - g(r_i, s_node)| / max_i |g(r_i, s_node)|.
double modal_fd_relative_error(const ModalProfile& profile, int n, int m);

struct ConvergenceStudy {
  std::vector<int> sizes;
  std::vector<double> errors;
  std::vector<double> orders;  ///< log(e_i/e_{i+1}) / log(h_i/h_{i+1})
};

ConvergenceStudy modal_fd_convergence(int n, int m, double a, double s,
                                      const std::vector<int>& sizes);

/// Green function of the unit ball in R^n, n >= 3, via Kelvin reflection:
///   (|x-y|^{2-n} - (|x|^2 |y|^2 - 2 x.y + 1)^{(2-n)/2}) / ((n-2) omega).
double ball_green_closed_form(int n, const Point& x, const Point& y);

enum class Extremum { minimum, maximum };

struct ScanResult {
  double radius = 0.0;
  double value = 0.0;
  int index = 0;         ///< best grid index
  bool at_edge = false;  ///< best value on the first or last node: no interior extremum
};

/// Uniform scan of fn over [lo, hi] with N nodes, refined by a three-point
/// parabola around the best node. Requires N >= 1000.
ScanResult grid_scan_extremum(const std::function<double(double)>& fn, double lo, double hi, int N,
                              Extremum kind);

}  // namespace annulus::oracle
