// SPDX-License-Identifier: Apache-2.0
// Part of oia-lab, a spatial-reuse simulator for two-link MIMO systems.

#ifndef OIA_NUMERIC_HPP
#define OIA_NUMERIC_HPP

#include <functional>
#include <utility>
#include <vector>

namespace oia {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence and cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

/// Globally adaptive quadrature of f over [a, b]: embedded Gauss pair on each
/// interval, bisecting the interval with the largest error estimate until the
/// total estimate drops below abs_tol + rel_tol * |value|.  Throws
/// NumericalError with the achieved tolerance when the interval budget is
/// exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol = 0.0,
                                    int max_intervals = 4000);

/// Brent root finder on a bracket [lo, hi] with f(lo) and f(hi) of opposite
/// sign.  Converges to |x - root| <= x_tol + 4 eps |x|.
double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double x_tol = 1e-13, int max_iter = 200);

}  // namespace oia

#endif  // OIA_NUMERIC_HPP
