#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

// Small numerical toolkit shared by the modules: root bracketing,
// adaptive quadrature, least squares and a parallel index loop.

namespace annulus::numerics {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
};

/// Bisection on a sign change of `f` in [lo, hi]. Requires f(lo)*f(hi) <= 0.
/// Stops when the bracket is narrower than `abs_tol`. Returns the final bracket.
Interval bisect(const std::function<double(double)>& f, double lo, double hi,
                double abs_tol, int max_iter = 200);

/// Same, with the endpoint values already known (saves two evaluations).
Interval bisect(const std::function<double(double)>& f, double lo, double f_lo,
                double hi, double f_hi, double abs_tol, int max_iter = 200);

/// Solves f(x) = target for strictly increasing `f` on [lo, hi] using Newton
/// steps guarded by bisection. `df` may return 0 or a non-finite value where
/// the derivative is unavailable; the step then falls back to bisection.
double solve_increasing(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double target,
                        double lo, double hi, double rel_tol, int max_iter = 200);

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_depth = 60);

/// Composite Gauss-Legendre on [a, b] after the substitution
/// x = a + (b-a)(3s^2 - 2s^3), which flattens integrable power-law
/// singularities at either endpoint. `panels` panels of 20 nodes.
double integrate_endpoint_singular(const std::function<double(double)>& f, double a,
                                   double b, int panels = 64);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope*x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). Indices are handed out dynamically; exceptions are rethrown
/// on the calling thread after all workers stop.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

/// Number of workers parallel_for uses for a requested count of 0.
unsigned default_threads();

}  // namespace annulus::numerics
