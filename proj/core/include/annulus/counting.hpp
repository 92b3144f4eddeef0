#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "annulus/geometry.hpp"
#include "annulus/numerics.hpp"
#include "annulus/zeros.hpp"

// Eigenvalue counts and the shifted-lattice counts that approximate them.
// The domain is D = {(x, y) : |x| <= R, 0 <= y <= G(|x|)}; the lattice
// Z^2 - (0, c) is counted in mu D column by column unless stated otherwise.

namespace annulus {

/// Row-of-teeth function [x] - x + 1/2.
double rho(double x);

/// floor(v) where v is a double approximation of some exact quantity; when v
/// is within 1e-9 of an integer the decision is taken from `precise`.
template <typename Precise>
long guarded_floor(double v, Precise&& precise);

/// #{k >= 1 : k - c <= mu G(|n|/mu)} for |n| <= R mu.
long lattice_column(const AnnulusGeometry& geom, double mu, long n, double c);

/// Points of Z^2 - (0, c) in mu D, both half-planes, column n = 0 once; mu > 0.
long lattice_count_uniform(const AnnulusGeometry& geom, double mu, double c = 0.25);

/// #(B_{r mu} cap Z^2) for the band mu G(x/mu) < y <= mu G(x/mu) + 1/4, 0 <= x <= r mu.
long band_count(const AnnulusGeometry& geom, double mu);
/// band_count - r mu / 4.
double band_error(const AnnulusGeometry& geom, double mu);

/// Points (n, k - tau_{n,k}) in mu D with tau from the zero classification.
/// Only the top candidate of each column needs its zero located.
long lattice_count_variable(const AnnulusGeometry& geom, double mu, const RegimeConfig& cfg,
                            unsigned threads = 0);

/// #{(n, k) in Z x N : x_{n,k} <= mu}.
long eig_count(const AnnulusGeometry& geom, double mu, const RegimeConfig& cfg,
               unsigned threads = 0);

/// eig_count - (R^2 - r^2)/4 mu^2 + (R + r)/2 mu.
double weyl_remainder(const AnnulusGeometry& geom, double mu, long n_eig);

// --- slanted-line counting of the cusp part --------------------------------

/// Counts over the first quadrant with the y-axis at full weight.
/// D1 = {0 < y <= G(r)}, D2 = {0 <= x <= r, y > G(r)}, T the triangle under
/// the cusp tangent and D2* = T minus D2.
struct SlantedBreakdown {
  long triangle = 0;    // points of mu T, by columns
  long d2_star = 0;     // points of mu D2*, along the lines a x + q (y + c) = t
  long d2 = 0;          // triangle - d2_star
  long d2_columns = 0;  // points of mu D2, by columns
  long d1_rows = 0;     // points of mu D1, along rows through H
  long quadrant = 0;    // d1_rows + d2
  double l12 = 0.0;     // mu r rho(mu G(r) + c), the separating-segment term
};

/// Throws UnsupportedConfiguration without a rational cusp slope.
SlantedBreakdown slanted_breakdown(const AnnulusGeometry& geom, double mu, double c);

/// Points of mu D2 through the slanted decomposition.
long lattice_count_slanted(const AnnulusGeometry& geom, double mu, double c);
/// Points of mu D2 column by column.
long lattice_count_d2_columns(const AnnulusGeometry& geom, double mu, double c);
/// The full symmetric count assembled from rows of D1 and the slanted D2;
/// equals lattice_count_uniform.
long lattice_count_split(const AnnulusGeometry& geom, double mu, double c);

// --- rho sums ---------------------------------------------------------------

enum class PhaseKind {
  H,  // rho(mu H((m - c)/mu))
  G,  // rho(mu G(m/mu) + c)
  T   // rho((mu/q) T(m/mu))
};

struct RhoSumSpec {
  double M1 = 1.0;
  double M2 = 0.0;
  PhaseKind phase = PhaseKind::G;
  double mu = 100.0;
  double c = 0.0;
};

/// Sum over integers m in [M1, M2].
double rho_sum(const AnnulusGeometry& geom, const RhoSumSpec& spec);

/// int_{M1}^{M2} |f''|^(1/3) + max |f''|^(-1/2) for the phase f of the sum,
/// without any absolute constant.
double vdc_bound(const AnnulusGeometry& geom, const RhoSumSpec& spec);

/// The G-type sum over 1 <= m <= mu r with shift c.
RhoSumSpec g_type_spec(const AnnulusGeometry& geom, double mu, double c);

// --- reports ----------------------------------------------------------------

struct ExponentTargets {
  static constexpr double theta = 131.0 / 208.0;
  static constexpr double Theta = 18627.0 / 8320.0;
  static constexpr double fallback = 2.0 / 3.0;
};

struct CountReport {
  double mu = 0.0;
  long n_eig = 0;
  long n_lat_u = 0;
  std::optional<long> n_lat_var;
  double band_err = 0.0;
  double weyl_remainder = 0.0;
  double wall_time_s = 0.0;
};

struct ScanOptions {
  double c = 0.25;              // shift of the uniform lattice
  bool with_variable = false;   // also compute the variable-shift count
  unsigned threads = 0;
};

CountReport count_report(const AnnulusGeometry& geom, double mu, const RegimeConfig& cfg,
                         const ScanOptions& options = {});

/// One report per grid point, in grid order.
std::vector<CountReport> weyl_scan(const AnnulusGeometry& geom, std::span<const double> mu_grid,
                                   const RegimeConfig& cfg, const ScanOptions& options = {});

/// Least squares of log|weyl_remainder| on log mu; remainders below 1e-9
/// in magnitude are dropped.
numerics::LinearFit fit_exponent(std::span<const CountReport> reports);

/// `points` values from lo to hi, equally spaced in log.
std::vector<double> log_grid(double lo, double hi, int points);

/// n_lat_u - n_lat_var - r mu/2 - 2 band_err; needs n_lat_var.
double variable_shift_discrepancy(const AnnulusGeometry& geom, const CountReport& report);

// --- sandwich ---------------------------------------------------------------

struct SandwichPoint {
  double mu = 0.0;
  long n_eig = 0;
  double lhs = 0.0;  // |n_eig - N_u(mu) + r mu/2|
  double rhs = 0.0;  // N_u(mu+) - N_u(mu-) + 2(E(mu-) - E(mu+)) + C mu^0.6
};

struct SandwichResult {
  std::optional<double> C;  // smallest power of two that works on the whole grid
  std::vector<SandwichPoint> points;  // evaluated at C (or at the largest tried)
};

/// Sandwich with mu+- = mu +- C mu^-0.4, trying C = 2^j for j in [min_log2, max_log2].
SandwichResult sandwich_constant(const AnnulusGeometry& geom, std::span<const double> mu_grid,
                                 const RegimeConfig& cfg, int min_log2 = -8, int max_log2 = 16,
                                 unsigned threads = 0);

/// The sandwich terms at one grid point for a given C and eigenvalue count.
SandwichPoint sandwich_point(const AnnulusGeometry& geom, double mu, long n_eig, double C);

// ---------------------------------------------------------------------------

template <typename Precise>
long guarded_floor(double v, Precise&& precise) {
  const double f = std::floor(v);
  if (v - f < 1e-9 || f + 1.0 - v < 1e-9) {
    return static_cast<long>(std::floor(precise()));
  }
  return static_cast<long>(f);
}

}  // namespace annulus
