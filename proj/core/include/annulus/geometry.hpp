#pragma once

#include <compare>
#include <optional>
#include <vector>

// Geometry of the lattice problem attached to the annulus r < |x| < R:
// the phase g, the boundary function G of the counting domain, the
// column functions h_n, the gauge F, the inverse H of G on [r, R], the
// slanted-line function T and the Airy phase shift psi.

namespace annulus {

/// Cusp slope -a/q with a, q positive and coprime.
struct SlopeRational {
  long a = 0;
  long q = 1;
  [[nodiscard]] double value() const { return static_cast<double>(a) / static_cast<double>(q); }
  friend bool operator==(const SlopeRational&, const SlopeRational&) = default;
};

class AnnulusGeometry {
public:
  /// Throws DomainError unless 0 < r < R, and when a slope is given, unless
  /// it is in lowest terms and matches arccos(r/R)/pi to 1e-12.
  AnnulusGeometry(double R, double r, std::optional<SlopeRational> slope = std::nullopt);

  [[nodiscard]] double R() const { return R_; }
  [[nodiscard]] double r() const { return r_; }
  /// G(0) = (R - r)/pi
  [[nodiscard]] double G0() const { return G0_; }
  /// G(r)
  [[nodiscard]] double Gr() const { return Gr_; }
  /// G'(r) = -arccos(r/R)/pi, in (-1/2, 0)
  [[nodiscard]] double cusp_slope() const { return cusp_slope_; }
  [[nodiscard]] const std::optional<SlopeRational>& slope_rational() const { return slope_; }
  /// Area of the full symmetric domain {|x| <= R, 0 <= y <= G(|x|)}: (R^2 - r^2)/4.
  [[nodiscard]] double area() const { return 0.25 * (R_ * R_ - r_ * r_); }

private:
  double R_;
  double r_;
  double G0_;
  double Gr_;
  double cusp_slope_;
  std::optional<SlopeRational> slope_;
};

/// Returns (a, q) when arccos(r/R)/pi is within `tol` of a fraction with
/// denominator <= max_q, found by continued fractions.
std::optional<SlopeRational> detect_rational_slope(double R, double r, long max_q = 1000,
                                                   double tol = 1e-12);

// --- g and G ---------------------------------------------------------------

/// g(x) = (sqrt(1 - x^2) - x arccos x)/pi on [0, 1].
double g(double x);
double g_prime(double x);

/// g(1 - u) for u in [0, 1], accurate as u -> 0 where g vanishes like u^(3/2).
double g_from_one(double u);

struct Derivatives {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

double G(const AnnulusGeometry& geom, double x);
long double G_extended(const AnnulusGeometry& geom, long double x);

/// G^(order)(x) for order 1, 2, 3. Orders 2 and 3 throw SingularityError at
/// x = r and x = R. The one-sided G'(r) is the same from both sides.
double G_derivative(const AnnulusGeometry& geom, double x, int order);

/// Value with all three derivatives; x must avoid r and R.
Derivatives G_all(const AnnulusGeometry& geom, double x);

// --- h_n -------------------------------------------------------------------

/// h_n(x) = x G(n/x), x >= n/R.
double h(const AnnulusGeometry& geom, int n, double x);
double h_prime(const AnnulusGeometry& geom, int n, double x);
/// Inverse of h_n on [n/R, infinity) for y >= 0.
double h_inverse(const AnnulusGeometry& geom, int n, double y);

// --- F ---------------------------------------------------------------------

struct GaugeValue {
  double value = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double ray_t = 0.0;  // point (t, G(t)) of the boundary on the ray through (x, y)
};

/// The degree-one homogeneous gauge with F = 1 on the graph of G, for
/// (x, y) in the closed first quadrant minus the origin.
double F(const AnnulusGeometry& geom, double x, double y);
GaugeValue F_with_partials(const AnnulusGeometry& geom, double x, double y);

// --- H ---------------------------------------------------------------------

/// Inverse of G restricted to [r, R], for y in [0, G(r)].
double H(const AnnulusGeometry& geom, double y);
/// H and H', H'', H''' for y in (0, G(r)].
Derivatives H_all(const AnnulusGeometry& geom, double y);

// --- T ---------------------------------------------------------------------

struct SlantedRange {
  double beta = 0.0;   // G(0) + c/mu
  double gamma = 0.0;  // G(r) + (a/q) r + c/mu
};

/// Throws UnsupportedConfiguration when the geometry has no rational slope.
SlantedRange T_range(const AnnulusGeometry& geom, double c, double mu);

/// Solution of G(T) + (a/q) T + c/mu = y on [0, r] for y in [beta, gamma].
double T(const AnnulusGeometry& geom, double c, double mu, double y);
/// T and its first three derivatives for y in [beta, gamma).
Derivatives T_all(const AnnulusGeometry& geom, double c, double mu, double y);

// --- psi -------------------------------------------------------------------

/// psi(z) together with 1/4 - psi(z), each to full relative precision.
/// On the far negative axis psi rounds to 1/4 in double precision while the
/// complement still separates neighbouring arguments; ordering uses both.
struct ShiftValue {
  double value = 0.0;
  double complement = 0.25;

  friend bool operator<(const ShiftValue& a, const ShiftValue& b) {
    if (a.value > 0.125 && b.value > 0.125) return a.complement > b.complement;
    return a.value < b.value;
  }
  friend bool operator>(const ShiftValue& a, const ShiftValue& b) { return b < a; }
};

/// The Airy phase shift: strictly decreasing from 1/4 (z -> -inf) to 0
/// (z -> +inf), psi(0) = 1/12.
double psi(double z);
ShiftValue psi_split(double z);
double psi_prime(double z);

/// m-th positive zero of Ai(-x), by bisection.
double airy_zero(int m);

struct ShiftFunctionTable {
  std::vector<double> airy_zeros;  // t_1 < t_2 < ...
  std::vector<double> z;
  std::vector<double> psi;
};

ShiftFunctionTable build_shift_table(int zeros = 64, double z_min = -50.0, double z_max = 50.0,
                                     int samples = 1001);

/// Shared table built on first use.
const ShiftFunctionTable& shift_table();

}  // namespace annulus
