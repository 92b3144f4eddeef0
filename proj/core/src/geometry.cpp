#include "annulus/geometry.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "annulus/errors.hpp"
#include "annulus/numerics.hpp"

namespace annulus {
namespace {

constexpr double kPi = std::numbers::pi;

// arccos(1 - u) without the cancellation in 1 - u
template <typename Real>
Real acos_one_minus(Real u) {
  return 2 * std::asin(std::sqrt(u / 2));
}

// g(1 - u) = (2 sqrt2 / (3 pi)) u^(3/2) sum_k c_k u^k,
// c_0 = 1, c_k = c_{k-1} (2k-1)^2 / (4k (2k+3)).
template <typename Real>
Real g_tail(Real u) {
  const Real pi = std::numbers::pi_v<Real>;
  if (u < Real(0.1)) {
    Real sum = 0;
    Real c = 1;
    Real pw = 1;
    for (int k = 0; k < 40; ++k) {
      if (k > 0) c *= Real((2 * k - 1) * (2 * k - 1)) / Real(4 * k * (2 * k + 3));
      const Real term = c * pw;
      sum += term;
      if (term < std::numeric_limits<Real>::epsilon() * sum * Real(0.01)) break;
      pw *= u;
    }
    return 2 * std::numbers::sqrt2_v<Real> / (3 * pi) * u * std::sqrt(u) * sum;
  }
  const Real x = 1 - u;
  return (std::sqrt(u * (2 - u)) - x * std::acos(x)) / pi;
}

template <typename Real>
Real G_impl(Real R, Real r, Real x) {
  if (x <= r) {
    // R g(x/R) - r g(x/r), each written through its distance to 1
    return R * g_tail((R - x) / R) - r * g_tail((r - x) / r);
  }
  return R * g_tail((R - x) / R);
}

void check_x(const AnnulusGeometry& geom, double x) {
  if (!(x >= 0.0 && x <= geom.R())) {
    throw DomainError("G: x = " + std::to_string(x) + " outside [0, R]");
  }
}

// G'(x) - G'(r) on [0, r], written so that it is accurate near x = r.
double cusp_gap(const AnnulusGeometry& geom, double x) {
  const double R = geom.R();
  const double r = geom.r();
  return (acos_one_minus((r - x) / r) + (std::acos(r / R) - std::acos(x / R))) / kPi;
}

}  // namespace

AnnulusGeometry::AnnulusGeometry(double R, double r, std::optional<SlopeRational> slope)
    : R_(R), r_(r), slope_(slope) {
  if (!std::isfinite(R) || !std::isfinite(r) || !(r > 0.0) || !(r < R)) {
    throw DomainError("annulus radii must satisfy 0 < r < R (got R = " + std::to_string(R) +
                      ", r = " + std::to_string(r) + ")");
  }
  G0_ = (R - r) / kPi;
  Gr_ = R * g_tail((R - r) / R);
  cusp_slope_ = -std::acos(r / R) / kPi;
  if (slope_) {
    if (slope_->a <= 0 || slope_->q <= 0) {
      throw DomainError("rational slope a/q needs positive a and q");
    }
    if (std::gcd(slope_->a, slope_->q) != 1) {
      throw DomainError("rational slope a/q must be in lowest terms");
    }
    if (std::abs(cusp_slope_ + slope_->value()) > 1e-12) {
      throw DomainError("declared slope " + std::to_string(slope_->a) + "/" +
                        std::to_string(slope_->q) + " does not match arccos(r/R)/pi = " +
                        std::to_string(-cusp_slope_));
    }
  }
}

std::optional<SlopeRational> detect_rational_slope(double R, double r, long max_q, double tol) {
  if (!(r > 0.0) || !(r < R)) return std::nullopt;
  const double target = std::acos(r / R) / kPi;
  // convergents of the continued fraction
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = target;
  for (int i = 0; i < 64; ++i) {
    const double fl = std::floor(x);
    const long a = static_cast<long>(fl);
    const long p2 = a * p1 + p0;
    const long q2 = a * q1 + q0;
    if (q2 > max_q) break;
    if (p2 > 0 && std::abs(static_cast<double>(p2) / q2 - target) <= tol) {
      return SlopeRational{p2, q2};
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

double g(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("g: x must lie in [0, 1]");
  return g_tail(1.0 - x);
}

double g_prime(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("g': x must lie in [0, 1]");
  return -std::acos(x) / kPi;
}

double g_from_one(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("g_from_one: u must lie in [0, 1]");
  return g_tail(u);
}

double G(const AnnulusGeometry& geom, double x) {
  check_x(geom, x);
  return G_impl(geom.R(), geom.r(), x);
}

long double G_extended(const AnnulusGeometry& geom, long double x) {
  if (!(x >= 0.0L && x <= static_cast<long double>(geom.R()))) {
    throw DomainError("G: x outside [0, R]");
  }
  return G_impl<long double>(geom.R(), geom.r(), x);
}

double G_derivative(const AnnulusGeometry& geom, double x, int order) {
  check_x(geom, x);
  const double R = geom.R();
  const double r = geom.r();
  if (order == 1) {
    if (x <= r) return (acos_one_minus((r - x) / r) - std::acos(x / R)) / kPi;
    return -acos_one_minus((R - x) / R) / kPi;
  }
  if (order != 2 && order != 3) throw DomainError("G_derivative: order must be 1, 2 or 3");
  if (x == r || x == R) {
    throw SingularityError("G'' and G''' are unbounded at x = r and x = R");
  }
  const double outer = (R - x) * (R + x);
  if (order == 2) {
    const double v = 1.0 / std::sqrt(outer);
    if (x < r) return (v - 1.0 / std::sqrt((r - x) * (r + x))) / kPi;
    return v / kPi;
  }
  const double v = x / (outer * std::sqrt(outer));
  if (x < r) {
    const double inner = (r - x) * (r + x);
    return (v - x / (inner * std::sqrt(inner))) / kPi;
  }
  return v / kPi;
}

Derivatives G_all(const AnnulusGeometry& geom, double x) {
  Derivatives d;
  d.value = G(geom, x);
  d.d1 = G_derivative(geom, x, 1);
  d.d2 = G_derivative(geom, x, 2);
  d.d3 = G_derivative(geom, x, 3);
  return d;
}

// ---------------------------------------------------------------------------

namespace {

double column_arg(const AnnulusGeometry& geom, int n, double x) {
  if (n < 0) throw DomainError("h: n must be non-negative");
  if (!(x > 0.0)) throw DomainError("h: x must be positive");
  double t = n / x;
  if (t > geom.R()) {
    if (t > geom.R() * (1.0 + 1e-13)) throw DomainError("h: x below n/R");
    t = geom.R();
  }
  return t;
}

}  // namespace

double h(const AnnulusGeometry& geom, int n, double x) {
  if (n == 0) {
    if (!(x >= 0.0)) throw DomainError("h: x must be non-negative");
    return x * geom.G0();
  }
  return x * G(geom, column_arg(geom, n, x));
}

double h_prime(const AnnulusGeometry& geom, int n, double x) {
  if (n == 0) return geom.G0();
  const double t = column_arg(geom, n, x);
  // d/dx [x G(n/x)] = G(t) - t G'(t)
  return G(geom, t) - t * G_derivative(geom, t, 1);
}

double h_inverse(const AnnulusGeometry& geom, int n, double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("h_inverse: y must be non-negative");
  if (n == 0) return y / geom.G0();
  const double lo = n / geom.R();
  if (y == 0.0) return lo;
  const double knee = n / geom.r();
  const double h_knee = knee * geom.Gr();
  // h' >= G(0) beyond the knee
  double hi = knee;
  if (y > h_knee) hi = knee + (y - h_knee) / geom.G0();
  hi = hi * (1.0 + 1e-12) + 1e-12;
  return numerics::solve_increasing([&](double x) { return h(geom, n, x); },
                                    [&](double x) { return h_prime(geom, n, x); }, y, lo, hi,
                                    1e-15);
}

// ---------------------------------------------------------------------------

GaugeValue F_with_partials(const AnnulusGeometry& geom, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0) || (x == 0.0 && y == 0.0) || !std::isfinite(x) ||
      !std::isfinite(y)) {
    throw DomainError("F: (x, y) must lie in the closed first quadrant minus the origin");
  }
  const double R = geom.R();
  double t = 0.0;
  if (y == 0.0) {
    t = R;
  } else if (x > 0.0) {
    // t y - G(t) x increases from -G(0) x to R y
    auto phi = [&](double s) { return s * y - G_impl(R, geom.r(), s) * x; };
    const numerics::Interval iv = numerics::bisect(phi, 0.0, -geom.G0() * x, R, R * y, 1e-15 * R);
    t = iv.mid();
  }
  GaugeValue out;
  out.ray_t = t;
  const double gt = G_impl(R, geom.r(), t);
  const double gp = G_derivative(geom, t, 1);
  out.value = std::hypot(x, y) / std::hypot(t, gt);
  const double denom = gt - t * gp;
  out.dy = 1.0 / denom;
  out.dx = -gp / denom;
  return out;
}

double F(const AnnulusGeometry& geom, double x, double y) { return F_with_partials(geom, x, y).value; }

// ---------------------------------------------------------------------------

namespace {

// s = R - H(y), solved from R g(1 - s/R) = y
double H_gap(const AnnulusGeometry& geom, double y) {
  if (!(y >= 0.0 && y <= geom.Gr())) {
    throw DomainError("H: y = " + std::to_string(y) + " outside [0, G(r)]");
  }
  const double R = geom.R();
  const double smax = R - geom.r();
  if (y == 0.0) return 0.0;
  if (y == geom.Gr()) return smax;
  return numerics::solve_increasing([&](double s) { return R * g_tail(s / R); },
                                    [&](double s) { return acos_one_minus(s / R) / kPi; }, y,
                                    0.0, smax, 1e-15);
}

}  // namespace

double H(const AnnulusGeometry& geom, double y) { return geom.R() - H_gap(geom, y); }

Derivatives H_all(const AnnulusGeometry& geom, double y) {
  if (!(y > 0.0)) throw SingularityError("H derivatives are unbounded at y = 0");
  const double R = geom.R();
  const double s = H_gap(geom, y);
  const double x = R - s;
  const double w = s * (2.0 * R - s);  // R^2 - x^2
  const double g1 = -acos_one_minus(s / R) / kPi;
  const double g2 = 1.0 / (kPi * std::sqrt(w));
  const double g3 = x / (kPi * w * std::sqrt(w));
  Derivatives d;
  d.value = x;
  d.d1 = 1.0 / g1;
  d.d2 = -g2 / (g1 * g1 * g1);
  d.d3 = (3.0 * g2 * g2 - g3 * g1) / std::pow(g1, 5);
  return d;
}

// ---------------------------------------------------------------------------

SlantedRange T_range(const AnnulusGeometry& geom, double c, double mu) {
  if (!geom.slope_rational()) {
    throw UnsupportedConfiguration(
        "slanted decomposition needs a rational cusp slope arccos(r/R)/pi = a/q");
  }
  if (!(c >= 0.0 && c < 0.5)) throw DomainError("T: shift c must lie in [0, 1/2)");
  if (!(mu > 2.0)) throw DomainError("T: mu must exceed 2");
  const double aq = geom.slope_rational()->value();
  return {geom.G0() + c / mu, geom.Gr() + aq * geom.r() + c / mu};
}

double T(const AnnulusGeometry& geom, double c, double mu, double y) {
  const SlantedRange range = T_range(geom, c, mu);
  if (!(y >= range.beta && y <= range.gamma)) {
    throw DomainError("T: y outside [beta, gamma]");
  }
  if (y == range.beta) return 0.0;
  if (y == range.gamma) return geom.r();
  const double aq = geom.slope_rational()->value();
  const double shift = c / mu;
  return numerics::solve_increasing(
      [&](double x) { return G_impl(geom.R(), geom.r(), x) + aq * x + shift; },
      [&](double x) { return cusp_gap(geom, x); }, y, 0.0, geom.r(), 1e-15);
}

Derivatives T_all(const AnnulusGeometry& geom, double c, double mu, double y) {
  const SlantedRange range = T_range(geom, c, mu);
  if (y >= range.gamma) throw SingularityError("T derivatives are unbounded at y = gamma");
  const double x = T(geom, c, mu, y);
  const double p1 = cusp_gap(geom, x);
  const double p2 = G_derivative(geom, x, 2);
  const double p3 = G_derivative(geom, x, 3);
  Derivatives d;
  d.value = x;
  d.d1 = 1.0 / p1;
  d.d2 = -p2 / (p1 * p1 * p1);
  d.d3 = (3.0 * p2 * p2 - p3 * p1) / std::pow(p1, 5);
  return d;
}

}  // namespace annulus
