// Counting the cusp part D2 along lines parallel to the cusp tangent.
//
// With G'(r) = -a/q, the lattice points (m, k - c) lie on the lines
// a m + q k = t, t integer. On such a line the points of mu D2* are those
// with 0 <= m < mu T(t/(mu q)) and m = x0 (mod q), a x0 = t (mod q).

#include <cmath>
#include <numeric>

#include "annulus/counting.hpp"
#include "annulus/errors.hpp"

namespace annulus {
namespace {

void check_args(double mu, double c) {
  if (!(mu > 2.0) || !std::isfinite(mu)) throw DomainError("mu must exceed 2");
  if (!(c >= 0.0 && c < 0.5)) throw DomainError("lattice shift c must lie in [0, 1/2)");
}

const SlopeRational& slope_of(const AnnulusGeometry& geom) {
  if (!geom.slope_rational()) {
    throw UnsupportedConfiguration(
        "slanted counting needs a rational cusp slope: arccos(r/R)/pi must equal a/q "
        "(pass --slope a/q)");
  }
  return *geom.slope_rational();
}

long mod(long v, long q) {
  const long m = v % q;
  return m < 0 ? m + q : m;
}

// a^-1 mod q for coprime a, q
long inverse_mod(long a, long q) {
  if (q == 1) return 0;
  long old_r = mod(a, q), r = q;
  long old_s = 1, s = 0;
  while (r != 0) {
    const long quot = old_r / r;
    long tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  return mod(old_s, q);
}

long double height_ext(const AnnulusGeometry& geom, double mu, long m) {
  const long double t = std::min(static_cast<long double>(m) / mu,
                                 static_cast<long double>(geom.R()));
  return mu * G_extended(geom, t);
}

long floor_height(const AnnulusGeometry& geom, double mu, long m, double shift) {
  const double t = std::min(static_cast<double>(m) / mu, geom.R());
  return guarded_floor(mu * G(geom, t) + shift, [&] { return height_ext(geom, mu, m) + shift; });
}

// Columns 0 <= m < mu r: floor of the cusp tangent line and of mu G(r) + c.
long triangle_count(const AnnulusGeometry& geom, double mu, double c, const SlopeRational& s) {
  const double aq = s.value();
  const long double aq_ext = static_cast<long double>(s.a) / s.q;
  const long double gr_ext = mu * G_extended(geom, geom.r());
  const long base = guarded_floor(mu * geom.Gr() + c, [&] { return gr_ext + c; });
  long total = 0;
  const double end = mu * geom.r();
  for (long m = 0; m < end; ++m) {
    const double line = mu * geom.Gr() + aq * (end - m) + c;
    const long top = guarded_floor(line, [&] {
      return gr_ext + aq_ext * (static_cast<long double>(mu) * geom.r() - m) + c;
    });
    total += top - base;
  }
  return total;
}

long d2_star_count(const AnnulusGeometry& geom, double mu, double c, const SlopeRational& s) {
  const long a = s.a;
  const long q = s.q;
  const double qd = static_cast<double>(q);
  const SlantedRange range = T_range(geom, c, mu);
  const long double gr_ext = mu * G_extended(geom, geom.r());
  const long double aq_ext = static_cast<long double>(a) / q;
  // t in (mu q beta, mu q gamma]
  const long t_lo = guarded_floor(mu * qd * range.beta, [&] {
                      return q * (mu * G_extended(geom, 0.0L) + static_cast<long double>(c));
                    }) + 1;
  const long t_hi = guarded_floor(mu * qd * range.gamma, [&] {
    return q * (gr_ext + aq_ext * mu * geom.r() + static_cast<long double>(c));
  });
  const long a_inv = inverse_mod(a, q);
  long total = 0;
  for (long t = t_lo; t <= t_hi; ++t) {
    const long x0 = mod(mod(t, q) * a_inv, q);
    const double y = std::min(static_cast<double>(t) / (mu * qd), range.gamma);
    const double X = mu * T(geom, c, mu, std::max(y, range.beta));
    // m = x0 + q j with 0 <= m < X
    if (X <= x0) {
      if (x0 - X > 1e-9) continue;
    }
    const double u = (X - x0) / qd;
    long count = static_cast<long>(std::ceil(u));
    const double nearest = std::round(u);
    if (std::abs(u - nearest) < 1e-9 && nearest >= 0.0) {
      // Is m* = x0 + q nearest strictly inside? m* < mu T(y) iff
      // mu G(m*/mu) + (a/q) m* + c < t/q.
      const long ms = x0 + q * static_cast<long>(nearest);
      const long double lhs = height_ext(geom, mu, ms) + aq_ext * ms + c;
      const long double rhs = static_cast<long double>(t) / q;
      count = static_cast<long>(nearest) + (lhs < rhs ? 1 : 0);
    }
    total += std::max(0L, count);
  }
  return total;
}

long d1_row_count(const AnnulusGeometry& geom, double mu, double c) {
  // rows 0 < k - c <= mu G(r); each holds m = 0 .. floor(mu H((k - c)/mu))
  const long k_top = guarded_floor(mu * geom.Gr() + c,
                                   [&] { return mu * G_extended(geom, geom.r()) + c; });
  long total = 0;
  for (long k = 1; k <= k_top; ++k) {
    const double y = std::min((k - c) / mu, geom.Gr());
    const double X = mu * H(geom, y);
    long f = static_cast<long>(std::floor(X));
    const double nearest = std::round(X);
    if (std::abs(X - nearest) < 1e-9) {
      // (m*, k - c) is inside iff k - c <= mu G(m*/mu)
      const long ms = static_cast<long>(nearest);
      f = (static_cast<long double>(k) - c <= height_ext(geom, mu, ms)) ? ms : ms - 1;
    }
    total += f + 1;
  }
  return total;
}

}  // namespace

long lattice_count_d2_columns(const AnnulusGeometry& geom, double mu, double c) {
  check_args(mu, c);
  const long base = guarded_floor(mu * geom.Gr() + c,
                                  [&] { return mu * G_extended(geom, geom.r()) + c; });
  long total = 0;
  const double end = mu * geom.r();
  for (long m = 0; m <= end; ++m) {
    total += std::max(0L, floor_height(geom, mu, m, c) - base);
  }
  return total;
}

SlantedBreakdown slanted_breakdown(const AnnulusGeometry& geom, double mu, double c) {
  check_args(mu, c);
  const SlopeRational& s = slope_of(geom);
  SlantedBreakdown b;
  b.triangle = triangle_count(geom, mu, c, s);
  b.d2_star = d2_star_count(geom, mu, c, s);
  b.d2 = b.triangle - b.d2_star;
  b.d2_columns = lattice_count_d2_columns(geom, mu, c);
  b.d1_rows = d1_row_count(geom, mu, c);
  b.quadrant = b.d1_rows + b.d2;
  b.l12 = mu * geom.r() * rho(mu * geom.Gr() + c);
  return b;
}

long lattice_count_slanted(const AnnulusGeometry& geom, double mu, double c) {
  check_args(mu, c);
  const SlopeRational& s = slope_of(geom);
  return triangle_count(geom, mu, c, s) - d2_star_count(geom, mu, c, s);
}

long lattice_count_split(const AnnulusGeometry& geom, double mu, double c) {
  const SlantedBreakdown b = slanted_breakdown(geom, mu, c);
  // the column on the y-axis appears once in the symmetric count
  const long axis = std::max(0L, floor_height(geom, mu, 0, c));
  return 2 * b.quadrant - axis;
}

}  // namespace annulus
