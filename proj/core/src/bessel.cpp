// Integer-order Bessel functions J_n, Y_n for real x > 0.
//
// The ratio J'_n/J_n comes from the first continued fraction (modified
// Lentz).  A downward recurrence carries that ratio to order 0, where either
// Temme's series (x < 2) or Steed's complex continued fraction (x >= 2)
// supplies Y_0, Y_1, and the Wronskian 2/(pi x) fixes the normalisation of J.
// Y is then carried upward, which is stable for every x.  For x >= 25 and
// n <= x both functions start from Hankel's expansion at orders 0 and 1.
//
// Magnitudes are tracked as mantissa and binary exponent so that the
// exponentially small J and large Y of the evanescent zone survive.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "annulus/errors.hpp"
#include "annulus/specfun.hpp"

namespace annulus {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = 1e-300;
constexpr int kRescale = 600;
const double kBig = std::ldexp(1.0, kRescale);
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

struct Raw {
  // J = j * 2^ej, J' = jp * 2^ej, Y = y * 2^ey, Y' = yp * 2^ey
  double j = 0.0;
  double jp = 0.0;
  double y = 0.0;
  double yp = 0.0;
  int ej = 0;
  int ey = 0;
  double rel_err = 0.0;  // relative to the envelope
};

void check_args(int n, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel: x must be positive and finite, got " + std::to_string(x));
  }
  if (n < 0 || n > 1000000) {
    throw DomainError("bessel: order out of range [0, 1e6]: " + std::to_string(n));
  }
  if (x > 1e7) throw DomainError("bessel: x above 1e7");
}

// sin and cos of x - (2m+1) pi/4 without reducing x by an inexact 2 pi.
void shifted_sincos(double x, long m, double& s, double& c) {
  static constexpr double h = std::numbers::sqrt2 / 2.0;
  static constexpr std::array<double, 8> cs = {1, h, 0, -h, -1, -h, 0, h};
  static constexpr std::array<double, 8> sn = {0, h, 1, h, 0, -h, -1, -h};
  const int idx = static_cast<int>((2 * m + 1) % 8);
  const double sx = std::sin(x);
  const double cx = std::cos(x);
  s = sx * cs[idx] - cx * sn[idx];
  c = cx * cs[idx] + sx * sn[idx];
}

struct HankelPQ {
  double p = 1.0;
  double q = 0.0;
  double last = 0.0;
};

HankelPQ hankel_pq(long n, double x) {
  const double mu = 4.0 * static_cast<double>(n) * static_cast<double>(n);
  HankelPQ out;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag > prev && k > 2) break;  // divergent tail
    prev = mag;
    const int sgn = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      out.p += sgn * term;
    } else {
      out.q += sgn * term;
    }
    out.last = mag;
    if (mag < 1e-17 * (std::abs(out.p) + std::abs(out.q))) break;
    if (term == 0.0) break;
  }
  return out;
}

struct Seed {
  // J, Y at orders 0 and 1
  double j0 = 0.0;
  double y0 = 0.0;
  double j1 = 0.0;
  double y1 = 0.0;
  double rel_err = 0.0;
};

Seed hankel_seed(double x) {
  const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
  Seed out;
  double tails = 0.0;
  for (long m = 0; m <= 1; ++m) {
    const HankelPQ pq = hankel_pq(m, x);
    double s = 0.0;
    double c = 0.0;
    shifted_sincos(x, m, s, c);
    (m == 0 ? out.j0 : out.j1) = amp * (pq.p * c - pq.q * s);
    (m == 0 ? out.y0 : out.y1) = amp * (pq.p * s + pq.q * c);
    tails += pq.last;
  }
  out.rel_err = 2.0 * tails;
  return out;
}

// CF1 (modified Lentz) for J'_n / J_n. Needs roughly max(0, x - n) terms
// before it starts to converge, so callers keep x small or n > x.
struct Cf1 {
  double ratio = 0.0;
  int sign = 1;  // sign of J_n
};

Cf1 cf1(int n, double x) {
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  double h = n * xi;
  if (h < kFpMin) h = kFpMin;
  double b = xi2 * n;
  double d = 0.0;
  double c = h;
  int sign = 1;
  const long maxit = 10000 + 4 * static_cast<long>(x);
  for (long it = 1; it <= maxit; ++it) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = b - 1.0 / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) sign = -sign;
    if (std::abs(del - 1.0) < kEps) return {h, sign};
  }
  throw ConvergenceError("bessel: ratio continued fraction did not converge");
}

// Temme's series at order 0 gives Y_0 and Y_1; J_0 follows from the Wronskian.
Seed temme_seed(double x) {
  const double xi2 = 2.0 / x;
  const double w = xi2 / std::numbers::pi;
  const double x2 = 0.5 * x;
  double ff = (2.0 / std::numbers::pi) * (-std::log(x2) - kEulerGamma);
  double p = 1.0 / std::numbers::pi;
  double q = p;
  double cc = 1.0;
  const double dd = -x2 * x2;
  double sum = ff;
  double sum1 = p;
  for (int i = 1; i < 1000; ++i) {
    ff = (i * ff + p + q) / (static_cast<double>(i) * i);
    cc *= dd / i;
    p /= i;
    q /= i;
    const double del = cc * ff;
    sum += del;
    sum1 += cc * p - i * del;
    if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
  }
  Seed out;
  out.y0 = -sum;
  out.y1 = -sum1 * xi2;
  const double f = cf1(0, x).ratio;
  out.j0 = w / (-out.y1 - f * out.y0);
  out.j1 = -f * out.j0;
  out.rel_err = 8.0 * kEps;
  return out;
}

// Steed's CF2 for p + iq = (J'_0 + iY'_0) / (J_0 + iY_0), combined with CF1
// at order 0 and the Wronskian.
Seed steed_seed(double x) {
  const double xi = 1.0 / x;
  const double w = 2.0 * xi / std::numbers::pi;
  const Cf1 ratio = cf1(0, x);
  const double f = ratio.ratio;
  double a = 0.25;
  double p = -0.5 * xi;
  double q = 1.0;
  const double br = 2.0 * x;
  double bi = 2.0;
  double fct = a * xi / (p * p + q * q);
  double cr = br + q * fct;
  double ci = bi + p * fct;
  double den = br * br + bi * bi;
  double dr = br / den;
  double di = -bi / den;
  double dlr = cr * dr - ci * di;
  double dli = cr * di + ci * dr;
  double temp = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = temp;
  int i = 2;
  for (; i < 100000; ++i) {
    a += 2 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
    fct = a / (cr * cr + ci * ci);
    cr = br + cr * fct;
    ci = bi - ci * fct;
    if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
    den = dr * dr + di * di;
    dr /= den;
    di /= -den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
  }
  if (i >= 100000) throw ConvergenceError("bessel: Steed continued fraction did not converge");
  const double gam = (p - f) / q;
  Seed out;
  // CF2 fixes |J_0|; the sign comes from CF1.
  const double j0 = std::copysign(std::sqrt(w / ((p - f) * gam + q)), ratio.sign);
  out.j0 = j0;
  out.y0 = j0 * gam;
  const double y0p = out.y0 * (p + q / gam);
  out.y1 = -y0p;
  out.j1 = -f * j0;
  out.rel_err = 8.0 * kEps * (2.0 + std::sqrt(static_cast<double>(i)));
  return out;
}

Raw compute(int n, double x) {
  check_args(n, x);
  Seed seed;
  if (x >= 25.0) {
    seed = hankel_seed(x);
  } else if (x >= 2.0) {
    seed = steed_seed(x);
  } else {
    seed = temme_seed(x);
  }
  const double xi2 = 2.0 / x;
  const double nn = static_cast<double>(n);
  Raw out;
  if (nn <= x) {
    // Both solutions oscillate up to order x; the upward recurrence is
    // neutral for each of them.
    double j0 = seed.j0;
    double j1 = seed.j1;
    double y0 = seed.y0;
    double y1 = seed.y1;
    for (int i = 1; i <= n; ++i) {
      const double jt = i * xi2 * j1 - j0;
      const double yt = i * xi2 * y1 - y0;
      j0 = j1;
      j1 = jt;
      y0 = y1;
      y1 = yt;
    }
    out.j = j0;
    out.y = y0;
    out.jp = nn / x * j0 - j1;
    out.yp = nn / x * y0 - y1;
    out.rel_err = seed.rel_err + 8.0 * kEps * (2.0 + std::sqrt(nn));
    return out;
  }
  // Y upward with rescaling; J from the Wronskian J_n (Y'_n - f Y_n) = 2/(pi x)
  // with f = J'_n / J_n from CF1, which converges quickly for n > x.
  double y0 = seed.y0;
  double y1 = seed.y1;
  int yscale = 0;
  for (int i = 1; i <= n; ++i) {
    const double yt = i * xi2 * y1 - y0;
    y0 = y1;
    y1 = yt;
    if (std::abs(y1) > kBig) {
      y1 = std::ldexp(y1, -kRescale);
      y0 = std::ldexp(y0, -kRescale);
      yscale += kRescale;
    }
  }
  out.y = y0;
  out.yp = nn / x * y0 - y1;
  out.ey = yscale;
  const double f = cf1(n, x).ratio;
  const double w = xi2 / std::numbers::pi;
  const double jm = w / (out.yp - f * out.y);
  out.j = jm;
  out.jp = f * jm;
  out.ej = -yscale;
  out.rel_err = seed.rel_err + 8.0 * kEps * (2.0 + std::sqrt(nn) + std::sqrt(x));
  return out;
}

double to_double(double mant, int e, const char* what) {
  const double v = std::ldexp(mant, e);
  if (!std::isfinite(v)) throw RangeError(std::string("bessel: ") + what + " overflows");
  return v;
}

// Envelope used for the error estimate: the modulus sqrt(J^2+Y^2) where both
// oscillate, otherwise each function on its own scale.
bool oscillatory(int n, double x) { return x >= static_cast<double>(n); }

}  // namespace

EvalResult bessel_j(int n, double x) {
  const Raw raw = compute(n, x);
  EvalResult out;
  out.value = std::ldexp(raw.j, raw.ej);
  double env = std::abs(out.value);
  if (oscillatory(n, x)) env = std::hypot(out.value, std::ldexp(raw.y, raw.ey));
  out.abs_err_est = std::max(raw.rel_err * env, std::numeric_limits<double>::min());
  return out;
}

EvalResult bessel_y(int n, double x) {
  const Raw raw = compute(n, x);
  EvalResult out;
  out.value = to_double(raw.y, raw.ey, "Y_n(x)");
  double env = std::abs(out.value);
  if (oscillatory(n, x)) env = std::hypot(out.value, std::ldexp(raw.j, raw.ej));
  out.abs_err_est = raw.rel_err * env;
  return out;
}

BesselJY bessel_jy(int n, double x) {
  const Raw raw = compute(n, x);
  BesselJY out;
  out.j = std::ldexp(raw.j, raw.ej);
  out.jp = std::ldexp(raw.jp, raw.ej);
  out.y = to_double(raw.y, raw.ey, "Y_n(x)");
  out.yp = to_double(raw.yp, raw.ey, "Y_n'(x)");
  if (oscillatory(n, x)) {
    const double env = std::hypot(out.j, out.y);
    out.j_err = raw.rel_err * env;
    out.y_err = raw.rel_err * env;
  } else {
    out.j_err = std::max(raw.rel_err * std::abs(out.j), std::numeric_limits<double>::min());
    out.y_err = raw.rel_err * std::abs(out.y);
  }
  return out;
}

ScaledJY bessel_jy_scaled(int n, double x) {
  const Raw raw = compute(n, x);
  ScaledJY out;
  // Put the whole Y exponent on the shared scale; J*Y = O(1/x) keeps j moderate.
  int ey = 0;
  const double ym = std::frexp(raw.y, &ey);
  out.exp2 = raw.ey + ey;
  out.y = ym;
  out.j = std::ldexp(raw.j, raw.ej + out.exp2);
  out.j_rel_err = raw.rel_err;
  return out;
}

}  // namespace annulus
