// Airy functions Ai, Bi and their derivatives.
//
// |x| <= 8: Taylor stepping of y'' = x y from the values at 0, except for Ai on
// the positive axis, which is integrated backwards from x = 8 (forward it
// would pick up Bi).  |x| > 8: the standard asymptotic expansions.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "airy_detail.hpp"
#include "annulus/errors.hpp"
#include "annulus/specfun.hpp"

namespace annulus {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kAi0 = 0.355028053887817239260063186004183176;
constexpr double kAip0 = -0.258819403792806798405183560189203963;
constexpr double kSqrt3 = 1.73205080756887729352744634150587237;
constexpr double kStep = 0.5;
constexpr int kMaxTerms = 60;

constexpr std::array<double, kMaxTerms> make_u() {
  std::array<double, kMaxTerms> u{};
  u[0] = 1.0;
  for (int k = 1; k < kMaxTerms; ++k) {
    u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
           ((2.0 * k - 1.0) * 216.0 * k);
  }
  return u;
}
constexpr auto kU = make_u();

constexpr double v_coef(int k) {
  return k == 0 ? 1.0 : -(6.0 * k + 1.0) / (6.0 * k - 1.0) * kU[k];
}

struct State {
  double y = 0.0;
  double yp = 0.0;
};

// One Taylor step of y'' = x y from x0 to x0 + h.
State taylor_step(double x0, double h, State s) {
  double am2 = 0.0;     // a_{k-1}
  double am1 = s.y;     // a_k  (k = 0)
  double a = s.yp;      // a_{k+1}
  double y = s.y + s.yp * h;
  double yp = s.yp;
  double hk = h;        // h^(k+1)
  double small_run = 0;
  for (int k = 0; k < 200; ++k) {
    // a_{k+2} = (x0 a_k + a_{k-1}) / ((k+2)(k+1))
    const double next = (x0 * am1 + am2) / ((k + 2.0) * (k + 1.0));
    am2 = am1;
    am1 = a;
    a = next;
    const double dterm = (k + 2.0) * a * hk;
    hk *= h;
    const double term = a * hk;
    y += term;
    yp += dterm;
    if (std::abs(term) <= 1e-18 * std::abs(y) && std::abs(dterm) <= 1e-18 * std::abs(yp)) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
  }
  return {y, yp};
}

State integrate(double from, double to, State s) {
  const double dist = to - from;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(dist) / kStep)));
  const double h = dist / steps;
  double x0 = from;
  for (int i = 0; i < steps; ++i) {
    s = taylor_step(x0, h, s);
    x0 = from + (i + 1) * h;
  }
  return s;
}

struct Series {
  double u = 0.0;
  double v = 0.0;
  double tail = 0.0;
};

// sum_k sign^k u_k / xi^k and the same with v_k, truncated at the smallest term.
Series exp_series(double xi, int sign) {
  Series s;
  double pw = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kMaxTerms; ++k) {
    const double sg = (sign < 0 && (k % 2 == 1)) ? -1.0 : 1.0;
    const double tu = kU[k] * pw;
    const double tv = v_coef(k) * pw;
    if (k > 0 && std::abs(tv) > prev) break;
    s.u += sg * tu;
    s.v += sg * tv;
    s.tail = std::max(std::abs(tu), std::abs(tv));
    prev = std::abs(tv);
    if (s.tail < 1e-18) break;
    pw /= xi;
  }
  return s;
}

void check_range(double x) {
  if (!std::isfinite(x) || std::abs(x) > 1e4) {
    throw DomainError("airy: |x| must not exceed 1e4");
  }
}

}  // namespace

namespace detail {

AiryPQ airy_pq(double x) {
  AiryPQ out;
  out.xi = 2.0 / 3.0 * x * std::sqrt(x);
  const double inv = 1.0 / out.xi;
  double pw = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kMaxTerms; ++k) {
    const double tu = kU[k] * pw;
    const double tv = v_coef(k) * pw;
    if (k > 0 && std::abs(tv) > prev) break;
    prev = std::abs(tv);
    // (-1)^floor(k/2) pattern: P takes even k, Q odd k
    const double sg = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      if (k > 0) out.p_minus_one += sg * tu;
      if (k > 0) out.pv += sg * tv;
    } else {
      out.q += sg * tu;
      out.qv += sg * tv;
    }
    out.tail = std::max(std::abs(tu), std::abs(tv));
    if (out.tail < 1e-18) break;
    pw *= inv;
  }
  out.p = 1.0 + out.p_minus_one;
  return out;
}

AiryGrowth airy_growth(double x) {
  AiryGrowth out;
  if (x <= kAiryAsymptoticSwitch) {
    const AiryResult a = airy(x);
    out.log_bi = std::log(a.bi.value);
    out.ratio = a.ai.value / a.bi.value;
    out.log_modulus_sq = std::log(a.ai.value * a.ai.value + a.bi.value * a.bi.value);
    return out;
  }
  const double xi = 2.0 / 3.0 * x * std::sqrt(x);
  const Series plus = exp_series(xi, +1);
  const Series minus = exp_series(xi, -1);
  const double lead = -0.5 * std::log(std::numbers::pi) - 0.25 * std::log(x);
  out.log_bi = xi + lead + std::log(plus.u);
  out.ratio = 0.5 * std::exp(-2.0 * xi) * minus.u / plus.u;
  out.log_modulus_sq = 2.0 * out.log_bi + std::log1p(out.ratio * out.ratio);
  return out;
}

}  // namespace detail

AiryResult airy(double x) {
  check_range(x);
  AiryResult out;
  const double ax = std::abs(x);
  if (ax <= detail::kAiryAsymptoticSwitch) {
    const State bi0{kSqrt3 * kAi0, -kSqrt3 * kAip0};
    const State bi = integrate(0.0, x, bi0);
    State ai;
    double ai_rel = 0.0;
    if (x <= 0.0) {
      ai = integrate(0.0, x, State{kAi0, kAip0});
    } else {
      // start from the decaying expansion at the switch point
      const double x8 = detail::kAiryAsymptoticSwitch;
      const double xi = 2.0 / 3.0 * x8 * std::sqrt(x8);
      const Series s = exp_series(xi, -1);
      const double e = std::exp(-xi) / (2.0 * std::sqrt(std::numbers::pi));
      const State start{e / std::sqrt(std::sqrt(x8)) * s.u, -e * std::sqrt(std::sqrt(x8)) * s.v};
      ai = integrate(x8, x, start);
      ai_rel = 2.0 * s.tail;
    }
    const int steps = static_cast<int>(std::ceil(ax / kStep)) + 1;
    const double rel = 4.0 * kEps * steps;
    if (x <= 0.0) {
      const double env = std::hypot(ai.y, bi.y);
      const double envp = std::hypot(ai.yp, bi.yp);
      out.ai = {ai.y, rel * env};
      out.bi = {bi.y, rel * env};
      out.aip = {ai.yp, rel * envp};
      out.bip = {bi.yp, rel * envp};
    } else {
      out.ai = {ai.y, (rel + ai_rel) * std::abs(ai.y)};
      out.aip = {ai.yp, (rel + ai_rel) * std::abs(ai.yp)};
      out.bi = {bi.y, rel * std::abs(bi.y)};
      out.bip = {bi.yp, rel * std::abs(bi.yp)};
    }
    return out;
  }

  if (x > 0.0) {
    const double xi = 2.0 / 3.0 * x * std::sqrt(x);
    const double q4 = std::sqrt(std::sqrt(x));
    const double rpi = 1.0 / std::sqrt(std::numbers::pi);
    const Series minus = exp_series(xi, -1);
    const Series plus = exp_series(xi, +1);
    const double em = std::exp(-xi);
    const double ep = std::exp(xi);
    if (!std::isfinite(ep * q4)) {
      throw RangeError("airy: Bi(x) overflows for x = " + std::to_string(x));
    }
    // exp(+-xi) carries the rounding of xi itself
    const double rel_m = 2.0 * minus.tail + 4.0 * kEps * (1.0 + xi);
    const double rel_p = 2.0 * plus.tail + 4.0 * kEps * (1.0 + xi);
    const double ai = 0.5 * rpi * em / q4 * minus.u;
    const double aip = -0.5 * rpi * em * q4 * minus.v;
    const double bi = rpi * ep / q4 * plus.u;
    const double bip = rpi * ep * q4 * plus.v;
    out.ai = {ai, rel_m * std::abs(ai)};
    out.aip = {aip, rel_m * std::abs(aip)};
    out.bi = {bi, rel_p * std::abs(bi)};
    out.bip = {bip, rel_p * std::abs(bip)};
    return out;
  }

  const detail::AiryPQ pq = detail::airy_pq(ax);
  const double q4 = std::sqrt(std::sqrt(ax));
  const double rpi = 1.0 / std::sqrt(std::numbers::pi);
  // sin and cos of xi + pi/4
  const double s0 = std::sin(pq.xi);
  const double c0 = std::cos(pq.xi);
  const double h = std::numbers::sqrt2 / 2.0;
  const double sa = h * (s0 + c0);
  const double ca = h * (c0 - s0);
  const double amp = rpi / q4;
  const double ampp = rpi * q4;
  const double ai = amp * (sa * pq.p - ca * pq.q);
  const double bi = amp * (ca * pq.p + sa * pq.q);
  const double aip = ampp * (-ca * pq.pv - sa * pq.qv);
  const double bip = ampp * (sa * pq.pv - ca * pq.qv);
  const double rel = 2.0 * pq.tail + 4.0 * kEps * (2.0 + pq.xi);
  out.ai = {ai, rel * amp};
  out.bi = {bi, rel * amp};
  out.aip = {aip, rel * ampp};
  out.bip = {bip, rel * ampp};
  return out;
}

}  // namespace annulus
