// Leading-order uniform (Olver) and transitional approximations of J_n, Y_n.

#include <cmath>
#include <string>

#include "annulus/errors.hpp"
#include "annulus/specfun.hpp"

namespace annulus {
namespace {

constexpr int kMinOrder = 30;

// Olver's B_0(zeta). The closed form cancels near z = 1; there it is
// replaced by the line through its values at z = 0.95 and 1.05.
double b0_closed(double z, double zeta) {
  const double lead = -5.0 / (48.0 * zeta * zeta);
  if (z < 1.0) {
    const double w = (1.0 - z) * (1.0 + z);
    return lead + (5.0 / (24.0 * w * std::sqrt(w)) - 1.0 / (8.0 * std::sqrt(w))) / std::sqrt(zeta);
  }
  const double w = (z - 1.0) * (z + 1.0);
  return lead + (5.0 / (24.0 * w * std::sqrt(w)) + 1.0 / (8.0 * std::sqrt(w))) / std::sqrt(-zeta);
}

double b0(double z, double zeta) {
  constexpr double lo = 0.95;
  constexpr double hi = 1.05;
  if (z > lo && z < hi) {
    const double blo = b0_closed(lo, zeta_of_z(lo).zeta);
    const double bhi = b0_closed(hi, zeta_of_z(hi).zeta);
    return blo + (bhi - blo) * (z - lo) / (hi - lo);
  }
  return b0_closed(z, zeta);
}

void check_olver(int n, double z) {
  if (n < kMinOrder) throw DomainError("olver: order must be at least 30");
  if (!(z >= 0.1 && z <= 10.0)) throw DomainError("olver: z must lie in [0.1, 10]");
}

void check_transitional(int n, double w) {
  if (n < kMinOrder) throw DomainError("transitional: order must be at least 30");
  if (!(std::abs(w) <= std::pow(static_cast<double>(n), kTransitionalEps))) {
    throw DomainError("transitional: |w| exceeds n^0.25, w = " + std::to_string(w));
  }
}

// Shared body: sign = +1 with (Ai, Ai') for J, -1 with (Bi, Bi') for Y.
EvalResult olver(int n, double z, bool want_y) {
  check_olver(n, z);
  const double zeta = zeta_of_z(z).zeta;
  const double nn = static_cast<double>(n);
  const double n13 = std::cbrt(nn);
  const AiryResult a = airy(n13 * n13 * zeta);
  const EvalResult& f = want_y ? a.bi : a.ai;
  const EvalResult& fp = want_y ? a.bip : a.aip;
  const double scale = olver_prefactor(z) / n13;
  const double sign = want_y ? -1.0 : 1.0;
  EvalResult out;
  out.value = sign * scale * f.value;
  // first omitted term, B_0 Ai'(n^(2/3) zeta) / n^(4/3), doubled, plus an
  // allowance of 1/n^2 relative for the A_1 term behind it
  const double omitted = scale * std::abs(fp.value) * std::abs(b0(z, zeta)) / (nn * n13);
  out.abs_err_est = 2.0 * omitted + std::abs(out.value) / (nn * nn) + scale * f.abs_err_est;
  return out;
}

EvalResult transitional(int n, double w, bool want_y) {
  check_transitional(n, w);
  const double nn = static_cast<double>(n);
  const double c = std::cbrt(2.0);
  const AiryResult a = airy(-c * w);
  const EvalResult& f = want_y ? a.bi : a.ai;
  const double scale = c / std::cbrt(nn);
  EvalResult out;
  out.value = (want_y ? -1.0 : 1.0) * scale * f.value;
  const double eps = kTransitionalEps;
  const double lemma = w >= 0.0 ? std::pow(nn, -1.0 + 2.25 * eps)
                                : std::abs(out.value) * std::pow(nn, -2.0 / 3.0 + 2.5 * eps);
  out.abs_err_est = lemma + scale * f.abs_err_est;
  return out;
}

}  // namespace

EvalResult olver_jn(int n, double z) { return olver(n, z, false); }
EvalResult olver_yn(int n, double z) { return olver(n, z, true); }
EvalResult transitional_jn(int n, double w) { return transitional(n, w, false); }
EvalResult transitional_yn(int n, double w) { return transitional(n, w, true); }

}  // namespace annulus
