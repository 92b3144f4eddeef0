// The Airy phase shift psi.
//
// With x = 2^(1/3)|z| and xi = (2/3) x^(3/2):
//   z <= 0:  psi = 1/4 - arctan(Ai(x)/Bi(x))/pi
//   z >  0:  psi = (arg(Ai(-x) + i Bi(-x)) + xi - pi/4)/pi, on the branch
//            that keeps psi in (0, 1/4).
// For x >= 8 the oscillatory branch reduces to arg(P + iQ)/pi with the
// modulus/phase series, which avoids forming xi - pi/4 for large z.

#include <cmath>
#include <numbers>

#include "airy_detail.hpp"
#include "annulus/errors.hpp"
#include "annulus/geometry.hpp"
#include "annulus/numerics.hpp"
#include "annulus/specfun.hpp"

namespace annulus {
namespace {

constexpr double kPi = std::numbers::pi;
const double kCbrt2 = std::cbrt(2.0);

void check_z(double z) {
  if (!std::isfinite(z)) throw DomainError("psi: z must be finite");
}

}  // namespace

ShiftValue psi_split(double z) {
  check_z(z);
  ShiftValue out;
  const double x = kCbrt2 * std::abs(z);
  if (z <= 0.0) {
    out.complement = std::atan(detail::airy_growth(x).ratio) / kPi;
    out.value = 0.25 - out.complement;
    return out;
  }
  if (x >= detail::kAiryAsymptoticSwitch) {
    const detail::AiryPQ pq = detail::airy_pq(x);
    out.value = std::atan2(pq.q, pq.p) / kPi;
  } else {
    const AiryResult a = airy(-x);
    const double xi = 2.0 / 3.0 * x * std::sqrt(x);
    const double theta = std::atan2(a.bi.value, a.ai.value) - (kPi / 4.0 - xi);
    out.value = std::remainder(theta, 2.0 * kPi) / kPi;
  }
  out.complement = 0.25 - out.value;
  return out;
}

double psi(double z) { return psi_split(z).value; }

double psi_prime(double z) {
  check_z(z);
  const double x = kCbrt2 * std::abs(z);
  if (z <= 0.0) {
    const double lm = detail::airy_growth(x).log_modulus_sq;
    return -kCbrt2 / (kPi * kPi * std::exp(lm));
  }
  const double slope = std::numbers::sqrt2 * std::sqrt(z) / kPi;
  if (x >= detail::kAiryAsymptoticSwitch) {
    const detail::AiryPQ pq = detail::airy_pq(x);
    const double s = pq.p * pq.p + pq.q * pq.q;
    const double s_minus_one = pq.p_minus_one * (pq.p + 1.0) + pq.q * pq.q;
    return slope * s_minus_one / s;
  }
  const AiryResult a = airy(-x);
  const double m = a.ai.value * a.ai.value + a.bi.value * a.bi.value;
  return -kCbrt2 / (kPi * kPi * m) + slope;
}

double airy_zero(int m) {
  if (m < 1) throw DomainError("airy_zero: index must be >= 1");
  const double t = 3.0 * kPi * (4.0 * m - 1.0) / 8.0;
  const double guess = std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t));
  const double half = std::min(0.25, 0.4 * kPi / std::sqrt(guess));
  auto f = [](double x) { return airy(-x).ai.value; };
  const numerics::Interval iv =
      numerics::bisect(f, guess - half, guess + half, 1e-15 * guess);
  return iv.mid();
}

ShiftFunctionTable build_shift_table(int zeros, double z_min, double z_max, int samples) {
  if (zeros < 1 || samples < 2 || !(z_min < z_max)) {
    throw DomainError("build_shift_table: need zeros >= 1, samples >= 2, z_min < z_max");
  }
  ShiftFunctionTable table;
  table.airy_zeros.reserve(zeros);
  for (int m = 1; m <= zeros; ++m) table.airy_zeros.push_back(airy_zero(m));
  table.z.reserve(samples);
  table.psi.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double z = i + 1 == samples ? z_max : z_min + (z_max - z_min) * i / (samples - 1);
    table.z.push_back(z);
    table.psi.push_back(psi(z));
  }
  return table;
}

const ShiftFunctionTable& shift_table() {
  static const ShiftFunctionTable table = build_shift_table();
  return table;
}

}  // namespace annulus
