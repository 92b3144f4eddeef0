// Olver's variable zeta(z):
//   z < 1:  (2/3) zeta^(3/2)    = ln((1 + t)/z) - t,   t = sqrt(1 - z^2)
//   z > 1:  (2/3) (-zeta)^(3/2) = s - atan(s),         s = sqrt(z^2 - 1)
// Both right sides are w^3 times a power series in w^2 near z = 1; that
// series is used for w < 1/2, where the closed forms cancel.

#include <cmath>
#include <string>

#include "annulus/errors.hpp"
#include "annulus/specfun.hpp"
#include "zeta_detail.hpp"

namespace annulus {
namespace {

constexpr double kSeriesSwitch = 0.5;

// sum_k sign^k u^k / (2k + 3)
double odd_series(double u, double sign) {
  double sum = 0.0;
  double pw = 1.0;
  for (int k = 0; k < 80; ++k) {
    const double term = pw / (2.0 * k + 3.0);
    sum += term;
    if (std::abs(term) < 1e-18 * sum) break;
    pw *= sign * u;
  }
  return sum;
}

double half_width(double z) {
  return z < 1.0 ? std::sqrt((1.0 - z) * (1.0 + z)) : std::sqrt((z - 1.0) * (z + 1.0));
}

}  // namespace

namespace detail {

double zeta_core_ratio(double z) {
  const double w = half_width(z);
  if (w < kSeriesSwitch) return odd_series(w * w, z < 1.0 ? 1.0 : -1.0);
  const double v = z < 1.0 ? std::log((1.0 + w) / z) - w : w - std::atan(w);
  return v / (w * w * w);
}

}  // namespace detail

const char* to_string(ZetaRegion region) {
  switch (region) {
    case ZetaRegion::oscillatory: return "oscillatory";
    case ZetaRegion::turning: return "turning";
    case ZetaRegion::evanescent: return "evanescent";
  }
  return "?";
}

ZetaBranch zeta_of_z(double z) {
  if (!(z > 0.0) || !(z <= 1e3)) {
    throw DomainError("zeta_of_z: z must lie in (0, 1e3], got " + std::to_string(z));
  }
  ZetaBranch out;
  out.z = z;
  if (z == 1.0) return out;
  const double w = half_width(z);
  // |zeta| = (1.5 V)^(2/3) = w^2 (1.5 V / w^3)^(2/3)
  const double mag = w * w * std::cbrt(std::pow(1.5 * detail::zeta_core_ratio(z), 2.0));
  if (z < 1.0) {
    out.zeta = mag;
    out.branch = ZetaRegion::evanescent;
  } else {
    out.zeta = -mag;
    out.branch = ZetaRegion::oscillatory;
  }
  return out;
}

double olver_prefactor(double z) {
  if (!(z > 0.0)) throw DomainError("olver_prefactor: z must be positive");
  // 4 zeta / (1 - z^2) = 4 (1.5 V / w^3)^(2/3) on both sides
  const double ratio = std::cbrt(std::pow(1.5 * detail::zeta_core_ratio(z), 2.0));
  return std::sqrt(std::sqrt(4.0 * ratio));
}

}  // namespace annulus
