#include "annulus/oracle.hpp"

#include <cmath>
#include <numbers>

#include "annulus/errors.hpp"
#include "annulus/numerics.hpp"

namespace annulus::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

void check(int n, double x) {
  if (n < 0 || n > 10000 || !(x > 0.0) || x > 1e5) {
    throw DomainError("oracle: need 0 <= n <= 1e4 and 0 < x <= 1e5");
  }
}

// Integral over [0, pi] cut into panels of a few oscillations each.
EvalResult angular(const std::function<double(double)>& f, int n, double x) {
  const int panels = std::max(1, static_cast<int>(std::ceil((n + x) / 6.0)));
  EvalResult out;
  for (int i = 0; i < panels; ++i) {
    const double a = kPi * i / panels;
    const double b = kPi * (i + 1) / panels;
    const numerics::QuadResult q = numerics::integrate(f, a, b, 1e-14, 1e-14, 30);
    out.value += q.value;
    out.abs_err_est += q.abs_err;
  }
  out.value /= kPi;
  out.abs_err_est /= kPi;
  return out;
}

}  // namespace

EvalResult bessel_j(int n, double x) {
  check(n, x);
  EvalResult r =
      angular([n, x](double t) { return std::cos(n * t - x * std::sin(t)); }, n, x);
  r.abs_err_est += 4.0 * std::numeric_limits<double>::epsilon();
  return r;
}

EvalResult bessel_y(int n, double x) {
  check(n, x);
  EvalResult r =
      angular([n, x](double t) { return std::sin(x * std::sin(t) - n * t); }, n, x);

  // The exponent phi(t) = n t - x sinh t peaks at cosh t = n/x.
  const double peak_t = n > x ? std::acosh(n / x) : 0.0;
  const auto phi = [n, x](double t) { return n * t - x * std::sinh(t); };
  const double peak = phi(peak_t);
  // past t_end the integrand is below e^-45 of its peak
  double t_end = peak_t + 1.0;
  while (phi(t_end) > peak - 45.0) t_end = peak_t + 2.0 * (t_end - peak_t);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  // scaled by e^-peak to stay in range
  const auto g = [=](double t) {
    const double grow = std::exp(phi(t) - peak);
    const double decay = std::exp(-n * t - x * std::sinh(t) - peak);
    return grow + sign * decay;
  };
  double tail = 0.0;
  double tail_err = 0.0;
  const double width = std::max(1e-3, 1.0 / std::sqrt(std::max(1.0, x * std::sinh(peak_t) + x)));
  std::vector<double> cuts{0.0};
  if (peak_t > 0.0) {
    for (double c : {peak_t - 8 * width, peak_t, peak_t + 8 * width}) {
      if (c > cuts.back() && c < t_end) cuts.push_back(c);
    }
  }
  cuts.push_back(t_end);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const numerics::QuadResult q = numerics::integrate(g, cuts[i], cuts[i + 1], 1e-15, 1e-14, 30);
    tail += q.value;
    tail_err += q.abs_err;
  }
  const double scale = std::exp(peak) / kPi;
  if (!std::isfinite(scale * tail)) throw RangeError("oracle: Y_n(x) overflows");
  r.value -= scale * tail;
  r.abs_err_est += scale * (tail_err + 1e-15 * std::abs(tail)) +
                   4.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
  return r;
}

}  // namespace annulus::oracle
