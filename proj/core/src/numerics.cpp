#include "annulus/numerics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "annulus/errors.hpp"

namespace annulus::numerics {

Interval bisect(const std::function<double(double)>& f, double lo, double hi,
                double abs_tol, int max_iter) {
  return bisect(f, lo, f(lo), hi, f(hi), abs_tol, max_iter);
}

Interval bisect(const std::function<double(double)>& f, double lo, double f_lo,
                double hi, double f_hi, double abs_tol, int max_iter) {
  if (f_lo == 0.0) return {lo, lo};
  if (f_hi == 0.0) return {hi, hi};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw DomainError("bisect: no sign change on the bracket");
  }
  for (int it = 0; it < max_iter && hi - lo > abs_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, mid};
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

double solve_increasing(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double target,
                        double lo, double hi, double rel_tol, int max_iter) {
  double f_lo = f(lo) - target;
  double f_hi = f(hi) - target;
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw DomainError("solve_increasing: target outside the range of f");
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x) - target;
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double tol = rel_tol * std::max(std::abs(x), 1e-300);
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    const double d = df(x);
    double next = (std::isfinite(d) && d > 0.0) ? x - fx / d : lo - 1.0;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    } else if (std::abs(next - x) <= 0.25 * tol) {
      // Newton has converged; confirm with one bracketing probe.
      const double step = std::copysign(tol, next - x);
      const double probe = std::clamp(next + step, lo, hi);
      const double fp = f(probe) - target;
      if ((fp < 0.0) == (fx < 0.0)) return probe;
      return next;
    }
    x = next;
  }
  return 0.5 * (lo + hi);
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double gauss;
  double abs_kronrod;  // Kronrod rule applied to |f|
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  double ka = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double fl = f(c - dx);
    const double fr = f(c + dx);
    const double s = fl + fr;
    k += kWgk[j] * s;
    ka += kWgk[j] * (std::abs(fl) + std::abs(fr));
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {k * h, g * h, ka * std::abs(h)};
}

void integrate_rec(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, double rel_tol, int depth, QuadResult& acc,
                   const Panel& whole) {
  const double err = std::abs(whole.kronrod - whole.gauss);
  const double scale = std::abs(whole.kronrod);
  // below the rounding level of the panel no refinement can help
  const double noise = 50.0 * std::numeric_limits<double>::epsilon() * whole.abs_kronrod;
  if (depth <= 0 || err <= std::max({abs_tol, rel_tol * scale, noise}) ||
      b - a < 1e-15 * (1.0 + std::abs(a))) {
    acc.value += whole.kronrod;
    acc.abs_err += err;
    return;
  }
  const double m = 0.5 * (a + b);
  const Panel left = gk15(f, a, m);
  const Panel right = gk15(f, m, b);
  acc.evaluations += 30;
  integrate_rec(f, a, m, 0.5 * abs_tol, rel_tol, depth - 1, acc, left);
  integrate_rec(f, m, b, 0.5 * abs_tol, rel_tol, depth - 1, acc, right);
}

struct GaussLegendre20 {
  std::array<double, 20> x{};
  std::array<double, 20> w{};
  GaussLegendre20() {
    constexpr int n = 20;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre20& gauss_legendre20() {
  static const GaussLegendre20 rule;
  return rule;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_depth) {
  QuadResult acc;
  if (a == b) return acc;
  const Panel whole = gk15(f, a, b);
  acc.evaluations = 15;
  integrate_rec(f, a, b, abs_tol, rel_tol, max_depth, acc, whole);
  return acc;
}

double integrate_endpoint_singular(const std::function<double(double)>& f, double a,
                                   double b, int panels) {
  if (!(b > a)) return 0.0;
  const auto& rule = gauss_legendre20();
  const double len = b - a;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double s0 = static_cast<double>(p) / panels;
    const double s1 = static_cast<double>(p + 1) / panels;
    const double c = 0.5 * (s0 + s1);
    const double h = 0.5 * (s1 - s0);
    for (int i = 0; i < 20; ++i) {
      const double s = c + h * rule.x[i];
      const double jac = 6.0 * s * (1.0 - s) * len;
      if (jac <= 0.0) continue;
      const double x = a + len * s * s * (3.0 - 2.0 * s);
      sum += rule.w[i] * h * jac * f(x);
    }
  }
  return sum;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  LinearFit fit;
  const std::size_t n = std::min(x.size(), y.size());
  fit.points = n;
  if (n < 2) return fit;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1U : hw;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        if (failed.load(std::memory_order_relaxed)) return;
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  workers.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace annulus::numerics
