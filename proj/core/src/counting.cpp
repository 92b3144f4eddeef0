#include "annulus/counting.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <string>

#include "annulus/errors.hpp"

namespace annulus {
namespace {

void check_mu(double mu) {
  if (!(mu > 2.0) || !std::isfinite(mu)) throw DomainError("mu must exceed 2");
}

// pure lattice counts make sense for any dilation
void check_dilation(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
}

void check_shift(double c) {
  if (!(c >= 0.0 && c < 0.5)) throw DomainError("lattice shift c must lie in [0, 1/2)");
}

// mu G(n/mu) with the argument clamped to [0, R] against rounding.
double scaled_height(const AnnulusGeometry& geom, double mu, long n) {
  const double t = std::min(std::abs(static_cast<double>(n)) / mu, geom.R());
  return mu * G(geom, t);
}

long double scaled_height_ext(const AnnulusGeometry& geom, double mu, long n) {
  const long double t = std::min(std::abs(static_cast<long double>(n)) / mu,
                                 static_cast<long double>(geom.R()));
  return mu * G_extended(geom, t);
}

long floor_height(const AnnulusGeometry& geom, double mu, long n, double shift) {
  return guarded_floor(scaled_height(geom, mu, n) + shift,
                       [&] { return scaled_height_ext(geom, mu, n) + shift; });
}

long max_column(const AnnulusGeometry& geom, double mu) {
  return static_cast<long>(std::floor(geom.R() * mu));
}

}  // namespace

double rho(double x) { return std::floor(x) - x + 0.5; }

long lattice_column(const AnnulusGeometry& geom, double mu, long n, double c) {
  check_shift(c);
  if (std::abs(static_cast<double>(n)) > geom.R() * mu) return 0;
  return std::max(0L, floor_height(geom, mu, n, c));
}

long lattice_count_uniform(const AnnulusGeometry& geom, double mu, double c) {
  check_dilation(mu);
  check_shift(c);
  long total = 0;
  const long top = max_column(geom, mu);
  for (long n = 0; n <= top; ++n) {
    total += (n == 0 ? 1 : 2) * lattice_column(geom, mu, n, c);
  }
  return total;
}

long band_count(const AnnulusGeometry& geom, double mu) {
  check_dilation(mu);
  long total = 0;
  const long top = static_cast<long>(std::floor(geom.r() * mu));
  for (long n = 0; n <= top; ++n) {
    total += floor_height(geom, mu, n, 0.25) - floor_height(geom, mu, n, 0.0);
  }
  return total;
}

double band_error(const AnnulusGeometry& geom, double mu) {
  return static_cast<double>(band_count(geom, mu)) - 0.25 * geom.r() * mu;
}

long lattice_count_variable(const AnnulusGeometry& geom, double mu, const RegimeConfig& cfg,
                            unsigned threads) {
  check_mu(mu);
  cfg.validate();
  const long top = max_column(geom, mu);
  std::vector<long> columns(static_cast<std::size_t>(top + 1), 0);
  numerics::parallel_for(columns.size(), threads, [&](std::size_t i) {
    const long n = static_cast<long>(i);
    const long below = std::max(0L, floor_height(geom, mu, n, 0.0));
    long count = below;
    // k = below + 1 is inside iff k - tau <= mu G, possible only when tau > 0
    const long k = below + 1;
    if (floor_height(geom, mu, n, 0.25) >= k) {
      double tau = 0.25;
      if (n > cfg.N_large) {
        tau = find_zero(geom, static_cast<int>(n), static_cast<int>(k), cfg).tau;
      } else {
        tau = k > cfg.K_small ? 0.0 : 0.25;
      }
      if (tau > 0.0) {
        const double v = scaled_height(geom, mu, n) + tau;
        if (guarded_floor(v, [&] { return scaled_height_ext(geom, mu, n) + tau; }) >= k) ++count;
      }
    }
    columns[i] = count;
  });
  long total = 0;
  for (long n = 0; n <= top; ++n) total += (n == 0 ? 1 : 2) * columns[static_cast<std::size_t>(n)];
  return total;
}

long eig_count(const AnnulusGeometry& geom, double mu, const RegimeConfig& cfg,
               unsigned threads) {
  cfg.validate();
  if (std::isnan(mu) || std::isinf(mu)) throw DomainError("mu must be finite");
  if (!(mu > 0.0)) return 0;
  const long top = max_column(geom, mu);
  std::vector<long> per_order(static_cast<std::size_t>(top + 1), 0);
  numerics::parallel_for(per_order.size(), threads, [&](std::size_t i) {
    per_order[i] = count_zeros_up_to(geom, static_cast<int>(i), mu, cfg);
  });
  long total = 0;
  for (std::size_t i = 0; i < per_order.size(); ++i) total += (i == 0 ? 1 : 2) * per_order[i];
  return total;
}

double weyl_remainder(const AnnulusGeometry& geom, double mu, long n_eig) {
  const double R = geom.R();
  const double r = geom.r();
  return static_cast<double>(n_eig) - 0.25 * (R * R - r * r) * mu * mu + 0.5 * (R + r) * mu;
}

// --- rho sums ---------------------------------------------------------------

namespace {

struct Phase {
  std::function<double(double)> f;
  std::function<double(double)> f2;  // second derivative; may throw SingularityError
  std::vector<double> singular;      // interior points where f2 blows up
};

Phase make_phase(const AnnulusGeometry& geom, const RhoSumSpec& s) {
  const double mu = s.mu;
  const double c = s.c;
  switch (s.phase) {
    case PhaseKind::G:
      return {[&geom, mu, c](double m) { return mu * G(geom, m / mu) + c; },
              [&geom, mu](double m) { return G_derivative(geom, m / mu, 2) / mu; },
              {geom.r() * mu}};
    case PhaseKind::H:
      return {[&geom, mu, c](double m) { return mu * H(geom, (m - c) / mu); },
              [&geom, mu, c](double m) { return H_all(geom, (m - c) / mu).d2 / mu; },
              {}};
    case PhaseKind::T: {
      if (!geom.slope_rational()) {
        throw UnsupportedConfiguration("T-type sums need a rational cusp slope");
      }
      const double q = static_cast<double>(geom.slope_rational()->q);
      return {[&geom, mu, c, q](double m) { return mu / q * T(geom, c, mu, m / mu); },
              [&geom, mu, c, q](double m) { return T_all(geom, c, mu, m / mu).d2 / (q * mu); },
              {}};
    }
  }
  throw DomainError("unknown phase kind");
}

}  // namespace

double rho_sum(const AnnulusGeometry& geom, const RhoSumSpec& spec) {
  check_mu(spec.mu);
  if (spec.M2 < spec.M1) return 0.0;
  const Phase phase = make_phase(geom, spec);
  double sum = 0.0;
  const long lo = static_cast<long>(std::ceil(spec.M1));
  const long hi = static_cast<long>(std::floor(spec.M2));
  for (long m = lo; m <= hi; ++m) sum += rho(phase.f(static_cast<double>(m)));
  return sum;
}

double vdc_bound(const AnnulusGeometry& geom, const RhoSumSpec& spec) {
  check_mu(spec.mu);
  if (!(spec.M2 > spec.M1)) return 0.0;
  const Phase phase = make_phase(geom, spec);
  // |f''|^(1/3) has at worst integrable endpoint singularities; split at
  // interior ones.
  std::vector<double> cuts{spec.M1};
  for (double s : phase.singular) {
    if (s > spec.M1 && s < spec.M2) cuts.push_back(s);
  }
  cuts.push_back(spec.M2);
  double integral = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  const auto third = [&](double x) { return std::cbrt(std::abs(phase.f2(x))); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    integral += numerics::integrate_endpoint_singular(third, cuts[i], cuts[i + 1], 64);
    constexpr int kSamples = 512;
    for (int j = 0; j <= kSamples; ++j) {
      const double x = cuts[i] + (cuts[i + 1] - cuts[i]) * j / kSamples;
      try {
        min_abs = std::min(min_abs, std::abs(phase.f2(x)));
      } catch (const SingularityError&) {
        // unbounded there; does not lower the minimum
      }
    }
  }
  return integral + (min_abs > 0.0 ? 1.0 / std::sqrt(min_abs) : 0.0);
}

RhoSumSpec g_type_spec(const AnnulusGeometry& geom, double mu, double c) {
  RhoSumSpec s;
  s.M1 = 1.0;
  s.M2 = geom.r() * mu;
  s.phase = PhaseKind::G;
  s.mu = mu;
  s.c = c;
  return s;
}

// --- reports ----------------------------------------------------------------

CountReport count_report(const AnnulusGeometry& geom, double mu, const RegimeConfig& cfg,
                         const ScanOptions& options) {
  check_mu(mu);
  const auto start = std::chrono::steady_clock::now();
  CountReport rep;
  rep.mu = mu;
  rep.n_eig = eig_count(geom, mu, cfg, options.threads);
  rep.n_lat_u = lattice_count_uniform(geom, mu, options.c);
  if (options.with_variable) rep.n_lat_var = lattice_count_variable(geom, mu, cfg, options.threads);
  rep.band_err = band_error(geom, mu);
  rep.weyl_remainder = weyl_remainder(geom, mu, rep.n_eig);
  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<CountReport> weyl_scan(const AnnulusGeometry& geom, std::span<const double> mu_grid,
                                   const RegimeConfig& cfg, const ScanOptions& options) {
  for (std::size_t i = 0; i < mu_grid.size(); ++i) {
    check_mu(mu_grid[i]);
    if (i > 0 && mu_grid[i] < mu_grid[i - 1]) throw DomainError("mu grid must be sorted");
  }
  std::vector<CountReport> out;
  out.reserve(mu_grid.size());
  for (double mu : mu_grid) out.push_back(count_report(geom, mu, cfg, options));
  return out;
}

numerics::LinearFit fit_exponent(std::span<const CountReport> reports) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (const CountReport& r : reports) {
    if (std::abs(r.weyl_remainder) < 1e-9) continue;
    lx.push_back(std::log(r.mu));
    ly.push_back(std::log(std::abs(r.weyl_remainder)));
  }
  return numerics::least_squares(lx, ly);
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) {
    throw DomainError("log_grid: need 0 < lo <= hi and points >= 1");
  }
  std::vector<double> out;
  out.reserve(points);
  if (points == 1) return {lo};
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < points; ++i) {
    if (i == 0) {
      out.push_back(lo);
    } else if (i + 1 == points) {
      out.push_back(hi);
    } else {
      out.push_back(std::exp(a + (b - a) * i / (points - 1)));
    }
  }
  return out;
}

double variable_shift_discrepancy(const AnnulusGeometry& geom, const CountReport& report) {
  if (!report.n_lat_var) throw DomainError("report carries no variable-shift count");
  return static_cast<double>(report.n_lat_u - *report.n_lat_var) - 0.5 * geom.r() * report.mu -
         2.0 * report.band_err;
}

// --- sandwich ---------------------------------------------------------------

SandwichPoint sandwich_point(const AnnulusGeometry& geom, double mu, long n_eig, double C) {
  const double d = C * std::pow(mu, -0.4);
  const double lo = mu - d;
  const double hi = mu + d;
  check_mu(lo);
  SandwichPoint p;
  p.mu = mu;
  p.n_eig = n_eig;
  p.lhs = std::abs(static_cast<double>(n_eig - lattice_count_uniform(geom, mu, 0.25)) +
                   0.5 * geom.r() * mu);
  p.rhs = static_cast<double>(lattice_count_uniform(geom, hi, 0.25) -
                              lattice_count_uniform(geom, lo, 0.25)) +
          2.0 * (band_error(geom, lo) - band_error(geom, hi)) + C * std::pow(mu, 0.6);
  return p;
}

SandwichResult sandwich_constant(const AnnulusGeometry& geom, std::span<const double> mu_grid,
                                 const RegimeConfig& cfg, int min_log2, int max_log2,
                                 unsigned threads) {
  std::vector<long> eig;
  eig.reserve(mu_grid.size());
  for (double mu : mu_grid) eig.push_back(eig_count(geom, mu, cfg, threads));
  SandwichResult result;
  for (int j = min_log2; j <= max_log2; ++j) {
    const double C = std::ldexp(1.0, j);
    std::vector<SandwichPoint> pts;
    bool ok = true;
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
      const double mu = mu_grid[i];
      if (!(mu - C * std::pow(mu, -0.4) > 2.0)) {
        ok = false;
        break;
      }
      pts.push_back(sandwich_point(geom, mu, eig[i], C));
      if (pts.back().lhs > pts.back().rhs) ok = false;
    }
    if (ok) {
      result.C = C;
      result.points = std::move(pts);
      return result;
    }
    if (pts.size() == mu_grid.size()) result.points = std::move(pts);
  }
  return result;
}

}  // namespace annulus
