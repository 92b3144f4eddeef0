#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "annulus/counting.hpp"
#include "annulus/numerics.hpp"

namespace annulus::cli {
namespace {

ScanOptions scan_options(const RunConfig& cfg) {
  ScanOptions o;
  o.c = cfg.c;
  o.with_variable = cfg.with_variable;
  o.threads = cfg.threads;
  return o;
}

const std::vector<std::string> kReportColumns{"mu",       "n_eig",          "n_lat_u",    "n_lat_var",
                                              "band_err", "weyl_remainder", "wall_time_s"};

std::vector<Cell> report_row(const CountReport& r, bool timing) {
  std::vector<Cell> row{r.mu, r.n_eig, r.n_lat_u};
  row.push_back(r.n_lat_var ? Cell{*r.n_lat_var} : Cell{});
  row.push_back(r.band_err);
  row.push_back(r.weyl_remainder);
  row.push_back(timing ? Cell{r.wall_time_s} : Cell{});
  return row;
}

}  // namespace

Table run_eigs(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  const double mu = cfg.mu.front();
  const int n_max = static_cast<int>(std::floor(geom.R() * mu));
  std::vector<std::vector<SpectralZero>> per_order(static_cast<std::size_t>(std::max(0, n_max + 1)));
  numerics::parallel_for(per_order.size(), cfg.threads, [&](std::size_t n) {
    per_order[n] = zeros_up_to(geom, static_cast<int>(n), mu, cfg.regime);
  });

  std::vector<SpectralZero> all;
  for (const auto& zs : per_order) {
    for (const SpectralZero& z : zs) {
      all.push_back(z);
      if (z.n > 0) {
        // x_{-n,k} = x_{n,k}
        all.push_back(z);
        all.back().n = -z.n;
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const SpectralZero& a, const SpectralZero& b) {
    if (a.x != b.x) return a.x < b.x;
    if (std::abs(a.n) != std::abs(b.n)) return std::abs(a.n) < std::abs(b.n);
    if (a.n != b.n) return a.n > b.n;
    return a.k < b.k;
  });

  Table t;
  t.columns = {"n", "k", "x", "regime", "tau", "residual"};
  for (const SpectralZero& z : all) {
    t.rows.push_back({Cell{long{z.n}}, Cell{long{z.k}}, z.x, std::string(to_string(z.regime)), z.tau,
                      z.residual});
  }
  return t;
}

Table run_count(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  Table t;
  t.columns = kReportColumns;
  for (const CountReport& r : weyl_scan(geom, cfg.mu, cfg.regime, scan_options(cfg))) {
    t.rows.push_back(report_row(r, cfg.timing));
  }
  return t;
}

Table run_lattice(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  Table t;
  t.columns = {"mu", "c", "n_lat_u"};
  if (cfg.slanted) {
    for (const char* col : {"triangle", "d2_star", "d2", "d2_columns", "d1_rows", "quadrant", "l12",
                            "n_lat_split"}) {
      t.columns.emplace_back(col);
    }
  }
  std::vector<std::vector<Cell>> rows(cfg.mu.size());
  numerics::parallel_for(cfg.mu.size(), cfg.threads, [&](std::size_t i) {
    const double mu = cfg.mu[i];
    std::vector<Cell> row{mu, cfg.c, lattice_count_uniform(geom, mu, cfg.c)};
    if (cfg.slanted) {
      const SlantedBreakdown b = slanted_breakdown(geom, mu, cfg.c);
      row.insert(row.end(), {b.triangle, b.d2_star, b.d2, b.d2_columns, b.d1_rows, b.quadrant, b.l12,
                             lattice_count_split(geom, mu, cfg.c)});
    }
    rows[i] = std::move(row);
  });
  t.rows = std::move(rows);
  return t;
}

Table run_band(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  Table t;
  t.columns = {"mu", "band_count", "band_err"};
  for (double mu : cfg.mu) t.rows.push_back({mu, band_count(geom, mu), band_error(geom, mu)});
  return t;
}

Table run_remainder_scan(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  const std::vector<double> grid = log_grid(cfg.mu_min, cfg.mu_max, cfg.points);
  const std::vector<CountReport> reports = weyl_scan(geom, grid, cfg.regime, scan_options(cfg));
  Table t;
  t.columns = kReportColumns;
  for (const CountReport& r : reports) t.rows.push_back(report_row(r, cfg.timing));
  const numerics::LinearFit fit = fit_exponent(reports);
  t.summary = {{"fit_slope", number(fit.slope)},
               {"fit_intercept", number(fit.intercept)},
               {"fit_r_squared", number(fit.r_squared)},
               {"fit_points", fit.points}};
  return t;
}

}  // namespace annulus::cli
