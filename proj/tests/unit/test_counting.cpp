#include <cmath>
#include <numbers>
#include <vector>

#include "annulus/counting.hpp"
#include "annulus/errors.hpp"
#include "doctest.h"
#include "reference.hpp"

using namespace annulus;

namespace {

const AnnulusGeometry& geom21() {
  static const AnnulusGeometry geom(2.0, 1.0, SlopeRational{1, 3});
  return geom;
}

const RegimeConfig kCfg{};

}  // namespace

TEST_SUITE("counting") {

TEST_CASE("rho") {
  CHECK(rho(0.25) == 0.25);
  CHECK(rho(0.5) == 0.0);
  CHECK(rho(3.0) == 0.5);
  CHECK(rho(-0.25) == -0.25);
  for (double x : {0.1, 0.5, 0.9}) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += rho((x + k) / 3);
    CHECK(s == doctest::Approx(rho(x)).epsilon(1e-14));
  }
}

TEST_CASE("guarded floor takes the precise value near integers") {
  CHECK(guarded_floor(2.9999999999, [] { return 3.0L; }) == 3);
  CHECK(guarded_floor(3.0000000001, [] { return 2.99999999999999L; }) == 2);
  CHECK(guarded_floor(2.5, [] { return -100.0L; }) == 2);
}

TEST_CASE("uniform lattice count against 2D enumeration") {
  const AnnulusGeometry& g = geom21();
  CHECK(lattice_count_uniform(g, 2.0, 0.25) == 0);
  for (double mu : {2.5, 7.3, 10.0, 17.77, 20.0, 31.4, 40.0}) {
    for (double c : {0.0, 0.1, 0.25, 0.45}) {
      INFO("mu = " << mu << ", c = " << c);
      CHECK(lattice_count_uniform(g, mu, c) == ref::lattice_box(2.0, 1.0, mu, c));
    }
  }
  const AnnulusGeometry other(3.0, 0.7);
  for (double mu : {12.0, 25.5}) CHECK(lattice_count_uniform(other, mu, 0.25) == ref::lattice_box(3.0, 0.7, mu, 0.25));
  CHECK_THROWS_AS(lattice_count_uniform(g, 0.0, 0.25), DomainError);
  CHECK(eig_count(g, 1.5, kCfg) == 0);
  CHECK_THROWS_AS(eig_count(g, NAN, kCfg), DomainError);
  CHECK_THROWS_AS(lattice_count_uniform(g, 10.0, 0.5), DomainError);
}

TEST_CASE("columns are symmetric and counts grow with mu") {
  const AnnulusGeometry& g = geom21();
  for (long n = 0; n <= 60; ++n) CHECK(lattice_column(g, 30.0, n, 0.25) == lattice_column(g, 30.0, -n, 0.25));
  long prev_u = 0, prev_c = 0, prev_e = 0;
  for (double mu = 3.0; mu <= 60.0; mu += 0.37) {
    const long u = lattice_count_uniform(g, mu, 0.25);
    const long c0 = lattice_count_uniform(g, mu, 0.0);
    const long e = eig_count(g, mu, kCfg);
    CHECK(u >= prev_u);
    CHECK(c0 >= prev_c);
    CHECK(e >= prev_e);
    prev_u = u;
    prev_c = c0;
    prev_e = e;
  }
  long prev_v = 0;
  for (double mu = 3.0; mu <= 45.0; mu += 1.3) {
    const long v = lattice_count_variable(g, mu, kCfg);
    CHECK(v >= prev_v);
    prev_v = v;
  }
}

TEST_CASE("area convergence") {
  const AnnulusGeometry& g = geom21();
  double prev = INFINITY;
  for (double mu : {50.0, 200.0, 800.0}) {
    const double err = std::abs(lattice_count_uniform(g, mu, 0.25) / (mu * mu) - g.area());
    CHECK(err < 3.0 / std::cbrt(mu));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("band count") {
  const AnnulusGeometry& g = geom21();
  CHECK(band_count(g, 30.0) == ref::band_box(2.0, 1.0, 30.0));
  CHECK(band_count(g, 17.3) == ref::band_box(2.0, 1.0, 17.3));
  for (double mu : {100.0, 200.0, 400.0, 800.0}) {
    const double e = band_error(g, mu);
    const double n = e + mu / 4;
    CHECK(n >= 0.0);
    CHECK(n == doctest::Approx(std::round(n)).epsilon(1e-12));
    CHECK(std::abs(e) / std::pow(mu, 2.0 / 3) < 1.0);
  }
}

TEST_CASE("slanted counting of the cusp region") {
  const AnnulusGeometry& g = geom21();
  for (double mu : {10.0, 30.0, 50.0, 77.7, 100.0}) {
    for (double c : {0.0, 0.25, 0.4}) {
      INFO("mu = " << mu << ", c = " << c);
      const SlantedBreakdown b = slanted_breakdown(g, mu, c);
      CHECK(b.d2 == b.d2_columns);
      CHECK(lattice_count_slanted(g, mu, c) == lattice_count_d2_columns(g, mu, c));
      CHECK(lattice_count_split(g, mu, c) == lattice_count_uniform(g, mu, c));
      CHECK(b.triangle >= b.d2);
    }
  }
  // a second rational slope: arccos(r/R) = pi/4
  const AnnulusGeometry quarter(2.0, std::sqrt(2.0), SlopeRational{1, 4});
  for (double mu : {20.0, 60.0}) {
    CHECK(lattice_count_slanted(quarter, mu, 0.25) == lattice_count_d2_columns(quarter, mu, 0.25));
    CHECK(lattice_count_split(quarter, mu, 0.25) == lattice_count_uniform(quarter, mu, 0.25));
  }
  CHECK_THROWS_AS(lattice_count_slanted(AnnulusGeometry(2.0, 1.0), 50.0, 0.25), UnsupportedConfiguration);
}

TEST_CASE("rho sums") {
  const AnnulusGeometry& g = geom21();
  RhoSumSpec empty;
  empty.M1 = 5.0;
  empty.M2 = 4.0;
  CHECK(rho_sum(g, empty) == 0.0);
  const RhoSumSpec s = g_type_spec(g, 300.0, 0.25);
  CHECK(s.M1 == 1.0);
  CHECK(s.M2 == 300.0);
  double direct = 0.0;
  for (int m = 1; m <= 300; ++m) direct += ref::G(2, 1, m / 300.0) * 300.0 + 0.25 - std::floor(ref::G(2, 1, m / 300.0) * 300.0 + 0.25) ;
  CHECK(rho_sum(g, s) == doctest::Approx(300 * 0.5 - direct).epsilon(1e-9));
  CHECK(std::abs(rho_sum(g, s)) <= 10 * vdc_bound(g, s));
  RhoSumSpec hs;
  hs.phase = PhaseKind::H;
  hs.mu = 200.0;
  hs.c = 0.25;
  hs.M1 = 1.0;
  hs.M2 = std::floor(200.0 * g.Gr());
  CHECK(std::abs(rho_sum(g, hs)) <= 10 * vdc_bound(g, hs));
  RhoSumSpec ts = hs;
  ts.phase = PhaseKind::T;
  ts.c = 0.0;
  const SlantedRange rg = T_range(g, ts.c, ts.mu);
  ts.M1 = std::ceil(ts.mu * rg.beta);
  ts.M2 = std::floor(ts.mu * rg.gamma);
  CHECK(std::isfinite(rho_sum(g, ts)));
  CHECK(vdc_bound(g, ts) > 0.0);
}

TEST_CASE("eigenvalue count") {
  const AnnulusGeometry& g = geom21();
  CHECK(eig_count(g, 3.0, kCfg) == 0);
  // every order with a zero below 5, each n >= 1 twice
  long brute = 0;
  for (int n = 0; n <= 10; ++n) brute += (n == 0 ? 1 : 2) * static_cast<long>(ref::cross_zeros(n, 2, 1, 5.0).size());
  CHECK(eig_count(g, 5.0, kCfg) == brute);
  CHECK(eig_count(g, 5.0, kCfg, 1) == eig_count(g, 5.0, kCfg, 4));
  double prev = INFINITY;
  for (double mu : {40.0, 80.0, 160.0}) {
    const double d = std::abs(eig_count(g, mu, kCfg) / (mu * mu) - 0.75);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("variable-shift lattice") {
  const AnnulusGeometry& g = geom21();
  // all orders at most N_large with k <= K_small: every shift is 1/4
  for (double mu : {5.0, 10.0, 14.0}) CHECK(lattice_count_variable(g, mu, kCfg) == lattice_count_uniform(g, mu, 0.25));
  ScanOptions opt;
  opt.with_variable = true;
  for (double mu : {50.0, 100.0, 200.0}) {
    const CountReport rep = count_report(g, mu, kCfg, opt);
    REQUIRE(rep.n_lat_var.has_value());
    CHECK(std::abs(variable_shift_discrepancy(g, rep)) / std::pow(mu, 1.0 / 3 + 0.25) < 5.0);
  }
}

TEST_CASE("Weyl scan") {
  const AnnulusGeometry& g = geom21();
  const std::vector<double> grid = log_grid(20.0, 200.0, 9);
  REQUIRE(grid.size() == 9);
  CHECK(grid.front() == doctest::Approx(20.0));
  CHECK(grid.back() == doctest::Approx(200.0));
  const auto reps = weyl_scan(g, grid, kCfg);
  REQUIRE(reps.size() == grid.size());
  double prev = INFINITY;
  for (const CountReport& r : reps) {
    CHECK(r.weyl_remainder == weyl_remainder(g, r.mu, r.n_eig));
    CHECK(r.weyl_remainder == r.n_eig - 0.75 * r.mu * r.mu + 1.5 * r.mu);
    CHECK(std::abs(r.weyl_remainder) / std::pow(r.mu, 0.75) < 10.0);
    CHECK(r.n_lat_u == lattice_count_uniform(g, r.mu, 0.25));
    CHECK(r.band_err == band_error(g, r.mu));
    CHECK(r.wall_time_s >= 0.0);
    // |n_eig/mu^2 - 3/4| under a shrinking envelope
    const double d = std::abs(r.n_eig / (r.mu * r.mu) - 0.75);
    CHECK(d < 2.0 / r.mu);
    prev = std::min(prev, d);
  }
  const numerics::LinearFit fit = fit_exponent(reps);
  CHECK(fit.points >= 7);
  CHECK(fit.slope <= 0.75);

  std::vector<CountReport> synthetic(3);
  synthetic[0].mu = 10;
  synthetic[0].weyl_remainder = 10;
  synthetic[1].mu = 100;
  synthetic[1].weyl_remainder = 1e-12;
  synthetic[2].mu = 1000;
  synthetic[2].weyl_remainder = -1000;
  const numerics::LinearFit f = fit_exponent(synthetic);
  CHECK(f.points == 2);
  CHECK(f.slope == doctest::Approx(1.0));
}

TEST_CASE("sandwich") {
  const AnnulusGeometry& g = geom21();
  const std::vector<double> grid{50.0, 100.0};
  const SandwichResult s = sandwich_constant(g, grid, kCfg);
  REQUIRE(s.C.has_value());
  REQUIRE(s.points.size() == 2);
  for (const SandwichPoint& p : s.points) CHECK(p.lhs <= p.rhs);
  // the constant is the smallest dyadic one
  const double half = *s.C / 2;
  bool fails = false;
  for (const SandwichPoint& p : s.points) {
    const SandwichPoint q = sandwich_point(g, p.mu, p.n_eig, half);
    fails = fails || q.lhs > q.rhs;
  }
  if (*s.C > std::ldexp(1.0, -8)) CHECK(fails);
}

TEST_CASE("exponent targets") {
  CHECK(ExponentTargets::theta == doctest::Approx(0.6298).epsilon(1e-4));
  CHECK(ExponentTargets::Theta == doctest::Approx(2.2388).epsilon(1e-4));
  CHECK(ExponentTargets::fallback == doctest::Approx(2.0 / 3));
}

}  // TEST_SUITE
