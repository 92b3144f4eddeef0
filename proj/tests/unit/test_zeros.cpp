#include <cmath>
#include <numbers>
#include <vector>

#include "annulus/errors.hpp"
#include "annulus/geometry.hpp"
#include "annulus/zeros.hpp"
#include "doctest.h"
#include "reference.hpp"

using namespace annulus;
using std::numbers::pi;

namespace {

const AnnulusGeometry& geom21() {
  static const AnnulusGeometry geom(2.0, 1.0);
  return geom;
}

const RegimeConfig kCfg{};

bool sign_change_at(const AnnulusGeometry& geom, const SpectralZero& z) {
  const double d = 2e-11 * std::max(1.0, z.x);
  return cross_product_sign(geom, z.n, z.x - d) * cross_product_sign(geom, z.n, z.x + d) <= 0;
}

}  // namespace

TEST_SUITE("zeros") {

TEST_CASE("regime configuration") {
  CHECK_NOTHROW(kCfg.validate());
  CHECK(kCfg.c == 0.2);
  CHECK(kCfg.eps == 0.25);
  CHECK_THROWS_AS((RegimeConfig{1.0, 0.25, 30, 30}.validate()), DomainError);
  CHECK_THROWS_AS((RegimeConfig{0.2, 0.34, 30, 30}.validate()), DomainError);
  CHECK_THROWS_AS((RegimeConfig{0.2, 0.25, 0, 30}.validate()), DomainError);
  CHECK_THROWS_AS((RegimeConfig{0.2, 0.25, 30, 0}.validate()), DomainError);
}

TEST_CASE("cross product agrees with the direct formula") {
  const AnnulusGeometry& g = geom21();
  for (int n : {0, 3, 20, 60}) {
    for (double x : {1.0, 7.5, 33.0, 80.0}) {
      const double direct = ref::cross(n, 2.0, 1.0, x);
      const double lib = cross_product(g, n, x);
      CHECK(lib == doctest::Approx(direct).epsilon(1e-9));
      CHECK(cross_product_sign(g, n, x) == (direct > 0) - (direct < 0));
    }
  }
  // far below the turning point only the scaled form is representable
  const ScaledValue s = cross_product_scaled(g, 400, 20.0);
  CHECK(std::isfinite(s.mantissa));
  CHECK(s.mantissa != 0.0);
  CHECK_THROWS_AS(cross_product(g, 2000, 1.0), RangeError);
}

TEST_CASE("first zero of order zero") {
  const AnnulusGeometry& g = geom21();
  const auto scan = ref::sign_scan([](double x) { return ref::cross(0, 2, 1, x); }, 3.0, 3.3);
  REQUIRE(scan.size() == 1);
  const SpectralZero z = find_zero(g, 0, 1, kCfg);
  CHECK(z.x > 3.0);
  CHECK(z.x < 3.3);
  CHECK(std::abs(z.x - scan[0]) < 1e-9);
  CHECK(2 * z.x > pi * 0.75);
  CHECK(sign_change_at(g, z));
}

TEST_CASE("h_n(x_{n,k}) - k decays like 1/x") {
  const AnnulusGeometry& g = geom21();
  double worst = 0.0;
  for (int k = 1; k <= 60; ++k) {
    const SpectralZero z = find_zero(g, 0, k, kCfg);
    worst = std::max(worst, std::abs(h(g, 0, z.x) - k) * z.x);
  }
  CHECK(worst < 0.05);
}

TEST_CASE("zero counts on (0, (s + 1/2) pi/(R - r))") {
  const AnnulusGeometry& g = geom21();
  for (int n : {0, 5}) {
    for (int s : {5, 10, 15}) {
      const double X = (s + 0.5) * pi;
      CHECK(static_cast<int>(ref::cross_zeros(n, 2, 1, X).size()) == s);
      CHECK(count_zeros_up_to(g, n, X, kCfg) == s);
    }
  }
  // the count reaches s only once s is large compared with n
  for (int s : {5, 15}) {
    const double X = (s + 0.5) * pi;
    const long lib = count_zeros_up_to(g, 40, X, kCfg);
    CHECK(lib == static_cast<long>(ref::cross_zeros(40, 2, 1, X).size()));
    CHECK(lib < s);
  }
  const double X = 100.5 * pi;
  CHECK(ref::cross_zeros(40, 2, 1, X).size() == 100);
  CHECK(count_zeros_up_to(g, 40, X, kCfg) == 100);
  CHECK(count_zeros_up_to(g, 40, 200.5 * pi, kCfg) == 200);
}

TEST_CASE("brackets") {
  const AnnulusGeometry& g = geom21();
  const numerics::Interval b = bracket(g, 0, 1);
  CHECK(b.lo == doctest::Approx(0.625 * pi).epsilon(1e-12));
  CHECK(b.hi == doctest::Approx(1.125 * pi).epsilon(1e-12));
  CHECK(b.lo == doctest::Approx(1.9635).epsilon(1e-4));
  CHECK(b.hi == doctest::Approx(3.5343).epsilon(1e-4));
  double prev_hi = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const numerics::Interval iv = bracket(g, 40, k);
    CHECK(std::abs(h(g, 40, iv.lo) - (k - 0.375)) <= 1e-10 * k);
    CHECK(std::abs(h(g, 40, iv.hi) - (k + 0.125)) <= 1e-10 * k);
    CHECK(iv.lo > prev_hi);
    prev_hi = iv.hi;
  }
}

TEST_CASE("zeros_up_to against a dense sign scan") {
  const AnnulusGeometry& g = geom21();
  CHECK(zeros_up_to(g, 41, 20.0, kCfg).empty());
  CHECK(count_zeros_up_to(g, 41, 20.0, kCfg) == 0);
  for (int n : {0, 7, 25}) {
    const auto scan = ref::cross_zeros(n, 2, 1, 20.0);
    const auto lib = zeros_up_to(g, n, 20.0, kCfg);
    REQUIRE(lib.size() == scan.size());
    for (std::size_t i = 0; i < lib.size(); ++i) {
      CHECK(lib[i].k == static_cast<int>(i) + 1);
      CHECK(std::abs(lib[i].x - scan[i]) < 1e-9);
    }
  }
}

TEST_CASE("every zero is simple, ordered and above the lower bound") {
  const AnnulusGeometry& g = geom21();
  for (int n : {0, 1, 12, 31, 60, 120}) {
    const auto zs = zeros_up_to(g, n, 150.0, kCfg);
    CHECK(static_cast<long>(zs.size()) == count_zeros_up_to(g, n, 150.0, kCfg));
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const SpectralZero& z = zs[i];
      INFO("n = " << n << ", k = " << z.k);
      CHECK(2.0 * z.x > std::sqrt(double(n) * n + pi * pi * (z.k - 0.25) * (z.k - 0.25)));
      CHECK(sign_change_at(g, z));
      if (i > 0) CHECK(z.x > zs[i - 1].x);
      // exactly one sign change inside the bracket, on an 8-point subdivision
      if (!z.scan_located) {
        const numerics::Interval iv = bracket(g, n, z.k);
        int changes = 0;
        int prev = cross_product_sign(g, n, iv.lo);
        for (int j = 1; j <= 8; ++j) {
          const int cur = cross_product_sign(g, n, iv.lo + iv.width() * j / 8);
          changes += cur != prev;
          prev = cur;
        }
        CHECK(changes == 1);
      }
    }
  }
}

TEST_CASE("zeros increase with the order") {
  const AnnulusGeometry& g = geom21();
  for (int n = 0; n < 80; n += 3) {
    for (int k : {1, 4, 20}) {
      CHECK(find_zero(g, n, k, kCfg).x < find_zero(g, n + 1, k, kCfg).x);
    }
  }
}

TEST_CASE("spacing of consecutive zeros") {
  const AnnulusGeometry& g = geom21();
  const auto zs = zeros_up_to(g, 60, 200.0, kCfg);
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 1; i < zs.size(); ++i) {
    if (zs[i - 1].x <= 60.0) continue;
    const double d = zs[i].x - zs[i - 1].x;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  CHECK(lo > 2.0);
  CHECK(hi < 3.2);
}

TEST_CASE("regime classification and shifts") {
  const AnnulusGeometry& g = geom21();
  const RegimeConfig cfg;
  int airy = 0;
  for (int n : {10, 100, 250}) {
    for (const SpectralZero& z : zeros_up_to(g, n, 3.0 * n, cfg)) {
      const double rx = g.r() * z.x;
      const double band = std::pow(n, 1.0 / 3 + cfg.eps);
      switch (z.regime) {
        case Regime::small_n:
          CHECK(n <= cfg.N_large);
          CHECK(z.tau == (z.k <= cfg.K_small ? 0.25 : 0.0));
          break;
        case Regime::osc:
          CHECK(rx >= (1 + cfg.c) * n);
          CHECK(z.tau == 0.0);
          break;
        case Regime::upper_trans:
          CHECK(rx >= n + band);
          CHECK(rx < (1 + cfg.c) * n);
          CHECK(z.tau == 0.0);
          break;
        case Regime::airy_band:
          ++airy;
          CHECK(std::abs(rx - n) < band);
          REQUIRE(z.z_local.has_value());
          CHECK(z.tau == psi(*z.z_local));
          CHECK(z.tau > 0.0);
          CHECK(z.tau < 0.25);
          CHECK(std::abs(z.residual) <= std::pow(n, -2.0 / 3 + 2.5 * cfg.eps));
          break;
        case Regime::evanescent:
          CHECK(rx <= n - band);
          CHECK(z.tau == 0.25);
          break;
      }
      if (z.z_local) CHECK(*z.z_local == doctest::Approx((rx - n) / std::cbrt(n)));
      CHECK(z.residual == doctest::Approx(z.x - F(g, n, z.k - z.tau)).epsilon(1e-12));
      CHECK(z.dual_regime == z.alt_regime.has_value());
    }
  }
  CHECK(airy > 0);
}

TEST_CASE("residual sizes per regime") {
  const AnnulusGeometry& g = geom21();
  double osc = 0.0, ev = 0.0;
  for (const SpectralZero& z : zeros_up_to(g, 100, 300.0, kCfg)) {
    if (z.regime == Regime::osc) osc = std::max(osc, std::abs(z.residual) * (100 + z.k));
    if (z.regime == Regime::evanescent)
      ev = std::max(ev, std::abs(z.residual) * std::pow(z.k, 4.0 / 3) / std::cbrt(100.0));
  }
  CHECK(osc > 0.0);
  CHECK(osc < 2.0);
  CHECK(ev > 0.0);
  CHECK(ev < 0.1);
}

TEST_CASE("turning-point offset scales with the column excess") {
  // z n^(1/3) / (k - G(r) n / r) in the upper transitional regime
  const AnnulusGeometry& g = geom21();
  double lo = INFINITY, hi = 0.0;
  for (int n = 50; n <= 400; n += 25) {
    for (const SpectralZero& z : zeros_up_to(g, n, 3.0 * n, kCfg)) {
      if (z.regime != Regime::upper_trans || z.dual_regime) continue;
      const double zl = (g.r() * z.x - n) / std::cbrt(n);
      const double q = zl * std::cbrt(n) / (z.k - g.Gr() / g.r() * n);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
  }
  CHECK(lo > 1.0);
  CHECK(hi < 4.0);
}

TEST_CASE("residual report") {
  const AnnulusGeometry& g = geom21();
  ResidualOptions opt;
  opt.n_stride = 25;
  const ResidualReport rep = residual_report(g, 50, 200, kCfg, opt);
  REQUIRE_FALSE(rep.rows.empty());
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    CHECK((a.n < b.n || (a.n == b.n && a.k < b.k)));
  }
  for (const ResidualRow& row : rep.rows) {
    CHECK(row.ratio == doctest::Approx(std::abs(row.residual) / row.bound));
    CHECK(g.r() * row.x <= 2.0 * row.n + 1e-9);
  }
  for (const RegimeSummary& s : rep.per_regime) CHECK(s.max_ratio < 50.0);
}

}  // TEST_SUITE
