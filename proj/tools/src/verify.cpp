// Invariant suites behind `annulus verify`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "annulus/counting.hpp"
#include "annulus/io.hpp"
#include "annulus/oracle.hpp"
#include "annulus/specfun.hpp"
#include "commands.hpp"

namespace annulus::cli {
namespace {

struct Check {
  std::string name;
  std::string status;  // pass, fail or skip
  std::string detail;
};

using Suite = std::function<std::vector<Check>(const RunConfig&)>;

Check make(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? "pass" : "fail", std::move(detail)};
}

std::string g3(double v) { return io::format_real(v, 3); }

// Uniform in [0, 1) from the raw 53 high bits; unlike the standard
// distributions this is the same on every standard library.
class Uniform {
public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1p-53;
  }

private:
  std::mt19937_64 engine_;
};

std::vector<Check> specfun_oracle(const RunConfig& cfg) {
  Uniform u(cfg.seed);
  double worst_j = 0.0, worst_y = 0.0, worst_w = 0.0;
  for (int i = 0; i < 40; ++i) {
    const int n = static_cast<int>(u(0.0, 101.0));
    const double x = u(0.5, 300.0);
    const auto ratio = [](double lib, double ref) {
      return std::abs(lib - ref) / std::max(1e-9, 1e-12 * std::abs(ref));
    };
    worst_j = std::max(worst_j, ratio(bessel_j(n, x).value, oracle::bessel_j(n, x).value));
    worst_y = std::max(worst_y, ratio(bessel_y(n, x).value, oracle::bessel_y(n, x).value));
    // J_{n+1} Y_n - J_n Y_{n+1} = 2/(pi x), scaled by the size of the products
    const double j0 = bessel_j(n, x).value, j1 = bessel_j(n + 1, x).value;
    const double y0 = bessel_y(n, x).value, y1 = bessel_y(n + 1, x).value;
    const double scale = std::max(std::abs(j1 * y0), std::abs(j0 * y1));
    worst_w = std::max(worst_w, std::abs(j1 * y0 - j0 * y1 - 2.0 / (std::numbers::pi * x)) / scale);
  }
  return {make("j_vs_quadrature", worst_j <= 1.0, "40 seeded points, worst err/tol " + g3(worst_j)),
          make("y_vs_quadrature", worst_y <= 1.0, "40 seeded points, worst err/tol " + g3(worst_y)),
          make("wronskian", worst_w <= 1e-10, "worst relative defect " + g3(worst_w))};
}

std::vector<Check> psi_checks(const RunConfig& cfg) {
  Uniform u(cfg.seed);
  std::vector<double> zs(10000);
  for (double& z : zs) z = u(-50.0, 50.0);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  bool decreasing = true, in_range = true;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const ShiftValue v = psi_split(zs[i]);
    in_range = in_range && v.value > 0.0 && v.complement > 0.0;
    if (i > 0) decreasing = decreasing && v < psi_split(zs[i - 1]);
  }
  const double at0 = std::abs(psi(0.0) - 1.0 / 12.0);
  const double left = psi_split(-50.0).complement;
  const double right = psi(50.0);
  return {make("psi_at_zero", at0 <= 1e-12, "|psi(0) - 1/12| = " + g3(at0)),
          make("monotone", decreasing, std::to_string(zs.size()) + " seeded points in [-50, 50]"),
          make("range", in_range, "0 < psi < 1/4 on the same points"),
          make("limits", left < 1e-3 && right < 1e-3,
               "1/4 - psi(-50) = " + g3(left) + ", psi(50) = " + g3(right))};
}

std::vector<Check> regimes(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  const RegimeConfig& rc = cfg.regime;
  bool order_ok = true, tau_ok = true, small_ok = true;
  std::size_t zeros = 0;
  const auto rank = [](Regime r) {
    switch (r) {
      case Regime::evanescent: return 0;
      case Regime::airy_band: return 1;
      case Regime::upper_trans: return 2;
      case Regime::osc: return 3;
      case Regime::small_n: return -1;
    }
    return -1;
  };
  for (int n : {0, 5, rc.N_large, rc.N_large + 10, 2 * rc.N_large + 20, 4 * rc.N_large + 80}) {
    const double mu = 2.5 * std::max(n, 4) / geom.r();
    int prev = -1;
    for (const SpectralZero& z : zeros_up_to(geom, n, mu, rc)) {
      ++zeros;
      if (n <= rc.N_large) {
        small_ok = small_ok && z.regime == Regime::small_n &&
                   z.tau == (z.k > rc.K_small ? 0.0 : 0.25);
        continue;
      }
      order_ok = order_ok && rank(z.regime) >= prev;
      prev = rank(z.regime);
      const double rx = geom.r() * z.x;
      switch (z.regime) {
        case Regime::osc:
        case Regime::upper_trans: tau_ok = tau_ok && z.tau == 0.0; break;
        case Regime::evanescent: tau_ok = tau_ok && z.tau == 0.25; break;
        case Regime::airy_band:
          tau_ok = tau_ok && z.tau == psi((rx - n) / std::cbrt(static_cast<double>(n)));
          break;
        case Regime::small_n: tau_ok = false; break;
      }
    }
  }
  const std::string where = std::to_string(zeros) + " zeros over 6 orders";
  return {make("small_order_rule", small_ok, where),
          make("regime_order_in_k", order_ok, where),
          make("tau_rule", tau_ok, where)};
}

std::vector<Check> residuals(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  ResidualOptions opt;
  opt.n_stride = cfg.residual_stride;
  opt.threads = cfg.threads;
  const ResidualReport rep = residual_report(geom, 50, 400, cfg.regime, opt);
  std::vector<Check> out;
  for (const RegimeSummary& s : rep.per_regime) {
    std::ostringstream d;
    d << s.count << " zeros, max |residual|/bound " << g3(s.max_ratio) << " at n=" << s.argmax_n
      << " k=" << s.argmax_k;
    out.push_back(make(std::string("bound_") + to_string(s.regime), s.max_ratio <= 50.0, d.str()));
  }
  if (out.empty()) out.push_back({"bound", "skip", "no zeros with r x <= 2n for 50 <= n <= 400"});
  return out;
}

std::vector<Check> slanted(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  if (!geom.slope_rational()) {
    return {{"slanted_vs_columns", "skip", "no rational slope; pass --slope a/q"}};
  }
  bool d2_ok = true, split_ok = true;
  for (double mu : {30.0, 50.0, 100.0}) {
    for (double c : {0.0, 0.25}) {
      d2_ok = d2_ok && lattice_count_slanted(geom, mu, c) == lattice_count_d2_columns(geom, mu, c);
      split_ok = split_ok && lattice_count_split(geom, mu, c) == lattice_count_uniform(geom, mu, c);
    }
  }
  return {make("slanted_vs_columns", d2_ok, "mu in {30, 50, 100}, c in {0, 0.25}"),
          make("split_vs_uniform", split_ok, "mu in {30, 50, 100}, c in {0, 0.25}")};
}

std::vector<Check> vdc(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  double worst = 0.0;
  for (double mu : {100.0, 300.0, 1000.0}) {
    const RhoSumSpec spec = g_type_spec(geom, mu, cfg.c);
    worst = std::max(worst, std::abs(rho_sum(geom, spec)) / vdc_bound(geom, spec));
  }
  return {make("g_type_ratio", worst <= 10.0, "worst |sum|/bound " + g3(worst) + " at mu 100..1000")};
}

std::vector<Check> sandwich(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  const std::vector<double> grid{50.0, 100.0, 150.0, 200.0};
  const SandwichResult s = sandwich_constant(geom, grid, cfg.regime, -8, 16, cfg.threads);
  if (!s.C) return {make("dyadic_constant", false, "no C = 2^j, -8 <= j <= 16, works on mu 50..200")};
  return {make("dyadic_constant", true, "C = " + io::format_real(*s.C) + " on mu 50..200")};
}

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table{
      {"specfun-oracle", specfun_oracle}, {"psi", psi_checks},   {"regimes", regimes},
      {"residuals", residuals},           {"slanted", slanted},  {"vdc", vdc},
      {"sandwich", sandwich}};
  return table;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw ConfigError("cannot write " + path.string());
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"specfun-oracle", "psi",     "regimes", "residuals",
                                              "slanted",        "vdc",     "sandwich"};
  return names;
}

VerifyResult run_verify(const RunConfig& cfg) {
  VerifyResult result;
  result.table.columns = {"suite", "check", "status", "detail"};
  for (const std::string& name : cfg.suites) {
    for (const Check& c : suites().at(name)(cfg)) {
      // details are free text; keep the CSV unquoted
      std::string detail = c.detail;
      std::replace(detail.begin(), detail.end(), ',', ';');
      result.table.rows.push_back({name, c.name, c.status, detail});
      if (c.status == "fail") result.failed.push_back(name + "/" + c.name);
    }
  }
  return result;
}

void write_fixtures(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path base(dir);

  std::ostringstream bessel;
  bessel << "n,x,value,source\n";
  for (int n : {0, 1, 5, 10, 50, 100}) {
    for (double x : {0.5, 1.0, 5.0, 10.0, 50.0, 100.0, 300.0}) {
      io::write_csv_row(bessel, {std::to_string(n), io::format_real(x, 17),
                                 io::format_real(oracle::bessel_j(n, x).value, 17), "quadrature_j"});
      io::write_csv_row(bessel, {std::to_string(n), io::format_real(x, 17),
                                 io::format_real(oracle::bessel_y(n, x).value, 17), "quadrature_y"});
    }
  }
  write_file(base / "bessel_fixtures.csv", bessel.str());

  std::ostringstream airy;
  airy << "m,t\n";
  for (int m = 1; m <= 64; ++m) io::write_csv_row(airy, {std::to_string(m), io::format_real(airy_zero(m), 17)});
  write_file(base / "airy_zeros.csv", airy.str());

  std::ostringstream samples;
  samples << "z,psi,complement\n";
  for (int i = 0; i <= 400; ++i) {
    const double z = -50.0 + 0.25 * i;
    const ShiftValue v = psi_split(z);
    io::write_csv_row(samples, {io::format_real(z, 17), io::format_real(v.value, 17),
                                io::format_real(v.complement, 17)});
  }
  write_file(base / "psi_samples.csv", samples.str());
}

}  // namespace annulus::cli
