#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "annulus/errors.hpp"
#include "commands.hpp"
#include "run_config.hpp"
#include "table.hpp"

namespace {

using namespace annulus;
using namespace annulus::cli;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOptions {
  CLI::Option* regime_c = nullptr;
  CLI::Option* eps = nullptr;
  CLI::Option* n_large = nullptr;
  CLI::Option* k_small = nullptr;
};

struct Parsed {
  RunConfig cfg;
  std::string slope;
  std::map<std::string, CommonOptions> options;  // per subcommand
};

CommonOptions add_common(CLI::App& sub, Parsed& p) {
  RunConfig& cfg = p.cfg;
  sub.add_option("--R", cfg.R, "Outer radius")->capture_default_str();
  sub.add_option("--r", cfg.r, "Inner radius")->capture_default_str();
  sub.add_option("--slope", p.slope, "Cusp slope a/q with arccos(r/R)/pi = a/q");
  sub.add_option("--config", cfg.config_file, "JSON file with regime overrides");
  CommonOptions o;
  o.regime_c = sub.add_option("--regime-c", cfg.regime.c, "Oscillatory split r x = (1 + c) n")
                   ->capture_default_str();
  o.eps = sub.add_option("--eps", cfg.regime.eps, "Airy band half width exponent")->capture_default_str();
  o.n_large = sub.add_option("--n-large", cfg.regime.N_large, "Largest order using the small-order rule")
                  ->capture_default_str();
  o.k_small = sub.add_option("--k-small", cfg.regime.K_small, "Largest k with tau = 1/4 at small order")
                  ->capture_default_str();
  sub.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub.add_option("--out", cfg.out, "Output file, - for standard output")->capture_default_str();
  sub.add_option("--threads", cfg.threads, "Worker threads, 0 for all cores")->capture_default_str();
  sub.add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  return o;
}

void add_mu(CLI::App& sub, RunConfig& cfg, bool many) {
  auto* opt = sub.add_option("--mu", cfg.mu, many ? "Dilation(s)" : "Dilation")->required();
  if (many) {
    opt->expected(1, CLI::detail::expected_max_vector_size);
  } else {
    opt->expected(1);
  }
}

void add_shift(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--c", cfg.c, "Lattice shift in [0, 1/2)")->capture_default_str();
}

void emit(const RunConfig& cfg, const Table& table) {
  std::ostringstream buf;
  if (cfg.format == "json") {
    write_json(buf, cfg, table);
  } else {
    write_csv(buf, cfg, table);
  }
  if (cfg.out == "-") {
    std::cout << buf.str() << std::flush;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  file << buf.str();
  if (!file) throw ConfigError("cannot write " + cfg.out);
}

int run(const RunConfig& cfg) {
  if (cfg.command == "verify") {
    if (!cfg.fixtures_dir.empty()) write_fixtures(cfg.fixtures_dir);
    const VerifyResult result = run_verify(cfg);
    emit(cfg, result.table);
    for (const std::string& id : result.failed) std::cerr << "verify failed: " << id << '\n';
    return result.failed.empty() ? kExitOk : kExitVerifyFailed;
  }
  Table table;
  if (cfg.command == "eigs") table = run_eigs(cfg);
  else if (cfg.command == "count") table = run_count(cfg);
  else if (cfg.command == "lattice") table = run_lattice(cfg);
  else if (cfg.command == "band") table = run_band(cfg);
  else if (cfg.command == "remainder-scan") table = run_remainder_scan(cfg);
  emit(cfg, table);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet eigenvalues of an annulus and the lattice counts that approximate them"};
  app.require_subcommand(1);
  Parsed p;
  RunConfig& cfg = p.cfg;

  auto* eigs = app.add_subcommand("eigs", "Zero table n,k,x,regime,tau,residual for all x <= mu");
  p.options["eigs"] = add_common(*eigs, p);
  add_mu(*eigs, cfg, false);

  auto* count = app.add_subcommand("count", "Eigenvalue and lattice counts at each mu");
  p.options["count"] = add_common(*count, p);
  add_mu(*count, cfg, true);
  add_shift(*count, cfg);
  count->add_flag("--with-variable", cfg.with_variable, "Also count the variable-shift lattice");
  count->add_flag("--timing", cfg.timing, "Fill wall_time_s (output is then not reproducible)");

  auto* lattice = app.add_subcommand("lattice", "Shifted lattice counts");
  p.options["lattice"] = add_common(*lattice, p);
  add_mu(*lattice, cfg, true);
  add_shift(*lattice, cfg);
  lattice->add_flag("--slanted", cfg.slanted, "Add the slanted-line breakdown (needs --slope)");

  auto* band = app.add_subcommand("band", "Lattice points in the quarter-width band over the cusp part");
  p.options["band"] = add_common(*band, p);
  add_mu(*band, cfg, true);

  auto* scan = app.add_subcommand("remainder-scan", "Weyl remainder on a log grid with a fitted exponent");
  p.options["remainder-scan"] = add_common(*scan, p);
  scan->add_option("--mu-min", cfg.mu_min, "Smallest mu")->capture_default_str();
  scan->add_option("--mu-max", cfg.mu_max, "Largest mu")->capture_default_str();
  scan->add_option("--points", cfg.points, "Grid size")->capture_default_str();
  add_shift(*scan, cfg);
  scan->add_flag("--with-variable", cfg.with_variable, "Also count the variable-shift lattice");
  scan->add_flag("--timing", cfg.timing, "Fill wall_time_s (output is then not reproducible)");

  auto* verify = app.add_subcommand("verify", "Run invariant suites; exit 1 if any check fails");
  p.options["verify"] = add_common(*verify, p);
  add_shift(*verify, cfg);
  verify->add_option("--suite", cfg.suites, "Suites to run (default: all)")
      ->check(CLI::IsMember(verify_suites()));
  verify->add_option("--fixtures", cfg.fixtures_dir, "Also write fixture CSVs to this directory");
  verify->add_option("--residual-stride", cfg.residual_stride, "Order stride of the residuals suite")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    const CommonOptions& o = p.options.at(cfg.command);
    if (!p.slope.empty()) cfg.slope = parse_slope(p.slope);
    apply_config_file(cfg, {o.regime_c->count() > 0, o.eps->count() > 0, o.n_large->count() > 0,
                            o.k_small->count() > 0});
    std::sort(cfg.mu.begin(), cfg.mu.end());
    cfg.mu.erase(std::unique(cfg.mu.begin(), cfg.mu.end()), cfg.mu.end());
    if (cfg.command == "verify" && cfg.suites.empty()) cfg.suites = verify_suites();
    validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "annulus: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    return run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "annulus: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedConfiguration& e) {
    std::cerr << "annulus: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "annulus: numeric range: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ConvergenceError& e) {
    std::cerr << "annulus: no convergence: " << e.what() << '\n';
    return kExitNumeric;
  }
}
