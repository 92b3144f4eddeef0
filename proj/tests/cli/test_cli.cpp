// End-to-end checks of the annulus executable.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "annulus/counting.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("annulus_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + ANNULUS_CLI_PATH + "\" " + args + " 2>\"" + err.string() + "\"";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err);
  return r;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eigs rows match the eigenvalue count with multiplicity") {
    const Run r = run("eigs --R 2 --r 1 --mu 5");
    REQUIRE(r.status == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(!lines.empty());
    CHECK(lines.front() == "n,k,x,regime,tau,residual");
    const annulus::AnnulusGeometry geom(2.0, 1.0);
    CHECK(static_cast<long>(lines.size() - 1) == annulus::eig_count(geom, 5.0, annulus::RegimeConfig{}));
  }

  TEST_CASE("eigs below the ground state is an empty table") {
    const Run r = run("eigs --R 2 --r 1 --mu 0.5");
    CHECK(r.status == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines.front() == "n,k,x,regime,tau,residual");
  }

  TEST_CASE("invalid radii exit 2") {
    const Run r = run("eigs --R 1 --r 2 --mu 5");
    CHECK(r.status == 2);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
  }

  TEST_CASE("bad flags and bad regime constants exit 2") {
    CHECK(run("eigs --R 2 --r 1").status == 2);
    CHECK(run("count --mu 10 --bogus").status == 2);
    CHECK(run("count --mu 10 --eps 0.5").status == 2);
    CHECK(run("count --mu 1.5").status == 2);
    CHECK(run("lattice --mu 10 --slope 1/4").status == 2);
    CHECK(run("--help").status == 0);
  }

  TEST_CASE("slanted lattice without a slope names the rationality requirement") {
    const Run r = run("lattice --R 2 --r 1 --mu 30 --slanted");
    CHECK(r.status == 2);
    CHECK(r.err.find("rational") != std::string::npos);
    CHECK(r.err.find("--slope") != std::string::npos);
    CHECK(r.err.find("1/3") != std::string::npos);
  }

  TEST_CASE("slanted lattice with a slope agrees with the column count") {
    const Run r = run("lattice --R 2 --r 1 --slope 1/3 --mu 30 50 --c 0.25 --slanted");
    REQUIRE(r.status == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "mu,c,n_lat_u,triangle,d2_star,d2,d2_columns,d1_rows,quadrant,l12,n_lat_split");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::vector<std::string> f;
      std::istringstream in(lines[i]);
      std::string cell;
      while (std::getline(in, cell, ',')) f.push_back(cell);
      REQUIRE(f.size() == 11);
      CHECK(f[5] == f[6]);   // d2 == d2_columns
      CHECK(f[2] == f[10]);  // n_lat_u == n_lat_split
    }
  }

  TEST_CASE("remainder scan writes one row per point and a fit line") {
    const fs::path out = scratch() / "scan.csv";
    const Run r = run("remainder-scan --R 2 --r 1 --mu-min 20 --mu-max 200 --points 25 --out \"" +
                      out.string() + "\"");
    REQUIRE(r.status == 0);
    CHECK(r.out.empty());
    const std::string text = slurp(out);
    const auto lines = data_lines(text);
    REQUIRE(lines.size() == 26);
    CHECK(lines.front() == "mu,n_eig,n_lat_u,n_lat_var,band_err,weyl_remainder,wall_time_s");
    CHECK(text.find("# summary fit_intercept=") != std::string::npos);
    CHECK(text.find("fit_points=25") != std::string::npos);
  }

  TEST_CASE("identical config gives byte-identical output") {
    const std::string args = "count --R 2 --r 1 --mu 40 20 30 --with-variable --seed 7";
    const Run a = run(args);
    const Run b = run(args + " --threads 1");
    REQUIRE(a.status == 0);
    REQUIRE(b.status == 0);
    // threads is echoed, so compare everything after the config lines
    CHECK(data_lines(a.out) == data_lines(b.out));
    CHECK(run(args).out == a.out);
    const auto lines = data_lines(a.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].rfind("20,", 0) == 0);
    CHECK(lines[3].rfind("40,", 0) == 0);
    CHECK(lines[1].back() == ',');  // wall_time_s empty without --timing
  }

  TEST_CASE("every output echoes the resolved configuration") {
    const Run r = run("band --R 2 --r 1 --mu 30 --eps 0.2");
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("# annulus schema=1 command=band\n# config ", 0) == 0);
    CHECK(r.out.find("regime.eps=0.2") != std::string::npos);
    CHECK(r.out.find("regime.c=0.2") != std::string::npos);
    CHECK(r.out.find("regime.N_large=30") != std::string::npos);
    CHECK(r.out.find("R=2.0") != std::string::npos);
  }

  TEST_CASE("json output is versioned and carries the config") {
    const Run r = run("count --R 2 --r 1 --mu 20 --format json");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("schema") == 1);
    CHECK(doc.at("command") == "count");
    CHECK(doc.at("config").at("R") == 2.0);
    const auto& row = doc.at("rows").at(0);
    CHECK(row.at("n_eig").is_number_integer());
    CHECK(row.at("n_lat_var").is_null());
    CHECK(row.at("weyl_remainder").is_number_float());
  }

  TEST_CASE("flags win over the config file") {
    const fs::path conf = scratch() / "regime.json";
    std::ofstream(conf) << R"({"regime": {"eps": 0.3, "N_large": 12}})";
    const Run r = run("band --mu 30 --config \"" + conf.string() + "\" --eps 0.1");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("regime.eps=0.1") != std::string::npos);
    CHECK(r.out.find("regime.N_large=12") != std::string::npos);
    CHECK(run("band --mu 30 --config \"" + (scratch() / "missing.json").string() + "\"").status == 2);
  }

  TEST_CASE("verify psi passes and lists its checks") {
    const Run r = run("verify --suite psi");
    CHECK(r.status == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "suite,check,status,detail");
    CHECK(lines[1].rfind("psi,psi_at_zero,pass,", 0) == 0);
    CHECK(r.out.find(",fail,") == std::string::npos);
  }

  TEST_CASE("verify skips the slanted suite without a slope") {
    const Run r = run("verify --suite slanted --suite regimes");
    CHECK(r.status == 0);
    CHECK(r.out.find("slanted,slanted_vs_columns,skip,") != std::string::npos);
  }

  TEST_CASE("verify reports failures by identifier and exits nonzero") {
    // with r mu = 1 the G-type sum is a single term at the cusp, where f'' is
    // unbounded and the functional vanishes
    const Run r = run("verify --suite psi --suite vdc --R 2 --r 0.01");
    CHECK(r.status == 1);
    CHECK(r.out.find("vdc,g_type_ratio,fail,") != std::string::npos);
    CHECK(r.err.find("vdc/g_type_ratio") != std::string::npos);
    CHECK(r.err.find("psi/") == std::string::npos);
    const Run bad = run("verify --suite unknown");
    CHECK(bad.status == 2);
  }

  TEST_CASE("fixtures are written with 17 significant digits") {
    const fs::path dir = scratch() / "fixtures";
    const Run r = run("verify --suite psi --fixtures \"" + dir.string() + "\"");
    REQUIRE(r.status == 0);
    const std::string bessel = slurp(dir / "bessel_fixtures.csv");
    CHECK(bessel.rfind("n,x,value,source\n", 0) == 0);
    CHECK(bessel.find("0,1,0.76519768655796",  0) != std::string::npos);
    CHECK(slurp(dir / "airy_zeros.csv").find("1,2.3381074104597") != std::string::npos);
    CHECK(slurp(dir / "psi_samples.csv").rfind("z,psi,complement\n", 0) == 0);
  }
}
