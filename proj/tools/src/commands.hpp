#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"
#include "table.hpp"

namespace annulus::cli {

Table run_eigs(const RunConfig& cfg);
Table run_count(const RunConfig& cfg);
Table run_lattice(const RunConfig& cfg);
Table run_band(const RunConfig& cfg);
Table run_remainder_scan(const RunConfig& cfg);

struct VerifyResult {
  Table table;
  std::vector<std::string> failed;  // "suite/check" of every failing check
};

/// Suites a bare `verify` runs.
const std::vector<std::string>& verify_suites();
VerifyResult run_verify(const RunConfig& cfg);

/// bessel_fixtures.csv, airy_zeros.csv and psi_samples.csv in `dir`.
void write_fixtures(const std::string& dir);

}  // namespace annulus::cli
