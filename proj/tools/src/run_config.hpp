#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "annulus/geometry.hpp"
#include "annulus/zeros.hpp"
#include "json.hpp"

namespace annulus::cli {

/// Invalid command-line or config-file input; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double R = 2.0;
  double r = 1.0;
  std::optional<SlopeRational> slope;
  std::vector<double> mu;  // single value or grid, sorted ascending
  double mu_min = 20.0;
  double mu_max = 200.0;
  int points = 25;
  double c = 0.25;
  RegimeConfig regime;
  bool slanted = false;
  bool with_variable = false;
  bool timing = false;
  std::vector<std::string> suites;
  std::string fixtures_dir;
  int residual_stride = 10;
  std::string config_file;
  std::string out = "-";
  std::string format = "csv";
  unsigned threads = 0;
  std::uint64_t seed = 1;
};

/// "a/q" with positive integers.
SlopeRational parse_slope(const std::string& text);
std::string slope_text(const std::optional<SlopeRational>& slope);

/// Regime overrides from a JSON file, applied where `keep` says the flag
/// was not given. Recognised keys: c, eps, N_large, K_small, either at top
/// level or under "regime".
struct RegimeFlagsGiven {
  bool c = false;
  bool eps = false;
  bool N_large = false;
  bool K_small = false;
};
void apply_config_file(RunConfig& cfg, const RegimeFlagsGiven& given);

/// The annulus described by the config; throws ConfigError.
AnnulusGeometry make_geometry(const RunConfig& cfg);

/// Checks geometry, regime constants and the command's numeric inputs.
void validate(const RunConfig& cfg);

/// Number with 15 significant digits, or null when not finite.
nlohmann::json number(double v);

nlohmann::json config_json(const RunConfig& cfg);
/// "# key=value ..." lines that open every CSV output.
void write_config_comment(std::ostream& out, const RunConfig& cfg);

}  // namespace annulus::cli
