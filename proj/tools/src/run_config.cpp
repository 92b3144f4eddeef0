#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "annulus/errors.hpp"
#include "annulus/io.hpp"

namespace annulus::cli {

SlopeRational parse_slope(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw ConfigError("--slope expects a/q, got '" + text + "'");
  SlopeRational s;
  const char* begin = text.data();
  const auto a = std::from_chars(begin, begin + slash, s.a);
  const auto q = std::from_chars(begin + slash + 1, begin + text.size(), s.q);
  if (a.ec != std::errc{} || a.ptr != begin + slash || q.ec != std::errc{} ||
      q.ptr != begin + text.size() || s.a <= 0 || s.q <= 0) {
    throw ConfigError("--slope expects positive integers a/q, got '" + text + "'");
  }
  return s;
}

std::string slope_text(const std::optional<SlopeRational>& slope) {
  if (!slope) return "none";
  return std::to_string(slope->a) + "/" + std::to_string(slope->q);
}

void apply_config_file(RunConfig& cfg, const RegimeFlagsGiven& given) {
  if (cfg.config_file.empty()) return;
  std::ifstream in(cfg.config_file);
  if (!in) throw ConfigError("cannot open config file " + cfg.config_file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + cfg.config_file + ": " + e.what());
  }
  const nlohmann::json& reg = doc.contains("regime") ? doc.at("regime") : doc;
  try {
    if (reg.contains("c") && !given.c) cfg.regime.c = reg.at("c").get<double>();
    if (reg.contains("eps") && !given.eps) cfg.regime.eps = reg.at("eps").get<double>();
    if (reg.contains("N_large") && !given.N_large) cfg.regime.N_large = reg.at("N_large").get<int>();
    if (reg.contains("K_small") && !given.K_small) cfg.regime.K_small = reg.at("K_small").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + cfg.config_file + ": " + e.what());
  }
}

AnnulusGeometry make_geometry(const RunConfig& cfg) {
  try {
    return AnnulusGeometry(cfg.R, cfg.r, cfg.slope);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

void validate(const RunConfig& cfg) {
  const AnnulusGeometry geom = make_geometry(cfg);
  try {
    cfg.regime.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.c >= 0.0 && cfg.c < 0.5)) throw ConfigError("--c must lie in [0, 1/2)");
  for (double m : cfg.mu) {
    if (!std::isfinite(m) || !(m > 0.0)) throw ConfigError("--mu must be positive and finite");
  }
  const bool needs_mu = cfg.command == "eigs" || cfg.command == "count" ||
                        cfg.command == "lattice" || cfg.command == "band";
  if (needs_mu && cfg.mu.empty()) throw ConfigError("--mu is required");
  if (cfg.command == "eigs" && cfg.mu.size() != 1) throw ConfigError("eigs takes a single --mu");
  if (cfg.command == "count") {
    for (double m : cfg.mu) {
      if (!(m > 2.0)) throw ConfigError("count needs mu > 2");
    }
  }
  if (cfg.command == "remainder-scan") {
    if (!(cfg.mu_min > 2.0) || !(cfg.mu_max > cfg.mu_min) || !std::isfinite(cfg.mu_max)) {
      throw ConfigError("remainder-scan needs 2 < --mu-min < --mu-max");
    }
    if (cfg.points < 2) throw ConfigError("--points must be at least 2");
  }
  if (cfg.command == "lattice" && cfg.slanted && !geom.slope_rational()) {
    std::string msg =
        "lattice --slanted needs a rational cusp slope: arccos(r/R)/pi must be a rational a/q; "
        "pass it with --slope a/q";
    if (const auto s = detect_rational_slope(cfg.R, cfg.r)) msg += " (here " + slope_text(s) + ")";
    throw ConfigError(msg);
  }
  if (cfg.residual_stride < 1) throw ConfigError("--residual-stride must be at least 1");
}

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(io::format_real(v));
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["R"] = number(cfg.R);
  j["r"] = number(cfg.r);
  j["slope"] = cfg.slope ? nlohmann::json(slope_text(cfg.slope)) : nlohmann::json(nullptr);
  if (cfg.command == "remainder-scan") {
    j["mu_min"] = number(cfg.mu_min);
    j["mu_max"] = number(cfg.mu_max);
    j["points"] = cfg.points;
  } else if (!cfg.mu.empty()) {
    nlohmann::json grid = nlohmann::json::array();
    for (double m : cfg.mu) grid.push_back(number(m));
    j["mu"] = grid;
  }
  j["c"] = number(cfg.c);
  j["regime"] = {{"c", number(cfg.regime.c)},
                 {"eps", number(cfg.regime.eps)},
                 {"N_large", cfg.regime.N_large},
                 {"K_small", cfg.regime.K_small}};
  if (cfg.command == "lattice") j["slanted"] = cfg.slanted;
  if (cfg.command == "count" || cfg.command == "remainder-scan") j["with_variable"] = cfg.with_variable;
  if (cfg.command == "verify") {
    j["suites"] = cfg.suites;
    j["residual_stride"] = cfg.residual_stride;
    if (!cfg.fixtures_dir.empty()) j["fixtures"] = cfg.fixtures_dir;
  }
  j["config_file"] = cfg.config_file.empty() ? nlohmann::json(nullptr) : nlohmann::json(cfg.config_file);
  j["format"] = cfg.format;
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  return j;
}

void write_config_comment(std::ostream& out, const RunConfig& cfg) {
  out << "# annulus schema=1 command=" << cfg.command << '\n';
  out << "# config";
  const nlohmann::json echo = config_json(cfg);
  for (const auto& [key, value] : echo.items()) {
    if (value.is_object()) {
      for (const auto& [k2, v2] : value.items()) out << ' ' << key << '.' << k2 << '=' << v2.dump();
    } else {
      out << ' ' << key << '=' << value.dump();
    }
  }
  out << '\n';
}

}  // namespace annulus::cli
