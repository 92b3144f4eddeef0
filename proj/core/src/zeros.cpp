#include "annulus/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "annulus/errors.hpp"
#include "annulus/io.hpp"
#include "annulus/specfun.hpp"

namespace annulus {
namespace {

constexpr double kStepH = 1.0 / 16.0;  // scan step measured in h_n
constexpr int kMaxScanSteps = 1 << 22;

double zero_tol(double x) { return 1e-11 * std::max(1.0, x); }

// Sign of f_n on (x_{k-1}, x_k): f_n(0+) < 0 and every zero is simple.
int expected_sign_before(int k) { return (k % 2 == 0) ? 1 : -1; }

double scan_start(const AnnulusGeometry& geom, int n) {
  return n == 0 ? 1e-6 / geom.R() : n / geom.R();
}

struct Located {
  double x = 0.0;
  double hi = 0.0;  // right end of the final bracket; f_n has the post-zero sign there
  bool scan = false;
  bool bracket_failed = false;
};

Located refine(const AnnulusGeometry& geom, int n, double lo, double f_lo, double hi,
               double f_hi) {
  auto f = [&](double x) { return cross_product_scaled(geom, n, x).mantissa; };
  const numerics::Interval iv = numerics::bisect(f, lo, f_lo, hi, f_hi, zero_tol(hi));
  Located out;
  out.x = iv.mid();
  out.hi = iv.hi;
  return out;
}

// Tries the bracket of zero k; requires its left end to lie past `after`.
std::optional<Located> from_bracket(const AnnulusGeometry& geom, int n, int k, double after) {
  const numerics::Interval br = bracket(geom, n, k);
  if (!(br.lo > after)) return std::nullopt;
  const double fa = cross_product_scaled(geom, n, br.lo).mantissa;
  const double fb = cross_product_scaled(geom, n, br.hi).mantissa;
  const int want = expected_sign_before(k);
  const auto sgn = [](double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  if (sgn(fa) != want || sgn(fb) != -want) return std::nullopt;
  return refine(geom, n, br.lo, fa, br.hi, fb);
}

// Steps right from `start` (where f_n has the sign preceding zero k) until
// the sign flips, in increments of 1/16 in h_n.
Located from_scan(const AnnulusGeometry& geom, int n, int k, double start) {
  const int want = expected_sign_before(k);
  double x = start;
  double fx = cross_product_scaled(geom, n, x).mantissa;
  double hx = h(geom, n, x);
  for (int step = 0; step < kMaxScanSteps; ++step) {
    const double hn = hx + kStepH;
    const double xn = h_inverse(geom, n, hn);
    const double fn = cross_product_scaled(geom, n, xn).mantissa;
    if (fn == 0.0 || (fn > 0 ? 1 : -1) != want) {
      Located out = fn == 0.0 ? Located{xn, xn} : refine(geom, n, x, fx, xn, fn);
      out.scan = true;
      return out;
    }
    x = xn;
    fx = fn;
    hx = hn;
  }
  throw ConvergenceError("zero scan for n = " + std::to_string(n) + ", k = " +
                         std::to_string(k) + " did not find a sign change");
}

// Walks the zeros of one order in increasing k.
class ZeroWalker {
public:
  ZeroWalker(const AnnulusGeometry& geom, int n, const RegimeConfig& cfg)
      : geom_(geom), n_(n), cfg_(cfg), after_(scan_start(geom, n)) {}

  int next_k() const { return k_ + 1; }

  /// Locates the next zero; when `stop_above` is given and the zero is known
  /// to lie above it without locating it, returns nullopt.
  std::optional<Located> next(std::optional<double> stop_above = std::nullopt) {
    const int k = k_ + 1;
    const bool small_path = n_ <= cfg_.N_large && k <= cfg_.K_small;
    std::optional<Located> got;
    bool failed = false;
    if (!small_path) {
      if (stop_above) {
        const numerics::Interval br = bracket(geom_, n_, k);
        if (br.lo > *stop_above && br.lo > after_ &&
            cross_product_sign(geom_, n_, *stop_above) == expected_sign_before(k)) {
          return std::nullopt;
        }
      }
      got = from_bracket(geom_, n_, k, after_);
      failed = !got.has_value();
    }
    if (!got) got = from_scan(geom_, n_, k, after_);
    got->bracket_failed = failed;
    k_ = k;
    after_ = std::max(got->hi, got->x);
    if (!(after_ > got->x)) after_ = std::nextafter(got->x, INFINITY);
    return got;
  }

private:
  const AnnulusGeometry& geom_;
  int n_;
  const RegimeConfig& cfg_;
  int k_ = 0;
  double after_;
};

SpectralZero make_zero(const AnnulusGeometry& geom, int n, int k, const Located& loc,
                       const RegimeConfig& cfg) {
  SpectralZero z = classify(geom, n, k, loc.x, cfg);
  z.scan_located = loc.scan;
  z.bracket_failed = loc.bracket_failed;
  return z;
}

void check_order(int n) {
  if (n < 0) throw DomainError("order n must be non-negative");
}

}  // namespace

void RegimeConfig::validate() const {
  if (!(c > 0.0 && c < 1.0)) throw DomainError("regime constant c must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) throw DomainError("regime eps must lie in (0, 1/3)");
  if (N_large < 1 || K_small < 1) throw DomainError("regime thresholds must be >= 1");
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::osc: return "osc";
    case Regime::upper_trans: return "upper_trans";
    case Regime::airy_band: return "airy_band";
    case Regime::evanescent: return "evanescent";
    case Regime::small_n: return "small_n";
  }
  return "?";
}

std::optional<Regime> regime_from_string(std::string_view name) {
  for (Regime r : {Regime::osc, Regime::upper_trans, Regime::airy_band, Regime::evanescent,
                   Regime::small_n}) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

double ScaledValue::value() const {
  const double v = std::ldexp(mantissa, exp2);
  if (!std::isfinite(v)) throw RangeError("cross product overflows a double");
  return v;
}

ScaledValue cross_product_scaled(const AnnulusGeometry& geom, int n, double x) {
  check_order(n);
  if (!(x > 0.0)) throw DomainError("cross product: x must be positive");
  const ScaledJY outer = bessel_jy_scaled(n, geom.R() * x);
  const ScaledJY inner = bessel_jy_scaled(n, geom.r() * x);
  // J(Rx)Y(rx) = jo yi 2^d,  J(rx)Y(Rx) = ji yo 2^-d
  const int d = inner.exp2 - outer.exp2;
  const int big = std::abs(d);
  ScaledValue out;
  out.mantissa = std::ldexp(outer.j * inner.y, d - big) - std::ldexp(inner.j * outer.y, -d - big);
  out.exp2 = big;
  return out;
}

double cross_product(const AnnulusGeometry& geom, int n, double x) {
  return cross_product_scaled(geom, n, x).value();
}

int cross_product_sign(const AnnulusGeometry& geom, int n, double x) {
  const double m = cross_product_scaled(geom, n, x).mantissa;
  return m > 0 ? 1 : (m < 0 ? -1 : 0);
}

numerics::Interval bracket(const AnnulusGeometry& geom, int n, int k) {
  check_order(n);
  if (k < 1) throw DomainError("zero index k must be >= 1");
  return {h_inverse(geom, n, k - 0.375), h_inverse(geom, n, k + 0.125)};
}

SpectralZero classify(const AnnulusGeometry& geom, int n, int k, double x,
                      const RegimeConfig& cfg) {
  SpectralZero z;
  z.n = n;
  z.k = k;
  z.x = x;
  const double rx = geom.r() * x;
  if (n >= 1) {
    const double width = std::pow(static_cast<double>(n), 1.0 / 3.0 + cfg.eps);
    if (std::abs(rx - n) < 2.0 * width) z.z_local = (rx - n) / std::cbrt(static_cast<double>(n));
  }
  if (n <= cfg.N_large) {
    z.regime = Regime::small_n;
    z.tau = k > cfg.K_small ? 0.0 : 0.25;
  } else {
    const double nn = n;
    const double width = std::pow(nn, 1.0 / 3.0 + cfg.eps);
    const double t_osc = (1.0 + cfg.c) * nn;
    const double t_up = nn + width;
    const double t_low = nn - width;
    if (rx >= t_osc) {
      z.regime = Regime::osc;
    } else if (rx >= t_up) {
      z.regime = Regime::upper_trans;
    } else if (rx > t_low) {
      z.regime = Regime::airy_band;
    } else {
      z.regime = Regime::evanescent;
    }
    // thresholds in increasing order with the regimes on either side
    struct Edge {
      double at;
      Regime below;
      Regime above;
    };
    const std::array<Edge, 3> edges{{{t_low, Regime::evanescent, Regime::airy_band},
                                     {t_up, Regime::airy_band, Regime::upper_trans},
                                     {t_osc, Regime::upper_trans, Regime::osc}}};
    for (const Edge& e : edges) {
      if (e.at > 0.0 && std::abs(rx - e.at) <= 0.01 * e.at) {
        const Regime other = z.regime == e.below ? e.above : e.below;
        if (other != z.regime && (z.regime == e.below || z.regime == e.above)) {
          z.dual_regime = true;
          z.alt_regime = other;
          break;
        }
      }
    }
    switch (z.regime) {
      case Regime::osc:
      case Regime::upper_trans: z.tau = 0.0; break;
      case Regime::evanescent: z.tau = 0.25; break;
      case Regime::airy_band: z.tau = psi((rx - nn) / std::cbrt(nn)); break;
      case Regime::small_n: break;
    }
  }
  z.residual = x - F(geom, n, k - z.tau);
  return z;
}

SpectralZero find_zero(const AnnulusGeometry& geom, int n, int k, const RegimeConfig& cfg) {
  check_order(n);
  if (k < 1) throw DomainError("zero index k must be >= 1");
  const bool small_path = n <= cfg.N_large && k <= cfg.K_small;
  if (!small_path) {
    // Zero k - 1 lies below a_k unless the brackets overlap, which they do not.
    if (auto got = from_bracket(geom, n, k, scan_start(geom, n) * (1.0 - 1e-15))) {
      return make_zero(geom, n, k, *got, cfg);
    }
  }
  ZeroWalker walker(geom, n, cfg);
  Located loc;
  while (walker.next_k() <= k) loc = *walker.next();
  return make_zero(geom, n, k, loc, cfg);
}

std::vector<SpectralZero> zeros_up_to(const AnnulusGeometry& geom, int n, double mu,
                                      const RegimeConfig& cfg) {
  check_order(n);
  std::vector<SpectralZero> out;
  if (!(mu > 0.0) || n > geom.R() * mu) return out;
  const int sign_mu = cross_product_sign(geom, n, mu);
  ZeroWalker walker(geom, n, cfg);
  for (;;) {
    const int k = walker.next_k();
    const std::optional<Located> loc = walker.next(mu);
    if (!loc || loc->x > mu) break;
    out.push_back(make_zero(geom, n, k, *loc, cfg));
  }
  // Between x_K and x_{K+1} the sign is that preceding zero K + 1.
  const int count = static_cast<int>(out.size());
  if (sign_mu != 0 && sign_mu != expected_sign_before(count + 1)) {
    throw ConvergenceError("zero enumeration for n = " + std::to_string(n) +
                           " disagrees with the sign of f_n at mu");
  }
  return out;
}

long count_zeros_up_to(const AnnulusGeometry& geom, int n, double mu, const RegimeConfig& cfg) {
  check_order(n);
  if (!(mu > 0.0) || n > geom.R() * mu) return 0;
  if (n <= cfg.N_large) return static_cast<long>(zeros_up_to(geom, n, mu, cfg).size());

  // Zero k is below mu once b_k <= mu and above it once a_k > mu, which
  // leaves at most one undecided index; the sign of f_n at mu settles it.
  const double hm = h(geom, n, mu);
  const long sure = std::max(0L, static_cast<long>(std::floor(hm - 0.125)));
  long count = sure;
  const long cand = sure + 1;
  const int s = cross_product_sign(geom, n, mu);
  if (cand - 0.375 <= hm && hm < cand + 0.125) {
    if (s == 0 || s == -expected_sign_before(static_cast<int>(cand))) count = cand;
  }
  const auto bracket_ok = [&](long k) {
    if (k < 1) return true;
    const numerics::Interval br = bracket(geom, n, static_cast<int>(k));
    return cross_product_sign(geom, n, br.lo) == expected_sign_before(static_cast<int>(k)) &&
           cross_product_sign(geom, n, br.hi) == -expected_sign_before(static_cast<int>(k));
  };
  const bool parity_ok = s == 0 || s == expected_sign_before(static_cast<int>(count + 1));
  if (parity_ok && bracket_ok(count) && bracket_ok(count + 1)) return count;
  return static_cast<long>(zeros_up_to(geom, n, mu, cfg).size());
}

double residual_bound(const AnnulusGeometry& geom, int n, int k, Regime regime,
                      const RegimeConfig& cfg) {
  const double nn = n;
  const double kk = k;
  switch (regime) {
    case Regime::osc:
    case Regime::small_n: return 1.0 / (nn + kk);
    case Regime::upper_trans: {
      const double gap = std::max(1.0, kk - geom.Gr() / geom.r() * nn);
      return std::sqrt(nn) * std::pow(gap, -1.5);
    }
    case Regime::airy_band: return std::pow(nn, -2.0 / 3.0 + 2.5 * cfg.eps);
    case Regime::evanescent: return std::cbrt(nn) * std::pow(kk, -4.0 / 3.0);
  }
  return 0.0;
}

double residual_bound(const AnnulusGeometry& geom, const SpectralZero& zero,
                      const RegimeConfig& cfg) {
  double b = residual_bound(geom, zero.n, zero.k, zero.regime, cfg);
  if (zero.dual_regime && zero.alt_regime) {
    b = std::max(b, residual_bound(geom, zero.n, zero.k, *zero.alt_regime, cfg));
  }
  return b;
}

ResidualReport residual_report(const AnnulusGeometry& geom, int n_min, int n_max,
                               const RegimeConfig& cfg, const ResidualOptions& options) {
  cfg.validate();
  if (n_min < 0 || n_max < n_min || options.n_stride < 1 || !(options.x_factor > 1.0)) {
    throw DomainError("residual_report: need 0 <= n_min <= n_max, stride >= 1, x_factor > 1");
  }
  std::vector<int> orders;
  for (int n = n_min; n <= n_max; n += options.n_stride) orders.push_back(n);
  std::vector<std::vector<ResidualRow>> per_order(orders.size());
  numerics::parallel_for(orders.size(), options.threads, [&](std::size_t i) {
    const int n = orders[i];
    const double x_max = options.x_factor * std::max(1, n) / geom.r();
    for (const SpectralZero& z : zeros_up_to(geom, n, x_max, cfg)) {
      ResidualRow row;
      row.regime = z.regime;
      row.n = z.n;
      row.k = z.k;
      row.x = z.x;
      row.residual = z.residual;
      row.bound = residual_bound(geom, z, cfg);
      row.ratio = std::abs(z.residual) / row.bound;
      row.dual_regime = z.dual_regime;
      per_order[i].push_back(row);
    }
  });
  ResidualReport report;
  for (auto& rows : per_order) {
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  for (Regime reg : {Regime::osc, Regime::upper_trans, Regime::airy_band, Regime::evanescent,
                     Regime::small_n}) {
    RegimeSummary s;
    s.regime = reg;
    for (const ResidualRow& row : report.rows) {
      if (row.regime != reg) continue;
      ++s.count;
      if (row.ratio > s.max_ratio) {
        s.max_ratio = row.ratio;
        s.argmax_n = row.n;
        s.argmax_k = row.k;
      }
    }
    if (s.count) report.per_regime.push_back(s);
  }
  return report;
}

void write_zero_csv(std::ostream& out, std::span<const SpectralZero> zeros) {
  out << "n,k,x,regime,tau,residual\n";
  for (const SpectralZero& z : zeros) {
    io::write_csv_row(out, {std::to_string(z.n), std::to_string(z.k), io::format_real(z.x),
                            to_string(z.regime), io::format_real(z.tau),
                            io::format_real(z.residual)});
  }
}

}  // namespace annulus
