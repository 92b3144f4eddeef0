#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "annulus/geometry.hpp"
#include "annulus/numerics.hpp"

// Positive zeros x_{n,k} of the Bessel cross product
//   f_n(x) = J_n(Rx) Y_n(rx) - J_n(rx) Y_n(Rx),
// their regime classification and the lattice shift tau_{n,k}.

namespace annulus {

struct RegimeConfig {
  double c = 0.2;     // oscillatory / upper transitional split at r x = (1 + c) n
  double eps = 0.25;  // Airy band half width n^(1/3 + eps)
  int N_large = 30;   // orders n <= N_large use the small-order rules
  int K_small = 30;   // ... and within those, k <= K_small takes tau = 1/4

  /// Throws DomainError unless c in (0, 1), eps in (0, 1/3), thresholds >= 1.
  void validate() const;
};

enum class Regime { osc, upper_trans, airy_band, evanescent, small_n };

const char* to_string(Regime regime);
std::optional<Regime> regime_from_string(std::string_view name);

struct SpectralZero {
  int n = 0;
  int k = 1;
  double x = 0.0;
  Regime regime = Regime::small_n;
  std::optional<double> z_local;  // r x = n + z n^(1/3), near the turning point
  double tau = 0.25;
  double residual = 0.0;          // x - F(n, k - tau)
  bool scan_located = false;      // found by stepping rather than from its bracket
  bool bracket_failed = false;    // the bracket sign test failed for this zero
  bool dual_regime = false;       // r x within 1% of a regime threshold
  std::optional<Regime> alt_regime;  // the neighbouring regime when dual
};

/// f_n(x) = m * 2^exp2, kept apart because f_n itself over/underflows when
/// r x is far below n.
struct ScaledValue {
  double mantissa = 0.0;
  int exp2 = 0;
  [[nodiscard]] double value() const;
};

ScaledValue cross_product_scaled(const AnnulusGeometry& geom, int n, double x);
/// Throws RangeError when f_n(x) is not representable.
double cross_product(const AnnulusGeometry& geom, int n, double x);
/// -1, 0 or +1.
int cross_product_sign(const AnnulusGeometry& geom, int n, double x);

/// (a_k, b_k) with h_n(a_k) = k - 3/8 and h_n(b_k) = k + 1/8.
numerics::Interval bracket(const AnnulusGeometry& geom, int n, int k);

/// Regime, shift and residual for a zero already located at x.
SpectralZero classify(const AnnulusGeometry& geom, int n, int k, double x,
                      const RegimeConfig& cfg);

/// The k-th positive zero of f_n, to 1e-11 max(1, x).
SpectralZero find_zero(const AnnulusGeometry& geom, int n, int k, const RegimeConfig& cfg);

/// All zeros x_{n,k} <= mu in increasing k. Empty when n > R mu.
std::vector<SpectralZero> zeros_up_to(const AnnulusGeometry& geom, int n, double mu,
                                      const RegimeConfig& cfg);

/// Number of zeros x_{n,k} <= mu. For n > N_large this costs a handful of
/// evaluations of f_n near mu; otherwise it enumerates.
long count_zeros_up_to(const AnnulusGeometry& geom, int n, double mu, const RegimeConfig& cfg);

/// Size of the residual x - F(n, k - tau) expected in each regime, without
/// its constant: 1/(n+k), n^(1/2)(k - G(r)n/r)^(-3/2), n^(-2/3+2.5eps),
/// n^(1/3)k^(-4/3); small orders use 1/(n+k).
double residual_bound(const AnnulusGeometry& geom, int n, int k, Regime regime,
                      const RegimeConfig& cfg);
/// Same, taking the larger of the two bounds for dual-regime zeros.
double residual_bound(const AnnulusGeometry& geom, const SpectralZero& zero,
                      const RegimeConfig& cfg);

struct ResidualRow {
  Regime regime = Regime::osc;
  int n = 0;
  int k = 0;
  double x = 0.0;
  double residual = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  // |residual| / bound
  bool dual_regime = false;
};

struct RegimeSummary {
  Regime regime = Regime::osc;
  std::size_t count = 0;
  double max_ratio = 0.0;
  int argmax_n = 0;
  int argmax_k = 0;
};

struct ResidualReport {
  std::vector<ResidualRow> rows;  // ordered by (n, k)
  std::vector<RegimeSummary> per_regime;
};

struct ResidualOptions {
  int n_stride = 1;
  double x_factor = 2.0;  // zeros with r x <= x_factor * n
  unsigned threads = 0;
};

ResidualReport residual_report(const AnnulusGeometry& geom, int n_min, int n_max,
                               const RegimeConfig& cfg, const ResidualOptions& options = {});

/// Header n,k,x,regime,tau,residual; reals with 15 significant digits.
void write_zero_csv(std::ostream& out, std::span<const SpectralZero> zeros);

}  // namespace annulus
