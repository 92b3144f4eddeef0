#pragma once

// Bessel functions of integer order, Airy functions, the Olver variable
// zeta(z) and the leading-order uniform and transitional approximations.
// Every evaluator returns a value together with an estimate of its
// absolute error.

namespace annulus {

struct EvalResult {
  double value = 0.0;
  double abs_err_est = 0.0;
};

enum class ZetaRegion { oscillatory, turning, evanescent };

const char* to_string(ZetaRegion region);

struct ZetaBranch {
  double z = 1.0;
  double zeta = 0.0;
  ZetaRegion branch = ZetaRegion::turning;
};

/// J_n(x) for 0 <= n <= 1e6, 0 < x <= 1e7.
EvalResult bessel_j(int n, double x);

/// Y_n(x), same ranges. Throws RangeError when |Y_n(x)| overflows.
EvalResult bessel_y(int n, double x);

/// J, Y and their x-derivatives from one evaluation.
struct BesselJY {
  double j = 0.0;
  double jp = 0.0;
  double y = 0.0;
  double yp = 0.0;
  double j_err = 0.0;
  double y_err = 0.0;
};

BesselJY bessel_jy(int n, double x);

/// J and Y with a shared binary exponent kept apart, so that products
/// J(a)Y(b) of an underflowing J and an overflowing Y stay representable:
///   J_n(x) = j * 2^(-exp2),  Y_n(x) = y * 2^(exp2).
struct ScaledJY {
  double j = 0.0;
  double y = 0.0;
  int exp2 = 0;
  double j_rel_err = 0.0;  // error of j relative to the local envelope
};

ScaledJY bessel_jy_scaled(int n, double x);

struct AiryResult {
  EvalResult ai;
  EvalResult bi;
  EvalResult aip;
  EvalResult bip;
};

/// Ai, Bi, Ai', Bi' for |x| <= 1e4. Bi overflows near x = 104.8;
/// beyond that a RangeError is thrown.
AiryResult airy(double x);

/// Olver's variable for the ratio argument z > 0, z <= 1e3.
ZetaBranch zeta_of_z(double z);

/// (4 zeta / (1 - z^2))^(1/4), continuous through z = 1 where it equals 2^(1/3).
double olver_prefactor(double z);

/// Leading uniform approximations of J_n(nz) and Y_n(nz); n >= 30,
/// 0.1 <= z <= 10.
EvalResult olver_jn(int n, double z);
EvalResult olver_yn(int n, double z);

/// Width exponent used by the transitional evaluators: |w| <= n^kTransitionalEps.
inline constexpr double kTransitionalEps = 0.25;

/// Approximations of J_n(n + w n^(1/3)) and Y_n(n + w n^(1/3)) by
/// +-2^(1/3) n^(-1/3) Ai/Bi(-2^(1/3) w); n >= 30, |w| <= n^0.25.
EvalResult transitional_jn(int n, double w);
EvalResult transitional_yn(int n, double w);

}  // namespace annulus
