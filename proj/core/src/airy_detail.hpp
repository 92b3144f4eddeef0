#pragma once

// Pieces of the Airy evaluation that the shift function needs directly,
// without forming Ai and Bi (whose ratio or product would under/overflow).

namespace annulus::detail {

// Oscillatory side, argument -x with x >= 8:
//   Ai(-x) = pi^-1/2 x^-1/4 (sin(a) P - cos(a) Q)
//   Bi(-x) = pi^-1/2 x^-1/4 (cos(a) P + sin(a) Q),   a = xi + pi/4
// and the same with (Pv, Qv) for the derivatives.
struct AiryPQ {
  double xi = 0.0;
  double p = 1.0;
  double p_minus_one = 0.0;  // P - 1, summed without the leading 1
  double q = 0.0;
  double pv = 1.0;
  double qv = 0.0;
  double tail = 0.0;  // magnitude of the last term used
};

inline constexpr double kAiryAsymptoticSwitch = 8.0;

AiryPQ airy_pq(double x);

// Growing side, argument x >= 0: log Bi(x) and Ai(x)/Bi(x), plus
// log(Ai^2 + Bi^2) computed without overflow.
struct AiryGrowth {
  double log_bi = 0.0;
  double ratio = 0.0;
  double log_modulus_sq = 0.0;
};

AiryGrowth airy_growth(double x);

}  // namespace annulus::detail
