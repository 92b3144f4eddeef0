#pragma once

#include "annulus/specfun.hpp"

// Reference values of J_n and Y_n from their integral representations,
//   J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt
//   Y_n(x) = (1/pi) int_0^pi sin(x sin t - n t) dt
//            - (1/pi) int_0^inf (e^(n t) + (-1)^n e^(-n t)) e^(-x sinh t) dt,
// by adaptive Gauss-Kronrod quadrature. Slow; meant for cross-checks.

namespace annulus::oracle {

EvalResult bessel_j(int n, double x);
EvalResult bessel_y(int n, double x);

}  // namespace annulus::oracle
