#pragma once

namespace annulus::detail {

// For w = sqrt|1 - z^2|, returns V / w^3 where V = (2/3)|zeta|^(3/2).
// Near z = 1 both V and w^3 vanish; the quotient tends to 1/3.
double zeta_core_ratio(double z);

}  // namespace annulus::detail
