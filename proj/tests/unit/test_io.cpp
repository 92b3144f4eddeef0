#include <cmath>
#include <sstream>

#include "annulus/io.hpp"
#include "annulus/zeros.hpp"
#include "doctest.h"

using namespace annulus;

TEST_SUITE("io") {

TEST_CASE("format_real") {
  CHECK(io::format_real(0.1) == "0.1");
  CHECK(io::format_real(1.0 / 3.0) == "0.333333333333333");
  CHECK(io::format_real(1.0 / 3.0, 17) == "0.33333333333333331");
  CHECK(io::format_real(2.0) == "2");
  CHECK(io::format_real(-1.5e-300) == "-1.5e-300");
  CHECK(io::format_real(NAN) == "nan");
  CHECK(io::format_real(-INFINITY) == "-inf");
}

TEST_CASE("csv rows round trip") {
  std::ostringstream out;
  io::write_csv_row(out, {"a", "1", "", "2.5"});
  CHECK(out.str() == "a,1,,2.5\n");
  const auto f = io::split_csv_line("a,1,,2.5");
  REQUIRE(f.size() == 4);
  CHECK(f[2].empty());
  CHECK(f[3] == "2.5");
}

TEST_CASE("zero table layout") {
  SpectralZero z;
  z.n = 3;
  z.k = 2;
  z.x = 1.0 / 3.0;
  z.regime = Regime::small_n;
  z.tau = 0.25;
  z.residual = -1e-3;
  std::ostringstream out;
  const SpectralZero zs[] = {z};
  write_zero_csv(out, zs);
  CHECK(out.str() == "n,k,x,regime,tau,residual\n3,2,0.333333333333333,small_n,0.25,-0.001\n");
}

TEST_CASE("regime names") {
  for (Regime r : {Regime::osc, Regime::upper_trans, Regime::airy_band, Regime::evanescent,
                   Regime::small_n}) {
    CHECK(regime_from_string(to_string(r)) == r);
  }
  CHECK_FALSE(regime_from_string("bogus").has_value());
}

}  // TEST_SUITE
