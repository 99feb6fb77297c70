#include <cmath>

#include "doctest.h"
#include "randkit/error.hpp"
#include "randkit/special.hpp"

using namespace randkit;

namespace {

// Relative check that stays meaningful for values near zero (doctest's
// Approx mixes in an absolute term that would pass anything < epsilon).
bool rel_close(double got, double want, double tol) {
  if (want == 0.0) return got == 0.0;
  return std::fabs(got / want - 1.0) <= tol;
}

}  // namespace

// Reference values: mpmath 1.3, 50 decimal digits, rounded to 17 significant.
TEST_CASE("erfc against high-precision references") {
  CHECK(sf::erfc(0.0) == 1.0);
  CHECK(rel_close(sf::erfc(0.5), 0.47950012218695346, 1e-12));
  CHECK(rel_close(sf::erfc(1.0), 0.15729920705028513, 1e-12));
  CHECK(rel_close(sf::erfc(2.0), 0.0046777349810472658, 1e-12));
  CHECK(rel_close(sf::erfc(3.5), 7.4309837234141275e-7, 1e-12));
  CHECK(rel_close(sf::erfc(10.0), 2.0884875837625448e-45, 1e-12));
  // deep tail, far below double epsilon in absolute terms
  CHECK(rel_close(sf::erfc(26.0), 5.6631924088561428e-296, 1e-11));
  // negative arguments via the reflection erfc(-x) = 2 - erfc(x)
  CHECK(rel_close(sf::erfc(-0.5), 1.5204998778130465, 1e-13));
  CHECK(rel_close(sf::erfc(-2.0), 1.9953222650189527, 1e-13));
  CHECK(rel_close(sf::erfc(-5.5), 1.9999999999999926, 1e-13));
  CHECK(std::isnan(sf::erfc(std::nan(""))));
}

TEST_CASE("regularized incomplete gamma against references") {
  // series branch (x < a+1)
  CHECK(rel_close(sf::gamma_p(0.5, 1.0), 0.84270079294971487, 1e-12));
  CHECK(rel_close(sf::gamma_p(3.0, 0.5), 0.014387677966970687, 1e-12));
  CHECK(rel_close(sf::gamma_p(7.5, 7.5), 0.54858278877427476, 1e-12));
  CHECK(rel_close(sf::gamma_q(1.5, 0.9), 0.61493493578253741, 1e-12));
  // continued-fraction branch (x >= a+1)
  CHECK(rel_close(sf::gamma_q(0.5, 80.0), 1.1314837902432984e-36, 1e-11));
  CHECK(rel_close(sf::gamma_q(1.5, 10.0), 0.00016974243555282643, 1e-12));
  CHECK(rel_close(sf::gamma_q(2.0, 3.0), 0.19914827347145577, 1e-12));
  // large shape, the serial test's deepest df
  CHECK(rel_close(sf::gamma_q(2047.5, 2100.0), 0.12346896847060854, 1e-11));
}

TEST_CASE("incomplete gamma complementarity and bounds") {
  for (double a : {0.5, 1.0, 2.0, 17.5, 300.0}) {
    for (double r : {0.25, 0.9, 1.0, 1.3, 3.0}) {
      const double x = a * r;
      const double p = sf::gamma_p(a, x);
      const double q = sf::gamma_q(a, x);
      CHECK(p >= 0.0);
      CHECK(q >= 0.0);
      CHECK(std::fabs(p + q - 1.0) < 1e-13);
    }
  }
  CHECK(sf::gamma_p(3.0, 0.0) == 0.0);
  CHECK(sf::gamma_q(3.0, 0.0) == 1.0);
}

TEST_CASE("incomplete gamma rejects bad domains") {
  CHECK_THROWS_AS(sf::gamma_p(0.0, 1.0), Error);
  CHECK_THROWS_AS(sf::gamma_p(-1.0, 1.0), Error);
  CHECK_THROWS_AS(sf::gamma_q(2.0, -0.5), Error);
  CHECK_THROWS_AS(sf::lgamma(0.0), Error);
  CHECK_THROWS_AS(sf::lgamma(-3.0), Error);
}

TEST_CASE("log gamma against references") {
  CHECK(rel_close(sf::lgamma(0.5), 0.57236494292470009, 1e-13));
  CHECK(std::fabs(sf::lgamma(1.0)) < 1e-13);
  CHECK(std::fabs(sf::lgamma(2.0)) < 1e-13);
  CHECK(rel_close(sf::lgamma(10.0), 12.801827480081470, 1e-13));
  CHECK(rel_close(sf::lgamma(2048.0), 13564.326353384677, 1e-13));
  CHECK(rel_close(sf::lgamma(0.001), 6.9071788853838537, 1e-12));
}

TEST_CASE("chi-square upper tail") {
  // Q((q-1)/2, stat/2): df=3, stat=20
  CHECK(rel_close(sf::chi_square_upper(20.0, 3.0), 0.00016974243555282643, 1e-12));
  CHECK(sf::chi_square_upper(0.0, 5.0) == 1.0);
  CHECK(sf::chi_square_upper(-2.0, 5.0) == 1.0);
  CHECK_THROWS_AS(sf::chi_square_upper(1.0, 0.0), Error);
}

TEST_CASE("normal two-sided tail") {
  CHECK(rel_close(sf::normal_two_sided_p(1.96), 0.049995790296440868, 1e-12));
  CHECK(rel_close(sf::normal_two_sided_p(-1.96), 0.049995790296440868, 1e-12));
  CHECK(rel_close(sf::normal_two_sided_p(6.0), 1.9731752900753963e-9, 1e-12));
  CHECK(sf::normal_two_sided_p(0.0) == 1.0);
}

TEST_CASE("kolmogorov distribution complement") {
  CHECK(sf::kolmogorov_q(0.0) == 1.0);
  CHECK(sf::kolmogorov_q(-1.0) == 1.0);
  CHECK(rel_close(sf::kolmogorov_q(0.5), 0.96394524366487509, 1e-10));
  CHECK(rel_close(sf::kolmogorov_q(1.0), 0.26999967167735452, 1e-12));
  CHECK(rel_close(sf::kolmogorov_q(1.5), 0.022217962616525129, 1e-12));
  CHECK(rel_close(sf::kolmogorov_q(2.5), 7.4533063441573416e-6, 1e-12));
  // tiny lambda: the tail is certain
  CHECK(sf::kolmogorov_q(0.3) == doctest::Approx(0.99999069419866543).epsilon(1e-10));
  CHECK(sf::kolmogorov_q(0.05) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sf::kolmogorov_q(0.05) <= 1.0);
}
