#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dplap/errors.hpp"
#include "dplap/profile.hpp"

using namespace dplap;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("fundamental profile scales and shifts W") {
  // n = 3, p = 2 gives W = 1/r, so everything is checkable by hand.
  const RadialFundamental rf(3, PValue::finite(2.0));
  const RadialProfile u = RadialProfile::fundamental(rf, 2.0, 1.0);

  CHECK(u.kind() == RadialProfile::Kind::Fundamental);
  CHECK(u.params() == std::vector<double>{2.0, 1.0});
  CHECK(u.kink_radii().empty());
  CHECK_FALSE(u.is_constant());
  CHECK(u.has_pole_at_origin());

  CHECK(u.value(0.5) == doctest::Approx(5.0));
  CHECK(u.value(4.0) == doctest::Approx(1.5));
  CHECK(u.derivative(0.5) == doctest::Approx(-8.0));
  CHECK(u.second_derivative(0.5) == doctest::Approx(32.0));
  CHECK(u.value(0.0) == kInf);
}

TEST_CASE("fundamental profile with c1 = 0 degenerates to a constant") {
  const RadialFundamental rf(2, PValue::finite(2.0));
  const RadialProfile u = RadialProfile::fundamental(rf, 0.0, 4.0);
  CHECK(u.is_constant());
  CHECK_FALSE(u.has_pole_at_origin());
  CHECK(u.value(0.0) == 4.0);
  CHECK(u.value(3.0) == 4.0);
  CHECK(u.derivative(3.0) == 0.0);
  CHECK(u.second_derivative(3.0) == 0.0);
}

TEST_CASE("profile constructors reject bad parameters") {
  const RadialFundamental rf(2, PValue::finite(2.0));
  const double nan = std::nan("");
  CHECK_THROWS_AS(RadialProfile::fundamental(rf, -1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile::fundamental(rf, 1.0, nan), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile::truncated_fundamental(rf, kInf, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile::min_pair(rf, 1.0, 0.0, -2.0, 0.0), std::invalid_argument);
  // rising polynomials are not radial profiles of anything superharmonic
  CHECK_THROWS_AS(RadialProfile::concave_poly(1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile::concave_poly(-1.0, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(RadialProfile::constant(nan), std::invalid_argument);
}

TEST_CASE("truncation kink splits the domain at W_inverse") {
  // W = -ln r, truncate at 0: flat on (0,1), logarithmic beyond.
  const RadialFundamental rf(2, PValue::finite(2.0));
  const RadialProfile u = RadialProfile::truncated_fundamental(rf, 0.0);

  REQUIRE(u.kink_radii().size() == 1);
  CHECK(u.kink_radii()[0] == doctest::Approx(1.0));
  CHECK(u.is_kink(1.0));
  CHECK_FALSE(u.is_kink(1.1));
  CHECK_FALSE(u.has_pole_at_origin());

  CHECK(u.value(0.0) == 0.0);
  CHECK(u.value(0.5) == 0.0);
  CHECK(u.derivative(0.5) == 0.0);
  CHECK(u.value(2.0) == doctest::Approx(-std::log(2.0)));
  CHECK(u.derivative(2.0) == doctest::Approx(-0.5));
  CHECK(u.second_derivative(2.0) == doctest::Approx(0.25));

  CHECK_THROWS_AS(u.derivative(1.0), SingularityError);
  CHECK_THROWS_AS(u.second_derivative(1.0), SingularityError);

  // continuity across the kink
  CHECK(u.value(1.0 - 1e-9) == doctest::Approx(u.value(1.0 + 1e-9)).epsilon(1e-8));
}

TEST_CASE("truncation with no crossing keeps a single branch") {
  // W = 1/r > 0, so min{W, 0} is identically 0 ...
  const RadialFundamental newt(3, PValue::finite(2.0));
  const RadialProfile flat = RadialProfile::truncated_fundamental(newt, 0.0);
  CHECK(flat.is_constant());
  CHECK(flat.kink_radii().empty());
  CHECK(flat.value(0.3) == 0.0);
  CHECK(flat.value(7.0) == 0.0);

  // ... while a level above the whole range leaves W untouched.
  const RadialFundamental b24(2, PValue::finite(4.0));
  const RadialProfile untouched = RadialProfile::truncated_fundamental(b24, 5.0);
  CHECK(untouched.kink_radii().empty());
  CHECK_FALSE(untouched.has_pole_at_origin());
  CHECK(untouched.value(0.0) == 0.0);  // W stays bounded when p > n
  CHECK(untouched.value(1.0) == doctest::Approx(-1.5));
  CHECK(untouched.derivative(8.0) == doctest::Approx(-0.5));
}

TEST_CASE("min_pair picks the lower branch on each side of the crossing") {
  const RadialFundamental rf(2, PValue::finite(2.0));  // W = -ln r

  // min{2W, W} flips exactly where W changes sign
  const RadialProfile u = RadialProfile::min_pair(rf, 2.0, 0.0, 1.0, 0.0);
  REQUIRE(u.kink_radii().size() == 1);
  CHECK(u.kink_radii()[0] == doctest::Approx(1.0));
  CHECK(u.value(0.5) == doctest::Approx(std::log(2.0)));         // min is W left of 1
  CHECK(u.value(2.0) == doctest::Approx(-2.0 * std::log(2.0)));  // and 2W beyond
  CHECK(u.derivative(0.5) == doctest::Approx(-2.0));
  CHECK(u.derivative(2.0) == doctest::Approx(-1.0));

  // a W-branch against a constant branch reproduces truncation from below
  const RadialProfile v = RadialProfile::min_pair(rf, 1.0, 0.0, 0.0, -1.0);
  REQUIRE(v.kink_radii().size() == 1);
  CHECK(v.kink_radii()[0] == doctest::Approx(std::exp(1.0)));
  CHECK(v.value(1.0) == -1.0);
  CHECK(v.value(std::exp(2.0)) == doctest::Approx(-2.0));
}

TEST_CASE("min_pair with equal W-coefficients keeps the lower offset") {
  const RadialFundamental rf(3, PValue::finite(4.0));
  const RadialProfile u = RadialProfile::min_pair(rf, 1.5, 2.0, 1.5, -3.0);
  CHECK(u.kink_radii().empty());
  CHECK(u.value(1.0) == doctest::Approx(1.5 * W(rf, 1.0) - 3.0));
}

TEST_CASE("concave polynomial profile") {
  const RadialProfile u = RadialProfile::concave_poly(-1.0, -1.0, 3.0);
  CHECK(u.kind() == RadialProfile::Kind::ConcavePoly);
  CHECK(u.value(0.0) == 3.0);
  CHECK(u.value(2.0) == doctest::Approx(-3.0));
  CHECK(u.derivative(2.0) == doctest::Approx(-5.0));
  CHECK(u.second_derivative(2.0) == doctest::Approx(-2.0));
  CHECK_FALSE(u.is_constant());
  CHECK_FALSE(u.has_pole_at_origin());
  CHECK(u.kink_radii().empty());

  // a = b = 0 is allowed and collapses to a constant
  CHECK(RadialProfile::concave_poly(0.0, 0.0, 5.0).is_constant());
}

TEST_CASE("constant profile") {
  const RadialProfile u = RadialProfile::constant(-2.5);
  CHECK(u.kind() == RadialProfile::Kind::Constant);
  CHECK(u.is_constant());
  CHECK(u.params() == std::vector<double>{-2.5});
  CHECK(u.value(0.0) == -2.5);
  CHECK(u.value(10.0) == -2.5);
  CHECK(u.derivative(1.0) == 0.0);
  CHECK(u.second_derivative(1.0) == 0.0);
}

TEST_CASE("profile domain errors") {
  const RadialProfile u = RadialProfile::constant(1.0);
  CHECK_THROWS_AS(u.value(-1.0), std::domain_error);
  CHECK_THROWS_AS(u.derivative(0.0), SingularityError);
  CHECK_THROWS_AS(u.second_derivative(0.0), SingularityError);
  CHECK_THROWS_AS(u.derivative(-0.5), SingularityError);
}

TEST_CASE("pole detection follows the W branch at the origin") {
  // p <= n keeps the pole, truncation removes it, p > n never had one
  const RadialFundamental log22(2, PValue::finite(2.0));
  CHECK(RadialProfile::fundamental(log22).has_pole_at_origin());
  CHECK_FALSE(RadialProfile::truncated_fundamental(log22, 0.0).has_pole_at_origin());
  const RadialFundamental b24(2, PValue::finite(4.0));
  CHECK_FALSE(RadialProfile::fundamental(b24).has_pole_at_origin());
  const RadialFundamental cone(2, PValue::infinity());
  CHECK_FALSE(RadialProfile::fundamental(cone).has_pole_at_origin());
  CHECK(RadialProfile::fundamental(cone).value(0.0) == 0.0);
}
