#include <doctest.h>

#include "spade/expression.hpp"

using namespace spade;
using C = complex256;

TEST_CASE("density expressions evaluate in working precision") {
  auto d = DensitySpec::entire("exp(s) + 2*s^2 - 1/(s+3)");
  C s = make_complex<real256>(real256("0.25"), real256("-0.5"));
  cd sd = to_cd(s);
  cd want = std::exp(sd) + 2.0 * sd * sd - 1.0 / (sd + 3.0);
  CHECK(std::abs(to_cd(eval_density<real256>(d, s)) - want) < 1e-14);
  CHECK(Expression::parse("4").is_constant());
  CHECK_FALSE(Expression::parse("s").is_constant());
}

TEST_CASE("parse errors") {
  for (const char* bad : {"", "s+", "exp(", "foo(s)", "1 2", "s**"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Expression::parse(bad), Error);
  }
}

TEST_CASE("declared region is enforced") {
  DensitySpec d{Expression::parse("1/s"), {}};
  d.region.within = Disk{{2, 0}, 1.5};
  DensityEvaluator<real256> ev(d);
  CHECK_NOTHROW(ev(C(1)));
  CHECK_THROWS_AS(ev(C(-1)), Error);
  DensityEvaluator<real256> zero(DensitySpec::entire("1/s"));
  CHECK_THROWS_AS(zero(C(0)), Error);
}
