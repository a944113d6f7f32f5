#include <doctest.h>

#include "spade/numerics.hpp"

using namespace spade;
using C = complex256;

TEST_CASE("precision context") {
  auto ctx = make_context(256, 2048);
  CHECK(ctx.bits == 256);
  CHECK(ctx.rank_tol == doctest::Approx(std::exp2(-128.0)));
  CHECK(working_bits(300) == 512);
  CHECK_THROWS_AS(working_bits(1024), Error);
  CHECK_THROWS_AS(make_context(256, 1000), Error);  // not a power of two
}

TEST_CASE("format_real round trips at full precision") {
  real256 x = real256(1) / 3;
  CHECK(real256(format_real(x).c_str()) == x);
  CHECK(format_real(0.5).find("5.0") == 0);
}

TEST_CASE("polynomial arithmetic") {
  auto p = Polynomial<C>::from_roots({C(1), C(-1)});
  CHECK(p.degree() == 2);
  CHECK(p.is_monic());
  CHECK(cabs(p(C(3)) - C(8)) == 0);
  auto d = p.derivative();
  CHECK(cabs(d(C(2)) - C(4)) == 0);
  CHECK((p * p).degree() == 4);
}

TEST_CASE("find_roots: Chebyshev zeros and a double root") {
  auto ctx = make_context(256, 2048);
  std::vector<C> want;
  for (int k = 0; k < 12; ++k) want.push_back(C(cos(pi<real256>() * (2 * k + 1) / 24)));
  auto rs = find_roots<real256>(Polynomial<C>::from_roots(want), ctx);
  REQUIRE(rs.roots.size() == 12);
  for (auto& w : want) {
    real256 best(10);
    for (auto& r : rs.roots) best = std::min(best, real256(cabs(r - w)));
    CHECK(static_cast<double>(best) < 1e-60);
  }
  auto dbl = find_roots<real256>(Polynomial<C>::from_roots({C(2), C(2), make_complex<real256>(0, 1)}), ctx);
  bool found = false;
  for (auto& cl : dbl.clusters)
    if (cl.multiplicity == 2) found = true;
  CHECK(found);
  CHECK_THROWS_AS(find_roots<real256>(Polynomial<C>(), ctx), Error);
}

TEST_CASE("periodic trapezoid integrates a trigonometric polynomial exactly") {
  auto v = integrate_periodic<real256>([](const real256& t) { return C(cos(t) * cos(t)); }, 16);
  CHECK(std::abs(to_cd(v) - cd(M_PI, 0)) < 1e-15);
  CHECK(static_cast<double>(abs(re(v) - pi<real256>())) < 1e-70);
}
