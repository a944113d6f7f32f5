#include <doctest.h>

#include "scenarios.hpp"

using namespace spade;
using namespace spade::testing;
using R = real256;
using C = complex256;

TEST_CASE("Scenario A outer function") {
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  auto se = std::make_shared<SzegoEvaluator<R>>(a.wc);
  OuterFunction<R> of(se, a.scheme, 2);
  CHECK(std::abs(to_cd(of.normalized(C(2))) - 3.4820508075688772) < 1e-12);
  CHECK(std::abs(to_cd(of.gamma()) - 0.25) < 1e-15);
  CHECK(std::abs(to_cd(of.gamma_from_probe() / of.gamma()) - 1.0) < 1e-6);
  CHECK(boundary_defect(of, 50) < 1e-25);
}

TEST_CASE("Scenario A anchors: dev_q equals phi^2n") {
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  auto se = std::make_shared<SzegoEvaluator<R>>(a.wc);
  const std::vector<cd> K{{2, 0}, {0, 1.5}, {-3, 0}};
  for (cd z : K) {
    auto rep = convergence_report<R>(se, a.scheme, {3, 6}, {z});
    for (auto& r : rep.rows) {
      const double f = std::pow(std::abs(phi_segment(z)), 2 * r.n);
      CHECK(r.dev1 == doctest::Approx(f).epsilon(1e-6));
      CHECK(r.dev3 == doctest::Approx(f / (1 + f)).epsilon(1e-3));
    }
  }
}

TEST_CASE("default test points keep their distance") {
  auto sc = build_symmetric_contour(scheme_b(), ArcPath::lower_semicircle());
  auto K = default_test_points(sc, scheme_b().base());
  CHECK(K.size() == 12);
  for (cd z : K) {
    CHECK(sc.distance(z) >= 0.2);
    CHECK(std::abs(z - cd(0, -0.75)) >= 0.2);
  }
}

TEST_CASE("continuation check and its negative control on Scenario B") {
  Setup<R> b(scheme_b(), ArcPath::lower_semicircle(), "exp(s)");
  ArcTransform<R> tl(b.L, DensitySpec::entire("exp(s)"), 2048);
  CHECK(prop1_check(InterpPoint::infinity(), 0.05, *b.wc, tl, b.L) < 1e-25);
  const auto e = InterpPoint::finite({0, -0.75});
  const double r = prop1_auto_radius(e, b.sc, b.L);
  CHECK(r < 0.05);
  CHECK(prop1_check(e, r, *b.wc, tl, b.L) < 1e-25);
  CHECK_THROWS_AS(prop1_check(e, 0.05, *b.wc, tl, b.L), Error);
  auto nc = prop1_negative_control(*b.wc, tl, b.L);
  REQUIRE(nc.has_value());
  CHECK(nc->defect >= 1e-3);
  CHECK(nc->defect == doctest::Approx(nc->expected).epsilon(1e-6));
}
