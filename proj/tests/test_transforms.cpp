#include <doctest.h>

#include "scenarios.hpp"

using namespace spade;
using namespace spade::testing;
using R = real256;
using C = complex256;

TEST_CASE("Scenario A Markov transform") {
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  CHECK(std::abs(to_cd(a.wc->markov(C(2))) - 1 / (2 * std::sqrt(3.0))) < 1e-15);
  CHECK(std::abs(to_cd(a.wc->markov_at_infinity_scaled()) - 0.5) < 1e-15);
  ArcTransform<R> at(ArcPath::segment(), DensitySpec::entire("1"), 2048);
  CHECK(std::abs(to_cd(at(C(2))) - 1 / (2 * std::sqrt(3.0))) < 1e-15);
}

TEST_CASE("Szego function of a constant density") {
  Setup<R> d(scheme_a(), ArcPath::segment(), "4");
  SzegoEvaluator<R> se(d.wc);
  CHECK(std::abs(to_cd(se.at_infinity()) - 0.5) < 1e-15);
  CHECK(std::abs(to_cd(se(C(2))) - 0.5) < 1e-15);
}

TEST_CASE("Szego jumps on Scenario A and B geometries") {
  for (int which : {0, 1}) {
    for (const char* rho : {"1", "4", "exp(s)"}) {
      CAPTURE(which);
      CAPTURE(rho);
      Setup<R> s(which ? scheme_b() : scheme_a(), which ? ArcPath::lower_semicircle() : ArcPath::segment(), rho);
      SzegoEvaluator<R> se(s.wc);
      for (auto& d : verify_szego_jumps(se, 20)) CHECK(d.max_defect <= 1e-25);
    }
  }
}

TEST_CASE("wrong sigma is caught by the jump check") {
  auto sc = build_symmetric_contour(scheme_a(), ArcPath::segment());
  auto dc = DiscretizedContour<R>::build(sc, make_context(256, 2048));
  auto wc = std::make_shared<WeightedContour<R>>(dc, DensitySpec::entire("exp(s)"), -1);
  SzegoEvaluator<R> se(wc);
  double worst = 0;
  for (auto& d : verify_szego_jumps(se, 20)) worst = std::max(worst, d.max_defect);
  CHECK(worst > 1e-3);
}

TEST_CASE("non-vanishing scan") {
  auto sc = build_symmetric_contour(scheme_a(), ArcPath::segment());
  auto dc = DiscretizedContour<R>::build(sc, make_context(256, 2048));
  // The scan only sees the nodes, so a zero between them passes.
  CHECK_NOTHROW(WeightedContour<R>(dc, DensitySpec::entire("s")));
  DensityEvaluator<R> ev(DensitySpec::entire("s"));
  CHECK_THROWS_AS(scan_nonvanishing<R>(ev, {C(1), C(0)}, 1e-30), Error);
}

TEST_CASE("continuation identities") {
  for (cd z : {cd(0.3, 0.2), cd(2, 1), cd(0, -0.75)})
    CHECK(check_continuation<R>(ArcPath::lower_semicircle(), ArcPath::segment(), DensitySpec::entire("exp(s)"),
                                lift<R>(z), 1, 2048) < 1e-40);
}

TEST_CASE("node doubling leaves the Markov transform unchanged") {
  auto sc = build_symmetric_contour(scheme_b(), ArcPath::lower_semicircle());
  double d = node_doubling_defect<R>(sc, DensitySpec::entire("exp(s)"), make_context(256, 1024),
                                     {{2, 0}, {0, 1.5}, {0.4, -1.6}});
  CHECK(d < 1e-40);
}
