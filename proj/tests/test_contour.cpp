#include <doctest.h>

#include "scenarios.hpp"

using namespace spade;
using namespace spade::testing;

TEST_CASE("Scenario A: Delta is the segment") {
  auto sc = build_symmetric_contour(scheme_a(), ArcPath::segment());
  CHECK(sc.sigma == 1);
  CHECK(sc.components() == 1);
  double off = 0;
  for (cd s : sc.delta0) off = std::max(off, std::abs(s.imag()));
  CHECK(off < 1e-6);
}

TEST_CASE("contour structure on the lower semicircle") {
  const ArcPath L = ArcPath::lower_semicircle();
  CHECK(build_symmetric_contour(scheme_b(4), L).components() == 1);
  auto sc = build_symmetric_contour(scheme_b(6), L);
  CHECK(sc.components() == 2);
  CHECK(sc.gamma.l_star == 1);
  CHECK(sc.sigma == 1);
  CHECK(winding_number(sc.loops[0], {0, -0.75}) != 0);
  bool dinf = false;
  for (auto& r : sc.regions.regions)
    if (r.label == RegionLabel::Dinf) dinf = true;
  CHECK(dinf);
  try {
    build_symmetric_contour(scheme_b(5), L);
    FAIL("ratio 5:1 should self-intersect");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SelfIntersection);
  }
}

TEST_CASE("Scenario C has a loop around 5/4") {
  auto sc = build_symmetric_contour(scheme_c(), ArcPath::teardrop(2.0));
  REQUIRE(sc.components() == 2);
  CHECK(winding_number(sc.loops[0], {1.25, 0}) != 0);
}

TEST_CASE("Assumption 1 diagnostics") {
  auto g = trace_level(scheme_b().base(), ArcPath::lower_semicircle());
  auto rep = validate_assumption1(g, scheme_b());
  CHECK(rep.symmetry_defect < 1e-10);
  CHECK(rep.level_residual < 1e-8);
  CHECK(std::isfinite(rep.M_estimate));
}
