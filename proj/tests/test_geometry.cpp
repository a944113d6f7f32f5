#include <doctest.h>

#include "scenarios.hpp"

using namespace spade;
using namespace spade::testing;
using R = real256;
using C = complex256;

TEST_CASE("phi on the segment") {
  const ArcPath L = ArcPath::segment();
  C a = phi_map<R>(C(2), L);
  CHECK(std::abs(to_cd(a) - cd(2 - std::sqrt(3.0), 0)) < 1e-15);
  for (cd z : {cd(0.3, 0.2), cd(-2, 1), cd(0, -5)}) {
    C p = phi_map<R>(lift<R>(z), L);
    CHECK(static_cast<double>(cabs(p)) < 1);
    CHECK(std::abs(to_cd(joukovski(p)) - z) < 1e-14);
  }
  CHECK_THROWS_AS(joukovski(C(0)), Error);
}

TEST_CASE("phi_L inverts the Joukowski map for curved arcs") {
  for (const ArcPath& L : {ArcPath::lower_semicircle(), ArcPath::teardrop(2.0)}) {
    for (cd z : {cd(0.1, 0.3), cd(0.2, -0.4), cd(3, 2), cd(-0.5, -0.2)}) {
      if (distance_to_arc(L, z) < 1e-3) continue;
      C p = phi_map<R>(lift<R>(z), L);
      CHECK(std::abs(to_cd(joukovski(p)) - z) < 1e-12);
    }
  }
}

TEST_CASE("phi+ phi- = 1 across the cut") {
  const ArcPath L = ArcPath::lower_semicircle();
  const R eps("1e-12");
  for (double t : {0.2, 0.5, 0.8}) {
    C s = L.point(R(t)), nu = L.tangent(R(t)) * make_complex<R>(R(0), R(1));
    nu /= C(cabs(nu));
    C h = nu * C(eps);
    C prod = phi_map<R>(s + h, L) * phi_map<R>(s - h, L);
    CHECK(std::abs(to_cd(prod) - cd(1, 0)) < 1e-9);
  }
}

TEST_CASE("arc validation") {
  CHECK_THROWS_AS(ArcPath::teardrop(0.5), Error);
  CHECK_NOTHROW(ArcPath::bezier({{-1, 0}, {0, -0.5}, {1, 0}}));
  CHECK(distance_to_arc(ArcPath::segment(), {0, 0.5}) == doctest::Approx(0.5));
}

TEST_CASE("winding and polygons") {
  std::vector<cd> sq{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  CHECK(winding_number(sq, {0, 0}) == 1);
  CHECK(winding_number(sq, {3, 0}) == 0);
  CHECK(signed_area(sq) == doctest::Approx(4));
  CHECK(point_in_polygon(sq, {0.5, 0.5}));
}
