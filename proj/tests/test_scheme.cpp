#include <doctest.h>

#include "scenarios.hpp"

using namespace spade;
using namespace spade::testing;
using R = real256;
using C = complex256;

TEST_CASE("periodic expansion") {
  auto s = scheme_b();
  auto E14 = expand(s, 14);
  CHECK(E14.infinite_multiplicity() == 12);
  CHECK(E14.multiplicity(InterpPoint::finite({0, -0.75})) == 2);
  auto E3 = expand(s, 3);
  CHECK(E3.infinite_multiplicity() == 3);
  CHECK(E3.finite_total() == 0);
  CHECK(expand(s, 56).finite_total() == 8);
  CHECK(expand(s, 0).total() == 0);
}

TEST_CASE("b on Scenario A") {
  InterpolationMultiSet E;
  E.add(InterpPoint::infinity(), 2);
  auto ctx = make_context(256, 2048);
  C b = eval_b<R>(C(2), E, ArcPath::segment(), ArcPath::segment(), ctx);
  CHECK(std::abs(to_cd(b) - cd(0.0717967697244908, 0)) < 1e-13);
}

TEST_CASE("Blaschke reciprocal symmetry") {
  auto s = scheme_b();
  PhiTable<R> phi(s.base(), ArcPath::lower_semicircle());
  Blaschke<R> B(s.base(), phi);
  for (cd t : {cd(0.3, 0.1), cd(-0.7, 0.5), cd(1.5, -0.2)}) {
    C z = lift<R>(t);
    C prod = B.value(z) * B.value(C(1) / z);
    CHECK(static_cast<double>(cabs(prod - C(1))) < 1e-60);
  }
}

TEST_CASE("v polynomial and partition") {
  auto E = expand(scheme_b(), 56);
  auto v = v_polynomial<R>(E);
  CHECK(v.degree() == 8);
  C e = make_complex<R>(R(0), R("-0.75"));
  CHECK(static_cast<double>(cabs(v(e))) == 0);
  auto [v0, vinf] = partition_v<R>(E, [](cd) { return RegionLabel::Dinf; });
  CHECK(v0.degree() == 0);
  CHECK(vinf.degree() == 8);
}
