#include <doctest.h>

#include "scenarios.hpp"

using namespace spade;
using namespace spade::testing;
using R = real256;
using C = complex256;

TEST_CASE("Scenario A moments") {
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  auto mu = weighted_moments(*a.wc, Polynomial<C>{C(1)}, 4);
  CHECK(std::abs(to_cd(mu[0]) + 0.5) < 1e-60);
  CHECK(std::abs(to_cd(mu[1])) < 1e-60);
  CHECK(std::abs(to_cd(mu[2]) + 0.25) < 1e-60);
  CHECK(std::abs(to_cd(mu[3])) < 1e-60);
}

TEST_CASE("Scenario A denominators are Chebyshev polynomials") {
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  for (int n : {1, 2, 7, 12}) {
    auto ps = solve_pade(*a.wc, a.scheme, n, n);
    REQUIRE(ps.q.degree() == n);
    auto t = monic_chebyshev(n);
    double err = 0;
    for (int k = 0; k <= n; ++k) err = std::max(err, static_cast<double>(cabs(ps.q[k] - C(t[k]))));
    CHECK(err < 1e-40);
    for (auto& p : ps.poles) {
      CHECK(std::abs(to_cd(p).imag()) < 1e-30);
      CHECK(std::abs(to_cd(p).real()) < 1);
    }
    for (double r : ps.orthogonality_residual) CHECK(r < a.dc->context().rank_tol);
  }
}

TEST_CASE("Scenario A second kind and approximant at z = 2") {
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  auto ps = solve_pade(*a.wc, a.scheme, 2, 2);
  SecondKind<R> sk(a.wc, ps);
  const double phi = 2 - std::sqrt(3.0);
  CHECK(std::abs(to_cd(sk(C(2))) - phi * phi / (4 * std::sqrt(3.0))) < 1e-15);
  CHECK(std::abs(to_cd(sk.approximant(C(2))) - 2.0 / 7) < 1e-15);
  CHECK_THROWS_AS(sk.approximant(C(R(1) / sqrt(R(2)))), Error);
}

TEST_CASE("scalar equivariance") {
  Setup<R> one(scheme_b(), ArcPath::lower_semicircle(), "exp(s)");
  Setup<R> four(scheme_b(), ArcPath::lower_semicircle(), "4*exp(s)");
  auto p1 = solve_pade(*one.wc, one.scheme, 10, 10);
  auto p4 = solve_pade(*four.wc, four.scheme, 10, 10);
  REQUIRE(p1.q.degree() == p4.q.degree());
  double dq = 0;
  for (int k = 0; k <= p1.q.degree(); ++k) dq = std::max(dq, static_cast<double>(cabs(p1.q[k] - p4.q[k])));
  CHECK(dq < 1e-40);
  SecondKind<R> s1(one.wc, p1), s4(four.wc, p4);
  C z = make_complex<R>(R(2), R(1));
  CHECK(static_cast<double>(cabs(s4.approximant(z) - C(4) * s1.approximant(z))) < 1e-40);
}

TEST_CASE("Scenario B orthogonality residuals") {
  Setup<R> b(scheme_b(), ArcPath::lower_semicircle(), "exp(s)");
  auto ps = solve_pade(*b.wc, b.scheme, 14, 14);
  CHECK(ps.q.degree() == 14);
  for (double r : ps.orthogonality_residual) CHECK(r < b.dc->context().rank_tol);
}

TEST_CASE("unsupported degree pairs") {
  Setup<R> a(scheme_a(), ArcPath::segment(), "1");
  CHECK_THROWS_AS(solve_pade(*a.wc, a.scheme, 1, 5), Error);
}
