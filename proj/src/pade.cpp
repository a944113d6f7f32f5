#include "spade/pade.hpp"

#include <cmath>

namespace spade {

template <class Real>
std::vector<cplx<Real>> weighted_moments(const WeightedContour<Real>& wc, const Polynomial<cplx<Real>>& v,
                                         int count) {
  using C = cplx<Real>;
  const auto& comps = wc.contour().components();
  const Real tiny(wc.contour().context().rank_tol);
  NodeTable<Real> F(comps.size());
  for (std::size_t k = 0; k < comps.size(); ++k) {
    F[k].resize(comps[k].size());
    for (std::size_t j = 0; j < F[k].size(); ++j) {
      C vs = v(comps[k].s[j]);
      if (cabs(vs) < tiny) throw Error(ErrorCode::DomainViolation, "v vanishes on Delta");
      F[k][j] = wc.rho_nodes()[k][j] / vs;
    }
  }
  std::vector<C> mu;
  for (int p = 0; p < count; ++p) {
    if (p > 0)
      for (std::size_t k = 0; k < comps.size(); ++k)
        for (std::size_t j = 0; j < F[k].size(); ++j) F[k][j] *= comps[k].s[j];
    mu.push_back(wc.integral(F));
  }
  return mu;
}

template <class Real>
PadeSolution<Real> solve_denominator(std::vector<cplx<Real>> moments, int n, const PrecisionContext& ctx) {
  using C = cplx<Real>;
  if (n < 0 || static_cast<int>(moments.size()) < 2 * n)
    throw Error(ErrorCode::InvalidArgument, "need 2n moments");
  for (auto& m : moments) {
    using boost::multiprecision::isfinite;
    using std::isfinite;
    if (!isfinite(re(m)) || !isfinite(im(m))) throw Error(ErrorCode::DegenerateSystem, "non-finite moment");
  }
  PadeSolution<Real> out;
  out.n = n;
  out.moments = std::move(moments);
  const auto& mu = out.moments;
  const Real tol(ctx.rank_tol);

  for (int d = n; d >= 0; --d) {
    typename Polynomial<C>::Coeffs c(d + 1);
    c(d) = C(1);
    if (d > 0) {
      CMatrix<Real> A(d, d);
      CVector<Real> rhs(d);
      for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) A(k, j) = mu[j + k];
        rhs(k) = -mu[d + k];
      }
      Eigen::FullPivLU<CMatrix<Real>> lu(A);
      lu.setThreshold(tol);
      if (lu.rank() < d) continue;
      CVector<Real> x = lu.solve(rhs);
      for (int j = 0; j < d; ++j) c(j) = x(j);
    }
    std::vector<double> res;
    bool ok = true;
    for (int k = 0; k < d; ++k) {
      C s(0);
      Real scale(0);
      for (int j = 0; j <= d; ++j) {
        C t = c(j) * mu[j + k];
        s += t;
        scale = std::max(scale, Real(cabs(t)));
      }
      const Real r = scale > 0 ? Real(cabs(s) / scale) : Real(0);
      res.push_back(static_cast<double>(r));
      if (r > tol) ok = false;
    }
    if (!ok) continue;
    out.q = Polynomial<C>(std::move(c));
    out.rank_deficiency = n - d;
    out.orthogonality_residual = std::move(res);
    return out;
  }
  throw Error(ErrorCode::DegenerateSystem, "no monic denominator passes the residual check");
}

template <class Real>
PadeSolution<Real> solve_pade(const WeightedContour<Real>& wc, const SchemeSpec& s, int m, int n, bool with_poles) {
  if (n < 0 || m < 0) throw Error(ErrorCode::InvalidArgument, "negative Pade degree");
  if (m < n - 1) throw Error(ErrorCode::InvalidArgument, "only m >= n - 1 is supported");
  const auto& ctx = wc.contour().context();
  InterpolationMultiSet E = expand(s, m + n);
  auto v = v_polynomial<Real>(E);
  PadeSolution<Real> ps = solve_denominator<Real>(weighted_moments(wc, v, 2 * n), n, ctx);
  ps.m = m;
  ps.E = std::move(E);
  ps.v = std::move(v);
  if (with_poles && ps.q.degree() > 0) ps.poles = find_roots<Real>(ps.q, ctx).roots;
  return ps;
}

template <class Real>
SecondKind<Real>::SecondKind(std::shared_ptr<const WeightedContour<Real>> wc, const PadeSolution<Real>& ps)
    : wc_(std::move(wc)), ps_(ps) {
  const auto& comps = wc_->contour().components();
  F_.resize(comps.size());
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (std::size_t j = 0; j < comps[k].size(); ++j) {
      const C& s = comps[k].s[j];
      F_[k].push_back(ps_.q(s) * wc_->rho_nodes()[k][j] / ps_.v(s));
    }
  near_ = [this](const C& z, std::size_t, std::size_t) { return ps_.q(z) * wc_->density()(z) / ps_.v(z); };
}

template <class Real>
cplx<Real> SecondKind<Real>::operator()(const C& z) const {
  return wc_->cauchy(F_, near_, z);
}

template <class Real>
cplx<Real> SecondKind<Real>::approximant(const C& z) const {
  C qz = ps_.q(z);
  Real scale(0);
  const auto& c = ps_.q.coefficients();
  for (Eigen::Index k = 0; k < c.size(); ++k) scale = std::max(scale, Real(cabs(c(k))));
  const Real az = cabs(z);
  using std::pow;
  if (cabs(qz) < Real(wc_->contour().context().rank_tol) * scale * pow(std::max(Real(1), az), ps_.q.degree()))
    throw Error(ErrorCode::AtPole, "approximant evaluated at a pole");
  return wc_->markov(z) - ps_.v(z) * (*this)(z) / qz;
}

template <class Real>
cplx<Real> SecondKind<Real>::numerator(const C& z) const {
  return ps_.q(z) * wc_->markov(z) - ps_.v(z) * (*this)(z);
}

template <class Real>
Polynomial<cplx<Real>> SecondKind<Real>::numerator_coefficients() const {
  double reach = 1;
  for (const auto& q : wc_->contour().components())
    for (const auto& t : q.poly) reach = std::max(reach, std::abs(0.5 * (t + 1.0 / t)));
  const Real r(1 + 2 * reach);
  const int M = 2 * std::max(ps_.m, ps_.n) + 1;
  const Real two_pi = 2 * pi<Real>();
  using std::cos;
  using std::sin;
  std::vector<C> vals(M);
  for (int j = 0; j < M; ++j) {
    Real th = two_pi * Real(j) / Real(M);
    vals[j] = numerator(make_complex<Real>(r * cos(th), r * sin(th)));
  }
  typename Polynomial<C>::Coeffs c(ps_.m + 1);
  Real rk(1);
  for (int k = 0; k <= ps_.m; ++k) {
    C s(0);
    for (int j = 0; j < M; ++j) {
      Real th = -two_pi * Real(static_cast<long>(j) * k % M) / Real(M);
      s += vals[j] * make_complex<Real>(cos(th), sin(th));
    }
    c(k) = s / C(Real(M) * rk);
    rk *= r;
  }
  return Polynomial<C>(std::move(c));
}

#define SPADE_INSTANTIATE(R)                                                                                   \
  template std::vector<cplx<R>> weighted_moments<R>(const WeightedContour<R>&, const Polynomial<cplx<R>>&, int); \
  template PadeSolution<R> solve_denominator<R>(std::vector<cplx<R>>, int, const PrecisionContext&);          \
  template PadeSolution<R> solve_pade<R>(const WeightedContour<R>&, const SchemeSpec&, int, int, bool);        \
  template class SecondKind<R>;

SPADE_INSTANTIATE(real256)
SPADE_INSTANTIATE(real512)

}  // namespace spade
