#pragma once

#include <memory>
#include <vector>

#include "spade/scheme.hpp"
#include "spade/transforms.hpp"

namespace spade {

template <class Real>
struct PadeSolution {
  using C = cplx<Real>;
  int m = 0, n = 0;
  InterpolationMultiSet E;  // E_{m+n}
  Polynomial<C> v;          // monic, vanishing at the finite points of E
  std::vector<C> moments;   // mu_0..mu_{2n-1}
  Polynomial<C> q;          // monic, minimal degree
  int rank_deficiency = 0;
  std::vector<double> orthogonality_residual;  // relative, k < deg q
  std::vector<C> poles;
};

// mu_k = (1/2 pi i) int_Delta s^k rho/(v w) ds for k < count.
template <class Real>
std::vector<cplx<Real>> weighted_moments(const WeightedContour<Real>& wc, const Polynomial<cplx<Real>>& v,
                                         int count);

// Monic q of minimal degree with sum_j c_j mu_{j+k} = 0 for k < deg q.
template <class Real>
PadeSolution<Real> solve_denominator(std::vector<cplx<Real>> moments, int n, const PrecisionContext& ctx);

// Only m >= n - 1 is supported: then the order condition at infinity is the
// n moment equations above.
template <class Real>
PadeSolution<Real> solve_pade(const WeightedContour<Real>& wc, const SchemeSpec& s, int m, int n,
                              bool with_poles = true);

// R_{m,n} and the approximant built from it. Node values of q rho/v are
// cached at construction.
template <class Real>
class SecondKind {
 public:
  using C = cplx<Real>;
  SecondKind(std::shared_ptr<const WeightedContour<Real>> wc, const PadeSolution<Real>& ps);

  C operator()(const C& z) const;
  // rho-hat_Delta - v R / q; AtPole when q(z) is negligible.
  C approximant(const C& z) const;
  // p = q rho-hat - v R.
  C numerator(const C& z) const;
  // Coefficients of p by a DFT on 2 max(m,n) + 1 points of a circle that
  // encloses Delta. Export only.
  Polynomial<C> numerator_coefficients() const;

  const PadeSolution<Real>& solution() const { return ps_; }
  const WeightedContour<Real>& weighted() const { return *wc_; }

 private:
  std::shared_ptr<const WeightedContour<Real>> wc_;
  PadeSolution<Real> ps_;
  NodeTable<Real> F_;
  NearValue<Real> near_;
};

extern template class SecondKind<real256>;
extern template class SecondKind<real512>;

}  // namespace spade
