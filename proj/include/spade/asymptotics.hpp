#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spade/pade.hpp"

namespace spade {

// Psi_n and its normalization N_n = gamma_n Psi_n.
template <class Real>
class OuterFunction {
 public:
  using C = cplx<Real>;
  OuterFunction(std::shared_ptr<const SzegoEvaluator<Real>> se, const SchemeSpec& s, int n);

  int n() const { return n_; }
  const SzegoEvaluator<Real>& szego() const { return *se_; }
  const InterpolationMultiSet& E() const { return E_; }  // E_{2n}
  const Polynomial<C>& v0() const { return v0_; }
  const Polynomial<C>& vinf() const { return vinf_; }
  int exponent() const { return p_; }  // n - deg v_{n,inf}
  const C& c_n() const { return c_; }

  C T(const C& zeta) const;
  C b(const C& z) const;    // b_{2n}
  C psi(const C& z) const;  // with the principal root for c_n
  C gamma() const { return gamma_; }
  // gamma_n from Psi_n(z)/z^n at |z| = 1e2, 1e3, 1e4 (Richardson in 1/z).
  C gamma_from_probe() const;
  C normalized(const C& z) const { return gamma_ * psi(z); }
  // On D0: b S^-2 / w. On Dinf: -S^2 / (b w).
  C predicted_error(const C& z) const;

 private:
  std::shared_ptr<const SzegoEvaluator<Real>> se_;
  const DiscretizedContour<Real>* dc_;
  int n_;
  InterpolationMultiSet E_;
  Polynomial<C> v0_, vinf_;
  std::vector<std::pair<C, int>> zeros_, poles_;  // phi_L(e) over E_inf and E_0
  int p_ = 0;
  C c_, gamma_;
  Blaschke<Real> B_;
};

struct AsymptoticsRow {
  int n = 0;
  int degree = 0;
  double dev1 = 0, dev2 = 0, dev3 = 0;  // sup over K
  double orthogonality = 0;             // max relative residual
  std::string error;                    // non-empty when the row failed
};

struct AsymptoticsReport {
  std::vector<cd> K;
  std::vector<AsymptoticsRow> rows;
  double slope1 = 0, slope2 = 0, slope3 = 0;  // least-squares d log(dev) / dn
  bool monotone1 = false, monotone2 = false, monotone3 = false;
};

// 12 points at distance >= min_dist from Delta and the finite interpolation
// points, with Dinf regions sampled first when they are wide enough.
std::vector<cd> default_test_points(const SymmetricContour& sc, const InterpolationMultiSet& base, int count = 12,
                                    double min_dist = 0.2);

template <class Real>
AsymptoticsReport convergence_report(std::shared_ptr<const SzegoEvaluator<Real>> se, const SchemeSpec& s,
                                     const std::vector<int>& n_list, const std::vector<cd>& K);

// max |N+ N- rho / (gamma^2 v) - 1| over `samples` trace points per component.
template <class Real>
double boundary_defect(const OuterFunction<Real>& of, int samples);

// max over 64 circle points of |rho-hat_L - rho-hat_Delta|. At infinity the
// circle is |z| = 1/radius.
template <class Real>
double prop1_check(const InterpPoint& e, double radius, const WeightedContour<Real>& wc, const ArcTransform<Real>& tl,
                   const ArcPath& L);

// Largest radius <= cap whose circle around e stays clear of L and Delta
// (half the distance).
double prop1_auto_radius(const InterpPoint& e, const SymmetricContour& sc, const ArcPath& L, double cap = 0.05);

struct NegativeControl {
  cd z;
  double defect = 0;    // |rho-hat_L - rho-hat_Delta|
  double expected = 0;  // |rho / w|
};

// A point of U_b outside every loop, where the continuation term survives.
template <class Real>
std::optional<NegativeControl> prop1_negative_control(const WeightedContour<Real>& wc, const ArcTransform<Real>& tl,
                                                      const ArcPath& L);

extern template class OuterFunction<real256>;
extern template class OuterFunction<real512>;

}  // namespace spade
