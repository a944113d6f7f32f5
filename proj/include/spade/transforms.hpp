#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "spade/expression.hpp"
#include "spade/quadrature.hpp"

namespace spade {

template <class Real>
using NodeTable = std::vector<std::vector<cplx<Real>>>;  // [component][node]

// Value of the integrand at J(b) = z, given the nearest node (component k,
// node j). Only called when b is close to that component.
template <class Real>
using NearValue = std::function<cplx<Real>(const cplx<Real>& z, std::size_t k, std::size_t j)>;

// Delta with the density and the continuation weight: sigma * w_{Delta0+}
// on Delta_0 and w_{Delta0} on the loops.
template <class Real>
class WeightedContour {
 public:
  using C = cplx<Real>;

  // Throws ZeroDensity if rho vanishes on Delta, AssumptionViolated if rho
  // winds along a loop. sigma_override only exists for negative controls.
  WeightedContour(std::shared_ptr<const DiscretizedContour<Real>> dc, const DensitySpec& d,
                  std::optional<int> sigma_override = std::nullopt);

  const DiscretizedContour<Real>& contour() const { return *dc_; }
  std::shared_ptr<const DiscretizedContour<Real>> contour_ptr() const { return dc_; }
  const DensityEvaluator<Real>& density() const { return rho_; }
  int sigma() const { return sigma_; }
  int true_sigma() const { return dc_->sigma(); }
  const NodeTable<Real>& rho_nodes() const { return rho_nodes_; }
  // coefficient * dtau/(2 pi i tau) so that sum K_j F(s_j) = (1/2pi i) int F ds/w.
  const NodeTable<Real>& kernel() const { return kernel_; }

  C integral(const NodeTable<Real>& F) const;

  // sigma/2 [C_0(a) - C_0(1/a)] + sum_l [C_l(a) - C_l(1/a)], where
  // C_k(b) = (1/2 pi i) oint_{Gamma_k} g/(tau - b) dtau. a = 0 means z = inf.
  C bracket(const NodeTable<Real>& g, const NearValue<Real>& near, const C& z, const C& a) const;

  // (1/2 pi i) int_Delta F(s)/(s - z) ds/w(s).
  C cauchy(const NodeTable<Real>& F, const NearValue<Real>& near, const C& z) const;

  C markov(const C& z) const;  // rho-hat_Delta(z)
  C markov_at_infinity_scaled() const;  // lim z * rho-hat_Delta(z)

 private:
  std::shared_ptr<const DiscretizedContour<Real>> dc_;
  DensityEvaluator<Real> rho_;
  int sigma_;
  NodeTable<Real> rho_nodes_, kernel_;
};

// rho-hat_L for the raw arc, integrated over J^{-1}(L).
template <class Real>
class ArcTransform {
 public:
  using C = cplx<Real>;
  ArcTransform(const ArcPath& L, const DensitySpec& d, int nodes);
  C operator()(const C& z) const;
  const ClosedContour<Real>& loop() const { return loop_; }

 private:
  ArcPath L_;
  DensityEvaluator<Real> rho_;
  ClosedContour<Real> loop_;
  std::vector<C> g_;
};

template <class Real>
class SzegoEvaluator {
 public:
  using C = cplx<Real>;
  explicit SzegoEvaluator(std::shared_ptr<const WeightedContour<Real>> wc);

  C operator()(const C& z) const;
  C at_infinity() const;
  const WeightedContour<Real>& weighted() const { return *wc_; }
  std::shared_ptr<const WeightedContour<Real>> weighted_ptr() const { return wc_; }
  const NodeTable<Real>& log_table() const { return logs_; }
  double max_branch_jump() const { return max_jump_; }

 private:
  std::shared_ptr<const WeightedContour<Real>> wc_;
  NodeTable<Real> logs_;
  NearValue<Real> near_;
  double max_jump_ = 0;
};

struct JumpDefect {
  int component = 0;  // l
  double max_defect = 0;
};

// Delta_0: max |S+ S- rho^sigma - 1|; loops: max |S+ rho - S-| / |S-|.
// sigma is the geometric one, so an injected wrong sigma shows up here.
template <class Real>
std::vector<JumpDefect> verify_szego_jumps(const SzegoEvaluator<Real>& se, int samples, double eps_scale = 1.0);

// Winding of rho along a closed chain of points (arg tracking).
template <class Real>
int rho_winding(const std::vector<cplx<Real>>& loop, const DensityEvaluator<Real>& rho);

// Continuation identities between rho-hat_{delta0} and rho-hat_L at z.
template <class Real>
double check_continuation(const ArcPath& L, const ArcPath& delta0, const DensitySpec& d, const cplx<Real>& z,
                          int sigma, int nodes);

// Relative change of rho-hat_Delta(z) when quad_nodes doubles.
template <class Real>
double node_doubling_defect(const SymmetricContour& sc, const DensitySpec& d, const PrecisionContext& ctx,
                            const std::vector<cd>& points);

extern template class WeightedContour<real256>;
extern template class WeightedContour<real512>;
extern template class ArcTransform<real256>;
extern template class ArcTransform<real512>;
extern template class SzegoEvaluator<real256>;
extern template class SzegoEvaluator<real512>;

}  // namespace spade
