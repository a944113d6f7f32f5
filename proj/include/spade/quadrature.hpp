#pragma once

#include <memory>
#include <vector>

#include "spade/contour.hpp"

namespace spade {

// One component of Gamma at working precision. Nodes solve B_N(tau) =
// exp(i alpha) at equally spaced alpha, so they lie on |B_N| = 1 exactly
// and the periodic rule in alpha is spectrally accurate.
template <class Real>
struct QuadComponent : ClosedContour<Real> {
  using C = cplx<Real>;
  int index = 0;          // l
  int orientation = 1;    // +1 ccw
  int left_sign = -1;     // sign of log|B_N| just to the left
  int winding = 0;        // change of arg B_N along the component / 2 pi
  double alpha0 = 0;      // arg B_N at the first guide node (unwrapped origin)
  std::vector<cd> guide;  // traced double polyline
  std::vector<double> guide_alpha;
  std::vector<C> s;       // J(tau_j)
  double near_tol = 0;    // below this distance use the local sign rule
};

template <class Real>
class DiscretizedContour {
 public:
  using C = cplx<Real>;

  struct TracePoint {
    C s;       // point of Delta
    C normal;  // unit left normal in the z plane
    C tau;
    std::size_t component;
  };

  static std::shared_ptr<const DiscretizedContour> build(const SymmetricContour& sc, const PrecisionContext& ctx);

  const SymmetricContour& geometry() const { return sc_; }
  const PrecisionContext& context() const { return ctx_; }
  int sigma() const { return sc_.sigma; }
  const Blaschke<Real>& B() const { return B_; }
  const std::vector<QuadComponent<Real>>& components() const { return comps_; }

  // phi_{Delta_0}(z): the preimage of z under J inside Gamma_0.
  C phi(const C& z) const;
  // w_{Delta_0}(z) from a = phi(z).
  static C w_from_phi(const C& a) { return (C(1) / a - a) / C(2); }
  C w(const C& z) const { return w_from_phi(phi(z)); }

  RegionLabel region_of_phi(const C& a) const;
  RegionLabel region(const C& z) const { return region_of_phi(phi(z)); }

  // Index of b with respect to component k (0 for points off the loop side).
  int index(std::size_t k, const C& b) const;

  // tau on component k at fraction u of its alpha range; for Gamma_0 the
  // range is restricted to Gamma_0+ (the preimage of delta0).
  C tau_at(std::size_t k, const Real& u, C* dtau_du = nullptr) const;
  std::vector<TracePoint> trace_points(std::size_t k, int count) const;

  double distance(cd z) const { return sc_.distance(z); }

 private:
  DiscretizedContour(const SymmetricContour& sc, const PrecisionContext& ctx) : sc_(sc), ctx_(ctx) {}
  C solve_alpha(const QuadComponent<Real>& q, const Real& alpha, cd guess) const;
  cd guess_for_alpha(const QuadComponent<Real>& q, double alpha) const;

  SymmetricContour sc_;
  PrecisionContext ctx_;
  Blaschke<Real> B_;
  Blaschke<double> Bd_;
  std::vector<QuadComponent<Real>> comps_;
  double alpha_minus_ = 0, alpha_plus_ = 0;  // arg B_N at -1 and +1 along Gamma_0
};

extern template class DiscretizedContour<real256>;
extern template class DiscretizedContour<real512>;

}  // namespace spade
