#include "spade/quadrature.hpp"

#include <cmath>

namespace spade {

namespace {

template <class C>
int sign_of(const C& x) {
  return x < 0 ? -1 : 1;
}

}  // namespace

template <class Real>
cd DiscretizedContour<Real>::guess_for_alpha(const QuadComponent<Real>& q, double alpha) const {
  const std::size_t n = q.guide.size();
  const double sgn = q.winding > 0 ? 1.0 : -1.0;
  const double beta = sgn * (alpha - q.guide_alpha[0]);
  // guide_alpha has n+1 entries; the last closes the loop.
  std::size_t lo = 0, hi = n;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (sgn * (q.guide_alpha[mid] - q.guide_alpha[0]) <= beta)
      lo = mid;
    else
      hi = mid;
  }
  const double a0 = q.guide_alpha[lo], a1 = q.guide_alpha[hi];
  const double t = a1 != a0 ? (alpha - a0) / (a1 - a0) : 0.5;
  return q.guide[lo] + std::clamp(t, 0.0, 1.0) * (q.guide[hi % n] - q.guide[lo]);
}

template <class Real>
cplx<Real> DiscretizedContour<Real>::solve_alpha(const QuadComponent<Real>& q, const Real& alpha, cd guess) const {
  using std::cos;
  using std::sin;
  (void)q;
  const double ad = static_cast<double>(alpha);
  const cd target_d = std::polar(1.0, ad);
  cd t = guess;
  for (int it = 0; it < 30; ++it) {
    cd b = Bd_.value(t);
    cd step = (b - target_d) / (b * Bd_.log_derivative(t));
    t -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  const C target = make_complex<Real>(cos(alpha), sin(alpha));
  C z = lift<Real>(t);
  const Real tol = ldexp2<Real>(-static_cast<int>(scalar_traits<Real>::bits) + 12);
  for (int it = 0; it < 12; ++it) {
    C b = B_.value(z);
    C step = (b - target) / (b * B_.log_derivative(z));
    z -= step;
    if (cabs(step) <= tol * (cabs(z) > 1 ? Real(cabs(z)) : Real(1))) return z;
  }
  throw Error(ErrorCode::NonconvergedQuadrature, "Newton solve for a node of Gamma did not converge");
}

template <class Real>
std::shared_ptr<const DiscretizedContour<Real>> DiscretizedContour<Real>::build(const SymmetricContour& sc,
                                                                               const PrecisionContext& ctx) {
  std::shared_ptr<DiscretizedContour> dc(new DiscretizedContour(sc, ctx));
  dc->B_ = Blaschke<Real>(sc.gamma.base, PhiTable<Real>(sc.gamma.base, sc.gamma.L));
  dc->Bd_ = dc->B_.to_double();
  const int N = ctx.quad_nodes;

  std::vector<const LevelComponent*> order;
  order.push_back(&sc.gamma.component(0));
  for (int l = 1; l <= sc.gamma.l_star; ++l) order.push_back(&sc.gamma.component(l));

  for (const LevelComponent* lc : order) {
    QuadComponent<Real> q;
    q.index = lc->index;
    q.guide = lc->nodes;
    q.orientation = signed_area(q.guide) > 0 ? 1 : -1;
    const std::size_t n = q.guide.size();
    q.guide_alpha.resize(n + 1);
    q.guide_alpha[0] = std::arg(dc->Bd_.value(q.guide[0]));
    for (std::size_t k = 0; k < n; ++k)
      q.guide_alpha[k + 1] =
          q.guide_alpha[k] + std::arg(dc->Bd_.value(q.guide[(k + 1) % n]) / dc->Bd_.value(q.guide[k]));
    const double total = q.guide_alpha[n] - q.guide_alpha[0];
    q.winding = static_cast<int>(std::lround(total / (2 * M_PI)));
    if (q.winding == 0 || std::abs(total - 2 * M_PI * q.winding) > 1e-6)
      throw Error(ErrorCode::AssumptionViolated, "arg B_N does not wind along component " + std::to_string(q.index));
    for (std::size_t k = 1; k <= n; ++k)
      if ((q.guide_alpha[k] - q.guide_alpha[k - 1]) * q.winding <= 0)
        throw Error(ErrorCode::GridTooCoarse, "arg B_N not monotone along the traced polyline");
    q.alpha0 = q.guide_alpha[0];

    const Real dalpha = 2 * pi<Real>() * Real(q.winding) / Real(N);
    q.tau.resize(N);
    q.dtau.resize(N);
    q.s.resize(N);
    const C I = unit_i<Real>();
    for (int j = 0; j < N; ++j) {
      Real alpha = Real(q.alpha0) + (Real(j) + Real(0.5)) * dalpha;
      C t = dc->solve_alpha(q, alpha, dc->guess_for_alpha(q, static_cast<double>(alpha)));
      q.tau[j] = t;
      q.dtau[j] = I / dc->B_.log_derivative(t) * C(dalpha);
      q.s[j] = joukovski(t);
    }
    q.finish();
    double maxsp = 0;
    for (double sp : q.spacing) maxsp = std::max(maxsp, sp);
    q.near_tol = 8 * maxsp;

    // Sign of log|B_N| on the left, from probes at a few nodes.
    int pos = 0, neg = 0;
    for (int j = 0; j < N; j += N / 16) {
      cd t = q.poly[j];
      cd d = to_cd(q.dtau[j]);
      cd probe = t + 1e-3 * q.spacing[j] * cd(0, 1) * d / std::abs(d);
      (dc->Bd_.log_abs(probe) > 0 ? pos : neg)++;
    }
    if (pos && neg) throw Error(ErrorCode::OrientationUndetermined, "left side sign of component is not constant");
    q.left_sign = pos ? 1 : -1;
    dc->comps_.push_back(std::move(q));
  }

  const auto& q0 = dc->comps_[0];
  if (q0.guide[0] != cd(-1, 0) || q0.guide[sc.plus_one_index] != cd(1, 0))
    throw Error(ErrorCode::AssumptionViolated, "Gamma_0 guide does not start at -1");
  dc->alpha_minus_ = q0.guide_alpha[0];
  dc->alpha_plus_ = q0.guide_alpha[sc.plus_one_index];
  return dc;
}

template <class Real>
cplx<Real> DiscretizedContour<Real>::phi(const C& z) const {
  if (z == C(1) || z == C(-1)) throw Error(ErrorCode::OnContour, "endpoint of delta0");
  C r = csqrt(z - C(1)) * csqrt(z + C(1));
  C c1 = z + r, c2 = z - r;
  C big = cabs(c1) >= cabs(c2) ? c1 : c2;
  C small = C(1) / big;
  const auto& q0 = comps_[0];
  const cd sd = to_cd(small), bd = to_cd(big);
  const double ds = distance_to_polyline(q0.poly, sd, true);
  const double db = distance_to_polyline(q0.poly, bd, true);
  if (std::max(ds, db) > q0.near_tol) {
    if (ds >= db) return point_in_polygon(q0.poly, sd) ? small : big;
    return point_in_polygon(q0.poly, bd) ? big : small;
  }
  Real f = B_.log_abs(small);
  using std::abs;
  if (abs(f) < ldexp2<Real>(-static_cast<int>(scalar_traits<Real>::bits) + 24))
    throw Error(ErrorCode::OnContour, "point lies on delta0");
  return sign_of(f) == q0.left_sign ? small : big;
}

template <class Real>
RegionLabel DiscretizedContour<Real>::region_of_phi(const C& a) const {
  if (a == C(0)) return B_.infinite_multiplicity() > 0 ? RegionLabel::D0 : RegionLabel::Dinf;
  Real f = B_.log_abs(a);
  using std::abs;
  if (abs(f) < ldexp2<Real>(-static_cast<int>(scalar_traits<Real>::bits) + 24))
    throw Error(ErrorCode::OnContour, "point lies on the symmetric contour");
  return f < 0 ? RegionLabel::D0 : RegionLabel::Dinf;
}

template <class Real>
int DiscretizedContour<Real>::index(std::size_t k, const C& b) const {
  const auto& q = comps_[k];
  const cd bd = to_cd(b);
  if (distance_to_polyline(q.poly, bd, true) > q.near_tol) return winding_number(q.poly, bd);
  Real f = B_.log_abs(b);
  using std::abs;
  if (abs(f) < ldexp2<Real>(-static_cast<int>(scalar_traits<Real>::bits) + 24))
    throw Error(ErrorCode::OnContour, "point lies on a component of Gamma");
  const bool left = sign_of(f) == q.left_sign;
  if (q.orientation > 0) return left ? 1 : 0;
  return left ? 0 : -1;
}

template <class Real>
cplx<Real> DiscretizedContour<Real>::tau_at(std::size_t k, const Real& u, C* dtau_du) const {
  const auto& q = comps_[k];
  double lo, hi;
  if (k == 0) {
    lo = alpha_minus_;
    hi = alpha_plus_;
  } else {
    lo = q.alpha0;
    hi = q.alpha0 + 2 * M_PI * q.winding;
  }
  Real alpha = Real(lo) + u * (Real(hi) - Real(lo));
  C t = solve_alpha(q, alpha, guess_for_alpha(q, static_cast<double>(alpha)));
  if (dtau_du) *dtau_du = unit_i<Real>() / B_.log_derivative(t) * C(Real(hi) - Real(lo));
  return t;
}

template <class Real>
std::vector<typename DiscretizedContour<Real>::TracePoint> DiscretizedContour<Real>::trace_points(std::size_t k,
                                                                                                int count) const {
  std::vector<TracePoint> out;
  for (int m = 0; m < count; ++m) {
    Real u = (Real(m) + Real(0.5)) / Real(count);
    C dt;
    C t = tau_at(k, u, &dt);
    C T = (C(1) - C(1) / (t * t)) / C(2) * dt;
    C nu = unit_i<Real>() * T / C(cabs(T));
    out.push_back({joukovski(t), nu, t, k});
  }
  return out;
}

template class DiscretizedContour<real256>;
template class DiscretizedContour<real512>;

}  // namespace spade
