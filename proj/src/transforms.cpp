#include "spade/transforms.hpp"

#include <cmath>

namespace spade {

template <class Real>
WeightedContour<Real>::WeightedContour(std::shared_ptr<const DiscretizedContour<Real>> dc, const DensitySpec& d,
                                       std::optional<int> sigma_override)
    : dc_(std::move(dc)), rho_(d), sigma_(sigma_override.value_or(dc_->sigma())) {
  if (sigma_ != 1 && sigma_ != -1) throw Error(ErrorCode::InvalidArgument, "sigma must be +1 or -1");
  const C two_pi_i = make_complex<Real>(Real(0), 2 * pi<Real>());
  const auto& comps = dc_->components();
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& q = comps[k];
    std::vector<C> r(q.size()), K(q.size());
    const C coef = k == 0 ? C(Real(-sigma_) / 2) : C(-1);
    for (std::size_t j = 0; j < q.size(); ++j) {
      r[j] = rho_(q.s[j]);
      K[j] = coef * q.dtau[j] / (two_pi_i * q.tau[j]);
    }
    scan_nonvanishing<Real>(rho_, q.s, dc_->context().rank_tol);
    if (k > 0) {
      int wnd = rho_winding<Real>(q.s, rho_);
      if (wnd != 0)
        throw Error(ErrorCode::AssumptionViolated, "density winds " + std::to_string(wnd) + " times along loop " +
                                                       std::to_string(q.index) + " (Assumption 2)");
    }
    rho_nodes_.push_back(std::move(r));
    kernel_.push_back(std::move(K));
  }
}

template <class Real>
cplx<Real> WeightedContour<Real>::integral(const NodeTable<Real>& F) const {
  C s(0);
  for (std::size_t k = 0; k < kernel_.size(); ++k)
    for (std::size_t j = 0; j < kernel_[k].size(); ++j) s += kernel_[k][j] * F[k][j];
  return s;
}

template <class Real>
cplx<Real> WeightedContour<Real>::bracket(const NodeTable<Real>& g, const NearValue<Real>& near, const C& z,
                                          const C& a) const {
  const auto& comps = dc_->components();
  auto ck = [&](std::size_t k, const C& b, int ind) {
    const auto& q = comps[k];
    const cd bd = to_cd(b);
    if (needs_subtraction(q, bd)) {
      C gb = near(z, k, q.nearest(bd).first);
      return cauchy_sum(q, g[k], b, &gb, ind);
    }
    return cauchy_sum<Real>(q, g[k], b, nullptr, 0);
  };
  C total(0);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const int ind = k == 0 ? 1 : dc_->index(k, a);
    C part = ck(k, a, ind);
    if (a != C(0)) part -= ck(k, C(1) / a, 0);
    total += (k == 0 ? C(Real(sigma_) / 2) : C(1)) * part;
  }
  return total;
}

template <class Real>
cplx<Real> WeightedContour<Real>::cauchy(const NodeTable<Real>& F, const NearValue<Real>& near, const C& z) const {
  C a = dc_->phi(z);
  return bracket(F, near, z, a) / DiscretizedContour<Real>::w_from_phi(a);
}

template <class Real>
cplx<Real> WeightedContour<Real>::markov(const C& z) const {
  NearValue<Real> near = [this](const C& x, std::size_t, std::size_t) { return rho_(x); };
  return cauchy(rho_nodes_, near, z);
}

template <class Real>
cplx<Real> WeightedContour<Real>::markov_at_infinity_scaled() const {
  NearValue<Real> near = [this](const C& x, std::size_t, std::size_t) { return rho_(x); };
  return bracket(rho_nodes_, near, C(0), C(0));
}

template <class Real>
ArcTransform<Real>::ArcTransform(const ArcPath& L, const DensitySpec& d, int nodes)
    : L_(L), rho_(d), loop_(preimage_loop<Real>(L, nodes)) {
  for (auto& t : loop_.tau) g_.push_back(rho_(joukovski(t)));
}

template <class Real>
cplx<Real> ArcTransform<Real>::operator()(const C& z) const {
  C a = phi_map<Real>(z, L_);
  C w = (C(1) / a - a) / C(2);
  auto ck = [&](const C& b, int ind) {
    if (needs_subtraction(loop_, to_cd(b))) {
      C gb = rho_(z);
      return cauchy_sum(loop_, g_, b, &gb, ind);
    }
    return cauchy_sum<Real>(loop_, g_, b, nullptr, 0);
  };
  return (ck(a, 1) - ck(C(1) / a, 0)) / (C(2) * w);
}

template <class Real>
SzegoEvaluator<Real>::SzegoEvaluator(std::shared_ptr<const WeightedContour<Real>> wc) : wc_(std::move(wc)) {
  const Real two_pi = 2 * pi<Real>();
  using std::round;
  auto nearest_branch = [two_pi](const C& L, const C& ref) {
    Real k = round((im(ref) - im(L)) / two_pi);
    return L + make_complex<Real>(Real(0), k * two_pi);
  };
  const auto& rho = wc_->rho_nodes();
  for (std::size_t k = 0; k < rho.size(); ++k) {
    std::vector<C> L(rho[k].size());
    L[0] = clog(rho[k][0]);
    for (std::size_t j = 1; j < L.size(); ++j) {
      L[j] = nearest_branch(clog(rho[k][j]), L[j - 1]);
      max_jump_ = std::max(max_jump_, std::abs(static_cast<double>(im(L[j]) - im(L[j - 1]))));
    }
    const double closing = std::abs(static_cast<double>(im(L.front()) - im(L.back())));
    max_jump_ = std::max(max_jump_, closing);
    if (closing >= M_PI)
      throw Error(ErrorCode::AssumptionViolated, "log density branch does not close on component " + std::to_string(k));
    logs_.push_back(std::move(L));
  }
  near_ = [this, nearest_branch](const C& z, std::size_t k, std::size_t j) {
    return nearest_branch(clog(wc_->density()(z)), logs_[k][j]);
  };
}

template <class Real>
cplx<Real> SzegoEvaluator<Real>::operator()(const C& z) const {
  C a = wc_->contour().phi(z);
  return cexp(C(-wc_->bracket(logs_, near_, z, a)));
}

template <class Real>
cplx<Real> SzegoEvaluator<Real>::at_infinity() const {
  return cexp(C(-wc_->bracket(logs_, near_, C(0), C(0))));
}

template <class Real>
std::vector<JumpDefect> verify_szego_jumps(const SzegoEvaluator<Real>& se, int samples, double eps_scale) {
  using C = cplx<Real>;
  const auto& wc = se.weighted();
  const auto& dc = wc.contour();
  const Real eps = Real(std::exp2(-dc.context().bits / 4.0) * eps_scale);
  auto S = [&](const C& z) { return se(z); };
  std::vector<JumpDefect> out;
  for (std::size_t k = 0; k < dc.components().size(); ++k) {
    JumpDefect jd;
    jd.component = dc.components()[k].index;
    for (const auto& tp : dc.trace_points(k, samples)) {
      C sp = one_sided_trace<Real>(S, tp.s, tp.normal, eps, +1);
      C sm = one_sided_trace<Real>(S, tp.s, tp.normal, eps, -1);
      C r = wc.density()(tp.s);
      double d;
      if (k == 0)
        d = static_cast<double>(cabs(sp * sm * (wc.true_sigma() > 0 ? r : C(1) / r) - C(1)));
      else {
        // S jumps by rho^{-(index change of phi)} across a loop.
        const C step = C(4 * eps) * tp.normal;
        const int ip = dc.index(k, dc.phi(C(tp.s + step))), im_ = dc.index(k, dc.phi(C(tp.s - step)));
        const int jump = ip - im_;
        C lhs = sp;
        for (int t = 0; t < std::abs(jump); ++t) lhs = jump > 0 ? C(lhs * r) : C(lhs / r);
        d = static_cast<double>(cabs(lhs - sm) / cabs(sm));
      }
      jd.max_defect = std::max(jd.max_defect, d);
    }
    out.push_back(jd);
  }
  return out;
}

template <class Real>
int rho_winding(const std::vector<cplx<Real>>& loop, const DensityEvaluator<Real>& rho) {
  using C = cplx<Real>;
  std::vector<C> v;
  for (auto& p : loop) {
    v.push_back(rho(p));
    if (v.back() == C(0)) throw Error(ErrorCode::ZeroDensity, "density vanishes on the loop");
  }
  Real total(0);
  for (std::size_t k = 0; k < v.size(); ++k) total += carg(v[(k + 1) % v.size()] / v[k]);
  using std::round;
  return static_cast<int>(static_cast<double>(round(total / (2 * pi<Real>()))));
}

template <class Real>
double check_continuation(const ArcPath& L, const ArcPath& delta0, const DensitySpec& d, const cplx<Real>& z,
                          int sigma, int nodes) {
  using C = cplx<Real>;
  ArcTransform<Real> tL(L, d, nodes);
  if (L == delta0) return 0.0;
  ArcTransform<Real> t0(delta0, d, nodes);
  RegionTag tag = classify_point(L, delta0, to_cd(z));
  C rL = tL(z), r0 = t0(z);
  C jump = DensityEvaluator<Real>(d)(z) / branch_w<Real>(z, delta0);
  C diff;
  if (sigma > 0)
    diff = tag == RegionTag::U_b ? r0 - rL - jump : r0 - rL;
  else
    diff = tag == RegionTag::U_b ? C(-r0) - rL : C(-r0) - rL + jump;
  return static_cast<double>(cabs(diff));
}

template <class Real>
double node_doubling_defect(const SymmetricContour& sc, const DensitySpec& d, const PrecisionContext& ctx,
                            const std::vector<cd>& points) {
  PrecisionContext c2 = make_context(ctx.bits, 2 * ctx.quad_nodes);
  WeightedContour<Real> w1(DiscretizedContour<Real>::build(sc, ctx), d);
  WeightedContour<Real> w2(DiscretizedContour<Real>::build(sc, c2), d);
  double worst = 0;
  for (auto& p : points) {
    auto z = lift<Real>(p);
    auto a = w1.markov(z), b = w2.markov(z);
    worst = std::max(worst, static_cast<double>(cabs(a - b) / cabs(b)));
  }
  return worst;
}

#define SPADE_INSTANTIATE(R)                                                                                    \
  template class WeightedContour<R>;                                                                            \
  template class ArcTransform<R>;                                                                               \
  template class SzegoEvaluator<R>;                                                                             \
  template std::vector<JumpDefect> verify_szego_jumps<R>(const SzegoEvaluator<R>&, int, double);               \
  template int rho_winding<R>(const std::vector<cplx<R>>&, const DensityEvaluator<R>&);                         \
  template double check_continuation<R>(const ArcPath&, const ArcPath&, const DensitySpec&, const cplx<R>&, int, \
                                        int);                                                                   \
  template double node_doubling_defect<R>(const SymmetricContour&, const DensitySpec&, const PrecisionContext&, \
                                          const std::vector<cd>&);

SPADE_INSTANTIATE(real256)
SPADE_INSTANTIATE(real512)

}  // namespace spade
