#include "spade/asymptotics.hpp"

#include <cmath>

namespace spade {

template <class Real>
OuterFunction<Real>::OuterFunction(std::shared_ptr<const SzegoEvaluator<Real>> se, const SchemeSpec& s, int n)
    : se_(std::move(se)), dc_(&se_->weighted().contour()), n_(n), E_(expand(s, 2 * n)) {
  const ArcPath& L = dc_->geometry().gamma.L;
  PhiTable<Real> phiL(E_, L);
  InterpolationMultiSet zero_part, pole_part;
  for (const auto& e : E_.finite_entries()) {
    const C a = dc_->phi(lift<Real>(e.point.value));
    const C aL = phiL(e.point.value);
    const cd ad = to_cd(a), ld = to_cd(aL);
    if (std::abs(ad - ld) <= 1e-8 * std::max(1.0, std::abs(ld))) {
      zero_part.add(e.point, e.multiplicity);
      poles_.push_back({aL, e.multiplicity});
    } else if (std::abs(ad * ld - 1.0) <= 1e-8) {
      pole_part.add(e.point, e.multiplicity);
      zeros_.push_back({aL, e.multiplicity});
    } else {
      throw Error(ErrorCode::BranchInconsistency,
                  "b_2n has neither a zero nor a pole at " + e.point.label());
    }
  }
  v0_ = v_polynomial<Real>(zero_part);
  vinf_ = v_polynomial<Real>(pole_part);
  p_ = n - vinf_.degree();

  C c2 = ipow(C(-2), v0_.degree() - vinf_.degree());
  for (auto& [a, m] : poles_) c2 *= ipow(a, m);
  for (auto& [a, m] : zeros_) c2 /= ipow(a, m);
  c_ = csqrt(c2);
  B_ = Blaschke<Real>(E_, phiL);

  // Leading behaviour at infinity, where zeta ~ 1/(2z).
  C U0(1);
  for (auto& [a, m] : zeros_) U0 *= ipow(C(-a), m);
  const C S_inf = se_->at_infinity();
  const C two_p = ipow(C(2), p_);
  const C inv_gamma = dc_->sigma() > 0 ? C(S_inf * two_p / (c_ * U0)) : C(c_ * U0 / (two_p * S_inf));
  gamma_ = C(1) / inv_gamma;
}

template <class Real>
cplx<Real> OuterFunction<Real>::T(const C& zeta) const {
  C r = c_ * ipow(zeta, p_);
  for (auto& [a, m] : zeros_) r *= ipow(C(zeta - a), m);
  for (auto& [a, m] : poles_) r /= ipow(C(C(1) - zeta * a), m);
  return r;
}

template <class Real>
cplx<Real> OuterFunction<Real>::b(const C& z) const {
  return B_.value(dc_->phi(z));
}

template <class Real>
cplx<Real> OuterFunction<Real>::psi(const C& z) const {
  const C a = dc_->phi(z);
  const C S = (*se_)(z);
  if (dc_->region_of_phi(a) == RegionLabel::D0) return vinf_(z) / T(a) * S;
  return v0_(z) * T(a) / S;
}

template <class Real>
cplx<Real> OuterFunction<Real>::gamma_from_probe() const {
  const double th = 0.3;
  const double radii[3] = {1e2, 1e3, 1e4};
  C h[3], f[3];
  for (int k = 0; k < 3; ++k) {
    C z = lift<Real>(std::polar(radii[k], th));
    h[k] = C(1) / z;
    f[k] = psi(z) / ipow(z, n_);
  }
  // Neville to h = 0.
  for (int level = 1; level < 3; ++level)
    for (int k = 2; k >= level; --k) f[k] = (h[k - level] * f[k] - h[k] * f[k - 1]) / (h[k - level] - h[k]);
  return C(1) / f[2];
}

template <class Real>
cplx<Real> OuterFunction<Real>::predicted_error(const C& z) const {
  const C a = dc_->phi(z);
  const C S = (*se_)(z);
  const C w = DiscretizedContour<Real>::w_from_phi(a);
  const C bb = B_.value(a);
  if (dc_->region_of_phi(a) == RegionLabel::D0) return bb / (S * S * w);
  return C(-S * S) / (bb * w);
}

std::vector<cd> default_test_points(const SymmetricContour& sc, const InterpolationMultiSet& base, int count,
                                    double min_dist) {
  auto clear = [&](cd z) {
    if (sc.distance(z) < min_dist) return false;
    for (auto& e : base.finite_entries())
      if (std::abs(z - e.point.value) < min_dist) return false;
    return true;
  };
  std::vector<cd> K;
  for (const auto& r : sc.regions.regions)
    if (r.label == RegionLabel::Dinf && std::isfinite(std::abs(r.sample_z)) && clear(r.sample_z) &&
        static_cast<int>(K.size()) < count / 2)
      K.push_back(r.sample_z);
  const int need = count - static_cast<int>(K.size());
  for (int k = 0; k < need; ++k) {
    const double th = 2 * M_PI * (k + 0.25) / need;
    double r = 1.4 + 0.6 * (k % 3);
    cd z = std::polar(r, th);
    while (!clear(z)) z = std::polar(r += 0.25, th);
    K.push_back(z);
  }
  return K;
}

namespace {

double fit_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

template <class Real>
AsymptoticsReport convergence_report(std::shared_ptr<const SzegoEvaluator<Real>> se, const SchemeSpec& s,
                                     const std::vector<int>& n_list, const std::vector<cd>& K) {
  using C = cplx<Real>;
  AsymptoticsReport rep;
  rep.K = K;
  auto wc = se->weighted_ptr();
  const auto& dc = wc->contour();
  for (int n : n_list) {
    AsymptoticsRow row;
    row.n = n;
    try {
      auto ps = solve_pade(*wc, s, n, n, false);
      row.degree = ps.q.degree();
      for (double r : ps.orthogonality_residual) row.orthogonality = std::max(row.orthogonality, r);
      SecondKind<Real> sk(wc, ps);
      OuterFunction<Real> of(se, s, n);
      const C g2 = of.gamma() * of.gamma();
      for (cd zd : K) {
        const C z = lift<Real>(zd);
        const C q = ps.q(z), N = of.normalized(z), R = sk(z);
        const C a = dc.phi(z);
        const C sign(dc.region_of_phi(a) == RegionLabel::D0 ? 1 : -1);
        row.dev1 = std::max(row.dev1, static_cast<double>(cabs(C(q / N - C(1)))));
        row.dev2 = std::max(row.dev2,
                            static_cast<double>(cabs(C(R * DiscretizedContour<Real>::w_from_phi(a) * N / g2 - sign))));
        const C err = ps.v(z) * R / q;
        row.dev3 = std::max(row.dev3, static_cast<double>(cabs(C(err / of.predicted_error(z) - C(1)))));
      }
    } catch (const Error& e) {
      row.error = e.what();
    }
    rep.rows.push_back(row);
  }
  std::vector<std::pair<double, double>> p1, p2, p3;
  bool all_ok = !rep.rows.empty();
  for (auto& r : rep.rows) {
    if (!r.error.empty()) {
      all_ok = false;
      continue;
    }
    if (r.dev1 > 0) p1.push_back({double(r.n), std::log(r.dev1)});
    if (r.dev2 > 0) p2.push_back({double(r.n), std::log(r.dev2)});
    if (r.dev3 > 0) p3.push_back({double(r.n), std::log(r.dev3)});
  }
  rep.slope1 = fit_slope(p1);
  rep.slope2 = fit_slope(p2);
  rep.slope3 = fit_slope(p3);
  auto mono = [&](double AsymptoticsRow::*f) {
    if (!all_ok) return false;
    for (std::size_t k = 1; k < rep.rows.size(); ++k)
      if (!(rep.rows[k].*f < rep.rows[k - 1].*f)) return false;
    return true;
  };
  rep.monotone1 = mono(&AsymptoticsRow::dev1);
  rep.monotone2 = mono(&AsymptoticsRow::dev2);
  rep.monotone3 = mono(&AsymptoticsRow::dev3);
  return rep;
}

template <class Real>
double boundary_defect(const OuterFunction<Real>& of, int samples) {
  using C = cplx<Real>;
  const auto& wc = of.szego().weighted();
  const auto& dc = wc.contour();
  const Real eps = ldexp2<Real>(-dc.context().bits / 4);
  const C g2 = of.gamma() * of.gamma();
  auto N = [&](const C& z) { return of.normalized(z); };
  double worst = 0;
  for (std::size_t k = 0; k < dc.components().size(); ++k)
    for (const auto& tp : dc.trace_points(k, samples)) {
      const C Np = one_sided_trace<Real>(N, tp.s, tp.normal, eps, +1);
      const C Nm = one_sided_trace<Real>(N, tp.s, tp.normal, eps, -1);
      const C target = g2 * of.v0()(tp.s) * of.vinf()(tp.s) / wc.density()(tp.s);
      worst = std::max(worst, static_cast<double>(cabs(C(Np * Nm / target - C(1)))));
    }
  return worst;
}

template <class Real>
double prop1_check(const InterpPoint& e, double radius, const WeightedContour<Real>& wc, const ArcTransform<Real>& tl,
                   const ArcPath& L) {
  using C = cplx<Real>;
  const auto& sc = wc.contour().geometry();
  cd center(0, 0);
  double r = radius;
  if (e.at_infinity) {
    r = 1 / radius;
    double reach = 0;
    for (cd p : L.polyline(512)) reach = std::max(reach, std::abs(p));
    for (cd p : sc.delta0) reach = std::max(reach, std::abs(p));
    for (auto& lp : sc.loops)
      for (cd p : lp) reach = std::max(reach, std::abs(p));
    if (reach >= r) throw Error(ErrorCode::GeometryViolation, "circle around infinity crosses L or Delta");
  } else {
    center = e.value;
    const double dL = distance_to_arc(L, center), dD = sc.distance(center);
    if (dL <= radius || dD <= radius)
      throw Error(ErrorCode::GeometryViolation,
                  "circle of radius " + std::to_string(radius) + " around " + e.label() + " crosses " +
                      (dL <= radius ? "L" : "Delta") + " (distance " + std::to_string(std::min(dL, dD)) + ")");
  }
  double worst = 0;
  for (int k = 0; k < 64; ++k) {
    const C z = lift<Real>(center + std::polar(r, 2 * M_PI * (k + 0.5) / 64));
    worst = std::max(worst, static_cast<double>(cabs(C(tl(z) - wc.markov(z)))));
  }
  return worst;
}

double prop1_auto_radius(const InterpPoint& e, const SymmetricContour& sc, const ArcPath& L, double cap) {
  if (e.at_infinity) {
    double reach = 0;
    for (cd p : L.polyline(512)) reach = std::max(reach, std::abs(p));
    for (cd p : sc.delta0) reach = std::max(reach, std::abs(p));
    for (auto& lp : sc.loops)
      for (cd p : lp) reach = std::max(reach, std::abs(p));
    return std::min(cap, 0.5 / reach);
  }
  return std::min(cap, 0.5 * std::min(distance_to_arc(L, e.value), sc.distance(e.value)));
}

template <class Real>
std::optional<NegativeControl> prop1_negative_control(const WeightedContour<Real>& wc, const ArcTransform<Real>& tl,
                                                      const ArcPath& L) {
  using C = cplx<Real>;
  const auto& sc = wc.contour().geometry();
  std::optional<cd> best;
  double best_clear = 0.05;
  for (int i = -24; i <= 24; ++i)
    for (int j = -24; j <= 24; ++j) {
      const cd z(0.05 * i, 0.05 * j);
      const double clear_ = std::min(distance_to_arc(L, z), sc.distance(z));
      if (clear_ <= best_clear) continue;
      bool inside_loop = false;
      for (auto& lp : sc.loops) inside_loop = inside_loop || point_in_polygon(lp, z);
      if (inside_loop) continue;
      try {
        if (classify_point(L, sc.delta0, z) != RegionTag::U_b) continue;
      } catch (const Error&) {
        continue;
      }
      best = z;
      best_clear = clear_;
    }
  if (!best) return std::nullopt;
  const C z = lift<Real>(*best);
  NegativeControl nc;
  nc.z = *best;
  nc.defect = static_cast<double>(cabs(C(tl(z) - wc.markov(z))));
  nc.expected = static_cast<double>(cabs(C(wc.density()(z) / wc.contour().w(z))));
  return nc;
}

#define SPADE_INSTANTIATE(R)                                                                                    \
  template class OuterFunction<R>;                                                                              \
  template AsymptoticsReport convergence_report<R>(std::shared_ptr<const SzegoEvaluator<R>>, const SchemeSpec&, \
                                                   const std::vector<int>&, const std::vector<cd>&);            \
  template double boundary_defect<R>(const OuterFunction<R>&, int);                                             \
  template double prop1_check<R>(const InterpPoint&, double, const WeightedContour<R>&, const ArcTransform<R>&, \
                                 const ArcPath&);                                                               \
  template std::optional<NegativeControl> prop1_negative_control<R>(const WeightedContour<R>&,                  \
                                                                    const ArcTransform<R>&, const ArcPath&);

SPADE_INSTANTIATE(real256)
SPADE_INSTANTIATE(real512)

}  // namespace spade
