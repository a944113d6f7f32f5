#pragma once

#include <string>
#include <vector>

#include "spade/numerics.hpp"

namespace spade {

enum class ArcKind { Segment, CircularArc, Teardrop, Bezier };

// Smooth arc s : [0,1] -> C with s(0) = -1 and s(1) = 1 exactly.
class ArcPath {
 public:
  static ArcPath segment();
  // Circle through -1, 1 and i*height (height != 0).
  static ArcPath circular_arc(double height);
  static ArcPath lower_semicircle() { return circular_arc(-1.0); }
  // Polar teardrop around (x*+1)/2 passing through x*; needs x* > 1.5.
  static ArcPath teardrop(double x_star);
  // Bezier curve; first and last control points are forced to -1 and 1.
  static ArcPath bezier(std::vector<cd> control);

  ArcKind kind() const { return kind_; }
  std::string describe() const;
  int sample_count() const { return samples_; }
  const std::vector<double>& params() const { return par_; }
  const std::vector<cd>& control_points() const { return ctrl_; }

  // Upper bound for |s'(t)| on [0,1].
  double speed_bound() const { return speed_; }

  template <class Real>
  cplx<Real> point(const Real& t) const;
  template <class Real>
  cplx<Real> tangent(const Real& t) const;

  std::vector<cd> polyline(int segments) const;
  const std::vector<cd>& samples() const { return poly_; }

  // Sampled check that the arc does not cross itself; throws InvalidArc.
  void validate() const;

  bool operator==(const ArcPath& o) const {
    return kind_ == o.kind_ && par_ == o.par_ && ctrl_ == o.ctrl_;
  }

 private:
  ArcPath(ArcKind k, std::vector<double> p, std::vector<cd> c);

  ArcKind kind_;
  std::vector<double> par_;
  std::vector<cd> ctrl_;
  int samples_ = 4096;
  double speed_ = 2;
  std::vector<cd> poly_;
};

template <class Real>
cplx<Real> ArcPath::point(const Real& t) const {
  using C = cplx<Real>;
  using std::atan2;
  using std::cos;
  using std::sin;
  if (t == Real(0)) return C(-1);
  if (t == Real(1)) return C(1);
  switch (kind_) {
    case ArcKind::Segment:
      return C(2 * t - 1);
    case ArcKind::CircularArc: {
      Real h(par_[0]);
      Real k = (h * h - 1) / (2 * h);
      Real r = h > 0 ? h - k : k - h;
      Real a0 = atan2(-k, Real(-1));
      Real a1 = atan2(-k, Real(1));
      Real am = h > k ? pi<Real>() / 2 : -pi<Real>() / 2;
      Real two_pi = 2 * pi<Real>();
      auto wrap = [&](Real x) {
        while (x < 0) x += two_pi;
        while (x >= two_pi) x -= two_pi;
        return x;
      };
      Real d = wrap(a1 - a0);
      if (!(wrap(am - a0) < d)) d -= two_pi;
      Real th = a0 + d * t;
      return make_complex<Real>(r * cos(th), k + r * sin(th));
    }
    case ArcKind::Teardrop: {
      Real xs(par_[0]);
      Real c = (xs + 1) / 2, a = (xs - 1) / 2;
      Real p = pi<Real>();
      Real th = p * (1 - 2 * t);
      Real R = a + th / p + th * th / (p * p);
      return make_complex<Real>(c + R * cos(th), R * sin(th));
    }
    case ArcKind::Bezier: {
      std::vector<C> b;
      for (auto& q : ctrl_) b.push_back(lift<Real>(q));
      for (std::size_t m = b.size() - 1; m > 0; --m)
        for (std::size_t j = 0; j < m; ++j) b[j] = b[j] * C(1 - t) + b[j + 1] * C(t);
      return b[0];
    }
  }
  return C(0);
}

template <class Real>
cplx<Real> ArcPath::tangent(const Real& t) const {
  using C = cplx<Real>;
  using std::atan2;
  using std::cos;
  using std::sin;
  switch (kind_) {
    case ArcKind::Segment:
      return C(2);
    case ArcKind::CircularArc: {
      Real h(par_[0]);
      Real k = (h * h - 1) / (2 * h);
      Real r = h > 0 ? h - k : k - h;
      Real a0 = atan2(-k, Real(-1));
      Real a1 = atan2(-k, Real(1));
      Real am = h > k ? pi<Real>() / 2 : -pi<Real>() / 2;
      Real two_pi = 2 * pi<Real>();
      auto wrap = [&](Real x) {
        while (x < 0) x += two_pi;
        while (x >= two_pi) x -= two_pi;
        return x;
      };
      Real d = wrap(a1 - a0);
      if (!(wrap(am - a0) < d)) d -= two_pi;
      Real th = a0 + d * t;
      return make_complex<Real>(-r * d * sin(th), r * d * cos(th));
    }
    case ArcKind::Teardrop: {
      Real xs(par_[0]);
      Real a = (xs - 1) / 2;
      Real p = pi<Real>();
      Real th = p * (1 - 2 * t);
      Real R = a + th / p + th * th / (p * p);
      Real dR = 1 / p + 2 * th / (p * p);
      // d/dt = -2*pi d/dtheta
      C e = make_complex<Real>(cos(th), sin(th));
      return C(-2 * p) * make_complex<Real>(dR, R) * e;
    }
    case ArcKind::Bezier: {
      std::vector<C> b;
      for (std::size_t j = 0; j + 1 < ctrl_.size(); ++j) b.push_back(lift<Real>(ctrl_[j + 1] - ctrl_[j]));
      const double m = static_cast<double>(ctrl_.size() - 1);
      for (std::size_t q = b.size() - 1; q > 0; --q)
        for (std::size_t j = 0; j < q; ++j) b[j] = b[j] * C(1 - t) + b[j + 1] * C(t);
      return b[0] * C(m);
    }
  }
  return C(0);
}

template <class C>
C joukovski(const C& zeta) {
  if (zeta == C(0)) throw Error(ErrorCode::PoleAtOrigin, "Joukovski map at 0");
  return (zeta + C(1) / zeta) / C(2);
}

// Distance from z to the sampled arc polyline.
double distance_to_polyline(const std::vector<cd>& poly, cd z, bool closed);
double distance_to_arc(const ArcPath& arc, cd z);

// Winding of a closed polyline around z; OnCurve within 1e-14 of it.
int winding_number(const std::vector<cd>& closed_polyline, cd z);

// Total change of arg(s(t) - z) for t from 0 to 1, by adaptive subdivision
// that only takes a principal-arg step once the piece is provably short
// compared to its distance from z. OnCut when z is closer to the arc than
// the working type can resolve.
template <class Real>
Real arc_arg_increment(const ArcPath& arc, const cplx<Real>& z) {
  using C = cplx<Real>;
  const Real speed(arc.speed_bound());
  const Real tmin = ldexp2<Real>(-static_cast<int>(scalar_traits<Real>::bits) + 8);
  Real total(0);
  struct Piece {
    Real t0, t1;
    C d0, d1;
  };
  std::vector<Piece> stack;
  C d0 = arc.point(Real(0)) - z, d1 = arc.point(Real(1)) - z;
  if (d0 == C(0) || d1 == C(0)) throw Error(ErrorCode::OnCut, "point is an arc endpoint");
  stack.push_back({Real(0), Real(1), d0, d1});
  while (!stack.empty()) {
    Piece p = stack.back();
    stack.pop_back();
    Real m0 = cabs(p.d0), m1 = cabs(p.d1);
    Real len = speed * (p.t1 - p.t0);
    if (2 * len < (m0 < m1 ? m0 : m1)) {
      total += carg(p.d1 / p.d0);
      continue;
    }
    if (p.t1 - p.t0 < tmin) throw Error(ErrorCode::OnCut, "point lies on the arc");
    Real tm = (p.t0 + p.t1) / 2;
    C dm = arc.point(tm) - z;
    if (dm == C(0)) throw Error(ErrorCode::OnCut, "point lies on the arc");
    // Pushed in reverse so pieces are consumed left to right.
    stack.push_back({tm, p.t1, dm, p.d1});
    stack.push_back({p.t0, tm, p.d0, dm});
  }
  return total;
}

// Parity of the winding of L followed by the segment from 1 back to -1.
// Points exactly on (-1,1) take the upper-side value of the segment term.
template <class Real>
int cut_winding(const cplx<Real>& z, const ArcPath& cut) {
  using C = cplx<Real>;
  Real inc;
  if (distance_to_arc(cut, to_cd(z)) > 1e-9)
    inc = Real(arc_arg_increment<double>(cut, to_cd(z)));
  else
    inc = arc_arg_increment<Real>(cut, z);
  Real seg;
  if (im(z) == 0 && re(z) > -1 && re(z) < 1)
    seg = -pi<Real>();
  else
    seg = carg((C(-1) - z) / (C(1) - z));
  using std::round;
  return static_cast<int>(static_cast<double>(round((inc + seg) / (2 * pi<Real>()))));
}

// w_L(z): sqrt(z^2-1) ~ z at infinity, cut along L.
template <class Real>
cplx<Real> branch_w(const cplx<Real>& z, const ArcPath& cut) {
  using C = cplx<Real>;
  if (z == C(1) || z == C(-1)) throw Error(ErrorCode::OnCut, "branch point");
  C p = csqrt(z - C(1)) * csqrt(z + C(1));
  if (cut.kind() == ArcKind::Segment) {
    if (im(z) == 0 && re(z) > -1 && re(z) < 1) throw Error(ErrorCode::OnCut, "point on [-1,1]");
    return p;
  }
  int w = cut_winding<Real>(z, cut);
  return (w % 2 != 0) ? C(-p) : p;
}

// phi_L(z) = z - w_L(z), evaluated without cancellation.
template <class Real>
cplx<Real> phi_map(const cplx<Real>& z, const ArcPath& cut) {
  using C = cplx<Real>;
  C w = branch_w<Real>(z, cut);
  C a = z - w, b = z + w;
  if (cabs(a) < cabs(b)) return C(1) / b;
  return a;
}

enum class RegionTag { U_u, U_b };
const char* to_string(RegionTag t);

// U_b iff L followed by reversed delta0 winds around z.
RegionTag classify_point(const ArcPath& L, const ArcPath& delta0, cd z);
RegionTag classify_point(const ArcPath& L, const std::vector<cd>& delta0_polyline, cd z);

// Closed contour in the zeta plane with exact nodes and differentials,
// used for every periodic-rule Cauchy integral.
template <class Real>
struct ClosedContour {
  using C = cplx<Real>;
  std::vector<C> tau;
  std::vector<C> dtau;  // d tau at each node, already scaled by the rule
  std::vector<cd> poly;  // double copy of tau
  std::vector<double> spacing;  // |tau_{j+1} - tau_j|

  std::size_t size() const { return tau.size(); }
  void finish() {
    poly.clear();
    spacing.clear();
    for (auto& t : tau) poly.push_back(to_cd(t));
    for (std::size_t j = 0; j < poly.size(); ++j) spacing.push_back(std::abs(poly[(j + 1) % poly.size()] - poly[j]));
  }
  // Index of the nearest node and the distance to it.
  std::pair<std::size_t, double> nearest(cd b) const {
    std::size_t best = 0;
    double d = 1e300;
    for (std::size_t j = 0; j < poly.size(); ++j) {
      double e = std::abs(poly[j] - b);
      if (e < d) {
        d = e;
        best = j;
      }
    }
    return {best, d};
  }
};

// (1/2 pi i) \oint g(tau)/(tau - b) dtau from node values. Near the contour
// the integrand is regularized with g(b) and the known index of b.
template <class Real>
cplx<Real> cauchy_sum(const ClosedContour<Real>& c, const std::vector<cplx<Real>>& g, const cplx<Real>& b,
                      const cplx<Real>* g_at_b, int index) {
  using C = cplx<Real>;
  const C two_pi_i = make_complex<Real>(Real(0), 2 * pi<Real>());
  C s(0);
  if (g_at_b) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      C d = c.tau[j] - b;
      if (d == C(0)) throw Error(ErrorCode::OnContour, "evaluation point is a quadrature node");
      s += (g[j] - *g_at_b) / d * c.dtau[j];
    }
    return s / two_pi_i + *g_at_b * C(index);
  }
  for (std::size_t j = 0; j < c.size(); ++j) s += g[j] / (c.tau[j] - b) * c.dtau[j];
  return s / two_pi_i;
}

// True when b is close enough to the nodes that the plain rule loses digits.
template <class Real>
bool needs_subtraction(const ClosedContour<Real>& c, cd b) {
  auto [j, d] = c.nearest(b);
  return d < 40.0 * std::max(c.spacing[j], c.spacing[(j + c.size() - 1) % c.size()]);
}

// J^{-1}(L) as a closed loop: tau = phi_{L+}(s) on the way out, 1/tau back.
// The cosine substitution t = (1 - cos theta)/2 makes the loop analytic in
// theta so the periodic rule converges geometrically.
template <class Real>
ClosedContour<Real> preimage_loop(const ArcPath& L, int nodes);

// Normal-offset boundary value with one Richardson step:
// f(s + 0) ~ 2 f(s + eps nu) - f(s + 2 eps nu).
template <class Real, class F>
auto one_sided_trace(F&& f, const cplx<Real>& s, const cplx<Real>& nu, const Real& eps, int side) {
  cplx<Real> h = nu * cplx<Real>(eps * Real(side));
  return cplx<Real>(2) * f(s + h) - f(s + cplx<Real>(2) * h);
}

}  // namespace spade
