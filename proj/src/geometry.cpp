#include "spade/geometry.hpp"

#include <cmath>
#include <sstream>

namespace spade {

namespace {

bool segments_cross(cd a, cd b, cd c, cd d) {
  auto cross = [](cd u, cd v) { return u.real() * v.imag() - u.imag() * v.real(); };
  double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

double segment_distance(cd a, cd b, cd z) {
  cd ab = b - a;
  double L2 = std::norm(ab);
  if (L2 == 0) return std::abs(z - a);
  double t = std::clamp(((z - a) * std::conj(ab)).real() / L2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

}  // namespace

ArcPath::ArcPath(ArcKind k, std::vector<double> p, std::vector<cd> c)
    : kind_(k), par_(std::move(p)), ctrl_(std::move(c)) {
  switch (kind_) {
    case ArcKind::Segment: speed_ = 2; break;
    case ArcKind::CircularArc: {
      double h = par_[0];
      double kk = (h * h - 1) / (2 * h);
      double r = std::abs(h - kk);
      speed_ = r * 2 * M_PI * 1.0001;
      break;
    }
    case ArcKind::Teardrop: {
      double a = (par_[0] - 1) / 2;
      speed_ = 2 * M_PI * (3 / M_PI + a + 2) * 1.0001;
      break;
    }
    case ArcKind::Bezier: {
      double m = 0;
      for (std::size_t j = 0; j + 1 < ctrl_.size(); ++j) m = std::max(m, std::abs(ctrl_[j + 1] - ctrl_[j]));
      speed_ = m * static_cast<double>(ctrl_.size() - 1) * 1.0001;
      break;
    }
  }
  poly_ = polyline(samples_);
}

ArcPath ArcPath::segment() { return ArcPath(ArcKind::Segment, {}, {}); }

ArcPath ArcPath::circular_arc(double height) {
  if (!(std::isfinite(height)) || height == 0)
    throw Error(ErrorCode::InvalidArc, "circular arc needs a nonzero midpoint height");
  return ArcPath(ArcKind::CircularArc, {height}, {});
}

ArcPath ArcPath::teardrop(double x_star) {
  if (!(x_star > 1.5) || !std::isfinite(x_star))
    throw Error(ErrorCode::InvalidArc, "teardrop needs x* > 1.5");
  return ArcPath(ArcKind::Teardrop, {x_star}, {});
}

ArcPath ArcPath::bezier(std::vector<cd> control) {
  if (control.size() < 2) throw Error(ErrorCode::InvalidArc, "Bezier arc needs at least two control points");
  control.front() = cd(-1, 0);
  control.back() = cd(1, 0);
  ArcPath a(ArcKind::Bezier, {}, std::move(control));
  a.validate();
  return a;
}

std::string ArcPath::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ArcKind::Segment: os << "segment"; break;
    case ArcKind::CircularArc: os << "circular_arc(height=" << par_[0] << ")"; break;
    case ArcKind::Teardrop: os << "teardrop(x*=" << par_[0] << ")"; break;
    case ArcKind::Bezier: os << "bezier(" << ctrl_.size() << " control points)"; break;
  }
  return os.str();
}

std::vector<cd> ArcPath::polyline(int segments) const {
  std::vector<cd> out;
  out.reserve(segments + 1);
  for (int k = 0; k <= segments; ++k) out.push_back(point<double>(static_cast<double>(k) / segments));
  return out;
}

void ArcPath::validate() const {
  const auto& p = poly_;
  const std::size_t n = p.size();
  const double near = 4.0 * speed_ / samples_;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 2; j + 1 < n; ++j) {
      if (std::abs(p[i] - p[j]) > near) continue;
      if (segments_cross(p[i], p[i + 1], p[j], p[j + 1]))
        throw Error(ErrorCode::InvalidArc, describe() + " crosses itself");
    }
}

double distance_to_polyline(const std::vector<cd>& poly, cd z, bool closed) {
  double d = 1e300;
  const std::size_t n = poly.size();
  if (n == 1) return std::abs(poly[0] - z);
  for (std::size_t k = 0; k + 1 < n; ++k) d = std::min(d, segment_distance(poly[k], poly[k + 1], z));
  if (closed) d = std::min(d, segment_distance(poly[n - 1], poly[0], z));
  return d;
}

double distance_to_arc(const ArcPath& arc, cd z) { return distance_to_polyline(arc.samples(), z, false); }

int winding_number(const std::vector<cd>& poly, cd z) {
  double scale = 0;
  for (auto& p : poly) scale = std::max(scale, std::abs(p));
  if (distance_to_polyline(poly, z, true) <= 1e-14 * std::max(1.0, scale))
    throw Error(ErrorCode::OnCurve, "point lies on the polyline");
  double total = 0;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) total += std::arg((poly[(k + 1) % n] - z) / (poly[k] - z));
  return static_cast<int>(std::lround(total / (2 * M_PI)));
}

const char* to_string(RegionTag t) { return t == RegionTag::U_u ? "U_u" : "U_b"; }

RegionTag classify_point(const ArcPath& L, const ArcPath& delta0, cd z) {
  if (L == delta0) return RegionTag::U_u;
  double inc;
  try {
    inc = arc_arg_increment<double>(L, z) - arc_arg_increment<double>(delta0, z);
  } catch (const Error& e) {
    throw Error(ErrorCode::OnCurve, "classify_point: point on L or delta0");
  }
  return std::lround(inc / (2 * M_PI)) != 0 ? RegionTag::U_b : RegionTag::U_u;
}

RegionTag classify_point(const ArcPath& L, const std::vector<cd>& d0, cd z) {
  double inc;
  try {
    inc = arc_arg_increment<double>(L, z);
  } catch (const Error&) {
    throw Error(ErrorCode::OnCurve, "classify_point: point on L");
  }
  if (distance_to_polyline(d0, z, false) < 1e-14) throw Error(ErrorCode::OnCurve, "classify_point: point on delta0");
  for (std::size_t k = d0.size() - 1; k > 0; --k) inc += std::arg((d0[k - 1] - z) / (d0[k] - z));
  return std::lround(inc / (2 * M_PI)) != 0 ? RegionTag::U_b : RegionTag::U_u;
}

template <class Real>
ClosedContour<Real> preimage_loop(const ArcPath& L, int N) {
  using C = cplx<Real>;
  using std::cos;
  using std::sin;
  if (N < 8 || N % 4 != 0) throw Error(ErrorCode::InvalidArgument, "preimage_loop needs N divisible by 4");
  const Real h = 2 * pi<Real>() / Real(N);
  const int half = N / 2;
  std::vector<C> s(half), ds(half), w(half);
  std::vector<Real> th(half);
  for (int j = 0; j < half; ++j) {
    th[j] = (Real(j) + Real(0.5)) * h;
    Real t = (1 - cos(th[j])) / 2;
    s[j] = L.point(t);
    ds[j] = L.tangent(t);
  }
  // Sign of w_{L+} fixed once from the left side near the middle, then
  // continued node by node.
  const int j0 = half / 2;
  {
    cd sd = to_cd(s[j0]);
    cd nu = cd(0, 1) * to_cd(ds[j0]) / std::abs(to_cd(ds[j0]));
    double off = 1e-7 * std::min(std::abs(sd - 1.0), std::abs(sd + 1.0));
    cd wref = branch_w<double>(sd + off * nu, L);
    C r = csqrt(s[j0] * s[j0] - C(1));
    w[j0] = std::abs(to_cd(r) - wref) <= std::abs(to_cd(r) + wref) ? r : C(-r);
  }
  auto pick = [&](int j, const C& prev) {
    C r = csqrt(s[j] * s[j] - C(1));
    w[j] = cabs(r - prev) <= cabs(r + prev) ? r : C(-r);
  };
  for (int j = j0 + 1; j < half; ++j) pick(j, w[j - 1]);
  for (int j = j0 - 1; j >= 0; --j) pick(j, w[j + 1]);

  ClosedContour<Real> out;
  out.tau.resize(N);
  out.dtau.resize(N);
  for (int j = 0; j < half; ++j) {
    C a = s[j] - w[j], b = s[j] + w[j];
    // a*b = 1; the smaller of the two is taken as a reciprocal.
    const bool small_a = cabs(a) < cabs(b);
    C t1 = small_a ? C(1) / b : a;
    C t2 = small_a ? b : C(1) / a;
    Real st = sin(th[j]) / 2;
    out.tau[j] = t1;
    out.dtau[j] = ds[j] * C(st) / ((C(1) - C(1) / (t1 * t1)) / C(2)) * C(h);
    // theta' = 2 pi - theta: same t, dt/dtheta flips sign.
    int k = N - 1 - j;
    out.tau[k] = t2;
    out.dtau[k] = ds[j] * C(-st) / ((C(1) - C(1) / (t2 * t2)) / C(2)) * C(h);
  }
  out.finish();
  return out;
}

template ClosedContour<real256> preimage_loop<real256>(const ArcPath&, int);
template ClosedContour<real512> preimage_loop<real512>(const ArcPath&, int);
template ClosedContour<double> preimage_loop<double>(const ArcPath&, int);

}  // namespace spade
