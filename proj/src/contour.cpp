#include "spade/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace spade {

namespace {

struct Field {
  Blaschke<double> B;
  double f(cd t) const { return B.log_abs(t); }
  // Gradient of Re log B as a complex number.
  cd grad(cd t) const { return std::conj(B.log_derivative(t)); }
};

cd project(const Field& F, cd t) {
  for (int k = 0; k < 12; ++k) {
    double v = F.f(t);
    cd g = F.grad(t);
    double gg = std::norm(g);
    if (!(gg > 0) || !std::isfinite(v)) break;
    cd step = v * g / gg;
    t -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

cd edge_root(const Field& F, cd p0, cd p1, double f0) {
  double a = 0, b = 1;
  const bool pos0 = f0 > 0;
  for (int it = 0; it < 52; ++it) {
    double m = 0.5 * (a + b);
    double fm = F.f(p0 + m * (p1 - p0));
    if (fm == 0) return p0 + m * (p1 - p0);
    if ((fm > 0) == pos0)
      a = m;
    else
      b = m;
  }
  cd t = p0 + 0.5 * (a + b) * (p1 - p0);
  cd r = project(F, t);
  // Keep the bisection point if Newton wandered off the edge neighborhood.
  return std::abs(r - t) < std::abs(p1 - p0) ? r : t;
}

double segment_distance(cd a, cd b, cd z) {
  cd ab = b - a;
  double L2 = std::norm(ab);
  if (L2 == 0) return std::abs(z - a);
  double t = std::clamp(((z - a) * std::conj(ab)).real() / L2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

cd centroid(const std::vector<cd>& p) {
  cd c = 0;
  for (auto& x : p) c += x;
  return c / static_cast<double>(p.size());
}

void insert_exact(std::vector<cd>& poly, cd target) {
  std::size_t best = 0;
  double d = 1e300;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    double e = segment_distance(poly[k], poly[(k + 1) % n], target);
    if (e < d) {
      d = e;
      best = k;
    }
  }
  // Replace a node that is nearly on top of the target instead of inserting.
  if (std::abs(poly[best] - target) < 1e-9) {
    poly[best] = target;
    return;
  }
  if (std::abs(poly[(best + 1) % n] - target) < 1e-9) {
    poly[(best + 1) % n] = target;
    return;
  }
  poly.insert(poly.begin() + static_cast<std::ptrdiff_t>(best + 1), target);
}

std::vector<cd> refine(const Field& F, const std::vector<cd>& p) {
  std::vector<cd> out;
  out.reserve(2 * p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    out.push_back(p[k]);
    out.push_back(project(F, 0.5 * (p[k] + p[(k + 1) % p.size()])));
  }
  return out;
}

// Numerator of B'/B times tau prod (tau - a)(1 - a tau); its roots are the
// critical points of B away from its zeros and poles.
Polynomial<cd> critical_polynomial(const Blaschke<double>& B) {
  using P = Polynomial<cd>;
  const auto& z = B.zeros();
  auto pair_poly = [](cd a) { return P({-a, 1.0 + a * a, -a}); };  // (tau - a)(1 - a tau)
  P all = P({1.0});
  for (auto& [a, m] : z) all = all * pair_poly(a);
  P num = all * P({static_cast<double>(B.infinite_multiplicity())});
  for (std::size_t e = 0; e < z.size(); ++e) {
    P rest = P({0.0, 1.0});
    for (std::size_t q = 0; q < z.size(); ++q)
      if (q != e) rest = rest * pair_poly(z[q].first);
    cd a = z[e].first;
    P term = rest * P({static_cast<double>(z[e].second) * (1.0 - a * a)});
    typename P::Coeffs c = P::Coeffs::Zero(std::max(num.degree(), term.degree()) + 1);
    for (int k = 0; k <= num.degree(); ++k) c(k) += num[k];
    for (int k = 0; k <= term.degree(); ++k) c(k) += term[k];
    num = P(c);
  }
  return num;
}

}  // namespace

bool point_in_polygon(const std::vector<cd>& poly, cd z) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const cd a = poly[i], b = poly[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

double signed_area(const std::vector<cd>& p) {
  double s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const cd a = p[k], b = p[(k + 1) % p.size()];
    s += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * s;
}

const LevelComponent& LevelCurveSet::component(int l) const {
  for (auto& c : components)
    if (c.index == l) return c;
  throw Error(ErrorCode::InvalidArgument, "no level component with index " + std::to_string(l));
}

Blaschke<double> LevelCurveSet::blaschke() const { return Blaschke<double>(base, PhiTable<double>(base, L)); }

LevelCurveSet trace_level(const InterpolationMultiSet& base, const ArcPath& L, const GridSpec& grid) {
  if (base.total() < 1) throw Error(ErrorCode::InvalidArgument, "trace_level needs a nonempty base");
  if (grid.nx < 16 || grid.ny < 16) throw Error(ErrorCode::GridTooCoarse, "grid below 16x16");
  LevelCurveSet out;
  out.base = base;
  out.L = L;
  Field F{out.blaschke()};

  // Critical points on the level set mean touching components.
  if (!F.B.zeros().empty()) {
    auto cp = critical_polynomial(F.B);
    if (cp.degree() > 0) {
      auto roots = find_roots<double>(cp, make_context(64, 64)).roots;
      for (auto& c : roots) {
        if (std::abs(c) < 1e-9) continue;
        bool singular = false;
        for (auto& [a, m] : F.B.zeros())
          if (std::abs(c - a) < 1e-9 || std::abs(1.0 - a * c) < 1e-9) singular = true;
        if (singular) continue;
        double v = F.f(c);
        if (std::abs(v) < 1e-6) {
          std::ostringstream os;
          os.precision(6);
          os << "critical point of B_N on the level set at zeta=(" << c.real() << "," << c.imag()
             << "); level curves touch";
          throw Error(ErrorCode::SelfIntersection, os.str());
        }
      }
    }
  }

  double R = 1.5;
  for (auto& [a, m] : F.B.zeros())
    if (std::abs(a) > 0) R = std::max({R, std::abs(a), 1.0 / std::abs(a)});
  R *= 1.25;

  const int nx = grid.nx, ny = grid.ny;
  std::vector<double> val;
  double hx = 0, hy = 0, x0 = 0, y0 = 0;
  bool ok = false;
  for (int attempt = 0; attempt < 5 && !ok; ++attempt) {
    hx = 2 * R / nx;
    hy = 2 * R / ny;
    x0 = -R - 0.37 * hx;
    y0 = -R - 0.29 * hy;
    val.assign(static_cast<std::size_t>(nx + 1) * (ny + 1), 0);
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) val[j * (nx + 1) + i] = F.f(cd(x0 + i * hx, y0 + j * hy));
    bool s0 = val[0] > 0;
    ok = true;
    for (int i = 0; i <= nx && ok; ++i)
      if ((val[i] > 0) != s0 || (val[ny * (nx + 1) + i] > 0) != s0) ok = false;
    for (int j = 0; j <= ny && ok; ++j)
      if ((val[j * (nx + 1)] > 0) != s0 || (val[j * (nx + 1) + nx] > 0) != s0) ok = false;
    if (!ok) R *= 1.6;
  }
  if (!ok) throw Error(ErrorCode::GridTooCoarse, "level set reaches the tracing box boundary");
  out.box_half_width = R;
  out.cell = std::max(hx, hy);
  out.merge_tol = 2 * out.cell;

  auto V = [&](int i, int j) { return val[j * (nx + 1) + i]; };
  auto P = [&](int i, int j) { return cd(x0 + i * hx, y0 + j * hy); };
  const int hcount = nx * (ny + 1);
  std::vector<int> node_of(static_cast<std::size_t>(hcount) + (nx + 1) * ny, -1);
  std::vector<cd> nodes;
  auto hnode = [&](int i, int j) {
    int id = j * nx + i;
    if (node_of[id] < 0) {
      node_of[id] = static_cast<int>(nodes.size());
      nodes.push_back(edge_root(F, P(i, j), P(i + 1, j), V(i, j)));
    }
    return node_of[id];
  };
  auto vnode = [&](int i, int j) {
    int id = hcount + j * (nx + 1) + i;
    if (node_of[id] < 0) {
      node_of[id] = static_cast<int>(nodes.size());
      nodes.push_back(edge_root(F, P(i, j), P(i, j + 1), V(i, j)));
    }
    return node_of[id];
  };
  std::vector<std::array<int, 2>> link;
  std::vector<int> nlink;
  auto connect = [&](int a, int b) {
    if (link.size() < nodes.size()) {
      link.resize(nodes.size(), {-1, -1});
      nlink.resize(nodes.size(), 0);
    }
    for (int x : {a, b})
      if (nlink[x] >= 2) throw Error(ErrorCode::GridTooCoarse, "ambiguous chaining at a grid edge");
    link[a][nlink[a]++] = b;
    link[b][nlink[b]++] = a;
  };

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const bool s00 = V(i, j) > 0, s10 = V(i + 1, j) > 0, s11 = V(i + 1, j + 1) > 0, s01 = V(i, j + 1) > 0;
      const bool cb = s00 != s10, cr = s10 != s11, ct = s01 != s11, cl = s00 != s01;
      const int n = cb + cr + ct + cl;
      if (n == 0) continue;
      if (n == 2) {
        std::vector<int> e;
        if (cb) e.push_back(hnode(i, j));
        if (cr) e.push_back(vnode(i + 1, j));
        if (ct) e.push_back(hnode(i, j + 1));
        if (cl) e.push_back(vnode(i, j));
        connect(e[0], e[1]);
      } else {
        const double fc = F.f(P(i, j) + cd(0.5 * hx, 0.5 * hy));
        if ((fc > 0) == s00) {
          connect(hnode(i, j), vnode(i + 1, j));
          connect(vnode(i, j), hnode(i, j + 1));
        } else {
          connect(hnode(i, j), vnode(i, j));
          connect(vnode(i + 1, j), hnode(i, j + 1));
        }
      }
    }
  link.resize(nodes.size(), {-1, -1});
  nlink.resize(nodes.size(), 0);

  std::vector<std::vector<cd>> loops;
  std::vector<bool> seen(nodes.size(), false);
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (seen[s]) continue;
    std::vector<cd> loop;
    int prev = -1, cur = static_cast<int>(s);
    for (;;) {
      if (nlink[cur] != 2) throw Error(ErrorCode::GridTooCoarse, "open level curve chain");
      seen[cur] = true;
      loop.push_back(nodes[cur]);
      int next = link[cur][0] == prev ? link[cur][1] : link[cur][0];
      prev = cur;
      cur = next;
      if (cur == static_cast<int>(s)) break;
      if (seen[cur]) throw Error(ErrorCode::GridTooCoarse, "level curve chain revisits a node");
    }
    loops.push_back(std::move(loop));
  }

  for (auto& lp : loops) {
    for (int k = 0; k < grid.refine_passes; ++k) lp = refine(F, lp);
    while (static_cast<int>(lp.size()) < grid.min_component_nodes) lp = refine(F, lp);
    if (signed_area(lp) < 0) std::reverse(lp.begin(), lp.end());
  }

  // Gamma_0 is the component through +1 and -1.
  auto closest = [&](cd z) {
    std::size_t best = 0;
    double d = 1e300;
    for (std::size_t c = 0; c < loops.size(); ++c) {
      double e = distance_to_polyline(loops[c], z, true);
      if (e < d) {
        d = e;
        best = c;
      }
    }
    return std::make_pair(best, d);
  };
  if (loops.empty()) throw Error(ErrorCode::AssumptionViolated, "no level curve found");
  auto [c_plus, d_plus] = closest(cd(1, 0));
  auto [c_minus, d_minus] = closest(cd(-1, 0));
  if (c_plus != c_minus || d_plus > out.merge_tol || d_minus > out.merge_tol)
    throw Error(ErrorCode::AssumptionViolated, "no single level component passes through +1 and -1");
  std::vector<cd> g0 = loops[c_plus];
  insert_exact(g0, cd(1, 0));
  insert_exact(g0, cd(-1, 0));

  std::vector<std::vector<cd>> inner, outer;
  for (std::size_t c = 0; c < loops.size(); ++c) {
    if (c == c_plus) continue;
    (point_in_polygon(g0, loops[c][0]) ? inner : outer).push_back(loops[c]);
  }
  if (inner.size() != outer.size())
    throw Error(ErrorCode::AssumptionViolated, "level components are not paired by tau -> 1/tau");
  std::sort(inner.begin(), inner.end(), [](const std::vector<cd>& a, const std::vector<cd>& b) {
    cd ca = centroid(a), cb = centroid(b);
    if (ca.real() != cb.real()) return ca.real() < cb.real();
    return ca.imag() < cb.imag();
  });
  out.components.push_back({0, g0});
  for (std::size_t l = 0; l < inner.size(); ++l) out.components.push_back({static_cast<int>(l + 1), inner[l]});
  std::vector<bool> taken(outer.size(), false);
  for (std::size_t l = 0; l < inner.size(); ++l) {
    std::size_t best = 0;
    double d = 1e300;
    for (std::size_t o = 0; o < outer.size(); ++o) {
      if (taken[o]) continue;
      double e = 0;
      const std::size_t step = std::max<std::size_t>(1, inner[l].size() / 16);
      for (std::size_t k = 0; k < inner[l].size(); k += step)
        e = std::max(e, distance_to_polyline(outer[o], 1.0 / inner[l][k], true));
      if (e < d) {
        d = e;
        best = o;
      }
    }
    taken[best] = true;
    out.components.push_back({-static_cast<int>(l + 1), outer[best]});
  }
  out.l_star = static_cast<int>(inner.size());

  // Disjointness, across and within components.
  const double mt = out.merge_tol;
  for (std::size_t a = 0; a < out.components.size(); ++a)
    for (std::size_t b = a + 1; b < out.components.size(); ++b) {
      const auto& pa = out.components[a].nodes;
      const auto& pb = out.components[b].nodes;
      for (auto& x : pa)
        for (auto& y : pb)
          if (std::abs(x - y) < mt)
            throw Error(ErrorCode::SelfIntersection, "level components " + std::to_string(out.components[a].index) +
                                                         " and " + std::to_string(out.components[b].index) +
                                                         " come within the merge tolerance");
    }
  for (auto& comp : out.components) {
    const auto& p = comp.nodes;
    const std::size_t n = p.size();
    std::vector<double> arc(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) arc[k + 1] = arc[k] + std::abs(p[(k + 1) % n] - p[k]);
    const double total = arc[n];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::abs(p[i] - p[j]) >= mt) continue;
        double along = std::min(arc[j] - arc[i], total - (arc[j] - arc[i]));
        if (along > 3 * mt)
          throw Error(ErrorCode::SelfIntersection,
                      "level component " + std::to_string(comp.index) + " pinches within the merge tolerance");
      }
  }
  return out;
}

Assumption1Report validate_assumption1(LevelCurveSet& g, const SchemeSpec& s) {
  if (!(s.base() == g.base)) throw Error(ErrorCode::InvalidArgument, "scheme base differs from the traced base");
  Assumption1Report rep;
  rep.l_star = g.l_star;
  Field F{g.blaschke()};
  PhiTable<double> phi(g.base, g.L);

  for (auto& comp : g.components)
    for (auto& t : comp.nodes) {
      rep.symmetry_defect = std::max(rep.symmetry_defect, std::abs(1.0 - F.B.value(t) * F.B.value(1.0 / t)));
      rep.level_residual = std::max(rep.level_residual, std::abs(std::abs(F.B.value(t)) - 1.0));
    }
  if (rep.symmetry_defect > 1e-10)
    throw Error(ErrorCode::AssumptionViolated, "reciprocal symmetry defect above 1e-10");
  if (rep.level_residual > 1e-12) throw Error(ErrorCode::AssumptionViolated, "level residual above 1e-12");

  for (auto& comp : g.components) {
    const auto& mirror = g.component(-comp.index).nodes;
    const auto& p = comp.nodes;
    for (std::size_t k = 0; k < p.size(); ++k) {
      double sp = std::max(std::abs(p[(k + 1) % p.size()] - p[k]), std::abs(p[k] - p[(k + p.size() - 1) % p.size()]));
      // Spacing measured on the mirror side of the map.
      sp = std::max(sp / std::norm(p[k]), sp);
      rep.reciprocal_distance = std::max(rep.reciprocal_distance, distance_to_polyline(mirror, 1.0 / p[k], true) / sp);
    }
  }
  if (rep.reciprocal_distance > 10)
    throw Error(ErrorCode::AssumptionViolated, "Gamma_{-l} is not the reciprocal of Gamma_l");

  const auto& g0 = g.component(0).nodes;
  rep.endpoint_distance = std::max(distance_to_polyline(g0, 1.0, true), distance_to_polyline(g0, -1.0, true));
  if (rep.endpoint_distance > 1e-12) throw Error(ErrorCode::AssumptionViolated, "+-1 not on Gamma_0");

  rep.min_separation = 1e300;
  for (std::size_t a = 0; a < g.components.size(); ++a)
    for (std::size_t b = a + 1; b < g.components.size(); ++b)
      for (auto& x : g.components[a].nodes)
        rep.min_separation = std::min(rep.min_separation, distance_to_polyline(g.components[b].nodes, x, true));

  // M over the partial products B_i, i < N, on every node.
  double logM = 0;
  for (auto& comp : g.components)
    for (auto& t : comp.nodes) {
      double acc = 0;
      for (std::size_t i = 0; i + 1 < s.enumeration().size(); ++i) {
        const auto& e = s.enumeration()[i];
        if (e.at_infinity)
          acc += std::log(std::abs(t));
        else {
          cd a = phi(e.value);
          acc += std::log(std::abs(t - a)) - std::log(std::abs(1.0 - a * t));
        }
        logM = std::max(logM, std::abs(acc));
      }
    }
  if (!std::isfinite(logM)) throw Error(ErrorCode::AssumptionViolated, "partial products unbounded on Gamma");
  rep.M_estimate = std::exp(logM);
  g.M_estimate = rep.M_estimate;
  return rep;
}

const RegionInfo& RegionMap::region_of_zeta(const LevelCurveSet& g, cd zeta) const {
  // Innermost inner component containing zeta.
  int owner = 0;
  for (;;) {
    int next = -1;
    for (auto& c : g.components) {
      if (c.index <= 0) continue;
      if (parent[c.index] != (owner == 0 ? -1 : owner)) continue;
      if (point_in_polygon(c.nodes, zeta)) {
        next = c.index;
        break;
      }
    }
    if (next < 0) break;
    owner = next;
  }
  for (auto& r : regions)
    if (r.component == owner) return r;
  throw Error(ErrorCode::UnclassifiedPoint, "no region for point");
}

RegionMap classify_regions(const LevelCurveSet& g) {
  Field F{g.blaschke()};
  RegionMap map;
  map.parent.assign(g.l_star + 1, -1);
  // Parent of each inner loop: the smallest inner loop that contains it.
  for (auto& c : g.components) {
    if (c.index <= 0) continue;
    double best_area = 1e300;
    for (auto& d : g.components) {
      if (d.index <= 0 || d.index == c.index) continue;
      if (point_in_polygon(d.nodes, c.nodes[0])) {
        double a = std::abs(signed_area(d.nodes));
        if (a < best_area) {
          best_area = a;
          map.parent[c.index] = d.index;
        }
      }
    }
  }

  std::mt19937_64 rng(0x5eed);
  for (auto& X : g.components) {
    if (X.index < 0) continue;
    RegionInfo info;
    info.component = X.index;
    for (auto& c : g.components)
      if (c.index > 0 && map.parent[c.index] == (X.index == 0 ? -1 : X.index)) info.holes.push_back(c.index);

    // Candidates half a cell inside X and half a cell outside each hole;
    // components are at least two cells apart, so all lie in the region.
    std::vector<cd> cand;
    auto offsets = [&](const std::vector<cd>& p, double sgn) {
      const std::size_t step = std::max<std::size_t>(1, p.size() / 256);
      for (std::size_t k = 0; k < p.size(); k += step) {
        cd t = p[(k + 1) % p.size()] - p[(k + p.size() - 1) % p.size()];
        if (std::abs(t) == 0) continue;
        cd nu = cd(0, 1) * t / std::abs(t);  // left normal; polylines are ccw
        cand.push_back(p[k] + sgn * 0.5 * g.cell * nu);
      }
    };
    offsets(X.nodes, +1);
    for (int h : info.holes) offsets(g.component(h).nodes, -1);

    double best = -1;
    for (auto& c : cand) {
      double v = F.f(c);
      if (std::abs(v) > best) {
        best = std::abs(v);
        info.sample_zeta = c;
        info.log_modulus = v;
      }
    }
    if (best < 1e-8) throw Error(ErrorCode::AmbiguousSign, "region sample too close to the level set");
    std::uniform_int_distribution<std::size_t> pick(0, cand.size() - 1);
    for (int k = 0; k < 32; ++k) {
      double v = F.f(cand[pick(rng)]);
      if (std::abs(v) < 1e-8 || (v > 0) != (info.log_modulus > 0))
        throw Error(ErrorCode::AmbiguousSign,
                    "region bounded by component " + std::to_string(X.index) + " has inconsistent sign samples");
    }
    info.label = info.log_modulus < 0 ? RegionLabel::D0 : RegionLabel::Dinf;
    info.sample_z = joukovski(info.sample_zeta);
    map.regions.push_back(info);
  }
  map.sigma = map.region_of_zeta(g, cd(0, 0)).label == RegionLabel::D0 ? 1 : -1;
  return map;
}

double SymmetricContour::distance(cd z) const {
  double d = distance_to_polyline(delta0, z, false);
  for (auto& l : loops) d = std::min(d, distance_to_polyline(l, z, true));
  return d;
}

SymmetricContour project_delta(const LevelCurveSet& g, const RegionMap& regions) {
  SymmetricContour sc;
  sc.gamma = g;
  sc.regions = regions;
  sc.sigma = regions.sigma;

  auto& comps = sc.gamma.components;
  for (auto& c : comps) {
    if (c.index == 0) {
      // Rotate so -1 comes first; ccw order then reaches +1 along Gamma_0+.
      auto it = std::find(c.nodes.begin(), c.nodes.end(), cd(-1, 0));
      if (it == c.nodes.end()) throw Error(ErrorCode::AssumptionViolated, "-1 missing from Gamma_0");
      std::rotate(c.nodes.begin(), it, c.nodes.end());
      auto jt = std::find(c.nodes.begin(), c.nodes.end(), cd(1, 0));
      if (jt == c.nodes.end()) throw Error(ErrorCode::AssumptionViolated, "+1 missing from Gamma_0");
      sc.plus_one_index = static_cast<std::size_t>(jt - c.nodes.begin());
      for (std::size_t k = 0; k <= sc.plus_one_index; ++k) sc.delta0.push_back(joukovski(c.nodes[k]));
      sc.delta0.front() = cd(-1, 0);
      sc.delta0.back() = cd(1, 0);
    }
  }
  for (int l = 1; l <= g.l_star; ++l) {
    LevelComponent* c = nullptr;
    for (auto& x : comps)
      if (x.index == l) c = &x;
    // Left-normal probes must all land in D0, or all in Dinf (then reverse).
    int votes_d0 = 0, votes = 0;
    const auto& p = c->nodes;
    const std::size_t step = std::max<std::size_t>(1, p.size() / 16);
    for (std::size_t k = 0; k < p.size(); k += step) {
      cd t = p[(k + 1) % p.size()] - p[(k + p.size() - 1) % p.size()];
      cd probe = p[k] + 0.5 * g.cell * cd(0, 1) * t / std::abs(t);
      if (distance_to_polyline(p, probe, true) < 0.1 * g.cell)
        throw Error(ErrorCode::OrientationUndetermined, "left-normal probe landed on the loop");
      ++votes;
      if (regions.region_of_zeta(g, probe).label == RegionLabel::D0) ++votes_d0;
    }
    if (votes_d0 != 0 && votes_d0 != votes)
      throw Error(ErrorCode::OrientationUndetermined, "left-normal probes disagree on loop " + std::to_string(l));
    if (votes_d0 == 0) std::reverse(c->nodes.begin(), c->nodes.end());
    sc.loop_orientation.push_back(signed_area(c->nodes) > 0 ? 1 : -1);
    std::vector<cd> img;
    for (auto& t : c->nodes) img.push_back(joukovski(t));
    sc.loops.push_back(std::move(img));
  }
  return sc;
}

SymmetricContour build_symmetric_contour(const SchemeSpec& s, const ArcPath& L, const GridSpec& grid) {
  LevelCurveSet g = trace_level(s.base(), L, grid);
  validate_assumption1(g, s);
  RegionMap r = classify_regions(g);
  return project_delta(g, r);
}

}  // namespace spade
