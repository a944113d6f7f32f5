#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spade/geometry.hpp"
#include "spade/numerics.hpp"

namespace spade {

// A point of the extended plane.
struct InterpPoint {
  bool at_infinity = false;
  cd value{0, 0};

  static InterpPoint infinity() { return {true, {0, 0}}; }
  static InterpPoint finite(cd z) { return {false, z}; }
  bool operator==(const InterpPoint& o) const {
    return at_infinity == o.at_infinity && (at_infinity || value == o.value);
  }
  bool operator<(const InterpPoint& o) const;
  std::string label() const;
};

struct MultiSetEntry {
  InterpPoint point;
  int multiplicity = 1;
};

class InterpolationMultiSet {
 public:
  InterpolationMultiSet() = default;
  explicit InterpolationMultiSet(std::vector<MultiSetEntry> entries);

  void add(const InterpPoint& p, int multiplicity = 1);
  int total() const;
  int multiplicity(const InterpPoint& p) const;
  int infinite_multiplicity() const { return multiplicity(InterpPoint::infinity()); }
  int finite_total() const { return total() - infinite_multiplicity(); }
  const std::vector<MultiSetEntry>& entries() const { return entries_; }
  std::vector<MultiSetEntry> finite_entries() const;
  bool operator==(const InterpolationMultiSet& o) const;

 private:
  std::vector<MultiSetEntry> entries_;  // first-appearance order, merged
};

// Base multiset plus the order e_1..e_N in which partial periods are taken.
class SchemeSpec {
 public:
  // Empty enumeration means "infinite points first, then finite entries in
  // the order given".
  explicit SchemeSpec(InterpolationMultiSet base, std::vector<InterpPoint> enumeration = {});

  const InterpolationMultiSet& base() const { return base_; }
  const std::vector<InterpPoint>& enumeration() const { return enum_; }
  int period() const { return base_.total(); }

 private:
  InterpolationMultiSet base_;
  std::vector<InterpPoint> enum_;
};

// E_{kN+j} = k copies of the base plus the first j enumerated points.
InterpolationMultiSet expand(const SchemeSpec& s, int i);

enum class RegionLabel { D0, Dinf };
const char* to_string(RegionLabel r);

// phi_L at each distinct finite point, at working precision.
template <class Real>
class PhiTable {
 public:
  using C = cplx<Real>;
  PhiTable() = default;
  PhiTable(const InterpolationMultiSet& points, const ArcPath& L) {
    for (const auto& e : points.finite_entries()) insert(e.point.value, L);
  }
  void insert(cd e, const ArcPath& L) {
    if (table_.count(key(e))) return;
    if (distance_to_arc(L, e) < 1e-12)
      throw Error(ErrorCode::DomainViolation, "interpolation point lies on L");
    table_.emplace(key(e), phi_map<Real>(lift<Real>(e), L));
  }
  const C& operator()(cd e) const {
    auto it = table_.find(key(e));
    if (it == table_.end()) throw Error(ErrorCode::InvalidArgument, "point missing from phi table");
    return it->second;
  }

 private:
  static std::pair<double, double> key(cd e) { return {e.real(), e.imag()}; }
  std::map<std::pair<double, double>, C> table_;
};

// B(zeta) = zeta^{m_inf} prod (zeta - a_e)/(1 - a_e zeta) over finite e.
template <class Real>
class Blaschke {
 public:
  using C = cplx<Real>;

  Blaschke() = default;
  Blaschke(const InterpolationMultiSet& E, const PhiTable<Real>& phi) : inf_(E.infinite_multiplicity()) {
    for (const auto& e : E.finite_entries()) zeros_.push_back({phi(e.point.value), e.multiplicity});
  }
  Blaschke(int inf, std::vector<std::pair<C, int>> zeros) : inf_(inf), zeros_(std::move(zeros)) {}

  int infinite_multiplicity() const { return inf_; }
  const std::vector<std::pair<C, int>>& zeros() const { return zeros_; }
  int degree() const {
    int d = inf_;
    for (auto& z : zeros_) d += z.second;
    return d;
  }

  C value(const C& zeta) const {
    C r = ipow(zeta, inf_);
    for (const auto& [a, m] : zeros_) r *= ipow((zeta - a) / (C(1) - a * zeta), m);
    return r;
  }

  Real log_abs(const C& zeta) const {
    using std::log;
    Real r = Real(inf_) * log(Real(cabs(zeta)));
    for (const auto& [a, m] : zeros_) r += Real(m) * (log(Real(cabs(zeta - a))) - log(Real(cabs(C(1) - a * zeta))));
    return r;
  }

  // B'/B
  C log_derivative(const C& zeta) const {
    C r = C(Real(inf_)) / zeta;
    for (const auto& [a, m] : zeros_) r += C(Real(m)) * (C(1) - a * a) / ((zeta - a) * (C(1) - a * zeta));
    return r;
  }

  // Smallest distance from zeta to a pole 1/a_e.
  Real pole_distance(const C& zeta) const {
    Real d(-1);
    for (const auto& [a, m] : zeros_) {
      if (a == C(0)) continue;
      Real e = cabs(zeta - C(1) / a);
      if (d < 0 || e < d) d = e;
    }
    return d;
  }

  Blaschke<double> to_double() const {
    std::vector<std::pair<cd, int>> z;
    for (auto& [a, m] : zeros_) z.push_back({to_cd(a), m});
    return Blaschke<double>(inf_, z);
  }

 private:
  int inf_ = 0;
  std::vector<std::pair<C, int>> zeros_;
};

// eval_B with the PoleHit guard at distance 2^(-bits/4).
template <class Real>
cplx<Real> eval_B(const cplx<Real>& zeta, const InterpolationMultiSet& E, const ArcPath& L,
                  const PrecisionContext& ctx) {
  Blaschke<Real> B(E, PhiTable<Real>(E, L));
  Real d = B.pole_distance(zeta);
  if (d >= 0 && d < Real(std::exp2(-ctx.bits / 4.0)))
    throw Error(ErrorCode::PoleHit, "zeta within tolerance of a pole of B");
  return B.value(zeta);
}

// b_i(z) = B_i(phi_{delta0}(z)) for an arc-shaped delta0 given explicitly.
template <class Real>
cplx<Real> eval_b(const cplx<Real>& z, const InterpolationMultiSet& E, const ArcPath& delta0, const ArcPath& L,
                  const PrecisionContext& ctx) {
  return eval_B<Real>(phi_map<Real>(z, delta0), E, L, ctx);
}

template <class Real>
Polynomial<cplx<Real>> v_polynomial(const InterpolationMultiSet& E) {
  std::vector<cplx<Real>> roots;
  for (const auto& e : E.finite_entries())
    for (int k = 0; k < e.multiplicity; ++k) roots.push_back(lift<Real>(e.point.value));
  return Polynomial<cplx<Real>>::from_roots(roots);
}

// (v_{n,0}, v_{n,inf}) from a region classifier cd -> RegionLabel, which
// throws UnclassifiedPoint for points on the contour.
template <class Real, class Classifier>
std::pair<Polynomial<cplx<Real>>, Polynomial<cplx<Real>>> partition_v(const InterpolationMultiSet& E,
                                                                      Classifier&& region_of) {
  InterpolationMultiSet zero_part, pole_part;
  for (const auto& e : E.finite_entries()) {
    if (region_of(e.point.value) == RegionLabel::D0)
      zero_part.add(e.point, e.multiplicity);
    else
      pole_part.add(e.point, e.multiplicity);
  }
  return {v_polynomial<Real>(zero_part), v_polynomial<Real>(pole_part)};
}

}  // namespace spade
