#pragma once

#include <memory>
#include <string>

#include "spade/asymptotics.hpp"

namespace spade::testing {

inline SchemeSpec scheme_a() {
  InterpolationMultiSet a;
  a.add(InterpPoint::infinity());
  return SchemeSpec(a);
}

inline SchemeSpec scheme_b(int ratio = 6) {
  InterpolationMultiSet b;
  b.add(InterpPoint::infinity(), ratio);
  b.add(InterpPoint::finite({0, -0.75}));
  return SchemeSpec(b);
}

inline SchemeSpec scheme_c() {
  InterpolationMultiSet c;
  c.add(InterpPoint::infinity(), 4);
  c.add(InterpPoint::finite({1.25, 0}));
  return SchemeSpec(c);
}

// Geometry, quadrature and density in one place.
template <class Real>
struct Setup {
  SchemeSpec scheme;
  ArcPath L;
  SymmetricContour sc;
  std::shared_ptr<const DiscretizedContour<Real>> dc;
  std::shared_ptr<WeightedContour<Real>> wc;

  Setup(SchemeSpec s, ArcPath arc, const std::string& rho, int bits = 256, int nodes = 2048)
      : scheme(std::move(s)), L(arc), sc(build_symmetric_contour(scheme, L)) {
    dc = DiscretizedContour<Real>::build(sc, make_context(bits, nodes));
    wc = std::make_shared<WeightedContour<Real>>(dc, DensitySpec::entire(rho));
  }
};

// Monic 2^(1-n) T_n, low order first.
inline std::vector<double> monic_chebyshev(int n) {
  std::vector<double> t0{1}, t1{0, 1};
  if (n == 0) return t0;
  for (int k = 1; k < n; ++k) {
    std::vector<double> t2(k + 2, 0.0);
    for (int j = 0; j <= k; ++j) t2[j + 1] += 2 * t1[j];
    for (int j = 0; j < k; ++j) t2[j] -= t0[j];
    t0 = t1;
    t1 = t2;
  }
  const double lead = t1[n];
  for (auto& c : t1) c /= lead;
  return t1;
}

inline cd phi_segment(cd z) {
  cd a = z - std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  return std::abs(a) < 1 ? a : 1.0 / a;
}

}  // namespace spade::testing
