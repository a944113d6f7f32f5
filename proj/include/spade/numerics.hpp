#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "spade/error.hpp"

namespace spade {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using real_t = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;
template <unsigned Bits>
using complex_t =
    mp::number<mp::complex_adaptor<mp::cpp_bin_float<Bits, mp::digit_base_2>>, mp::et_off>;

using real256 = real_t<256>;
using complex256 = complex_t<256>;
using real512 = real_t<512>;
using complex512 = complex_t<512>;
using cd = std::complex<double>;

template <class Real>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  using complex_type = std::complex<double>;
  static constexpr unsigned bits = 53;
};

template <unsigned B>
struct scalar_traits<real_t<B>> {
  using complex_type = complex_t<B>;
  static constexpr unsigned bits = B;
};

template <class Real>
using cplx = typename scalar_traits<Real>::complex_type;

template <class Real>
using CVector = Eigen::Matrix<cplx<Real>, Eigen::Dynamic, 1>;
template <class Real>
using CMatrix = Eigen::Matrix<cplx<Real>, Eigen::Dynamic, Eigen::Dynamic>;

// Thin wrappers so generic code reads the same for std::complex and
// multiprecision complex; ADL picks the right overload.
template <class C>
auto re(const C& z) {
  using std::real;
  return real(z);
}
template <class C>
auto im(const C& z) {
  using std::imag;
  return imag(z);
}
template <class C>
auto cabs(const C& z) {
  using std::abs;
  return abs(z);
}
template <class C>
auto carg(const C& z) {
  using std::arg;
  return arg(z);
}
template <class C>
C cexp(const C& z) {
  using std::exp;
  return exp(z);
}
template <class C>
C clog(const C& z) {
  using std::log;
  return log(z);
}
template <class C>
C csqrt(const C& z) {
  using std::sqrt;
  return sqrt(z);
}
template <class C>
C cconj(const C& z) {
  using std::conj;
  return conj(z);
}

template <class Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
cplx<Real> make_complex(const Real& x, const Real& y) {
  return cplx<Real>(x, y);
}

template <class Real>
Real parse_real(const std::string& text) {
  if constexpr (std::is_same_v<Real, double>)
    return std::stod(text);
  else
    return Real(text.c_str());
}

template <class Real>
cplx<Real> lift(cd z) {
  return cplx<Real>(Real(z.real()), Real(z.imag()));
}

template <class C>
cd to_cd(const C& z) {
  return cd(static_cast<double>(re(z)), static_cast<double>(im(z)));
}

template <class Real>
cplx<Real> unit_i() {
  return cplx<Real>(Real(0), Real(1));
}

// z^k for signed k by repeated squaring.
template <class C>
C ipow(C z, long k) {
  if (k < 0) return C(1) / ipow(z, -k);
  C r(1);
  while (k) {
    if (k & 1) r *= z;
    k >>= 1;
    if (k) z *= z;
  }
  return r;
}

template <class Real>
Real ldexp2(int e) {
  using std::ldexp;
  return ldexp(Real(1), e);
}

template <class Real>
int digits10_of() {
  return static_cast<int>(std::ceil(scalar_traits<Real>::bits * 0.30103)) + 2;
}

std::string format_real(double x);
std::string format_real(const real256& x);
std::string format_real(const real512& x);

struct PrecisionContext {
  int bits = 256;
  int quad_nodes = 2048;
  double rank_tol = 0;  // 2^(-bits/2); always representable as a double
};

// Throws InsufficientPrecision for bits < 64 and InvalidArgument when
// quad_nodes is not a power of two >= 64.
PrecisionContext make_context(int bits, int quad_nodes);

// Width of the fixed-size working type chosen for a requested precision.
int working_bits(int bits);

// Calls f(Real{}) with the working type covering ctx.bits.
template <class F>
decltype(auto) dispatch_precision(int bits, F&& f) {
  if (bits <= 256) return f(real256{});
  if (bits <= 512) return f(real512{});
  throw Error(ErrorCode::UnsupportedPrecision,
              "bits=" + std::to_string(bits) + " exceeds the 512-bit working type");
}

template <class Complex>
class Polynomial {
 public:
  using Coeffs = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  Polynomial() : c_(Coeffs::Zero(1)) {}
  explicit Polynomial(Coeffs c) : c_(std::move(c)) { trim(); }
  Polynomial(std::initializer_list<Complex> c) : c_(c.size() ? c.size() : 1) {
    if (c.size() == 0) c_(0) = Complex(0);
    int k = 0;
    for (const auto& x : c) c_(k++) = x;
    trim();
  }

  static Polynomial constant(const Complex& a) { return Polynomial({a}); }

  static Polynomial from_roots(const std::vector<Complex>& roots) {
    Coeffs c = Coeffs::Zero(static_cast<Eigen::Index>(roots.size()) + 1);
    c(0) = Complex(1);
    Eigen::Index d = 0;
    for (const auto& r : roots) {
      c(d + 1) = c(d);
      for (Eigen::Index k = d; k > 0; --k) c(k) = c(k - 1) - r * c(k);
      c(0) = -r * c(0);
      ++d;
    }
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_(0) == Complex(0); }
  bool is_monic() const { return c_(c_.size() - 1) == Complex(1); }
  const Coeffs& coefficients() const { return c_; }
  const Complex& operator[](int k) const { return c_(k); }
  const Complex& leading() const { return c_(c_.size() - 1); }

  Complex operator()(const Complex& z) const {
    Complex r = c_(c_.size() - 1);
    for (Eigen::Index k = c_.size() - 2; k >= 0; --k) r = r * z + c_(k);
    return r;
  }

  // Value and derivative in one Horner pass.
  void eval2(const Complex& z, Complex& p, Complex& dp) const {
    p = c_(c_.size() - 1);
    dp = Complex(0);
    for (Eigen::Index k = c_.size() - 2; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c_(k);
    }
  }

  Polynomial derivative() const {
    if (degree() == 0) return Polynomial();
    Coeffs d(c_.size() - 1);
    for (Eigen::Index k = 1; k < c_.size(); ++k) d(k - 1) = c_(k) * Complex(static_cast<double>(k));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Coeffs c = Coeffs::Zero(a.c_.size() + b.c_.size() - 1);
    for (Eigen::Index i = 0; i < a.c_.size(); ++i)
      for (Eigen::Index j = 0; j < b.c_.size(); ++j) c(i + j) += a.c_(i) * b.c_(j);
    return Polynomial(std::move(c));
  }

 private:
  void trim() {
    Eigen::Index n = c_.size();
    while (n > 1 && c_(n - 1) == Complex(0)) --n;
    if (n != c_.size()) c_.conservativeResize(n);
  }

  Coeffs c_;
};

template <class Complex>
struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

template <class Complex>
struct RootSet {
  std::vector<Complex> roots;  // deg(p) entries, sorted by (re, im)
  std::vector<RootCluster<Complex>> clusters;
  int sweeps = 0;
};

// Aberth-Ehrlich simultaneous iteration from a perturbed circle whose radius
// is the Fujiwara bound. Gauss-Seidel updates, cap of 200*deg sweeps.
template <class Real>
RootSet<cplx<Real>> find_roots(const Polynomial<cplx<Real>>& p, const PrecisionContext& ctx) {
  using C = cplx<Real>;
  using std::cos;
  using std::pow;
  using std::sin;
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "find_roots on the zero polynomial");
  const int n = p.degree();
  RootSet<C> out;
  if (n == 0) return out;

  Polynomial<C> m(typename Polynomial<C>::Coeffs(p.coefficients() / p.leading()));
  const auto& a = m.coefficients();

  Real bound(0);
  for (int k = 1; k <= n; ++k) {
    Real t = cabs(C(a(n - k)));
    if (k == n) t /= 2;
    if (t > 0) {
      Real r = pow(t, Real(1) / Real(k));
      if (r > bound) bound = r;
    }
  }
  bound *= 2;
  if (bound == 0) bound = Real(1);

  std::vector<C> z(n);
  const Real two_pi = 2 * pi<Real>();
  for (int k = 0; k < n; ++k) {
    Real th = two_pi * Real(k) / Real(n) + Real(0.4);
    // Slightly uneven radii break the symmetry of palindromic inputs.
    Real r = bound * (Real(1) - Real(0.05) * Real(k % 3) / Real(3));
    z[k] = make_complex<Real>(r * cos(th), r * sin(th));
  }

  const Real tol = ldexp2<Real>(-static_cast<int>(scalar_traits<Real>::bits) + 12);
  const Real eps = ldexp2<Real>(-static_cast<int>(scalar_traits<Real>::bits));
  const int cap = 200 * n;
  int sweep = 0;
  for (; sweep < cap; ++sweep) {
    bool done = true;
    for (int k = 0; k < n; ++k) {
      C pv, dpv;
      m.eval2(z[k], pv, dpv);
      if (pv == C(0)) continue;
      C ratio = pv / dpv;
      C s(0);
      for (int j = 0; j < n; ++j)
        if (j != k) s += C(1) / (z[k] - z[j]);
      C w = ratio / (C(1) - ratio * s);
      // Rounding floor of p at z[k]: once |p| is below it, steps are noise.
      Real az = cabs(z[k]), floor_ = cabs(C(a(n)));
      for (int j = n - 1; j >= 0; --j) floor_ = floor_ * az + Real(cabs(C(a(j))));
      const bool at_noise = cabs(pv) <= Real(64 * n) * eps * floor_;
      z[k] -= w;
      Real scale = std::max(Real(1), Real(cabs(z[k])));
      if (cabs(w) > tol * scale && !at_noise) done = false;
    }
    if (done) break;
  }
  out.sweeps = sweep;
  if (sweep >= cap)
    throw Error(ErrorCode::NonConvergence,
                "Aberth iteration did not converge in " + std::to_string(cap) + " sweeps");

  // Residual contract against the caller's precision.
  Real cmax(0);
  for (Eigen::Index k = 0; k <= n; ++k) cmax = std::max(cmax, Real(cabs(p[k])));
  const Real thr = ldexp2<Real>(-ctx.bits / 2) * cmax;
  for (const auto& r : z) {
    Real sc = pow(std::max(Real(1), Real(cabs(r))), n);
    if (cabs(p(r)) > thr * sc)
      throw Error(ErrorCode::NonConvergence, "root residual above threshold");
  }

  std::sort(z.begin(), z.end(), [](const C& x, const C& y) {
    if (re(x) != re(y)) return re(x) < re(y);
    return im(x) < im(y);
  });
  out.roots = z;

  const Real ctol = ldexp2<Real>(-ctx.bits / 4);
  std::vector<bool> used(n, false);
  for (int k = 0; k < n; ++k) {
    if (used[k]) continue;
    RootCluster<C> c{z[k], 1};
    used[k] = true;
    C sum = z[k];
    for (int j = k + 1; j < n; ++j) {
      if (!used[j] && cabs(z[j] - z[k]) <= ctol * std::max(Real(1), Real(cabs(z[k])))) {
        used[j] = true;
        ++c.multiplicity;
        sum += z[j];
      }
    }
    c.center = sum / C(c.multiplicity);
    out.clusters.push_back(c);
  }
  return out;
}

// (2*pi/N) * sum f(2*pi*j/N), j = 0..N-1.
template <class Real, class F>
cplx<Real> integrate_periodic(F&& f, int N) {
  if (N <= 0) throw Error(ErrorCode::InvalidArgument, "integrate_periodic needs N > 0");
  const Real h = 2 * pi<Real>() / Real(N);
  cplx<Real> s(0);
  for (int j = 0; j < N; ++j) s += f(h * Real(j));
  return s * cplx<Real>(h);
}

}  // namespace spade
