#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spade/numerics.hpp"

namespace spade {

// Closed grammar: numbers, i, s, + - * /, exp(.), integer powers.
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('-' | '+') unary | power
//   power  := primary ('^' signed-int)?
//   primary:= number ['i'] | 'i' | 's' | 'exp' '(' expr ')' | '(' expr ')'
class Expression {
 public:
  enum class Op { Constant, Variable, Add, Sub, Mul, Div, Neg, Exp, Pow };
  struct Node {
    Op op;
    std::string re_literal = "0";  // decimal text so constants lift exactly
    std::string im_literal = "0";
    int lhs = -1;
    int rhs = -1;
    long exponent = 0;
  };

  static Expression parse(std::string_view text);  // ParseError

  const std::vector<Node>& nodes() const { return nodes_; }  // post-order
  const std::string& source() const { return source_; }
  bool is_constant() const;

 private:
  std::vector<Node> nodes_;
  std::string source_;
  friend class ExpressionParser;
};

struct Disk {
  cd center;
  double radius = 0;
};

// The user's analyticity claim: optionally "within" a disk, minus excluded
// disks. No disk at all means entire.
struct DeclaredRegion {
  std::optional<Disk> within;
  std::vector<Disk> excluded;

  bool contains(cd z) const;
  std::string describe() const;
};

struct DensitySpec {
  Expression expr;
  DeclaredRegion region;

  static DensitySpec entire(std::string_view text) { return {Expression::parse(text), {}}; }
};

template <class Real>
class DensityEvaluator {
 public:
  using C = cplx<Real>;

  explicit DensityEvaluator(const DensitySpec& d) : spec_(d) {
    for (const auto& n : d.expr.nodes())
      consts_.push_back(n.op == Expression::Op::Constant
                            ? make_complex<Real>(parse_real<Real>(n.re_literal), parse_real<Real>(n.im_literal))
                            : C(0));
  }

  const DensitySpec& spec() const { return spec_; }

  // DomainViolation if s is outside the declared region or a division by an
  // exact zero occurs.
  C operator()(const C& s) const {
    if (!spec_.region.contains(to_cd(s)))
      throw Error(ErrorCode::DomainViolation, "density evaluated outside " + spec_.region.describe());
    return eval_unchecked(s);
  }

  C eval_unchecked(const C& s) const {
    const auto& nodes = spec_.expr.nodes();
    std::vector<C> v(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto& n = nodes[k];
      switch (n.op) {
        case Expression::Op::Constant: v[k] = consts_[k]; break;
        case Expression::Op::Variable: v[k] = s; break;
        case Expression::Op::Add: v[k] = v[n.lhs] + v[n.rhs]; break;
        case Expression::Op::Sub: v[k] = v[n.lhs] - v[n.rhs]; break;
        case Expression::Op::Mul: v[k] = v[n.lhs] * v[n.rhs]; break;
        case Expression::Op::Div:
          if (v[n.rhs] == C(0)) throw Error(ErrorCode::DomainViolation, "division by zero in density");
          v[k] = v[n.lhs] / v[n.rhs];
          break;
        case Expression::Op::Neg: v[k] = -v[n.lhs]; break;
        case Expression::Op::Exp: v[k] = cexp(v[n.lhs]); break;
        case Expression::Op::Pow:
          if (n.exponent < 0 && v[n.lhs] == C(0))
            throw Error(ErrorCode::DomainViolation, "negative power of zero in density");
          v[k] = ipow(v[n.lhs], n.exponent);
          break;
      }
    }
    return v.back();
  }

 private:
  DensitySpec spec_;
  std::vector<C> consts_;
};

template <class Real>
cplx<Real> eval_density(const DensitySpec& d, const cplx<Real>& s) {
  return DensityEvaluator<Real>(d)(s);
}

// Minimum modulus over the points; ZeroDensity if it drops below tol.
template <class Real>
Real scan_nonvanishing(const DensityEvaluator<Real>& ev, const std::vector<cplx<Real>>& pts, double tol) {
  Real mn(-1);
  for (const auto& s : pts) {
    Real a = cabs(ev(s));
    if (mn < 0 || a < mn) mn = a;
  }
  if (mn >= 0 && mn < Real(tol))
    throw Error(ErrorCode::ZeroDensity, "density modulus " + format_real(static_cast<double>(mn)) +
                                            " below tolerance on the contour");
  return mn;
}

}  // namespace spade
