#include "spade/expression.hpp"

#include <cctype>
#include <sstream>

namespace spade {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view t) : text_(normalize(t)) {}

  Expression run() {
    Expression e;
    e.source_ = std::string(text_);
    out_ = &e.nodes_;
    parse_expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (e.nodes_.empty()) fail("empty expression");
    return e;
  }

 private:
  // Unicode minus, times and division signs map to ASCII.
  static std::string normalize(std::string_view t) {
    std::string r;
    for (std::size_t k = 0; k < t.size(); ++k) {
      auto u = static_cast<unsigned char>(t[k]);
      if (u == 0xE2 && k + 2 < t.size() && static_cast<unsigned char>(t[k + 1]) == 0x88 &&
          static_cast<unsigned char>(t[k + 2]) == 0x92) {
        r += '-';
        k += 2;
      } else if (u == 0xC3 && k + 1 < t.size() && static_cast<unsigned char>(t[k + 1]) == 0x97) {
        r += '*';
        k += 1;
      } else if (u == 0xC3 && k + 1 < t.size() && static_cast<unsigned char>(t[k + 1]) == 0xB7) {
        r += '/';
        k += 1;
      } else {
        r += t[k];
      }
    }
    return r;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + text_ + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int push(Expression::Node n) {
    out_->push_back(std::move(n));
    return static_cast<int>(out_->size()) - 1;
  }
  int binary(Expression::Op op, int a, int b) {
    Expression::Node n{op};
    n.lhs = a;
    n.rhs = b;
    return push(n);
  }

  int parse_expr() {
    int a = parse_term();
    for (;;) {
      if (accept('+'))
        a = binary(Expression::Op::Add, a, parse_term());
      else if (accept('-'))
        a = binary(Expression::Op::Sub, a, parse_term());
      else
        return a;
    }
  }

  int parse_term() {
    int a = parse_unary();
    for (;;) {
      if (accept('*'))
        a = binary(Expression::Op::Mul, a, parse_unary());
      else if (accept('/'))
        a = binary(Expression::Op::Div, a, parse_unary());
      else
        return a;
    }
  }

  int parse_unary() {
    if (accept('-')) {
      Expression::Node n{Expression::Op::Neg};
      n.lhs = parse_unary();
      return push(n);
    }
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  int parse_power() {
    int a = parse_primary();
    if (!accept('^')) return a;
    bool paren = accept('(');
    skip();
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer");
    if (pos_ - start > 6) fail("exponent too large");
    long e = std::stol(text_.substr(start, pos_ - start));
    if (paren && !accept(')')) fail("missing ')' after exponent");
    Expression::Node n{Expression::Op::Pow};
    n.lhs = a;
    n.exponent = neg ? -e : e;
    return push(n);
  }

  int parse_primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (accept('(')) {
      int a = parse_expr();
      if (!accept(')')) fail("missing ')'");
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string id = text_.substr(start, pos_ - start);
      if (id == "s") return push(Expression::Node{Expression::Op::Variable});
      if (id == "i") {
        Expression::Node n{Expression::Op::Constant};
        n.im_literal = "1";
        return push(n);
      }
      if (id == "exp") {
        if (!accept('(')) fail("exp needs '('");
        Expression::Node n{Expression::Op::Exp};
        n.lhs = parse_expr();
        if (!accept(')')) fail("missing ')' after exp argument");
        return push(n);
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  int parse_number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t b = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - b;
    };
    std::size_t nd = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      nd += digits();
    }
    if (nd == 0) fail("malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // "2exp(s)" is not an exponent
    }
    std::string lit = text_.substr(start, pos_ - start);
    Expression::Node n{Expression::Op::Constant};
    // A trailing 'i' not followed by a letter marks an imaginary literal.
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      n.im_literal = lit;
    } else {
      n.re_literal = lit;
    }
    return push(n);
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::vector<Expression::Node>* out_ = nullptr;
};

Expression Expression::parse(std::string_view text) { return ExpressionParser(text).run(); }

bool Expression::is_constant() const {
  for (const auto& n : nodes_)
    if (n.op == Op::Variable) return false;
  return true;
}

bool DeclaredRegion::contains(cd z) const {
  if (within && std::abs(z - within->center) >= within->radius) return false;
  for (const auto& d : excluded)
    if (std::abs(z - d.center) <= d.radius) return false;
  return true;
}

std::string DeclaredRegion::describe() const {
  std::ostringstream os;
  if (!within && excluded.empty()) return "the whole plane";
  if (within) os << "disk |s-(" << within->center.real() << "," << within->center.imag() << ")|<" << within->radius;
  else os << "the plane";
  for (const auto& d : excluded)
    os << " minus disk |s-(" << d.center.real() << "," << d.center.imag() << ")|<=" << d.radius;
  return os.str();
}

}  // namespace spade
