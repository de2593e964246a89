#include <bit>
#include <cctype>
#include <sstream>

#include "djt/error.hpp"
#include "djt/expr/scalar_expr.hpp"

namespace djt {

namespace {

std::string monomial_text(const Monomial& m, const Chart& chart) {
  std::string out;
  for (std::size_t s = 0; s < chart.symbol_count(); ++s) {
    unsigned e = m.exponent(s);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += chart.symbol(s);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const Chart& chart) : src_(src), chart_(chart) {}

  ScalarExpr run() {
    ScalarExpr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ScalarExpr expr() {
    ScalarExpr acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  ScalarExpr term() {
    ScalarExpr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        ScalarExpr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  ScalarExpr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  ScalarExpr power() {
    ScalarExpr base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (start == pos_) fail("expected non-negative integer exponent");
      if (pos_ - start > 3) fail("exponent too large");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(src_.substr(start, pos_ - start))));
      if (e > 255) fail("exponent too large");
      return base.pow(e);
    }
    return base;
  }

  ScalarExpr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        std::size_t frac = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (frac == pos_) fail("expected digits after '.'");
      }
      return ScalarExpr(Rational::from_string(std::string(src_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string_view name = src_.substr(start, pos_ - start);
      auto slot = chart_.slot_of(name);
      if (!slot) throw ParseError("unknown symbol '" + std::string(name) + "'", start);
      return ScalarExpr::symbol(*slot);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Polynomial& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    bool negative = c.sign() < 0;
    if (negative) c = -c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    first = false;
    std::string mono = monomial_text(t.mono, chart);
    if (mono.empty()) {
      out += c.str();
    } else {
      if (!c.is_one()) out += c.str() + '*';
      out += mono;
    }
  }
  return out;
}

std::string to_string(const ScalarExpr& e, const Chart& chart) {
  std::string num = to_string(e.numerator(), chart);
  if (e.is_polynomial()) return num;
  if (e.numerator().size() > 1) num = '(' + num + ')';
  const Polynomial& den = e.denominator();
  std::string d = to_string(den, chart);
  bool single_power = den.is_monomial() && den.leading().coeff.is_one() &&
                      std::popcount(den.symbol_mask()) == 1;
  if (!single_power) d = '(' + d + ')';
  return num + '/' + d;
}

ScalarExpr parse_expr(std::string_view src, const Chart& chart) { return Parser(src, chart).run(); }

}  // namespace djt
