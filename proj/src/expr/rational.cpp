#include "djt/expr/rational.hpp"

#include <cctype>

#include "djt/error.hpp"

namespace djt {

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  mpq_div(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
  return *this;
}

Rational Rational::from_string(std::string_view s) {
  std::string text(s);
  if (text.empty()) throw DomainError("empty rational literal");
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    for (char c : whole + frac) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw DomainError("bad decimal literal '" + text + "'");
    }
    mpz_class num(whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational r(mpq_class(num, den));
    return neg ? -r : r;
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw DomainError("bad rational literal '" + text + "'");
  if (q.get_den() == 0) throw DomainError("rational with zero denominator");
  return Rational(q);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(Rational(1) / base, -exponent);
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

}  // namespace djt
