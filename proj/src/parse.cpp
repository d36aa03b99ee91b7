#include <cctype>
#include <sstream>

#include "lrgeom/poly.hpp"

namespace lrgeom {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarTable& vars, bool allow_frac)
      : s_(text), vars_(vars), allow_frac_(allow_frac) {}

  Frac run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Frac f = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Frac expr() {
    Frac acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Frac term() {
    Frac acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Frac d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (!allow_frac_ && !(d.is_polynomial() && d.num().is_constant()))
          throw ParseError("division by a non-constant polynomial", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  Frac factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    Frac b = base();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected a non-negative integer exponent", start);
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 1000) throw ParseError("exponent too large", start);
      Frac r(1);
      for (unsigned long i = 0; i < e; ++i) r *= b;
      return r;
    }
    return b;
  }

  Frac base() {
    skip();
    if (pos_ == s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Frac inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Frac(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto key = vars_.lookup(name);
      if (!key) throw UnknownSymbol(name);
      return Frac(Poly::monomial(Monomial::var(*key)));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view s_;
  const VarTable& vars_;
  bool allow_frac_;
  std::size_t pos_ = 0;
};

}  // namespace

Frac parse_frac(std::string_view text, const VarTable& vars) { return Parser(text, vars, true).run(); }

Poly parse_poly(std::string_view text, const VarTable& vars) {
  return Parser(text, vars, false).run().to_poly();
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Poly& p, const VarTable& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    Rational a = abs(c);
    bool unit = a == 1;
    if (!unit || t.mono.is_one()) {
      os << a.get_str();
      if (!t.mono.is_one()) os << "*";
    }
    bool sep = false;
    for (const auto& vp : t.mono.factors()) {
      if (sep) os << "*";
      sep = true;
      os << vars.symbol_name(vp.sym);
      if (vp.exp > 1) os << "^" << vp.exp;
    }
  }
  return os.str();
}

std::string to_string(const Frac& f, const VarTable& vars) {
  if (f.is_polynomial()) return to_string(f.to_poly(), vars);
  return "(" + to_string(f.num(), vars) + ")/(" + to_string(f.den(), vars) + ")";
}

}  // namespace lrgeom
