#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "lrgeom/errors.hpp"

namespace lrgeom {

using Rational = mpq_class;

// Symbol keys. Coordinates are their declaration index, formal parameters
// carry bit 62, jet symbols carry bit 63 and pack (function, order, counts).
using SymbolKey = std::uint64_t;

constexpr SymbolKey kParamBit = SymbolKey{1} << 62;
constexpr SymbolKey kJetBit = SymbolKey{1} << 63;
constexpr std::size_t kMaxJetCoords = 11;
constexpr unsigned kMaxJetOrder = 15;

inline bool is_coord_key(SymbolKey k) { return k < kParamBit; }
inline bool is_param_key(SymbolKey k) { return (k & kJetBit) == 0 && (k & kParamBit) != 0; }
inline bool is_jet_key(SymbolKey k) { return (k & kJetBit) != 0; }
inline SymbolKey param_key(std::size_t i) { return kParamBit | i; }

enum class MonomialOrder { Grevlex, Lex };

std::string to_string(MonomialOrder o);
MonomialOrder parse_order(std::string_view s);

struct VarPower {
  SymbolKey sym;
  std::uint32_t exp;
  bool operator==(const VarPower&) const = default;
};

class Monomial {
 public:
  using Storage = boost::container::small_vector<VarPower, 4>;

  Monomial() = default;
  static Monomial var(SymbolKey s, std::uint32_t e = 1);

  const Storage& factors() const { return f_; }
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return f_.empty(); }
  std::uint32_t exponent(SymbolKey s) const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Requires divides(o); returns o / *this.
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;

  // Split into the part over coordinates and the remaining symbols.
  Monomial coord_part() const;
  Monomial rest_part() const;

  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  std::size_t hash() const;

 private:
  Storage f_;
  std::uint32_t deg_ = 0;
};

// Three-way comparison: >0 if a > b in the order.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
  };

  Poly() = default;
  Poly(long c);
  Poly(const Rational& c);
  static Poly monomial(const Monomial& m, const Rational& c = 1);
  static Poly from_terms(std::vector<Term> terms);
  // Terms must already be strictly decreasing in grevlex with nonzero coefficients.
  static Poly from_sorted(std::vector<Term> terms);

  // Terms sorted strictly decreasing in grevlex; no zero coefficients.
  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;
  std::uint32_t total_degree() const;
  bool coords_only() const;

  const Term& leading_term(MonomialOrder order) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Gcd of numerators over lcm of denominators, sign of the leading term.
  Rational content() const;
  Monomial monomial_gcd() const;

 private:
  std::vector<Term> t_;
};

struct JetDecl {
  std::string name;
  std::vector<std::string> depends;
  unsigned max_order = 2;
};

struct JetSymbol {
  std::size_t fn;
  std::vector<std::uint8_t> counts;  // per coordinate
  unsigned order() const;
};

class VarTable {
 public:
  explicit VarTable(std::vector<std::string> coords, std::vector<JetDecl> jets = {});

  std::size_t num_coords() const { return coords_.size(); }
  const std::string& coord_name(std::size_t i) const { return coords_.at(i); }
  std::optional<std::size_t> coord_index(std::string_view name) const;
  std::size_t num_jets() const { return jets_.size(); }
  const JetDecl& jet(std::size_t i) const { return jets_.at(i); }
  bool jet_depends(std::size_t fn, std::size_t coord) const;
  char label(std::size_t coord) const { return labels_.at(coord); }

  SymbolKey jet_key(const JetSymbol& j) const;
  JetSymbol decode_jet(SymbolKey k) const;
  std::optional<SymbolKey> lookup(std::string_view name) const;
  std::string symbol_name(SymbolKey k) const;

  Poly var(std::string_view name) const;
  Poly coord(std::size_t i) const;

  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<JetDecl>& jets() const { return jets_; }
  bool operator==(const VarTable& o) const;

 private:
  std::vector<std::string> coords_;
  std::vector<JetDecl> jets_;
  std::vector<std::vector<bool>> deps_;
  std::string labels_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

class Frac {
 public:
  Frac() : num_(), den_(1) {}
  Frac(long c) : num_(c), den_(1) {}
  Frac(const Rational& c) : num_(c), den_(1) {}
  Frac(Poly p) : num_(std::move(p)), den_(1) {}
  Frac(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Poly to_poly() const;

  Frac operator-() const;
  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }

  // Structural equality of the stored representation.
  bool same_repr(const Frac& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

bool frac_eq(const Frac& x, const Frac& y);

Poly parse_poly(std::string_view text, const VarTable& vars);
Frac parse_frac(std::string_view text, const VarTable& vars);

std::string to_string(const Poly& p, const VarTable& vars);
std::string to_string(const Frac& f, const VarTable& vars);
std::string to_string(const Rational& q);

Poly partial_derivative(const Poly& p, const VarTable& vars, std::size_t coord);
Poly partial_derivative(const Poly& p, const VarTable& vars, std::string_view coord);
Frac partial_derivative(const Frac& f, const VarTable& vars, std::size_t coord);

// Quotient of num by den; throws NotDivisible on a nonzero remainder.
Poly divide_exact(const Poly& num, const Poly& den);
std::optional<Poly> try_divide_exact(const Poly& num, const Poly& den);

// Substitute polynomials for coordinates (jets untouched).
Poly substitute(const Poly& p, const std::vector<std::optional<Poly>>& images);

// Coefficientwise antiderivative in a formal parameter, evaluated on [0,1].
Poly integrate_unit_interval(const Poly& p, SymbolKey param);

}  // namespace lrgeom

template <>
struct std::hash<lrgeom::Monomial> {
  std::size_t operator()(const lrgeom::Monomial& m) const { return m.hash(); }
};
