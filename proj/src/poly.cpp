#include "lrgeom/poly.hpp"

#include <algorithm>
#include <unordered_map>

namespace lrgeom {

std::string to_string(MonomialOrder o) { return o == MonomialOrder::Grevlex ? "grevlex" : "lex"; }

MonomialOrder parse_order(std::string_view s) {
  if (s == "grevlex") return MonomialOrder::Grevlex;
  if (s == "lex") return MonomialOrder::Lex;
  throw Error("unknown monomial order '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(SymbolKey s, std::uint32_t e) {
  Monomial m;
  if (e > 0) {
    m.f_.push_back({s, e});
    m.deg_ = e;
  }
  return m;
}

std::uint32_t Monomial::exponent(SymbolKey s) const {
  for (const auto& vp : f_) {
    if (vp.sym == s) return vp.exp;
    if (vp.sym > s) break;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() && b != o.f_.end()) {
    if (a->sym == b->sym) {
      r.f_.push_back({a->sym, a->exp + b->exp});
      ++a, ++b;
    } else if (a->sym < b->sym) {
      r.f_.push_back(*a++);
    } else {
      r.f_.push_back(*b++);
    }
  }
  r.f_.insert(r.f_.end(), a, f_.end());
  r.f_.insert(r.f_.end(), b, o.f_.end());
  r.deg_ = deg_ + o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  auto b = o.f_.begin();
  for (const auto& vp : f_) {
    while (b != o.f_.end() && b->sym < vp.sym) ++b;
    if (b == o.f_.end() || b->sym != vp.sym || b->exp < vp.exp) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  auto a = f_.begin();
  for (const auto& vp : o.f_) {
    while (a != f_.end() && a->sym < vp.sym) ++a;
    std::uint32_t e = vp.exp;
    if (a != f_.end() && a->sym == vp.sym) e -= a->exp;
    if (e > 0) r.f_.push_back({vp.sym, e});
  }
  r.deg_ = o.deg_ - deg_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() && b != o.f_.end()) {
    if (a->sym == b->sym) {
      r.f_.push_back({a->sym, std::max(a->exp, b->exp)});
      ++a, ++b;
    } else if (a->sym < b->sym) {
      r.f_.push_back(*a++);
    } else {
      r.f_.push_back(*b++);
    }
  }
  r.f_.insert(r.f_.end(), a, f_.end());
  r.f_.insert(r.f_.end(), b, o.f_.end());
  for (const auto& vp : r.f_) r.deg_ += vp.exp;
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() && b != o.f_.end()) {
    if (a->sym == b->sym) {
      std::uint32_t e = std::min(a->exp, b->exp);
      r.f_.push_back({a->sym, e});
      r.deg_ += e;
      ++a, ++b;
    } else if (a->sym < b->sym) {
      ++a;
    } else {
      ++b;
    }
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() && b != o.f_.end()) {
    if (a->sym == b->sym) return false;
    if (a->sym < b->sym) ++a; else ++b;
  }
  return true;
}

Monomial Monomial::coord_part() const {
  Monomial r;
  for (const auto& vp : f_) {
    if (!is_coord_key(vp.sym)) break;
    r.f_.push_back(vp);
    r.deg_ += vp.exp;
  }
  return r;
}

Monomial Monomial::rest_part() const {
  Monomial r;
  for (const auto& vp : f_) {
    if (is_coord_key(vp.sym)) continue;
    r.f_.push_back(vp);
    r.deg_ += vp.exp;
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& vp : f_) {
    h ^= vp.sym + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= vp.exp + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  if (order == MonomialOrder::Grevlex) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    // Smallest exponent on the last differing variable wins.
    auto i = fa.size(), j = fb.size();
    while (i > 0 && j > 0) {
      const auto& x = fa[i - 1];
      const auto& y = fb[j - 1];
      if (x.sym == y.sym) {
        if (x.exp != y.exp) return x.exp < y.exp ? 1 : -1;
        --i, --j;
      } else if (x.sym > y.sym) {
        return -1;
      } else {
        return 1;
      }
    }
    if (i == j) return 0;
    return i == 0 ? 1 : -1;
  }
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    const auto& x = fa[i];
    const auto& y = fb[j];
    if (x.sym == y.sym) {
      if (x.exp != y.exp) return x.exp > y.exp ? 1 : -1;
      ++i, ++j;
    } else {
      return x.sym < y.sym ? 1 : -1;
    }
  }
  if (i == fa.size() && j == fb.size()) return 0;
  return i == fa.size() ? -1 : 1;
}

// -------------------------------------------------------------------- Poly

namespace {

bool grevlex_greater(const Poly::Term& x, const Poly::Term& y) {
  return compare(x.mono, y.mono, MonomialOrder::Grevlex) > 0;
}

}  // namespace

Poly::Poly(long c) {
  if (c != 0) t_.push_back({Monomial(), Rational(c)});
}

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) t_.push_back({Monomial(), c});
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.t_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), grevlex_greater);
  Poly p;
  p.t_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().mono == t.mono) {
      p.t_.back().coef += t.coef;
    } else {
      if (!p.t_.empty() && sgn(p.t_.back().coef) == 0) p.t_.pop_back();
      p.t_.push_back(std::move(t));
    }
  }
  if (!p.t_.empty() && sgn(p.t_.back().coef) == 0) p.t_.pop_back();
  return p;
}

Poly Poly::from_sorted(std::vector<Term> terms) {
  Poly p;
  p.t_ = std::move(terms);
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].mono.is_one()); }

Rational Poly::constant_value() const {
  if (t_.empty()) return 0;
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return t_[0].coef;
}

std::uint32_t Poly::total_degree() const { return t_.empty() ? 0 : t_.front().mono.degree(); }

bool Poly::coords_only() const {
  for (const auto& t : t_)
    for (const auto& vp : t.mono.factors())
      if (!is_coord_key(vp.sym)) return false;
  return true;
}

const Poly::Term& Poly::leading_term(MonomialOrder order) const {
  if (t_.empty()) throw DomainError("leading term of zero polynomial");
  if (order == MonomialOrder::Grevlex) return t_.front();
  const Term* best = &t_.front();
  for (const auto& t : t_)
    if (compare(t.mono, best->mono, order) > 0) best = &t;
  return *best;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.coef = -t.coef;
  return r;
}

namespace {

Poly merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b, bool subtract) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    int c = compare(i->mono, j->mono, MonomialOrder::Grevlex);
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back({j->mono, subtract ? Rational(-j->coef) : j->coef});
      ++j;
    } else {
      Rational s = subtract ? Rational(i->coef - j->coef) : Rational(i->coef + j->coef);
      if (sgn(s) != 0) out.push_back({i->mono, std::move(s)});
      ++i, ++j;
    }
  }
  for (; i != a.end(); ++i) out.push_back(*i);
  for (; j != b.end(); ++j) out.push_back({j->mono, subtract ? Rational(-j->coef) : j->coef});
  return Poly::from_sorted(std::move(out));
}

}  // namespace

Poly Poly::operator+(const Poly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  return merge(t_, o.t_, false);
}

Poly Poly::operator-(const Poly& o) const {
  if (o.is_zero()) return *this;
  return merge(t_, o.t_, true);
}

Poly Poly::times(const Monomial& m, const Rational& c) const {
  Poly r;
  if (sgn(c) == 0) return r;
  r.t_.reserve(t_.size());
  // Multiplying by a monomial preserves the order.
  for (const auto& t : t_) r.t_.push_back({t.mono * m, t.coef * c});
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (o.t_.size() == 1) return times(o.t_[0].mono, o.t_[0].coef);
  if (t_.size() == 1) return o.times(t_[0].mono, t_[0].coef);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(t_.size() * o.t_.size());
  Rational prod;
  for (const auto& x : t_) {
    for (const auto& y : o.t_) {
      prod = x.coef * y.coef;
      auto [it, fresh] = acc.try_emplace(x.mono * y.mono, prod);
      if (!fresh) it->second += prod;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) terms.push_back({m, std::move(c)});
  std::sort(terms.begin(), terms.end(), grevlex_greater);
  Poly r;
  r.t_ = std::move(terms);
  return r;
}

Poly& Poly::operator+=(const Poly& o) { return *this = *this + o; }
Poly& Poly::operator-=(const Poly& o) { return *this = *this - o; }
Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::scaled(const Rational& c) const { return times(Monomial(), c); }

Poly Poly::pow(unsigned e) const {
  Poly result(1), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].mono == o.t_[i].mono) || t_[i].coef != o.t_[i].coef) return false;
  return true;
}

Rational Poly::content() const {
  if (t_.empty()) return 0;
  mpz_class g = 0, l = 1;
  for (const auto& t : t_) {
    mpz_class n = abs(t.coef.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  if (sgn(t_.front().coef) < 0) c = -c;
  return c;
}

Monomial Poly::monomial_gcd() const {
  if (t_.empty()) return Monomial();
  Monomial g = t_.front().mono;
  for (const auto& t : t_) {
    if (g.is_one()) break;
    g = g.gcd(t.mono);
  }
  return g;
}

// -------------------------------------------------------------- VarTable

unsigned JetSymbol::order() const {
  unsigned o = 0;
  for (auto c : counts) o += c;
  return o;
}

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  return true;
}

}  // namespace

VarTable::VarTable(std::vector<std::string> coords, std::vector<JetDecl> jets)
    : coords_(std::move(coords)), jets_(std::move(jets)) {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!valid_identifier(coords_[i])) throw Error("invalid coordinate name '" + coords_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (coords_[i] == coords_[j]) throw Error("duplicate coordinate '" + coords_[i] + "'");
  }
  std::string last;
  for (const auto& c : coords_) last.push_back(c.back());
  std::string sorted = last;
  std::sort(sorted.begin(), sorted.end());
  bool unique = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  if (unique) {
    labels_ = last;
  } else {
    const char* alphabet = "123456789abcdefghijklmnopqrstuvwxyz";
    if (coords_.size() > 35) throw Error("too many coordinates for jet labels");
    labels_.assign(alphabet, alphabet + coords_.size());
  }
  if (!jets_.empty() && coords_.size() > kMaxJetCoords)
    throw Error("jet symbols support at most " + std::to_string(kMaxJetCoords) + " coordinates");
  if (jets_.size() >= (std::size_t{1} << 15)) throw Error("too many jet functions");
  for (const auto& j : jets_) {
    if (!valid_identifier(j.name) || j.name.find('_') != std::string::npos)
      throw Error("invalid jet function name '" + j.name + "'");
    if (coord_index(j.name)) throw Error("jet name '" + j.name + "' clashes with a coordinate");
    std::vector<bool> d(coords_.size(), false);
    for (const auto& dep : j.depends) {
      auto idx = coord_index(dep);
      if (!idx) throw UnknownSymbol(dep);
      d[*idx] = true;
    }
    deps_.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < jets_.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (jets_[i].name == jets_[k].name) throw Error("duplicate jet '" + jets_[i].name + "'");
  for (const auto& c : coords_) {
    auto pos = c.rfind('_');
    if (pos == std::string::npos) continue;
    for (const auto& j : jets_)
      if (c.substr(0, pos) == j.name) throw Error("coordinate '" + c + "' shadows a jet derivative");
  }
}

std::optional<std::size_t> VarTable::coord_index(std::string_view name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == name) return i;
  return std::nullopt;
}

bool VarTable::jet_depends(std::size_t fn, std::size_t coord) const { return deps_.at(fn).at(coord); }

SymbolKey VarTable::jet_key(const JetSymbol& j) const {
  SymbolKey k = kJetBit | (SymbolKey(j.fn) << 48);
  unsigned order = 0;
  for (std::size_t c = 0; c < j.counts.size(); ++c) {
    if (j.counts[c] == 0) continue;
    if (!jet_depends(j.fn, c)) throw DomainError("jet derivative outside dependency set");
    order += j.counts[c];
    k |= SymbolKey(j.counts[c]) << (4 * (kMaxJetCoords - 1 - c));
  }
  if (order > kMaxJetOrder) throw DomainError("jet derivative order exceeds " + std::to_string(kMaxJetOrder));
  return k | (SymbolKey(order) << 44);
}

JetSymbol VarTable::decode_jet(SymbolKey k) const {
  JetSymbol j;
  j.fn = (k >> 48) & 0x7fff;
  j.counts.assign(coords_.size(), 0);
  for (std::size_t c = 0; c < coords_.size(); ++c)
    j.counts[c] = static_cast<std::uint8_t>((k >> (4 * (kMaxJetCoords - 1 - c))) & 0xf);
  return j;
}

std::optional<SymbolKey> VarTable::lookup(std::string_view name) const {
  if (auto c = coord_index(name)) return *c;
  for (std::size_t f = 0; f < jets_.size(); ++f)
    if (jets_[f].name == name) return jet_key({f, std::vector<std::uint8_t>(coords_.size(), 0)});
  auto pos = name.rfind('_');
  if (pos == std::string_view::npos || pos + 1 == name.size()) return std::nullopt;
  auto base = name.substr(0, pos);
  for (std::size_t f = 0; f < jets_.size(); ++f) {
    if (jets_[f].name != base) continue;
    JetSymbol j{f, std::vector<std::uint8_t>(coords_.size(), 0)};
    for (char ch : name.substr(pos + 1)) {
      auto at = labels_.find(ch);
      if (at == std::string::npos || !jet_depends(f, at)) return std::nullopt;
      if (j.counts[at] == kMaxJetOrder) return std::nullopt;
      ++j.counts[at];
    }
    if (j.order() > jets_[f].max_order)
      throw DomainError("jet '" + std::string(name) + "' exceeds declared max order " +
                        std::to_string(jets_[f].max_order));
    return jet_key(j);
  }
  return std::nullopt;
}

std::string VarTable::symbol_name(SymbolKey k) const {
  if (is_coord_key(k)) return coords_.at(k);
  if (is_param_key(k)) return "param" + std::to_string(k & ~kParamBit);
  JetSymbol j = decode_jet(k);
  std::string s = jets_.at(j.fn).name;
  if (j.order() > 0) {
    s.push_back('_');
    for (std::size_t c = 0; c < j.counts.size(); ++c) s.append(j.counts[c], labels_[c]);
  }
  return s;
}

Poly VarTable::var(std::string_view name) const {
  auto k = lookup(name);
  if (!k) throw UnknownSymbol(std::string(name));
  return Poly::monomial(Monomial::var(*k));
}

Poly VarTable::coord(std::size_t i) const {
  if (i >= coords_.size()) throw Error("coordinate index out of range");
  return Poly::monomial(Monomial::var(i));
}

bool VarTable::operator==(const VarTable& o) const {
  if (coords_ != o.coords_ || jets_.size() != o.jets_.size()) return false;
  for (std::size_t i = 0; i < jets_.size(); ++i) {
    if (jets_[i].name != o.jets_[i].name || jets_[i].max_order != o.jets_[i].max_order) return false;
    if (deps_[i] != o.deps_[i]) return false;
  }
  return true;
}

// -------------------------------------------------------------- derivative

Poly partial_derivative(const Poly& p, const VarTable& vars, std::size_t coord) {
  if (coord >= vars.num_coords()) throw Error("coordinate index out of range");
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) {
    const auto& fs = t.mono.factors();
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const auto& vp = fs[i];
      if (is_coord_key(vp.sym)) {
        if (vp.sym != coord) continue;
        Monomial m = Monomial::var(vp.sym).quotient_of(t.mono);
        out.push_back({std::move(m), t.coef * vp.exp});
      } else if (is_jet_key(vp.sym)) {
        JetSymbol j = vars.decode_jet(vp.sym);
        if (!vars.jet_depends(j.fn, coord)) continue;
        ++j.counts[coord];
        SymbolKey dk = vars.jet_key(j);
        Monomial m = Monomial::var(vp.sym).quotient_of(t.mono) * Monomial::var(dk);
        out.push_back({std::move(m), t.coef * vp.exp});
      }
    }
  }
  return Poly::from_terms(std::move(out));
}

Poly partial_derivative(const Poly& p, const VarTable& vars, std::string_view coord) {
  auto idx = vars.coord_index(coord);
  if (!idx) throw UnknownSymbol(std::string(coord));
  return partial_derivative(p, vars, *idx);
}

Frac partial_derivative(const Frac& f, const VarTable& vars, std::size_t coord) {
  Poly dn = partial_derivative(f.num(), vars, coord);
  if (f.is_polynomial()) return Frac(dn, f.den());
  Poly dd = partial_derivative(f.den(), vars, coord);
  return Frac(dn * f.den() - f.num() * dd, f.den() * f.den());
}

// ---------------------------------------------------------------- division

std::optional<Poly> try_divide_exact(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DomainError("division by zero polynomial");
  if (num.is_zero()) return Poly();
  const auto& lt = den.terms().front();
  if (den.size() == 1) {
    std::vector<Poly::Term> q;
    q.reserve(num.size());
    for (const auto& t : num.terms()) {
      if (!lt.mono.divides(t.mono)) return std::nullopt;
      q.push_back({lt.mono.quotient_of(t.mono), t.coef / lt.coef});
    }
    return Poly::from_terms(std::move(q));
  }
  if (!lt.mono.divides(num.terms().front().mono)) return std::nullopt;
  // Grevlex division; a remainder term means failure, since a leading term not
  // divisible by lt(den) can never be cancelled later.
  std::vector<Poly::Term> q;
  Poly r = num;
  while (!r.is_zero()) {
    const auto& rt = r.terms().front();
    if (!lt.mono.divides(rt.mono)) return std::nullopt;
    Monomial m = lt.mono.quotient_of(rt.mono);
    Rational c = rt.coef / lt.coef;
    r -= den.times(m, c);
    q.push_back({std::move(m), std::move(c)});
  }
  return Poly::from_terms(std::move(q));
}

Poly divide_exact(const Poly& num, const Poly& den) {
  auto q = try_divide_exact(num, den);
  if (!q) throw NotDivisible("polynomial is not divisible by the given divisor");
  return *q;
}

Poly substitute(const Poly& p, const std::vector<std::optional<Poly>>& images) {
  Poly out;
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Poly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Poly(1));
    while (cache.size() <= e) cache.push_back(cache.back() * *images[v]);
    return cache[e];
  };
  for (const auto& t : p.terms()) {
    Monomial keep;
    Poly acc(t.coef);
    for (const auto& vp : t.mono.factors()) {
      if (is_coord_key(vp.sym) && vp.sym < images.size() && images[vp.sym]) {
        acc = acc * power(vp.sym, vp.exp);
      } else {
        keep = keep * Monomial::var(vp.sym, vp.exp);
      }
    }
    out += acc.times(keep, 1);
  }
  return out;
}

Poly integrate_unit_interval(const Poly& p, SymbolKey param) {
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) {
    std::uint32_t e = t.mono.exponent(param);
    Monomial m = e ? Monomial::var(param, e).quotient_of(t.mono) : t.mono;
    out.push_back({std::move(m), t.coef / (e + 1)});
  }
  return Poly::from_terms(std::move(out));
}

// -------------------------------------------------------------------- Frac

Frac::Frac(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("zero denominator");
  normalize();
}

void Frac::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.is_constant()) {
    Rational c = den_.constant_value();
    if (c != 1) num_ = num_.scaled(1 / c);
    den_ = Poly(1);
    return;
  }
  Monomial g = num_.monomial_gcd().gcd(den_.monomial_gcd());
  if (!g.is_one()) {
    num_ = divide_exact(num_, Poly::monomial(g));
    den_ = divide_exact(den_, Poly::monomial(g));
  }
  Rational c = den_.content();
  if (c != 1) {
    num_ = num_.scaled(1 / c);
    den_ = den_.scaled(1 / c);
  }
  if (den_.is_constant()) normalize();
}

Poly Frac::to_poly() const {
  if (!den_.is_constant()) throw DomainError("fraction has a non-constant denominator");
  return num_.scaled(1 / den_.constant_value());
}

Frac Frac::operator-() const {
  Frac r = *this;
  r.num_ = -r.num_;
  return r;
}

Frac Frac::operator+(const Frac& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_ == o.den_) return Frac(num_ + o.num_, den_);
  if (o.is_polynomial()) return Frac(num_ + o.num_ * den_, den_);
  if (is_polynomial()) return Frac(num_ * o.den_ + o.num_, o.den_);
  if (auto q = try_divide_exact(den_, o.den_)) return Frac(num_ + o.num_ * *q, den_);
  if (auto q = try_divide_exact(o.den_, den_)) return Frac(num_ * *q + o.num_, o.den_);
  return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Frac Frac::operator-(const Frac& o) const { return *this + (-o); }

Frac Frac::operator*(const Frac& o) const {
  if (is_zero() || o.is_zero()) return Frac();
  if (is_polynomial() && o.is_polynomial()) return Frac(num_ * o.num_, Poly(1));
  Poly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
  if (!d2.is_constant())
    if (auto q = try_divide_exact(n1, d2)) n1 = *q, d2 = Poly(1);
  if (!d1.is_constant())
    if (auto q = try_divide_exact(n2, d1)) n2 = *q, d1 = Poly(1);
  return Frac(n1 * n2, d1 * d2);
}

Frac Frac::operator/(const Frac& o) const {
  if (o.is_zero()) throw DomainError("division by zero fraction");
  return *this * Frac(o.den_, o.num_);
}

bool frac_eq(const Frac& x, const Frac& y) {
  if (x.den() == y.den()) return x.num() == y.num();
  return (x.num() * y.den() - y.num() * x.den()).is_zero();
}

}  // namespace lrgeom
