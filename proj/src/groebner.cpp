#include "lrgeom/groebner.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>

namespace lrgeom {

namespace {

struct OrderGreater {
  MonomialOrder order;
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b, order) > 0; }
};

using WorkMap = std::map<Monomial, Rational, OrderGreater>;

struct Divisor {
  const Poly* poly;
  Monomial lm;
  Rational lc;
};

std::vector<Divisor> prepare(const std::vector<Poly>& ds, MonomialOrder order) {
  std::vector<Divisor> out;
  for (const auto& d : ds) {
    if (d.is_zero()) {
      out.push_back({&d, Monomial(), 0});
      continue;
    }
    const auto& lt = d.leading_term(order);
    out.push_back({&d, lt.mono, lt.coef});
  }
  return out;
}

Poly monic(const Poly& p, MonomialOrder order) {
  if (p.is_zero()) return p;
  return p.scaled(1 / p.leading_term(order).coef);
}

Poly s_polynomial(const Poly& f, const Poly& g, MonomialOrder order) {
  const auto& lf = f.leading_term(order);
  const auto& lg = g.leading_term(order);
  Monomial l = lf.mono.lcm(lg.mono);
  return f.times(lf.mono.quotient_of(l), 1 / lf.coef) - g.times(lg.mono.quotient_of(l), 1 / lg.coef);
}

}  // namespace

Division divide(const Poly& p, const std::vector<Poly>& divisors, MonomialOrder order) {
  auto ds = prepare(divisors, order);
  WorkMap work(OrderGreater{order});
  for (const auto& t : p.terms()) work.emplace(t.mono, t.coef);
  std::vector<std::vector<Poly::Term>> quot(ds.size());
  std::vector<Poly::Term> rem;
  while (!work.empty()) {
    auto it = work.begin();
    const Divisor* hit = nullptr;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds[i].poly->is_zero()) continue;
      if (ds[i].lm.divides(it->first)) {
        hit = &ds[i];
        idx = i;
        break;
      }
    }
    if (!hit) {
      rem.push_back({it->first, it->second});
      work.erase(it);
      continue;
    }
    Monomial m = hit->lm.quotient_of(it->first);
    Rational c = it->second / hit->lc;
    for (const auto& t : hit->poly->terms()) {
      Monomial key = t.mono * m;
      auto [pos, fresh] = work.try_emplace(std::move(key), 0);
      pos->second -= c * t.coef;
      if (sgn(pos->second) == 0) work.erase(pos);
    }
    quot[idx].push_back({std::move(m), std::move(c)});
  }
  Division d;
  for (auto& q : quot) d.quotients.push_back(Poly::from_terms(std::move(q)));
  d.remainder = Poly::from_terms(std::move(rem));
  return d;
}

bool is_groebner(const std::vector<Poly>& gens, MonomialOrder order) {
  std::vector<Poly> g;
  for (const auto& p : gens)
    if (!p.is_zero()) g.push_back(p);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (g[i].leading_term(order).mono.coprime(g[j].leading_term(order).mono)) continue;
      if (!divide(s_polynomial(g[i], g[j], order), g, order).remainder.is_zero()) return false;
    }
  }
  return true;
}

namespace {

std::vector<Poly> reduced_basis(const std::vector<Poly>& gens, MonomialOrder order) {
  struct Elem {
    Poly p;
    Monomial lm;
    unsigned sugar;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };
  std::vector<Elem> G;
  std::vector<Pair> pairs;
  auto basis_polys = [&] {
    std::vector<Poly> v;
    v.reserve(G.size());
    for (const auto& e : G) v.push_back(e.p);
    return v;
  };
  auto add = [&](Poly p, unsigned sugar) {
    p = monic(p, order);
    Monomial lm = p.leading_term(order).mono;
    std::size_t n = G.size();
    for (std::size_t k = 0; k < n; ++k) {
      Monomial l = G[k].lm.lcm(lm);
      unsigned s = std::max(G[k].sugar + (l.degree() - G[k].lm.degree()), sugar + (l.degree() - lm.degree()));
      pairs.push_back({k, n, l, s});
    }
    G.push_back({std::move(p), std::move(lm), sugar});
  };
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    Poly r = divide(g, basis_polys(), order).remainder;
    if (!r.is_zero()) add(r, g.total_degree());
  }
  auto pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    for (const auto& p : pairs)
      if (p.i == a && p.j == b) return true;
    return false;
  };
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& x, const Pair& y) {
      if (x.sugar != y.sugar) return x.sugar < y.sugar;
      int c = compare(x.lcm, y.lcm, order);
      if (c != 0) return c < 0;
      return std::tie(x.i, x.j) < std::tie(y.i, y.j);
    });
    Pair pr = *best;
    pairs.erase(best);
    if (G[pr.i].lm.coprime(G[pr.j].lm)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (G[k].lm.divides(pr.lcm) && !pending(pr.i, k) && !pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    Poly r = divide(s_polynomial(G[pr.i].p, G[pr.j].p, order), basis_polys(), order).remainder;
    if (!r.is_zero()) add(r, pr.sugar);
  }
  // Minimize, then interreduce tails.
  std::vector<Poly> min;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (G[j].lm.divides(G[i].lm) && (!(G[j].lm == G[i].lm) || j < i)) redundant = true;
    }
    if (!redundant) min.push_back(G[i].p);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < min.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    reduced.push_back(monic(divide(min[i], others, order).remainder, order));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
    return compare(a.leading_term(order).mono, b.leading_term(order).mono, order) > 0;
  });
  return reduced;
}

}  // namespace

Ideal::Ideal(std::vector<Poly> gens, MonomialOrder order) : gens_(std::move(gens)), order_(order) {
  basis_ = reduced_basis(gens_, order_);
}

Poly Ideal::reduce(const Poly& p) const {
  if (basis_.empty()) return p;
  return divide(p, basis_, order_).remainder;
}

Ideal buchberger(const std::vector<Poly>& gens, MonomialOrder order) { return Ideal(gens, order); }

Ideal ideal_power(const Ideal& I, unsigned k) {
  if (k == 0) throw DomainError("ideal power must be positive");
  std::vector<Poly> gens;
  for (const auto& g : I.generators())
    if (!g.is_zero()) gens.push_back(g);
  std::vector<Poly> prods;
  std::vector<std::size_t> idx(k, 0);
  if (gens.empty()) return Ideal({}, I.order());
  // Enumerate multisets as non-decreasing index tuples.
  for (;;) {
    Poly p(1);
    for (auto i : idx) p *= gens[i];
    prods.push_back(std::move(p));
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == gens.size() - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[pos - 1];
  }
  return Ideal(std::move(prods), I.order());
}

// ------------------------------------------------------------ linear solve

namespace {

class SparseSolver {
 public:
  static constexpr int kRhs = INT_MAX;
  using Row = std::map<int, Rational>;

  // Returns false if the row is inconsistent with the rows so far.
  bool add(Row row) {
    for (;;) {
      if (row.empty()) return true;
      auto lead = row.begin();
      if (lead->first == kRhs) return false;
      auto piv = pivots_.find(lead->first);
      if (piv == pivots_.end()) break;
      Rational c = lead->second;
      for (const auto& [col, v] : piv->second) {
        auto [it, fresh] = row.try_emplace(col, 0);
        it->second -= c * v;
        if (sgn(it->second) == 0) row.erase(it);
      }
    }
    Rational inv = 1 / row.begin()->second;
    for (auto& [col, v] : row) v *= inv;
    int col = row.begin()->first;
    pivots_.emplace(col, std::move(row));
    return true;
  }

  std::map<int, Rational> solve() const {
    std::map<int, Rational> x;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      Rational v = 0;
      for (const auto& [col, c] : it->second) {
        if (col == it->first) continue;
        if (col == kRhs) {
          v += c;
        } else if (auto f = x.find(col); f != x.end()) {
          v -= c * f->second;
        }
      }
      if (sgn(v) != 0) x.emplace(it->first, v);
    }
    return x;
  }

 private:
  std::map<int, Row> pivots_;
};

void monomials_up_to(const std::vector<SymbolKey>& vars, unsigned deg, std::vector<Monomial>& out) {
  std::function<void(std::size_t, unsigned, Monomial)> rec = [&](std::size_t i, unsigned left, Monomial m) {
    if (i == vars.size()) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) rec(i + 1, left - e, e ? m * Monomial::var(vars[i], e) : m);
  };
  rec(0, deg, Monomial());
}

}  // namespace

std::optional<std::vector<Poly>> solve_combination(const std::vector<std::vector<Poly>>& gens,
                                                   const std::vector<Poly>& target,
                                                   const std::vector<Poly>& ideal_gens,
                                                   unsigned degree_bound) {
  std::size_t ncomp = target.size();
  std::set<SymbolKey> varset;
  auto scan = [&](const Poly& p) {
    for (const auto& t : p.terms())
      for (const auto& vp : t.mono.factors()) {
        if (!is_coord_key(vp.sym)) throw DomainError("solve_combination expects coordinate polynomials");
        varset.insert(vp.sym);
      }
  };
  for (const auto& g : gens) {
    if (g.size() != ncomp) throw DomainError("component count mismatch");
    for (const auto& p : g) scan(p);
  }
  for (const auto& p : target) scan(p);
  for (const auto& p : ideal_gens) scan(p);
  std::vector<SymbolKey> vars(varset.begin(), varset.end());

  struct Block {
    std::size_t gen;  // index into gens, or SIZE_MAX for ideal multipliers
    std::size_t comp;
    const Poly* mult;
    std::vector<Monomial> monos;
    int first;
  };
  std::vector<Block> blocks;
  int next = 0;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    unsigned d = 0;
    bool nonzero = false;
    for (const auto& p : gens[k])
      if (!p.is_zero()) d = std::max(d, p.total_degree()), nonzero = true;
    Block b{k, 0, nullptr, {}, next};
    if (nonzero && d <= degree_bound) monomials_up_to(vars, degree_bound - d, b.monos);
    next += static_cast<int>(b.monos.size());
    blocks.push_back(std::move(b));
  }
  for (std::size_t c = 0; c < ncomp; ++c) {
    for (const auto& g : ideal_gens) {
      if (g.is_zero() || g.total_degree() > degree_bound) continue;
      Block b{SIZE_MAX, c, &g, {}, next};
      monomials_up_to(vars, degree_bound - g.total_degree(), b.monos);
      next += static_cast<int>(b.monos.size());
      blocks.push_back(std::move(b));
    }
  }
  // Equations: one per (component, monomial).
  std::vector<std::unordered_map<Monomial, SparseSolver::Row, MonomialHash>> eqs(ncomp);
  for (const auto& b : blocks) {
    for (std::size_t mi = 0; mi < b.monos.size(); ++mi) {
      int col = b.first + static_cast<int>(mi);
      if (b.gen != SIZE_MAX) {
        for (std::size_t c = 0; c < ncomp; ++c)
          for (const auto& t : gens[b.gen][c].terms()) eqs[c][t.mono * b.monos[mi]][col] += t.coef;
      } else {
        for (const auto& t : b.mult->terms()) eqs[b.comp][t.mono * b.monos[mi]][col] -= t.coef;
      }
    }
  }
  for (std::size_t c = 0; c < ncomp; ++c)
    for (const auto& t : target[c].terms()) eqs[c][t.mono][SparseSolver::kRhs] += t.coef;
  // Deterministic row order.
  SparseSolver solver;
  for (std::size_t c = 0; c < ncomp; ++c) {
    std::vector<std::pair<Monomial, SparseSolver::Row>> rows(eqs[c].begin(), eqs[c].end());
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
      return compare(x.first, y.first, MonomialOrder::Grevlex) > 0;
    });
    for (auto& [m, row] : rows) {
      for (auto it = row.begin(); it != row.end();)
        it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
      if (!solver.add(std::move(row))) return std::nullopt;
    }
  }
  auto x = solver.solve();
  std::vector<Poly> out;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& b = blocks[k];
    std::vector<Poly::Term> terms;
    for (std::size_t mi = 0; mi < b.monos.size(); ++mi)
      if (auto it = x.find(b.first + static_cast<int>(mi)); it != x.end()) terms.push_back({b.monos[mi], it->second});
    out.push_back(Poly::from_terms(std::move(terms)));
  }
  return out;
}

CofactorResult reduce_with_cofactors(const Poly& p, const std::vector<Poly>& gens, const CofactorOptions& opts) {
  CofactorResult res;
  res.cofactors.assign(gens.size(), Poly());
  if (p.is_zero()) return res;
  bool any = false;
  for (const auto& g : gens) any = any || !g.is_zero();
  if (!any) {
    res.remainder = p;
    return res;
  }
  if (is_groebner(gens, opts.order)) {
    Division d = divide(p, gens, opts.order);
    res.cofactors = std::move(d.quotients);
    res.remainder = std::move(d.remainder);
    return res;
  }
  Ideal I(gens, opts.order);
  res.remainder = I.reduce(p);
  Poly target = p - res.remainder;
  unsigned sum = 0;
  for (const auto& g : gens) sum += g.total_degree();
  unsigned bound = std::max(p.total_degree(), sum) + opts.extra_degree;
  // Split by the non-coordinate part; each chunk is solved over coordinates.
  std::map<Monomial, std::vector<Poly::Term>, OrderGreater> chunks(OrderGreater{MonomialOrder::Grevlex});
  for (const auto& t : target.terms()) chunks[t.mono.rest_part()].push_back({t.mono.coord_part(), t.coef});
  std::vector<std::vector<Poly>> cols;
  for (const auto& g : gens) cols.push_back({g});
  bool ok = true;
  for (auto& [rest, terms] : chunks) {
    auto sol = solve_combination(cols, {Poly::from_terms(terms)}, {}, bound);
    if (!sol) {
      ok = false;
      break;
    }
    for (std::size_t k = 0; k < gens.size(); ++k) res.cofactors[k] += (*sol)[k].times(rest, 1);
  }
  if (ok) return res;
  Division d = divide(p, I.basis(), opts.order);
  res.cofactors = std::move(d.quotients);
  res.remainder = std::move(d.remainder);
  res.against_generators = false;
  res.basis = I.basis();
  return res;
}

// ------------------------------------------------------------ QuotientRing

QuotientRing::QuotientRing(VarTablePtr vars, std::vector<Poly> ideal_gens, MonomialOrder order,
                           std::vector<Poly> invertibles)
    : vars_(std::move(vars)), invertibles_(std::move(invertibles)) {
  for (const auto& g : ideal_gens)
    if (!g.coords_only()) throw DomainError("ideals must be jet-free");
  for (const auto& g : ideal_gens)
    for (const auto& t : g.terms())
      for (const auto& vp : t.mono.factors())
        if (vp.sym >= vars_->num_coords()) throw DomainError("ideal generator uses an undeclared coordinate");
  ideal_ = Ideal(std::move(ideal_gens), order);
  for (const auto& u : invertibles_)
    if (u.is_zero() || is_zero(u)) throw DomainError("declared invertible element is zero in the ring");
}

const Poly& QuotientRing::nf_coord_monomial(const Monomial& m) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return *it->second;
  }
  auto value = std::make_unique<Poly>(ideal_.reduce(Poly::monomial(m)));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, fresh] = cache_.try_emplace(m, std::move(value));
  return *it->second;
}

Poly QuotientRing::nf(const Poly& p) const {
  if (ideal_.is_zero_ideal() || p.is_zero()) return p;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  bool unchanged = true;
  for (const auto& t : p.terms()) {
    Monomial cp = t.mono.coord_part();
    const Poly& r = nf_coord_monomial(cp);
    if (r.size() == 1 && r.terms()[0].mono == cp && r.terms()[0].coef == 1) {
      acc[t.mono] += t.coef;
      continue;
    }
    unchanged = false;
    Monomial rest = t.mono.rest_part();
    for (const auto& rt : r.terms()) acc[rt.mono * rest] += rt.coef * t.coef;
  }
  if (unchanged) return p;
  std::vector<Poly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) terms.push_back({m, std::move(c)});
  return Poly::from_terms(std::move(terms));
}

Frac QuotientRing::nf(const Frac& f) const {
  Poly d = nf(f.den());
  if (d.is_zero()) throw DomainError("denominator vanishes in the quotient ring");
  return Frac(nf(f.num()), d);
}

bool QuotientRing::equal(const Frac& x, const Frac& y) const {
  if (x.den() == y.den()) return is_zero(x.num() - y.num());
  return is_zero(x.num() * y.den() - y.num() * x.den());
}

namespace {

Poly relabel(const Poly& p, const std::function<SymbolKey(SymbolKey)>& f) {
  std::vector<Poly::Term> terms;
  for (const auto& t : p.terms()) {
    Monomial m;
    for (const auto& vp : t.mono.factors()) m = m * Monomial::var(f(vp.sym), vp.exp);
    terms.push_back({m, t.coef});
  }
  return Poly::from_terms(std::move(terms));
}

// Zero divisor test for a coordinate polynomial via I ∩ (s) = elim_t(tI + (1-t)s).
bool coord_zero_divisor(const Ideal& I, const Poly& s) {
  if (I.contains(s)) return true;
  if (I.is_zero_ideal()) return false;
  auto up = [](SymbolKey k) { return k + 1; };
  auto down = [](SymbolKey k) { return k - 1; };
  Poly t = Poly::monomial(Monomial::var(0));
  std::vector<Poly> gens;
  for (const auto& g : I.basis()) gens.push_back(t * relabel(g, up));
  gens.push_back((Poly(1) - t) * relabel(s, up));
  Ideal J(gens, MonomialOrder::Lex);
  for (const auto& g : J.basis()) {
    bool has_t = false;
    for (const auto& term : g.terms()) has_t = has_t || term.mono.exponent(0) > 0;
    if (has_t) continue;
    Poly colon = divide_exact(relabel(g, down), s);
    if (!I.contains(colon)) return true;
  }
  return false;
}

}  // namespace

bool QuotientRing::is_zero_divisor(const Poly& s) const {
  if (is_zero(s)) return true;
  if (ideal_.is_zero_ideal()) return false;
  // McCoy: a polynomial over A in the extra symbols is a non-zero-divisor as
  // soon as one coefficient is; otherwise it is conservatively reported.
  std::map<Monomial, std::vector<Poly::Term>, OrderGreater> chunks(OrderGreater{MonomialOrder::Grevlex});
  for (const auto& t : s.terms()) chunks[t.mono.rest_part()].push_back({t.mono.coord_part(), t.coef});
  for (auto& [rest, terms] : chunks)
    if (!coord_zero_divisor(ideal_, Poly::from_terms(terms))) return false;
  return true;
}

bool QuotientRing::is_admissible_denominator(const Poly& d) const {
  if (d.is_zero()) return false;
  Poly r = d;
  bool progress = true;
  while (!r.is_constant() && progress) {
    progress = false;
    for (const auto& u : invertibles_) {
      if (auto q = try_divide_exact(r, u)) {
        r = *q;
        progress = true;
      }
    }
  }
  return r.is_constant();
}

Frac QuotientRing::parse_fraction(std::string_view s) const { return parse_frac(s, *vars_); }

}  // namespace lrgeom
