#include "lrgeom/liealgebra.hpp"

#include <map>
#include <mutex>

namespace lrgeom {

// ------------------------------------------------------------- derivations

Poly deriv_apply(const Derivation& X, const Poly& p, const VarTable& vars) {
  Poly out;
  for (std::size_t i = 0; i < X.coeffs.size(); ++i) {
    if (X.coeffs[i].is_zero()) continue;
    Poly d = partial_derivative(p, vars, i);
    if (!d.is_zero()) out += X.coeffs[i] * d;
  }
  return out;
}

Frac deriv_apply(const Derivation& X, const Frac& f, const VarTable& vars) {
  if (f.is_polynomial()) return Frac(deriv_apply(X, f.num(), vars), f.den());
  Poly dn = deriv_apply(X, f.num(), vars);
  Poly dd = deriv_apply(X, f.den(), vars);
  return Frac(dn * f.den() - f.num() * dd, f.den() * f.den());
}

Mat deriv_apply(const Derivation& X, const Mat& m, const VarTable& vars) {
  return m.map([&](const Frac& x) { return deriv_apply(X, x, vars); });
}

Derivation deriv_bracket(const Derivation& X, const Derivation& Y, const VarTable& vars) {
  if (X.coeffs.size() != Y.coeffs.size()) throw DomainError("derivations over different rings");
  Derivation Z;
  for (std::size_t i = 0; i < X.coeffs.size(); ++i)
    Z.coeffs.push_back(deriv_apply(X, Y.coeffs[i], vars) - deriv_apply(Y, X.coeffs[i], vars));
  return Z;
}

Derivation parse_derivation(const std::vector<std::string>& coeffs, const VarTable& vars) {
  if (coeffs.size() != vars.num_coords()) throw DomainError("derivation needs one coefficient per coordinate");
  Derivation X;
  for (const auto& c : coeffs) X.coeffs.push_back(parse_poly(c, vars));
  return X;
}

// ------------------------------------------------------------ presentation

LRPresentation::LRPresentation(RingPtr ring, std::vector<std::string> names, std::vector<Derivation> anchors,
                               std::optional<StructureConstants> structure,
                               std::vector<std::vector<Poly>> syzygies)
    : ring_(std::move(ring)), names_(std::move(names)), anchors_(std::move(anchors)), syz_(std::move(syzygies)) {
  std::size_t l = anchors_.size();
  if (names_.empty())
    for (std::size_t i = 0; i < l; ++i) names_.push_back("X" + std::to_string(i + 1));
  if (names_.size() != l) throw DomainError("generator names and anchors differ in length");
  for (const auto& X : anchors_)
    if (X.coeffs.size() != ring_->vars().num_coords())
      throw DomainError("anchor needs one coefficient per coordinate");
  for (const auto& col : syz_)
    if (col.size() != l) throw DomainError("syzygy column length differs from the number of generators");
  if (structure) {
    if (structure->size() != l) throw DomainError("structure constants have the wrong size");
    c_ = std::move(*structure);
    declared_ = true;
  } else {
    c_ = compute_structure_constants(*ring_, anchors_);
  }
}

StructureConstants compute_structure_constants(const QuotientRing& R, const std::vector<Derivation>& X) {
  std::size_t l = X.size();
  StructureConstants c(l);
  std::vector<std::vector<Poly>> gens;
  unsigned deg = 0;
  for (const auto& x : X) {
    gens.push_back(x.coeffs);
    for (const auto& p : x.coeffs) deg = std::max(deg, p.total_degree());
  }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      Derivation b = deriv_bracket(X[i], X[j], R.vars());
      unsigned d = deg;
      for (const auto& p : b.coeffs) d = std::max(d, p.total_degree());
      auto sol = solve_combination(gens, b.coeffs, R.ideal().basis(), d + 2);
      if (!sol)
        throw DomainError("bracket [" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          "] is not expressible through the generators within the degree bound");
      for (std::size_t k = 0; k < l; ++k) {
        c.at(i, j, k) = R.nf((*sol)[k]);
        c.at(j, i, k) = -c.at(i, j, k);
      }
    }
  return c;
}

Report verify_presentation(const LRPresentation& L) {
  Report rep;
  const auto& R = L.ring();
  const auto& vars = L.vars();
  std::size_t l = L.size(), n = vars.num_coords();
  const auto& ideal_gens = R.ideal().generators();
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t g = 0; g < ideal_gens.size(); ++g) {
      Poly r = R.nf(L.act(i, ideal_gens[g]));
      rep.add("tangency", {int(i + 1), int(g + 1)}, r.is_zero(),
              L.name(i) + " applied to ideal generator " + std::to_string(g + 1),
              r.is_zero() ? decltype(Entry::values){} : decltype(Entry::values){{"residue", R.str(r)}});
    }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      Derivation b = deriv_bracket(L.anchor(i), L.anchor(j), vars);
      std::vector<std::pair<std::string, std::string>> bad;
      for (std::size_t v = 0; v < n; ++v) {
        Poly lhs = b.coeffs[v];
        for (std::size_t k = 0; k < l; ++k)
          if (!L.c(i, j, k).is_zero()) lhs -= L.c(i, j, k) * L.anchor(k).coeffs[v];
        Poly r = R.nf(lhs);
        if (!r.is_zero()) bad.push_back({vars.coord_name(v), R.str(r)});
      }
      rep.add("bracket", {int(i + 1), int(j + 1)}, bad.empty(),
              "[" + L.name(i) + "," + L.name(j) + "] against structure constants", bad);
    }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i; j < l; ++j) {
      std::vector<std::pair<std::string, std::string>> bad;
      for (std::size_t k = 0; k < l; ++k) {
        Poly r = R.nf(L.c(i, j, k) + L.c(j, i, k));
        if (!r.is_zero()) bad.push_back({"c" + std::to_string(k + 1), R.str(r)});
      }
      rep.add("antisymmetry", {int(i + 1), int(j + 1)}, bad.empty(), "c_ij + c_ji", bad);
    }
  for (std::size_t a = 0; a < L.syzygies().size(); ++a) {
    const auto& col = L.syzygies()[a];
    std::vector<std::pair<std::string, std::string>> bad;
    for (std::size_t v = 0; v < n; ++v) {
      Poly s;
      for (std::size_t k = 0; k < l; ++k) s += col[k] * L.anchor(k).coeffs[v];
      Poly r = R.nf(s);
      if (!r.is_zero()) bad.push_back({vars.coord_name(v), R.str(r)});
    }
    rep.add("syzygy", {int(a + 1)}, bad.empty(),
            bad.empty() ? "column " + std::to_string(a + 1) : "column " + std::to_string(a + 1) + " does not annihilate the coordinates",
            bad);
  }
  return rep;
}

// ------------------------------------------------------------------- forms

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

const std::vector<std::vector<std::size_t>>& sorted_tuples(std::size_t l, std::size_t m) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<std::size_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(l, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<std::size_t>> out;
  if (m <= l) {
    std::vector<std::size_t> t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = i;
    for (;;) {
      out.push_back(t);
      std::size_t pos = m;
      while (pos > 0 && t[pos - 1] == l - m + pos - 1) --pos;
      if (pos == 0) break;
      ++t[pos - 1];
      for (std::size_t j = pos; j < m; ++j) t[j] = t[j - 1] + 1;
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

std::size_t tuple_rank(const std::vector<std::size_t>& sorted) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < sorted.size(); ++k) r += binom(sorted[k], k + 1);
  return r;
}

std::string to_string(Convention c) { return c == Convention::Row ? "row" : "operator"; }

MatForm MatForm::transposed() const {
  MatForm out(gens(), arity(), beta_, conv_ == Convention::Row ? Convention::Operator : Convention::Row);
  for (std::size_t r = 0; r < size(); ++r) out.at_rank(r) = at_rank(r).transpose();
  return out;
}

GenForm MatForm::entry(std::size_t mu, std::size_t nu) const {
  GenForm out(gens(), arity(), Frac());
  for (std::size_t r = 0; r < size(); ++r) out.at_rank(r) = at_rank(r)(mu, nu);
  return out;
}

GenForm nf(const GenForm& w, const QuotientRing& R) {
  GenForm out = w;
  for (std::size_t r = 0; r < w.size(); ++r) out.at_rank(r) = R.nf(w.at_rank(r));
  return out;
}

MatForm nf(const MatForm& w, const QuotientRing& R) {
  MatForm out = w;
  for (std::size_t r = 0; r < w.size(); ++r) out.at_rank(r) = nf(w.at_rank(r), R);
  return out;
}

bool is_zero_mod(const GenForm& w, const QuotientRing& R) {
  for (std::size_t r = 0; r < w.size(); ++r)
    if (!R.is_zero(w.at_rank(r))) return false;
  return true;
}

bool is_zero_mod(const MatForm& w, const QuotientRing& R) {
  for (std::size_t r = 0; r < w.size(); ++r)
    if (!is_zero_mod(w.at_rank(r), R)) return false;
  return true;
}

namespace {

template <class F>
void check_compatible(const F& a, const F& b) {
  if (a.gens() != b.gens() || a.arity() != b.arity()) throw DomainError("forms of different shapes");
}

void check_compatible(const MatForm& a, const MatForm& b) {
  if (a.gens() != b.gens() || a.arity() != b.arity() || a.beta() != b.beta())
    throw DomainError("forms of different shapes");
  if (a.convention() != b.convention()) throw DomainError("matrix forms in different conventions");
}

}  // namespace

bool equal_mod(const GenForm& a, const GenForm& b, const QuotientRing& R) {
  check_compatible(a, b);
  for (std::size_t r = 0; r < a.size(); ++r)
    if (!R.equal(a.at_rank(r), b.at_rank(r))) return false;
  return true;
}

bool equal_mod(const MatForm& a, const MatForm& b, const QuotientRing& R) {
  check_compatible(a, b);
  for (std::size_t r = 0; r < a.size(); ++r)
    if (!equal_mod(a.at_rank(r), b.at_rank(r), R)) return false;
  return true;
}

GenForm operator+(const GenForm& a, const GenForm& b) {
  check_compatible(a, b);
  GenForm out = a;
  for (std::size_t r = 0; r < a.size(); ++r) out.at_rank(r) += b.at_rank(r);
  return out;
}

GenForm operator-(const GenForm& a, const GenForm& b) {
  check_compatible(a, b);
  GenForm out = a;
  for (std::size_t r = 0; r < a.size(); ++r) out.at_rank(r) -= b.at_rank(r);
  return out;
}

GenForm scale(const GenForm& a, const Frac& s) {
  GenForm out = a;
  for (std::size_t r = 0; r < a.size(); ++r) out.at_rank(r) = a.at_rank(r) * s;
  return out;
}

MatForm operator+(const MatForm& a, const MatForm& b) {
  check_compatible(a, b);
  MatForm out = a;
  for (std::size_t r = 0; r < a.size(); ++r) out.at_rank(r) += b.at_rank(r);
  return out;
}

MatForm operator-(const MatForm& a, const MatForm& b) {
  check_compatible(a, b);
  MatForm out = a;
  for (std::size_t r = 0; r < a.size(); ++r) out.at_rank(r) -= b.at_rank(r);
  return out;
}

MatForm scale(const MatForm& a, const Frac& s) {
  MatForm out = a;
  for (std::size_t r = 0; r < a.size(); ++r) out.at_rank(r) = a.at_rank(r).scaled(s);
  return out;
}

MatForm map_values(const MatForm& a, const std::function<Mat(const Mat&)>& f) {
  MatForm out = a;
  for (std::size_t r = 0; r < a.size(); ++r) out.at_rank(r) = f(a.at_rank(r));
  return out;
}

GenForm zero_form(const LRPresentation& L, std::size_t arity) { return GenForm(L.size(), arity, Frac()); }

GenForm function_form(const LRPresentation& L, const Frac& a) {
  GenForm w(L.size(), 0, Frac());
  w.at({}) = a;
  return w;
}

MatForm one_form(const std::vector<Mat>& values, Convention conv) {
  if (values.empty()) throw DomainError("one-form needs at least one generator");
  MatForm w(values.size(), 1, values[0].rows(), conv);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].rows() != w.beta() || values[i].cols() != w.beta()) throw DomainError("one-form values differ in shape");
    w.at({i}) = values[i];
  }
  return w;
}

namespace detail {

std::vector<std::size_t> drop(const std::vector<std::size_t>& t, std::size_t a) {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (i != a) r.push_back(t[i]);
  return r;
}

std::vector<std::size_t> drop2(const std::vector<std::size_t>& t, std::size_t a, std::size_t b) {
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (i != a && i != b) r.push_back(t[i]);
  return r;
}

}  // namespace detail

GenForm ddr(const GenForm& w, const LRPresentation& L) {
  if (w.gens() != L.size()) throw DomainError("form and presentation differ in generator count");
  GenForm out(L.size(), w.arity() + 1, Frac());
  detail::koszul_into(w, L, out, [&](std::size_t i, const Frac& v) { return L.act(i, v); });
  return out;
}

MatForm ddr(const MatForm& w, const LRPresentation& L) {
  if (w.gens() != L.size()) throw DomainError("form and presentation differ in generator count");
  MatForm out(L.size(), w.arity() + 1, w.beta(), w.convention());
  detail::koszul_into(w, L, out, [&](std::size_t i, const Mat& v) { return L.act(i, v); });
  return out;
}

GenForm cup(const GenForm& a, const GenForm& b) {
  if (a.gens() != b.gens()) throw DomainError("forms over different presentations");
  GenForm out(a.gens(), a.arity() + b.arity(), Frac());
  detail::cup_into(a, b, out, [](const Frac& x, const Frac& y) { return x * y; });
  return out;
}

MatForm cup(const MatForm& a, const MatForm& b) {
  if (a.gens() != b.gens() || a.beta() != b.beta()) throw DomainError("forms over different presentations");
  if (a.convention() != b.convention()) throw DomainError("matrix forms in different conventions");
  MatForm out(a.gens(), a.arity() + b.arity(), a.beta(), a.convention());
  // In row convention composition reverses the matrix product.
  if (a.convention() == Convention::Operator)
    detail::cup_into(a, b, out, [](const Mat& x, const Mat& y) { return x * y; });
  else
    detail::cup_into(a, b, out, [](const Mat& x, const Mat& y) { return y * x; });
  return out;
}

MatForm graded_commutator(const MatForm& a, const MatForm& b) {
  MatForm ab = cup(a, b), ba = cup(b, a);
  return (a.arity() * b.arity()) % 2 == 0 ? ab - ba : ab + ba;
}

GenForm trace(const MatForm& w) {
  GenForm out(w.gens(), w.arity(), Frac());
  for (std::size_t r = 0; r < w.size(); ++r) out.at_rank(r) = w.at_rank(r).trace();
  return out;
}

MatForm mc_defect(const MatForm& C, const LRPresentation& L, int sign) {
  if (C.arity() != 1) throw DomainError("mc_defect expects a one-form");
  if (sign != 1 && sign != -1) throw DomainError("mc_defect sign must be +1 or -1");
  // Matrix product in the stored orientation, independent of the convention tag.
  MatForm sq(C.gens(), 2, C.beta(), C.convention());
  detail::cup_into(C, C, sq, [](const Mat& x, const Mat& y) { return x * y; });
  MatForm d = ddr(C, L);
  return nf(sign > 0 ? d + sq : d - sq, L.ring());
}

namespace {

std::vector<std::pair<std::string, std::string>> nonzero_entries(const Mat& m, const QuotientRing& R) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Frac x = R.nf(m(i, j));
      if (!x.is_zero()) out.push_back({"(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", R.str(x)});
    }
  return out;
}

}  // namespace

Report mc_defect_report(const MatForm& C, const LRPresentation& L, int sign, const std::string& task) {
  MatForm D = mc_defect(C, L, sign);
  Report rep;
  for (const auto& t : D.tuples()) {
    auto bad = nonzero_entries(D.at(t), L.ring());
    rep.add(task, {int(t[0] + 1), int(t[1] + 1)}, bad.empty(), "Maurer-Cartan defect", bad);
  }
  return rep;
}

Report form_wellformed_report(const GenForm& w, const LRPresentation& L, const std::string& task) {
  Report rep;
  const auto& R = L.ring();
  if (w.arity() == 0) return rep;
  const auto& rests = sorted_tuples(L.size(), w.arity() - 1);
  for (std::size_t a = 0; a < L.syzygies().size(); ++a) {
    const auto& col = L.syzygies()[a];
    for (const auto& rest : rests) {
      Frac s;
      for (std::size_t k = 0; k < L.size(); ++k) {
        if (col[k].is_zero()) continue;
        std::vector<std::size_t> args{k};
        args.insert(args.end(), rest.begin(), rest.end());
        s += Frac(col[k]) * w.get(args);
      }
      Frac r = R.nf(s);
      std::vector<int> idx{int(a + 1)};
      for (auto x : rest) idx.push_back(int(x + 1));
      rep.add(task, idx, r.is_zero(), "syzygy contraction",
              r.is_zero() ? decltype(Entry::values){} : decltype(Entry::values){{"contraction", R.str(r)}});
    }
  }
  return rep;
}

bool form_wellformed(const GenForm& w, const LRPresentation& L) {
  return form_wellformed_report(w, L, "wellformed").passed();
}

Report tensor_wellformed_report(const Mat& G, const LRPresentation& L, const std::string& task) {
  Report rep;
  const auto& R = L.ring();
  for (std::size_t a = 0; a < L.syzygies().size(); ++a) {
    const auto& col = L.syzygies()[a];
    for (std::size_t j = 0; j < G.cols(); ++j) {
      Frac s;
      for (std::size_t k = 0; k < L.size(); ++k)
        if (!col[k].is_zero()) s += Frac(col[k]) * G(k, j);
      Frac r = R.nf(s);
      rep.add(task, {int(a + 1), int(j + 1)}, r.is_zero(), "syzygy contraction of row",
              r.is_zero() ? decltype(Entry::values){} : decltype(Entry::values){{"contraction", R.str(r)}});
    }
  }
  return rep;
}

}  // namespace lrgeom
