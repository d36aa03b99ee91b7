#pragma once

#include <random>
#include <vector>

#include "lrgeom/poly.hpp"

namespace testsupport {

using namespace lrgeom;

inline Poly random_poly(std::mt19937_64& rng, const std::vector<SymbolKey>& syms, int terms, int max_exp,
                        int coef_range = 5) {
  std::uniform_int_distribution<int> e(0, max_exp), c(-coef_range, coef_range), d(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, syms.size() - 1);
  std::vector<Poly::Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (int k = 0; k < 2; ++k) {
      int ex = e(rng);
      if (ex > 0) m = m * Monomial::var(syms[pick(rng)], ex);
    }
    ts.push_back({m, Rational(c(rng), d(rng))});
  }
  for (auto& t : ts) t.coef.canonicalize();
  return Poly::from_terms(std::move(ts));
}

inline std::vector<SymbolKey> coord_keys(const VarTable& v) {
  std::vector<SymbolKey> k;
  for (std::size_t i = 0; i < v.num_coords(); ++i) k.push_back(i);
  return k;
}

}  // namespace testsupport

#include "lrgeom/liealgebra.hpp"

namespace testsupport {

inline Derivation deriv(const VarTable& v, std::vector<std::string> c) { return parse_derivation(c, v); }

// Cone u1*u2 = u3^2 with jets a,b,c, generators X1..X4 and the four syzygy columns.
inline LRPresentation cone_presentation(bool with_syzygies = true) {
  auto v = std::make_shared<VarTable>(std::vector<std::string>{"u1", "u2", "u3"},
                                      std::vector<JetDecl>{{"a", {"u1", "u2", "u3"}, 2},
                                                           {"b", {"u1", "u2", "u3"}, 2},
                                                           {"c", {"u1", "u2", "u3"}, 2}});
  auto R = std::make_shared<QuotientRing>(v, std::vector<Poly>{parse_poly("u1*u2 - u3^2", *v)});
  std::vector<Derivation> X{deriv(*v, {"2*u1", "0", "u3"}), deriv(*v, {"2*u3", "0", "u2"}),
                            deriv(*v, {"0", "2*u3", "u1"}), deriv(*v, {"0", "2*u2", "u3"})};
  std::vector<std::vector<Poly>> S;
  if (with_syzygies) {
    const char* cols[4][4] = {{"u2", "-u3", "0", "0"}, {"-u3", "u1", "0", "0"},
                              {"0", "0", "u2", "-u3"}, {"0", "0", "-u3", "u1"}};
    for (auto& col : cols) {
      std::vector<Poly> c;
      for (auto s : col) c.push_back(parse_poly(s, *v));
      S.push_back(c);
    }
  }
  return LRPresentation(R, {"X1", "X2", "X3", "X4"}, X, std::nullopt, S);
}

// Free ring in u2,u3 with jet f and the two generators zeta1, zeta2.
inline LRPresentation zeta_presentation() {
  auto v = std::make_shared<VarTable>(std::vector<std::string>{"u2", "u3"},
                                      std::vector<JetDecl>{{"f", {"u2", "u3"}, 2}});
  auto R = std::make_shared<QuotientRing>(v, std::vector<Poly>{});
  return LRPresentation(R, {"zeta1", "zeta2"},
                        {deriv(*v, {"2*u2", "3*u3"}), deriv(*v, {"-9*u3", "2*u2^2"})}, std::nullopt);
}

// The three generators xi1, xi2, xi3 on the free ring in u1,u2,u3.
inline LRPresentation xi_presentation() {
  auto v = std::make_shared<VarTable>(std::vector<std::string>{"u1", "u2", "u3"});
  auto R = std::make_shared<QuotientRing>(v, std::vector<Poly>{});
  return LRPresentation(R, {"xi1", "xi2", "xi3"},
                        {deriv(*v, {"3", "2*u1", "u2"}), deriv(*v, {"u1", "2*u2", "3*u3"}),
                         deriv(*v, {"u1^2 - 2*u2", "u1*u2 - 3*u3", "u1*u3"})},
                        std::nullopt);
}

inline GenForm random_form(std::mt19937_64& rng, const LRPresentation& L, std::size_t arity, int terms = 3) {
  auto syms = coord_keys(L.vars());
  for (std::size_t j = 0; j < L.vars().num_jets(); ++j) syms.push_back(*L.vars().lookup(L.vars().jet(j).name));
  GenForm w(L.size(), arity, Frac());
  for (std::size_t r = 0; r < w.size(); ++r) w.at_rank(r) = Frac(random_poly(rng, syms, terms, 2, 3));
  return w;
}

}  // namespace testsupport

#include "lrgeom/connection.hpp"

namespace testsupport {

// Free ring Q[q,p], jets alpha, beta, gamma, coordinate frame d/dq, d/dp.
inline PresentationPtr plane_presentation(unsigned order = 2) {
  auto v = std::make_shared<VarTable>(std::vector<std::string>{"q", "p"},
                                      std::vector<JetDecl>{{"alpha", {"q", "p"}, order},
                                                           {"beta", {"q", "p"}, order},
                                                           {"gamma", {"q", "p"}, order}});
  auto R = std::make_shared<QuotientRing>(v, std::vector<Poly>{}, MonomialOrder::Grevlex,
                                          std::vector<Poly>{parse_poly("alpha*beta - gamma^2", *v)});
  return std::make_shared<LRPresentation>(R, std::vector<std::string>{"dq", "dp"},
                                          std::vector<Derivation>{deriv(*v, {"1", "0"}), deriv(*v, {"0", "1"})},
                                          std::nullopt);
}

inline Mat plane_metric(const LRPresentation& L) {
  return parse_matrix({{"alpha", "gamma"}, {"gamma", "beta"}}, L.vars());
}

// zeta presentation with f declared invertible.
inline PresentationPtr zeta_invertible(unsigned order = 2) {
  auto v = std::make_shared<VarTable>(std::vector<std::string>{"u2", "u3"},
                                      std::vector<JetDecl>{{"f", {"u2", "u3"}, order}});
  auto R = std::make_shared<QuotientRing>(v, std::vector<Poly>{}, MonomialOrder::Grevlex,
                                          std::vector<Poly>{v->var("f")});
  return std::make_shared<LRPresentation>(R, std::vector<std::string>{"zeta1", "zeta2"},
                                          std::vector<Derivation>{deriv(*v, {"2*u2", "3*u3"}),
                                                                  deriv(*v, {"-9*u3", "2*u2^2"})},
                                          std::nullopt);
}

inline Mat zeta_metric(const LRPresentation& L) {
  return parse_matrix({{"-u2*f", "9/2*u3*f"}, {"9/2*u3*f", "3*u2^2*f"}}, L.vars());
}

}  // namespace testsupport

namespace testsupport {

// The cone generators X1..X4 over the free ring Q[u1,u2,u3].
inline PresentationPtr cone_free_presentation() {
  auto v = std::make_shared<VarTable>(std::vector<std::string>{"u1", "u2", "u3"});
  auto R = std::make_shared<QuotientRing>(v, std::vector<Poly>{});
  return std::make_shared<LRPresentation>(
      R, std::vector<std::string>{"X1", "X2", "X3", "X4"},
      std::vector<Derivation>{deriv(*v, {"2*u1", "0", "u3"}), deriv(*v, {"2*u3", "0", "u2"}),
                              deriv(*v, {"0", "2*u3", "u1"}), deriv(*v, {"0", "2*u2", "u3"})},
      std::nullopt);
}

// Unit sphere with the three rotation fields.
inline PresentationPtr sphere_presentation() {
  auto v = std::make_shared<VarTable>(std::vector<std::string>{"x", "y", "z"});
  auto R = std::make_shared<QuotientRing>(v, std::vector<Poly>{parse_poly("x^2 + y^2 + z^2 - 1", *v)});
  return std::make_shared<LRPresentation>(
      R, std::vector<std::string>{"Lx", "Ly", "Lz"},
      std::vector<Derivation>{deriv(*v, {"0", "-z", "y"}), deriv(*v, {"z", "0", "-x"}),
                              deriv(*v, {"-y", "x", "0"})},
      std::nullopt);
}

inline Mat sphere_idempotent(const VarTable& v) {
  return parse_matrix({{"1 - x^2", "-x*y", "-x*z"}, {"-x*y", "1 - y^2", "-y*z"}, {"-x*z", "-y*z", "1 - z^2"}}, v);
}

}  // namespace testsupport
