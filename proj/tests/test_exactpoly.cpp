#include "doctest.h"
#include "support.hpp"

using namespace lrgeom;
using testsupport::random_poly;

namespace {

VarTablePtr cone_vars() {
  return std::make_shared<VarTable>(std::vector<std::string>{"u1", "u2", "u3"},
                                    std::vector<JetDecl>{{"a", {"u1", "u2", "u3"}, 2}});
}

VarTablePtr a2_vars() {
  return std::make_shared<VarTable>(std::vector<std::string>{"u2", "u3"},
                                    std::vector<JetDecl>{{"f", {"u2", "u3"}, 2}});
}

}  // namespace

TEST_CASE("parse basic") {
  auto v = cone_vars();
  Poly p = parse_poly("u1*u2 - u3^2", *v);
  REQUIRE(p.size() == 2);
  CHECK(p.terms()[0].coef == 1);
  CHECK(p.terms()[1].coef == -1);
  CHECK(to_string(p, *v) == "u1*u2 - u3^2");
}

TEST_CASE("parse discriminant") {
  auto v = a2_vars();
  Poly d = parse_poly("4*u2^3 + 27*u3^2", *v);
  Poly u2 = v->var("u2"), u3 = v->var("u3");
  CHECK(d == u2.pow(3).scaled(4) + u3.pow(2).scaled(27));
}

TEST_CASE("parse errors") {
  auto v = cone_vars();
  try {
    parse_poly("u1*(u2", *v);
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);
  }
  try {
    parse_poly("u1 + w", *v);
    FAIL("expected unknown symbol");
  } catch (const UnknownSymbol& e) {
    CHECK(e.name() == "w");
  }
  CHECK_THROWS_AS(parse_poly("u1/u2", *v), ParseError);
  CHECK_THROWS_AS(parse_poly("a_111", *v), DomainError);
  CHECK(parse_poly("9/2*u3", *v) == v->var("u3").scaled(Rational(9, 2)));
  CHECK(parse_poly("-u1^2", *v) == -v->var("u1").pow(2));
}

TEST_CASE("print round trip") {
  auto v = cone_vars();
  std::mt19937_64 rng(7);
  std::vector<SymbolKey> syms = testsupport::coord_keys(*v);
  syms.push_back(*v->lookup("a"));
  syms.push_back(*v->lookup("a_13"));
  for (int i = 0; i < 100; ++i) {
    Poly p = random_poly(rng, syms, 5, 3);
    CHECK(parse_poly(to_string(p, *v), *v) == p);
  }
}

TEST_CASE("partial derivative") {
  auto v = cone_vars();
  CHECK(partial_derivative(parse_poly("u1*u2 - u3^2", *v), *v, "u1") == v->var("u2"));
  auto w = a2_vars();
  Poly f = w->var("f");
  CHECK(partial_derivative(f, *w, "u2") == w->var("f_2"));
  Poly f23 = partial_derivative(partial_derivative(f, *w, "u2"), *w, "u3");
  Poly f32 = partial_derivative(partial_derivative(f, *w, "u3"), *w, "u2");
  CHECK(f23 == f32);
  CHECK(f23 == w->var("f_23"));
  CHECK(to_string(f23, *w) == "f_23");
  CHECK_THROWS_AS(partial_derivative(f, *w, "q"), UnknownSymbol);
  auto only = std::make_shared<VarTable>(std::vector<std::string>{"x", "y"},
                                         std::vector<JetDecl>{{"g", {"x"}, 2}});
  CHECK(partial_derivative(only->var("g"), *only, "y").is_zero());
}

TEST_CASE("ring axioms and Leibniz on random inputs") {
  auto v = cone_vars();
  std::mt19937_64 rng(11);
  std::vector<SymbolKey> syms = testsupport::coord_keys(*v);
  syms.push_back(*v->lookup("a"));
  syms.push_back(*v->lookup("a_2"));
  for (int i = 0; i < 100; ++i) {
    Poly p = random_poly(rng, syms, 4, 3), q = random_poly(rng, syms, 4, 3), r = random_poly(rng, syms, 3, 2);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p - p).is_zero());
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(partial_derivative(p * q, *v, c) ==
            partial_derivative(p, *v, c) * q + p * partial_derivative(q, *v, c));
      for (std::size_t d = 0; d < 3; ++d)
        CHECK(partial_derivative(partial_derivative(p, *v, c), *v, d) ==
              partial_derivative(partial_derivative(p, *v, d), *v, c));
    }
  }
}

TEST_CASE("divide exact") {
  auto v = cone_vars();
  Poly f = parse_poly("u1*u2 - u3^2", *v);
  CHECK(divide_exact(f * parse_poly("u2 + 1", *v), f) == parse_poly("u2 + 1", *v));
  CHECK_THROWS_AS(divide_exact(parse_poly("u1 + u2", *v), v->var("u3")), NotDivisible);
  auto w = std::make_shared<VarTable>(std::vector<std::string>{"u1", "u2", "u3"},
                                      std::vector<JetDecl>{{"a", {"u1", "u2", "u3"}, 2},
                                                           {"f", {"u2", "u3"}, 2}});
  Poly g = parse_poly("u1*u2 - u3^2", *w);
  Poly prod = w->var("a") * g * w->var("f_2");
  CHECK(divide_exact(prod, g) == w->var("a") * w->var("f_2"));
  std::mt19937_64 rng(3);
  auto syms = testsupport::coord_keys(*w);
  syms.push_back(*w->lookup("a"));
  for (int i = 0; i < 100; ++i) {
    Poly a = random_poly(rng, syms, 4, 3), b = random_poly(rng, syms, 3, 2);
    if (b.is_zero()) continue;
    CHECK(divide_exact(a * b, b) == a);
  }
}

TEST_CASE("frac equality") {
  auto w = a2_vars();
  Frac x(w->var("f_2"), w->var("f"));
  Frac y(w->var("u2") * w->var("f_2"), w->var("u2") * w->var("f"));
  CHECK(frac_eq(x, y));
  CHECK(frac_eq(Frac(Rational(1, 2)), Frac(Poly(2), Poly(4))));
  CHECK_FALSE(frac_eq(x, Frac(w->var("f_3"), w->var("f"))));
  CHECK(frac_eq(parse_frac("f_2/f + 1", *w), parse_frac("(f_2 + f)/f", *w)));

  std::mt19937_64 rng(5);
  auto syms = testsupport::coord_keys(*w);
  syms.push_back(*w->lookup("f"));
  for (int i = 0; i < 100; ++i) {
    Poly n = random_poly(rng, syms, 3, 2), d = random_poly(rng, syms, 2, 2);
    Poly s1 = random_poly(rng, syms, 2, 1), s2 = random_poly(rng, syms, 2, 1);
    if (d.is_zero() || s1.is_zero() || s2.is_zero()) continue;
    Frac a(n, d), b(n * s1, d * s1), c(n * s2, d * s2);
    CHECK(frac_eq(a, a));
    CHECK(frac_eq(a, b) == frac_eq(b, a));
    CHECK(frac_eq(a, b));
    CHECK(frac_eq(b, c));
    CHECK(frac_eq(a, c));
    CHECK(frac_eq(a + b - c, a));
    CHECK(frac_eq((a * b) / b, a));
  }
}

TEST_CASE("integration in a formal parameter") {
  auto w = a2_vars();
  SymbolKey s = param_key(0);
  Poly p = Poly::monomial(Monomial::var(s, 2)).scaled(3) * w->var("u2") + Poly::monomial(Monomial::var(s));
  CHECK(integrate_unit_interval(p, s) == w->var("u2") + Poly(Rational(1, 2)));
}
