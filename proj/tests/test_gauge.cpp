#include "doctest.h"
#include "lrgeom/gauge.hpp"
#include "support.hpp"

using namespace lrgeom;
using namespace testsupport;

namespace {

PresentationPtr share(LRPresentation L) { return std::make_shared<const LRPresentation>(std::move(L)); }

std::vector<SymbolKey> base_symbols(const VarTable& v) {
  auto syms = coord_keys(v);
  for (std::size_t j = 0; j < v.num_jets(); ++j) syms.push_back(*v.lookup(v.jet(j).name));
  return syms;
}

Mat random_mat(std::mt19937_64& rng, const VarTable& v, std::size_t n, int terms = 2) {
  Mat m(n, n);
  auto syms = base_symbols(v);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m(a, b) = Frac(random_poly(rng, syms, terms, 1, 3));
  return m;
}

Connection random_free_connection(std::mt19937_64& rng, const PresentationPtr& L, std::size_t rank) {
  std::vector<Mat> g;
  for (std::size_t i = 0; i < L->size(); ++i) g.push_back(random_mat(rng, L->vars(), rank));
  return Connection::on_free(L, rank, g);
}

MatForm random_one_form(std::mt19937_64& rng, const LRPresentation& L, std::size_t rank, Convention conv) {
  std::vector<Mat> g;
  for (std::size_t i = 0; i < L.size(); ++i) g.push_back(random_mat(rng, L.vars(), rank, 1));
  return one_form(g, conv);
}

// Unipotent upper triangular I + N with explicit inverse I - N + N^2 - ...
GaugeElement random_unipotent(std::mt19937_64& rng, const QuotientRing& R, std::size_t n) {
  auto syms = base_symbols(R.vars());
  Mat N(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) N(a, b) = Frac(random_poly(rng, syms, 2, 1, 3));
  Mat g = Mat::identity(n) + N, inv = Mat::identity(n), p = Mat::identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    p = p * N;
    inv = k % 2 ? inv - p : inv + p;
  }
  return GaugeElement(R, g, inv);
}

Mat field_component(const LRPresentation& L, std::size_t i, const Mat& v) { return L.act(i, v); }

}  // namespace

TEST_CASE("gauge element construction") {
  auto L = share(cone_presentation());
  const auto& v = L->vars();
  CHECK_NOTHROW(GaugeElement(L->ring(), parse_matrix({{"1", "u3"}, {"0", "1"}}, v), parse_matrix({{"1", "-u3"}, {"0", "1"}}, v)));
  CHECK_THROWS_WITH_AS(
      GaugeElement(L->ring(), parse_matrix({{"1", "u3"}, {"0", "1"}}, v), parse_matrix({{"1", "u3"}, {"0", "1"}}, v)),
      doctest::Contains("inverse"), DomainError);
  // Inverse only modulo the ideal: (1 + u1 u2 - u3^2) is 1 in the ring.
  CHECK_NOTHROW(GaugeElement(L->ring(), parse_matrix({{"1 + u1*u2 - u3^2"}}, v), parse_matrix({{"1"}}, v)));
}

TEST_CASE("Maurer-Cartan form") {
  auto L = share(cone_presentation());
  const auto& v = L->vars();
  const auto& R = L->ring();
  auto flat = Connection::trivial(L, 2);
  SUBCASE("identity") {
    std::mt19937_64 rng(5);
    auto nabla = random_free_connection(rng, L, 2);
    CHECK(is_zero_mod(maurer_cartan(GaugeElement::identity(2), nabla), R));
  }
  SUBCASE("unipotent") {
    GaugeElement g(R, parse_matrix({{"1", "u3"}, {"0", "1"}}, v), parse_matrix({{"1", "-u3"}, {"0", "1"}}, v));
    auto rho = maurer_cartan(g, flat);
    CHECK(rho.convention() == Convention::Operator);
    for (std::size_t i = 0; i < 4; ++i) {
      Mat expect(2, 2);
      expect(0, 1) = -Frac(L->act(i, v.coord(2)));
      CHECK(equal_mod(rho.at({i}), expect, R));
    }
  }
  SUBCASE("constant diagonal") {
    GaugeElement g(R, parse_matrix({{"2", "0"}, {"0", "3"}}, v), parse_matrix({{"1/2", "0"}, {"0", "1/3"}}, v));
    CHECK(is_zero_mod(maurer_cartan(g, flat), R));
  }
  SUBCASE("non-free carrier") {
    std::vector<Mat> zero(4, Mat(4, 4));
    auto onL = Connection::on_L(L, zero);
    CHECK_THROWS_AS(maurer_cartan(GaugeElement::identity(4), onL), DomainError);
  }
}

TEST_CASE("gauge action") {
  std::mt19937_64 rng(11);
  auto L = share(zeta_presentation());
  const auto& R = L->ring();
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 2 + trial % 2;
    auto nabla = random_free_connection(rng, L, n);
    auto eta = random_one_form(rng, *L, n, trial % 2 ? Convention::Row : Convention::Operator);
    auto g = random_unipotent(rng, R, n);
    auto h = random_unipotent(rng, R, n);

    CHECK(equal_mod(gauge_act(GaugeElement::identity(n), nabla, eta), eta.convention() == Convention::Operator ? eta : eta.transposed(), R));
    MatForm zero(L->size(), 1, n, Convention::Operator);
    CHECK(equal_mod(gauge_act(g, nabla, zero), maurer_cartan(g, nabla), R));

    // Oracle: the acted connection is g o (nabla + eta) o g^-1 on column sections.
    auto acted = nabla.plus(gauge_act(g, nabla, eta));
    auto shifted = nabla.plus(eta);
    Mat col(n, 1);
    for (std::size_t a = 0; a < n; ++a) col(a, 0) = Frac(random_poly(rng, base_symbols(L->vars()), 2, 2, 3));
    for (std::size_t i = 0; i < L->size(); ++i) {
      Mat lhs = field_component(*L, i, col) + acted.gamma(i).transpose() * col;
      Mat w = g.inverse() * col;
      Mat rhs = g.g() * (field_component(*L, i, w) + shifted.gamma(i).transpose() * w);
      CHECK(equal_mod(lhs, rhs, R));
    }

    // Left action: (hg).eta = h.(g.eta).
    auto hg = h.compose(g, R);
    CHECK(equal_mod(gauge_act(hg, nabla, eta), gauge_act(h, nabla, gauge_act(g, nabla, eta)), R));
  }
}

TEST_CASE("gauge certificates") {
  SUBCASE("identity") {
    auto L = share(cone_presentation());
    auto flat = Connection::trivial(L, 2);
    MatForm zero(4, 1, 2, Convention::Operator);
    auto rep = gauge_certificates(GaugeElement::identity(2), GaugeElement::identity(2), flat, zero);
    CHECK(rep.passed());
  }
  SUBCASE("cone unipotent and shear") {
    auto L = share(cone_presentation());
    const auto& v = L->vars();
    const auto& R = L->ring();
    GaugeElement g(R, parse_matrix({{"1", "u3"}, {"0", "1"}}, v), parse_matrix({{"1", "-u3"}, {"0", "1"}}, v));
    GaugeElement h(R, parse_matrix({{"1", "0"}, {"u1", "1"}}, v), parse_matrix({{"1", "0"}, {"-u1", "1"}}, v));
    MatForm zero(4, 1, 2, Convention::Operator);
    auto rep = gauge_certificates(g, h, Connection::trivial(L, 2), zero, 4);
    CHECK(rep.passed());
    CHECK(rep.count(Status::Pass) == 4 + 4 + 6 + 6);
  }
  SUBCASE("random connections over both free carriers") {
    std::mt19937_64 rng(23);
    for (auto L : {share(zeta_presentation()), plane_presentation()}) {
      for (int trial = 0; trial < 4; ++trial) {
        std::size_t n = 2 + trial % 2;
        auto nabla = random_free_connection(rng, L, n);
        auto eta = random_one_form(rng, *L, n, Convention::Row);
        auto g = random_unipotent(rng, L->ring(), n);
        auto h = random_unipotent(rng, L->ring(), n);
        auto rep = gauge_certificates(g, h, nabla, eta, 1 + trial);
        CHECK(rep.passed());
      }
    }
  }
  SUBCASE("broken inverse is rejected before certificates") {
    auto L = share(cone_presentation());
    const auto& v = L->vars();
    CHECK_THROWS_AS(GaugeElement(L->ring(), parse_matrix({{"1", "u3"}, {"0", "1"}}, v),
                                 parse_matrix({{"1", "-u3 + u1"}, {"0", "1"}}, v)),
                    DomainError);
  }
}
