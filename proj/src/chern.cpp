#include "lrgeom/chern.hpp"

namespace lrgeom {

namespace {

using Values = std::vector<std::pair<std::string, std::string>>;

std::vector<int> one_based(const std::vector<std::size_t>& t) {
  std::vector<int> out;
  for (auto x : t) out.push_back(int(x + 1));
  return out;
}

MatForm operator_form(const MatForm& w) { return w.convention() == Convention::Operator ? w : w.transposed(); }

void require_compatible(const Mat& phi, const Mat& theta, const QuotientRing& R) {
  if (!equal_mod(theta * phi * theta, phi, R)) throw DomainError("matrix is not an endomorphism of the image of the idempotent");
}

// Power of an arity-2 operator-convention form under the cup product.
MatForm cup_power(const MatForm& R2, std::size_t k, const Mat& theta, const QuotientRing& Rg) {
  MatForm out(R2.gens(), 0, R2.beta(), Convention::Operator);
  out.at({}) = theta;
  for (std::size_t i = 0; i < k; ++i) out = nf(cup(out, R2), Rg);
  return out;
}

std::vector<GenForm> pieces_of(const ChernReport& c) {
  std::vector<GenForm> out;
  for (const auto& p : c.pieces) out.push_back(p.form);
  return out;
}

void compare_pieces(Report& rep, const std::string& task, const std::vector<GenForm>& a, const std::vector<GenForm>& b,
                    const QuotientRing& R) {
  for (std::size_t k = 0; k < a.size(); ++k)
    for (const auto& t : a[k].tuples()) {
      Frac d = R.nf(a[k].at(t) - b[k].at(t));
      Values v;
      if (!d.is_zero()) v.push_back({"residue", R.str(d)});
      auto idx = one_based(t);
      idx.insert(idx.begin(), int(2 * k));
      rep.add(task, idx, d.is_zero(), {}, std::move(v));
    }
}

}  // namespace

Frac trace_end(const Mat& phi, const Mat& theta, const QuotientRing& R) {
  require_compatible(phi, theta, R);
  return R.nf(phi.trace());
}

ChernReport chern_character(const Mat& theta, const PresentationPtr& L, const Rational& kappa) {
  const QuotientRing& R = L->ring();
  MatForm curv = fedosov_curvature(theta, *L);
  ChernReport out;
  out.kappa = kappa;
  out.cutoff = L->size() / 2;
  Rational scale = 1;
  for (std::size_t k = 0; k <= out.cutoff; ++k) {
    if (k > 0) scale = scale * kappa / Rational(long(k));
    ChernPiece p;
    p.degree = 2 * k;
    p.form = nf(trace(cup_power(curv, k, theta, R)), R);
    p.form = nf(lrgeom::scale(p.form, Frac(scale)), R);
    GenForm d = ddr(p.form, *L);
    p.closed = is_zero_mod(d, R);
    for (const auto& t : d.tuples()) {
      Frac x = R.nf(d.at(t));
      Values v;
      if (!x.is_zero()) v.push_back({"residue", R.str(x)});
      auto idx = one_based(t);
      idx.insert(idx.begin(), int(2 * k));
      out.report.add("chern-closed", idx, x.is_zero(), {}, std::move(v));
    }
    if (2 * k + 1 > L->size())
      out.report.info("chern-closed", "degree " + std::to_string(2 * k) + " piece has no exterior derivative components");
    out.pieces.push_back(std::move(p));
  }
  out.report.info("chern-cutoff", "pieces of degree above " + std::to_string(2 * out.cutoff) + " vanish",
                  {{"generators", std::to_string(L->size())}});
  return out;
}

MatForm projected_curvature(const Mat& theta, const Connection& nabla, const MatForm& eta) {
  const QuotientRing& R = nabla.ring();
  MatForm e = operator_form(eta);
  Connection shifted = nabla.plus(e);
  MatForm curv = curvature_matrix(shifted).transposed();
  return nf(map_values(curv, [&](const Mat& m) { return theta * m * theta; }), R);
}

Report transgression_check(const Mat& theta, const Connection& nabla, const MatForm& eta, unsigned m) {
  if (m == 0) throw DomainError("transgression needs a positive power");
  const QuotientRing& R = nabla.ring();
  const LRPresentation& L = nabla.presentation();
  if (!nabla.carrier().syzygies.empty()) {
    // Generators v_mu = theta e_mu; the syzygies must be the columns of Id - theta.
    for (const auto& col : nabla.carrier().syzygies) {
      Mat c(col.size(), 1);
      for (std::size_t a = 0; a < col.size(); ++a) c(a, 0) = Frac(col[a]);
      if (!is_zero_mod(theta * c, R)) throw DomainError("carrier syzygies are not killed by the idempotent");
    }
  }
  require_idempotent(theta, R);
  MatForm e = nf(operator_form(eta), R);
  for (std::size_t i = 0; i < e.gens(); ++i) require_compatible(e.at({i}), theta, R);

  std::size_t l = L.size();
  MatForm zero(l, 1, nabla.rank(), Convention::Operator);
  MatForm R0 = projected_curvature(theta, nabla, zero);
  MatForm R1 = projected_curvature(theta, nabla, e);
  GenForm lhs = nf(trace(cup_power(R1, m, theta, R)) - trace(cup_power(R0, m, theta, R)), R);

  Poly s = Poly::monomial(Monomial::var(param_key(0)));
  MatForm Rs = projected_curvature(theta, nabla, scale(e, Frac(s)));
  MatForm integrand = nf(cup(e, cup_power(Rs, m - 1, theta, R)), R);
  GenForm tr = trace(integrand);
  GenForm integral(l, tr.arity(), Frac());
  for (std::size_t r = 0; r < tr.size(); ++r) {
    const Frac& x = tr.at_rank(r);
    if (!x.is_polynomial()) throw DomainError("transgression integrand must be polynomial in the parameter");
    integral.at_rank(r) = Frac(integrate_unit_interval(x.to_poly(), param_key(0)).scaled(Rational(long(m))));
  }
  GenForm rhs = nf(ddr(integral, L), R);

  Report rep;
  for (const auto& t : lhs.tuples()) {
    Frac d = R.nf(lhs.at(t) - rhs.at(t));
    Values v;
    if (!d.is_zero()) v.push_back({"residue", R.str(d)});
    rep.add("transgression", one_based(t), d.is_zero(), {}, std::move(v));
  }
  if (lhs.size() == 0) rep.info("transgression", "degree exceeds the number of generators; both sides vanish");
  return rep;
}

Report chern_additivity_check(const Mat& theta, const Mat& theta2, const PresentationPtr& L, const Rational& kappa) {
  const QuotientRing& R = L->ring();
  auto a = chern_character(theta, L, kappa);
  auto b = chern_character(theta2, L, kappa);
  auto sum = chern_character(block_diag(theta, theta2), L, kappa);
  std::vector<GenForm> expect;
  for (std::size_t k = 0; k < a.pieces.size(); ++k) expect.push_back(a.pieces[k].form + b.pieces[k].form);
  Report rep;
  compare_pieces(rep, "chern-additivity", pieces_of(sum), expect, R);
  return rep;
}

Report chern_tensor_check(const Mat& theta, const Mat& theta2, const PresentationPtr& L, const Rational& kappa) {
  const QuotientRing& R = L->ring();
  Mat both = kronecker(theta, theta2);
  require_idempotent(both, R);
  Report rep;
  MatForm Ra = fedosov_curvature(theta, *L), Rb = fedosov_curvature(theta2, *L), Rt = fedosov_curvature(both, *L);
  for (const auto& t : Rt.tuples()) {
    Mat expect = kronecker(Ra.at(t), theta2) + kronecker(theta, Rb.at(t));
    bool ok = equal_mod(Rt.at(t), expect, R);
    rep.add("tensor-curvature", one_based(t), ok);
  }
  auto a = chern_character(theta, L, kappa);
  auto b = chern_character(theta2, L, kappa);
  auto prod = chern_character(both, L, kappa);
  std::vector<GenForm> expect;
  for (std::size_t k = 0; k < prod.pieces.size(); ++k) {
    GenForm acc(L->size(), 2 * k, Frac());
    for (std::size_t i = 0; i <= k; ++i) acc = acc + cup(a.pieces[i].form, b.pieces[k - i].form);
    expect.push_back(nf(acc, R));
  }
  compare_pieces(rep, "chern-tensor", pieces_of(prod), expect, R);
  return rep;
}

}  // namespace lrgeom
