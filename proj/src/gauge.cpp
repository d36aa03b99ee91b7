#include "lrgeom/gauge.hpp"

#include "lrgeom/parallel.hpp"

namespace lrgeom {

namespace {

using Values = std::vector<std::pair<std::string, std::string>>;

Values difference_values(const Mat& a, const Mat& b, const QuotientRing& R) {
  Values out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Frac x = R.nf(a(i, j) - b(i, j));
      if (!x.is_zero()) out.push_back({"(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", R.str(x)});
    }
  return out;
}

void require_free(const Connection& nabla) {
  if (!nabla.carrier().syzygies.empty()) throw DomainError("gauge calculus needs a free carrier without module syzygies");
}

void require_shape(const GaugeElement& g, const Connection& nabla) {
  if (g.size() != nabla.rank()) throw DomainError("gauge element and connection differ in rank");
}

MatForm as_operator(const MatForm& w) { return w.convention() == Convention::Operator ? w : w.transposed(); }
MatForm as_row(const MatForm& w) { return w.convention() == Convention::Row ? w : w.transposed(); }

// Operator-convention endomorphism derivative X_i(phi) + [Omega_i, phi].
Mat end_derivative(const Connection& nabla, std::size_t i, const Mat& phi) {
  Mat omega = nabla.gamma(i).transpose();
  return nabla.presentation().act(i, phi) + omega * phi - phi * omega;
}

MatForm conjugate(const MatForm& w, const GaugeElement& g) {
  MatForm op = as_operator(w);
  return map_values(op, [&](const Mat& m) { return g.g() * m * g.inverse(); });
}

}  // namespace

GaugeElement::GaugeElement(const QuotientRing& R, Mat g, Mat g_inv) : g_(std::move(g)), inv_(std::move(g_inv)) {
  if (g_.rows() != g_.cols() || !g_.same_shape(inv_)) throw DomainError("gauge element and inverse must be square of equal size");
  Mat id = Mat::identity(g_.rows());
  if (!equal_mod(g_ * inv_, id, R) || !equal_mod(inv_ * g_, id, R))
    throw DomainError("supplied inverse is not a two-sided inverse modulo the ideal");
  g_ = nf(g_, R);
  inv_ = nf(inv_, R);
}

GaugeElement GaugeElement::identity(std::size_t n) { return GaugeElement(Mat::identity(n), Mat::identity(n)); }

GaugeElement GaugeElement::compose(const GaugeElement& g, const QuotientRing& R) const {
  return GaugeElement(R, g_ * g.g_, g.inv_ * inv_);
}

MatForm maurer_cartan(const GaugeElement& g, const Connection& nabla) {
  require_free(nabla);
  require_shape(g, nabla);
  const QuotientRing& R = nabla.ring();
  MatForm out(nabla.gens(), 1, nabla.rank(), Convention::Operator);
  for (std::size_t i = 0; i < nabla.gens(); ++i) out.at({i}) = nf(g.g() * end_derivative(nabla, i, g.inverse()), R);
  return out;
}

MatForm gauge_act(const GaugeElement& g, const Connection& nabla, const MatForm& eta) {
  require_shape(g, nabla);
  if (eta.arity() != 1 || eta.gens() != nabla.gens() || eta.beta() != nabla.rank())
    throw DomainError("gauge action expects a one-form of matching shape");
  return nf(maurer_cartan(g, nabla) + conjugate(eta, g), nabla.ring());
}

Report gauge_certificates(const GaugeElement& g, const GaugeElement& h, const Connection& nabla, const MatForm& eta,
                          unsigned threads) {
  require_free(nabla);
  require_shape(g, nabla);
  require_shape(h, nabla);
  const QuotientRing& R = nabla.ring();
  std::size_t l = nabla.gens();
  Report rep;

  // g (nabla g^-1) = -(nabla g) g^-1.
  MatForm rho_g = maurer_cartan(g, nabla);
  for (std::size_t i = 0; i < l; ++i) {
    Mat other = -(end_derivative(nabla, i, g.g()) * g.inverse());
    Values bad = difference_values(rho_g.at({i}), other, R);
    rep.add("gauge-leibniz", {int(i + 1)}, bad.empty(), {}, std::move(bad));
  }

  // rho_{hg} = h rho_g h^-1 + rho_h.
  GaugeElement hg = h.compose(g, R);
  MatForm lhs = maurer_cartan(hg, nabla);
  MatForm rhs = conjugate(rho_g, h) + maurer_cartan(h, nabla);
  for (std::size_t i = 0; i < l; ++i) {
    Values bad = difference_values(lhs.at({i}), rhs.at({i}), R);
    rep.add("gauge-cocycle", {int(i + 1)}, bad.empty(), {}, std::move(bad));
  }

  // nabla rho_g + (1/2)[rho_g, rho_g] = g R g^-1 - R, evaluated in row convention.
  MatForm rho_row = as_row(rho_g);
  MatForm curv = curvature_matrix(nabla);
  MatForm mc = cov_deriv_end(nabla, rho_row) + scale(graded_commutator(rho_row, rho_row), Frac(Rational(1, 2)));
  MatForm target = as_row(conjugate(curv, g)) - curv;
  auto pairs = [&](const MatForm& a, const MatForm& b, const std::string& task) {
    std::vector<Entry> slots(a.size());
    parallel_for(a.size(), threads, [&](std::size_t r) {
      const auto& t = a.tuples()[r];
      Values bad = difference_values(a.at_rank(r), b.at_rank(r), R);
      slots[r] = {task, {int(t[0] + 1), int(t[1] + 1)}, bad.empty() ? Status::Pass : Status::Fail, {}, bad};
    });
    for (auto& e : slots) rep.add(std::move(e));
  };
  pairs(mc, target, "gauge-maurer-cartan");

  // Curvature of nabla + g.eta is g R^eta g^-1.
  Connection base_eta = nabla.plus(eta);
  Connection acted = nabla.plus(gauge_act(g, nabla, eta));
  pairs(curvature_matrix(acted), as_row(conjugate(curvature_matrix(base_eta), g)), "gauge-curvature");
  if (l < 2) rep.info("gauge-curvature", "fewer than two generators; no curvature components");
  return rep;
}

}  // namespace lrgeom
