#include "lrgeom/constructions.hpp"

namespace lrgeom {

namespace {

using Values = std::vector<std::pair<std::string, std::string>>;

std::vector<Poly> cofactors_or_throw(const Poly& p, const std::vector<Poly>& fs, const std::string& what) {
  CofactorResult r = reduce_with_cofactors(p, fs);
  if (!r.remainder.is_zero()) throw DomainError(what);
  if (!r.against_generators) throw DomainError("cofactor extraction failed (degree bound exceeded) for " + what);
  return r.cofactors;
}

std::string tuple_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

Values nonzero_values(const Mat& m, const QuotientRing& R) {
  Values out;
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b) {
      Frac x = R.nf(m(a, b));
      if (!x.is_zero()) out.push_back({tuple_str(a, b), R.str(x)});
    }
  return out;
}

void require_jacobi(const PoissonStructure& pi) {
  Report r = pi.jacobi_report();
  if (!r.passed()) throw DomainError("Poisson structure violates the Jacobi identity");
}

}  // namespace

// ------------------------------------------------------------------ Poisson

PoissonStructure::PoissonStructure(VarTablePtr vars, std::vector<std::vector<Poly>> pi)
    : vars_(std::move(vars)), pi_(std::move(pi)) {
  std::size_t n = vars_->num_coords();
  if (pi_.size() != n) throw DomainError("Poisson matrix must be n x n");
  for (const auto& row : pi_)
    if (row.size() != n) throw DomainError("Poisson matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (!pi_[i][j].coords_only()) throw DomainError("Poisson brackets must be polynomials in the coordinates");
      if (pi_[i][j] != -pi_[j][i]) throw DomainError("Poisson matrix is not antisymmetric");
    }
}

Poly PoissonStructure::bracket(const Poly& f, const Poly& g) const {
  std::size_t n = dim();
  std::vector<Poly> df(n), dg(n);
  for (std::size_t i = 0; i < n; ++i) {
    df[i] = partial_derivative(f, *vars_, i);
    dg[i] = partial_derivative(g, *vars_, i);
  }
  Poly out;
  for (std::size_t i = 0; i < n; ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!dg[j].is_zero() && !pi_[i][j].is_zero()) out += df[i] * dg[j] * pi_[i][j];
  }
  return out;
}

Derivation PoissonStructure::hamiltonian(const Poly& f) const {
  std::size_t n = dim();
  Derivation X{std::vector<Poly>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    Poly d = partial_derivative(f, *vars_, i);
    if (d.is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) X.coeffs[j] += d * pi_[i][j];
  }
  return X;
}

Report PoissonStructure::jacobi_report() const {
  Report rep;
  std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Poly xi = vars_->coord(i), xj = vars_->coord(j), xk = vars_->coord(k);
        Poly s = bracket(pi_[i][j], xk) + bracket(pi_[j][k], xi) + bracket(pi_[k][i], xj);
        Values v;
        if (!s.is_zero()) v.push_back({"residue", to_string(s, *vars_)});
        rep.add("jacobi", {int(i + 1), int(j + 1), int(k + 1)}, s.is_zero(), {}, std::move(v));
      }
  if (n < 3) rep.info("jacobi", "fewer than three coordinates; identity holds trivially");
  return rep;
}

// ------------------------------------------------------------------ adjoint

AdjointResult adjoint_connection(PresentationPtr L) {
  std::size_t l = L->size();
  std::vector<Mat> g(l, Mat(l, l));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k) g[i](j, k) = Frac(L->c(i, j, k));
  Connection nabla = Connection::on_L(L, std::move(g));
  Report cert = mc_defect_report(nabla.form(), *L, -1, "adjoint-flat");
  return {std::move(nabla), std::move(cert)};
}

Connection torsion_corrected(const Connection& nabla) {
  if (!nabla.carrier().is_L) throw DomainError("torsion is only defined for connections on L");
  std::size_t l = nabla.gens();
  std::vector<Mat> g = nabla.gammas();
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      std::vector<Frac> t = torsion_coefficients(nabla, i, j);
      for (std::size_t k = 0; k < l; ++k) g[i](j, k) = nabla.ring().nf(g[i](j, k) - t[k] * Frac(Rational(1, 2)));
    }
  return Connection(nabla.presentation_ptr(), nabla.carrier(), std::move(g));
}

// --------------------------------------------------------------------- Bott

BottResult bott_connection(const std::vector<Poly>& fs, PresentationPtr L) {
  std::size_t l = L->size(), m = fs.size();
  if (m == 0) throw DomainError("Bott connection needs at least one ideal generator");
  std::vector<Mat> g(l, Mat(m, m));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t mu = 0; mu < m; ++mu) {
      Poly x = L->act(i, fs[mu]);
      auto co = cofactors_or_throw(x, fs, "derivation " + L->name(i) + " is not tangent to the ideal");
      for (std::size_t nu = 0; nu < m; ++nu) g[i](mu, nu) = Frac(co[nu]);
    }
  ModuleCarrier carrier{m, {}, false};
  Connection nabla(L, std::move(carrier), std::move(g));
  Report cert = bott_certificate(nabla, fs);
  return {std::move(nabla), std::move(cert)};
}

Report bott_certificate(const Connection& nabla, const std::vector<Poly>& fs) {
  const QuotientRing& R = nabla.ring();
  std::size_t l = nabla.gens(), m = fs.size();
  if (nabla.rank() != m) throw DomainError("Bott certificate needs one generator per matrix row");
  std::vector<Poly> sq;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) sq.push_back(fs[a] * fs[b]);
  for (const auto& h : R.ideal().generators()) sq.push_back(h);
  Ideal I2(sq, R.order());
  Report rep;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) {
      Mat Rij = curvature_at(nabla, i, j);
      for (std::size_t mu = 0; mu < m; ++mu) {
        Frac s;
        for (std::size_t nu = 0; nu < m; ++nu) s += Rij(mu, nu) * Frac(fs[nu]);
        if (!s.is_polynomial()) throw DomainError("Bott certificate needs polynomial Christoffel symbols");
        Poly r = I2.reduce(s.to_poly());
        Values v;
        if (!r.is_zero()) v.push_back({"residue", R.str(r)});
        rep.add("bott-flat", {int(i + 1), int(j + 1), int(mu + 1)}, r.is_zero(), {}, std::move(v));
      }
    }
  if (l < 2) rep.info("bott-flat", "fewer than two generators; no curvature components");
  return rep;
}

// ------------------------------------------------------------------ Poisson

PoissonResult poisson_connection(const PoissonStructure& pi, const std::vector<Poly>& fs) {
  require_jacobi(pi);
  VarTablePtr vars = std::make_shared<VarTable>(pi.vars());
  std::size_t n = pi.dim(), m = fs.size();
  if (m == 0) throw DomainError("Poisson connection needs at least one ideal generator");
  auto ring = std::make_shared<QuotientRing>(vars, fs);
  std::vector<std::string> names;
  std::vector<Derivation> anchors;
  StructureConstants c(n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("X_" + vars->coord_name(i));
    anchors.push_back(pi.hamiltonian(vars->coord(i)));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c.at(i, j, k) = partial_derivative(pi.pi(i, j), *vars, k);
  }
  auto L = std::make_shared<LRPresentation>(ring, names, anchors, c);
  std::vector<Mat> g(n, Mat(m, m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t mu = 0; mu < m; ++mu) {
      Poly b = pi.bracket(vars->coord(i), fs[mu]);
      auto co = cofactors_or_throw(b, fs, "not a Poisson ideal: {" + vars->coord_name(i) + ", f" +
                                              std::to_string(mu + 1) + "} is not in the ideal");
      for (std::size_t nu = 0; nu < m; ++nu) g[i](mu, nu) = Frac(ring->nf(co[nu]));
    }
  ModuleCarrier carrier{m, {}, false};
  Connection nabla(L, std::move(carrier), std::move(g));
  Report cert = mc_defect_report(nabla.form(), *L, -1, "poisson-flat");
  return {L, std::move(nabla), std::move(cert)};
}

// -------------------------------------------------------------------- Dirac

namespace {

std::vector<Derivation> default_tangent(const VarTable& vars, const QuotientRing& R, const std::vector<Poly>& fs) {
  std::size_t n = vars.num_coords();
  std::vector<Derivation> out;
  auto tangent = [&](const Derivation& X) {
    for (const auto& f : fs)
      if (!R.is_zero(deriv_apply(X, f, vars))) return false;
    return true;
  };
  for (std::size_t j = 0; j < n; ++j) {
    Derivation d{std::vector<Poly>(n)};
    d.coeffs[j] = Poly(1);
    if (tangent(d)) {
      out.push_back(d);
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      Derivation e{std::vector<Poly>(n)};
      e.coeffs[j] = vars.coord(k);
      if (tangent(e)) out.push_back(e);
    }
  }
  return out;
}

}  // namespace

DiracResult dirac_connection(const PoissonStructure& pi, const std::vector<Poly>& fs,
                             const std::vector<Derivation>& tangent_in) {
  require_jacobi(pi);
  VarTablePtr vars = std::make_shared<VarTable>(pi.vars());
  std::size_t n = pi.dim(), m = fs.size();
  if (m == 0) throw DomainError("Dirac connection needs at least one ideal generator");
  auto ring = std::make_shared<QuotientRing>(vars, fs);
  std::vector<std::string> names;
  std::vector<Derivation> anchors;
  StructureConstants c(m);
  for (std::size_t mu = 0; mu < m; ++mu) {
    names.push_back("f" + std::to_string(mu + 1));
    anchors.push_back(pi.hamiltonian(fs[mu]));
    for (std::size_t nu = 0; nu < m; ++nu) {
      Poly b = pi.bracket(fs[mu], fs[nu]);
      auto co = cofactors_or_throw(b, fs, "not first class: {f" + std::to_string(mu + 1) + ", f" +
                                              std::to_string(nu + 1) + "} is not in the ideal");
      for (std::size_t lam = 0; lam < m; ++lam) c.at(mu, nu, lam) = co[lam];
    }
  }
  auto L = std::make_shared<LRPresentation>(ring, names, anchors, c);

  // Gamma_mu[i][j] = Phi_{mu j}^i = d{f_mu, x^i}/dx^j.
  std::vector<Mat> g(m, Mat(n, n));
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t i = 0; i < n; ++i) {
      Poly b = pi.bracket(fs[mu], vars->coord(i));
      for (std::size_t j = 0; j < n; ++j) g[mu](i, j) = Frac(ring->nf(partial_derivative(b, *vars, j)));
    }
  ModuleCarrier carrier{n, {}, false};
  for (const auto& f : fs) {
    std::vector<Poly> col(n);
    for (std::size_t j = 0; j < n; ++j) col[j] = partial_derivative(f, *vars, j);
    carrier.syzygies.push_back(std::move(col));
  }
  Connection nabla(L, std::move(carrier), std::move(g));

  std::vector<Derivation> tangent = tangent_in.empty() ? default_tangent(*vars, *ring, fs) : tangent_in;
  for (const auto& X : tangent) {
    if (X.coeffs.size() != n) throw DomainError("tangent derivation has the wrong number of components");
    for (const auto& f : fs)
      if (!ring->is_zero(deriv_apply(X, f, *vars))) throw DomainError("pairing derivation is not tangent to the ideal");
  }
  Report cert;
  for (std::size_t mu = 0; mu < m; ++mu)
    for (std::size_t nu = mu + 1; nu < m; ++nu) {
      Mat R = curvature_at(nabla, mu, nu);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < tangent.size(); ++t) {
          Frac s;
          for (std::size_t k = 0; k < n; ++k) s += R(i, k) * Frac(tangent[t].coeffs[k]);
          s = ring->nf(s);
          Values v;
          if (!s.is_zero()) v.push_back({"residue", ring->str(s)});
          cert.add("dirac-pairing", {int(mu + 1), int(nu + 1), int(i + 1), int(t + 1)}, s.is_zero(),
                   "necessary condition", std::move(v));
        }
    }
  if (m < 2) cert.info("dirac-pairing", "fewer than two generators; no curvature components");
  return {L, std::move(nabla), std::move(cert)};
}

// ------------------------------------------------------------------ Fedosov

void require_idempotent(const Mat& theta, const QuotientRing& R) {
  if (theta.rows() != theta.cols()) throw DomainError("idempotent must be square");
  for (std::size_t a = 0; a < theta.rows(); ++a)
    for (std::size_t b = 0; b < theta.cols(); ++b)
      if (!theta(a, b).is_polynomial()) throw DomainError("idempotent entries must be polynomials");
  if (!equal_mod(theta * theta, theta, R)) throw DomainError("matrix is not idempotent modulo the ideal");
}

MatForm fedosov_curvature(const Mat& theta, const LRPresentation& L) {
  require_idempotent(theta, L.ring());
  std::size_t l = L.size(), b = theta.rows();
  std::vector<Mat> dt;
  for (std::size_t i = 0; i < l; ++i) dt.push_back(L.act(i, theta));
  MatForm out(l, 2, b, Convention::Operator);
  for (const auto& t : out.tuples()) {
    const Mat& A = dt[t[0]];
    const Mat& B = dt[t[1]];
    out.at(t) = nf(theta * (A * B - B * A), L.ring());
  }
  return out;
}

FedosovResult fedosov_connection(const Mat& theta, PresentationPtr L) {
  const QuotientRing& R = L->ring();
  require_idempotent(theta, R);
  std::size_t l = L->size(), b = theta.rows();
  std::vector<Mat> g;
  for (std::size_t i = 0; i < l; ++i) g.push_back(nf(theta * L->act(i, theta), R).transpose());
  ModuleCarrier carrier{b, {}, false};
  for (std::size_t a = 0; a < b; ++a) {
    std::vector<Poly> col(b);
    bool zero = true;
    for (std::size_t mu = 0; mu < b; ++mu) {
      Frac e = (mu == a ? Frac(1) : Frac()) - theta(mu, a);
      col[mu] = R.nf(e.to_poly());
      zero = zero && col[mu].is_zero();
    }
    if (!zero) carrier.syzygies.push_back(std::move(col));
  }
  Connection nabla(L, std::move(carrier), std::move(g));
  MatForm curv = fedosov_curvature(theta, *L);

  Report cert;
  for (const auto& t : curv.tuples()) {
    std::size_t i = t[0], j = t[1];
    const Mat& F = curv.at(t);
    Mat op = curvature_at(nabla, i, j).transpose();
    Mat proj = nf(theta * op * theta, R);
    bool ok = equal_mod(proj, F, R);
    Values v;
    if (!ok) v = nonzero_values(proj - F, R);
    cert.add("fedosov-curvature", {int(i + 1), int(j + 1)}, ok, {}, std::move(v));
    bool inv = equal_mod(theta * F, F, R) && equal_mod(F * theta, F, R);
    cert.add("fedosov-projection", {int(i + 1), int(j + 1)}, inv);
  }
  if (l < 2) cert.info("fedosov-curvature", "fewer than two generators; no curvature components");
  return {std::move(nabla), std::move(curv), std::move(cert)};
}

}  // namespace lrgeom
