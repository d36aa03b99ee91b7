#include "lrgeom/connection.hpp"

#include "lrgeom/parallel.hpp"

namespace lrgeom {

namespace {

using Values = std::vector<std::pair<std::string, std::string>>;

std::string pos(std::size_t i, std::size_t j) { return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"; }

Values nonzero_values(const Mat& m, const QuotientRing& R) {
  Values out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Frac x = R.nf(m(i, j));
      if (!x.is_zero()) out.push_back({pos(i, j), R.str(x)});
    }
  return out;
}

Mat row_unit(std::size_t n, std::size_t k, const Frac& value) {
  Mat r(1, n);
  r(0, k) = value;
  return r;
}

}  // namespace

// -------------------------------------------------------------- connection

Connection::Connection(PresentationPtr L, ModuleCarrier carrier, std::vector<Mat> gamma)
    : L_(std::move(L)), carrier_(std::move(carrier)), gamma_(std::move(gamma)) {
  if (!L_) throw DomainError("connection needs a presentation");
  if (gamma_.size() != L_->size()) throw DomainError("one Christoffel matrix per generator is required");
  for (const auto& g : gamma_)
    if (g.rows() != carrier_.rank || g.cols() != carrier_.rank)
      throw DomainError("Christoffel matrices must be rank x rank");
  for (const auto& col : carrier_.syzygies)
    if (col.size() != carrier_.rank) throw DomainError("module syzygy column length differs from the rank");
  if (carrier_.is_L && carrier_.rank != L_->size()) throw DomainError("a connection on L has rank l");
  for (const auto& g : gamma_)
    for (std::size_t a = 0; a < g.rows(); ++a)
      for (std::size_t b = 0; b < g.cols(); ++b) {
        const Poly& d = g(a, b).den();
        if (d.is_constant()) continue;
        mode_ = CoefficientMode::Fractional;
        if (!ring().is_admissible_denominator(d))
          throw DomainError("denominator " + ring().str(d) + " is not a product of declared invertible elements");
      }
}

Connection Connection::on_L(PresentationPtr L, std::vector<Mat> gamma) {
  ModuleCarrier c{L->size(), L->syzygies(), true};
  return Connection(std::move(L), std::move(c), std::move(gamma));
}

Connection Connection::on_free(PresentationPtr L, std::size_t rank, std::vector<Mat> gamma) {
  ModuleCarrier c{rank, {}, false};
  return Connection(std::move(L), std::move(c), std::move(gamma));
}

Connection Connection::trivial(PresentationPtr L, std::size_t rank) {
  std::vector<Mat> g(L->size(), Mat(rank, rank));
  return on_free(std::move(L), rank, std::move(g));
}

Connection Connection::plus(const MatForm& eta) const {
  if (eta.arity() != 1 || eta.beta() != rank() || eta.gens() != gens())
    throw DomainError("perturbation must be a one-form of matching shape");
  MatForm e = eta.convention() == Convention::Row ? eta : eta.transposed();
  std::vector<Mat> g = gamma_;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += e.at({i});
  return Connection(L_, carrier_, std::move(g));
}

Mat Connection::act(std::size_t i, const Mat& w) const {
  return L_->act(i, w) + w * gamma_.at(i);
}

Mat Connection::act_end(std::size_t i, const Mat& phi) const {
  return L_->act(i, phi) + phi * gamma_.at(i) - gamma_.at(i) * phi;
}

// -------------------------------------------------------- covariant derivs

SectionForm cov_deriv(const Connection& nabla, const SectionForm& w) {
  if (w.gens() != nabla.gens()) throw DomainError("form and connection differ in generator count");
  if (w.zero().cols() != nabla.rank()) throw DomainError("section rows must have one entry per module generator");
  SectionForm out(w.gens(), w.arity() + 1, w.zero());
  detail::koszul_into(w, nabla.presentation(), out, [&](std::size_t i, const Mat& v) { return nabla.act(i, v); });
  return out;
}

MatForm cov_deriv_end(const Connection& nabla, const MatForm& phi) {
  if (phi.gens() != nabla.gens() || phi.beta() != nabla.rank())
    throw DomainError("endomorphism form and connection differ in shape");
  if (phi.convention() != Convention::Row) throw DomainError("endomorphism forms must be in row convention");
  MatForm out(phi.gens(), phi.arity() + 1, phi.beta(), phi.convention());
  detail::koszul_into(phi, nabla.presentation(), out,
                      [&](std::size_t i, const Mat& v) { return nabla.act_end(i, v); });
  return out;
}

// --------------------------------------------------------------- curvature

MatForm curvature_matrix(const Connection& nabla) {
  return mc_defect(nabla.form(), nabla.presentation(), -1);
}

Mat curvature_at(const Connection& nabla, std::size_t i, std::size_t j) {
  const auto& L = nabla.presentation();
  const Mat& gi = nabla.gamma(i);
  const Mat& gj = nabla.gamma(j);
  Mat R = L.act(i, gj) - L.act(j, gi) + gj * gi - gi * gj;
  for (std::size_t k = 0; k < L.size(); ++k)
    if (!L.c(i, j, k).is_zero()) R -= nabla.gamma(k).scaled(Frac(L.c(i, j, k)));
  return nf(R, L.ring());
}

Report curvature_report(const Connection& nabla, const std::string& task) {
  MatForm R = curvature_matrix(nabla);
  Report rep;
  for (const auto& t : R.tuples()) {
    Entry e{task, {int(t[0] + 1), int(t[1] + 1)}, Status::Info, "curvature endomorphism",
            nonzero_values(R.at(t), nabla.ring())};
    rep.add(std::move(e));
  }
  return rep;
}

// ----------------------------------------------------------------- torsion

std::vector<Frac> torsion_coefficients(const Connection& nabla, std::size_t i, std::size_t j) {
  if (!nabla.carrier().is_L) throw DomainError("torsion needs a connection on L");
  const auto& L = nabla.presentation();
  std::vector<Frac> out;
  for (std::size_t k = 0; k < L.size(); ++k)
    out.push_back(nabla.christoffel(i, j, k) - nabla.christoffel(j, i, k) - Frac(L.c(i, j, k)));
  return out;
}

Report torsion_check(const Connection& nabla) {
  const auto& L = nabla.presentation();
  const auto& R = L.ring();
  const auto& vars = L.vars();
  Report rep;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      auto T = torsion_coefficients(nabla, i, j);
      Values bad;
      for (std::size_t v = 0; v < vars.num_coords(); ++v) {
        Frac s;
        for (std::size_t k = 0; k < L.size(); ++k)
          if (!T[k].is_zero()) s += T[k] * Frac(L.anchor(k).coeffs[v]);
        s = R.nf(s);
        if (!s.is_zero()) bad.push_back({vars.coord_name(v), R.str(s)});
      }
      rep.add("torsion", {int(i + 1), int(j + 1)}, bad.empty(), "T(X_i,X_j) on coordinates", bad);
    }
  return rep;
}

Report metric_compat_check(const Connection& nabla, const Mat& G, unsigned threads) {
  const auto& L = nabla.presentation();
  const auto& R = L.ring();
  std::size_t l = L.size();
  if (!nabla.carrier().is_L || G.rows() != l || G.cols() != l) throw DomainError("metric and connection shapes differ");
  std::vector<Entry> slots(l * l * l);
  parallel_for(slots.size(), threads, [&](std::size_t n) {
    std::size_t i = n / (l * l), j = (n / l) % l, k = n % l;
    Frac s = L.act(i, G(j, k));
    for (std::size_t m = 0; m < l; ++m) s -= nabla.christoffel(i, j, m) * G(m, k) + nabla.christoffel(i, k, m) * G(j, m);
    s = R.nf(s);
    Values v;
    if (!s.is_zero()) v.push_back({"residue", R.str(s)});
    slots[n] = {"metric", {int(i + 1), int(j + 1), int(k + 1)}, s.is_zero() ? Status::Pass : Status::Fail,
                "X_i G(X_j,X_k) - G(nabla_i X_j, X_k) - G(X_j, nabla_i X_k)", v};
  });
  Report rep;
  for (auto& e : slots) rep.add(std::move(e));
  return rep;
}

// ------------------------------------------------------------------ Koszul

Frac koszul_rhs(const LRPresentation& L, const Mat& G, std::size_t i, std::size_t j, std::size_t k) {
  Frac s = L.act(i, G(j, k)) + L.act(j, G(k, i)) - L.act(k, G(i, j));
  for (std::size_t m = 0; m < L.size(); ++m) {
    if (!L.c(i, j, m).is_zero()) s += Frac(L.c(i, j, m)) * G(m, k);
    if (!L.c(j, k, m).is_zero()) s -= Frac(L.c(j, k, m)) * G(m, i);
    if (!L.c(k, i, m).is_zero()) s += Frac(L.c(k, i, m)) * G(m, j);
  }
  return L.ring().nf(s);
}

Report koszul_verify(const Connection& nabla, const Mat& G, unsigned threads) {
  const auto& L = nabla.presentation();
  const auto& R = L.ring();
  std::size_t l = L.size();
  if (!nabla.carrier().is_L || G.rows() != l || G.cols() != l) throw DomainError("metric and connection shapes differ");
  std::vector<Entry> slots(l * l * l);
  parallel_for(slots.size(), threads, [&](std::size_t n) {
    std::size_t i = n / (l * l), j = (n / l) % l, k = n % l;
    Frac lhs;
    for (std::size_t m = 0; m < l; ++m) lhs += nabla.christoffel(i, j, m) * G(m, k);
    Frac s = R.nf(lhs * Frac(2) - koszul_rhs(L, G, i, j, k));
    Values v;
    if (!s.is_zero()) v.push_back({"residue", R.str(s)});
    slots[n] = {"koszul", {int(i + 1), int(j + 1), int(k + 1)}, s.is_zero() ? Status::Pass : Status::Fail,
                "2 G(nabla_i X_j, X_k) against the Koszul right-hand side", v};
  });
  Report rep;
  for (auto& e : slots) rep.add(std::move(e));
  return rep;
}

Connection koszul_solve_free(PresentationPtr L, const Mat& G) {
  if (!L->syzygies().empty())
    throw DomainError("Koszul equations are not solved on presentations with syzygies; use verification");
  std::size_t l = L->size();
  if (G.rows() != l || G.cols() != l) throw DomainError("metric must be l x l");
  const auto& R = L->ring();
  std::vector<std::vector<Poly>> A(l, std::vector<Poly>(l));
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b) {
      if (!G(a, b).is_polynomial()) throw DomainError("the metric must have polynomial entries");
      A[a][b] = R.nf(G(a, b).to_poly());
    }
  if (determinant(A).is_zero()) throw DomainError("the metric is singular");
  // One right-hand side per (i, j): 2 sum_m G_km Gamma_ij^m = rhs(i, j, k).
  std::vector<std::vector<Poly>> rhs;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      std::vector<Poly> col;
      for (std::size_t k = 0; k < l; ++k) {
        Frac r = koszul_rhs(*L, G, i, j, k);
        col.push_back(r.to_poly());
      }
      rhs.push_back(std::move(col));
    }
  BareissSolution sol = bareiss_solve(A, rhs);
  Poly den = sol.determinant.scaled(2);
  // Split the denominator into declared invertible factors and the rest.
  Poly rest = den;
  for (bool progress = true; progress && !rest.is_constant();) {
    progress = false;
    for (const auto& u : R.invertibles())
      if (auto q = try_divide_exact(rest, u)) {
        rest = *q;
        progress = true;
      }
  }
  Poly inv_part = rest.is_constant() ? den : divide_exact(den, rest);
  std::vector<Mat> gamma(l, Mat(l, l));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t m = 0; m < l; ++m) {
        Poly num = sol.numerators[i * l + j][m];
        Poly d = den;
        if (!rest.is_constant()) {
          auto q = try_divide_exact(num, rest);
          if (!q) throw DomainError("the solution needs the non-invertible denominator " + R.str(rest));
          num = *q;
          d = inv_part;
        }
        for (const auto& u : R.invertibles())
          for (;;) {
            auto qd = try_divide_exact(d, u);
            if (!qd) break;
            auto qn = try_divide_exact(num, u);
            if (!qn) break;
            num = *qn;
            d = *qd;
          }
        gamma[i](j, m) = R.nf(Frac(num, d));
      }
  return Connection::on_L(std::move(L), std::move(gamma));
}

// ----------------------------------------------------------------- Bianchi

Report bianchi_checks(const Connection& nabla, unsigned threads) {
  const auto& L = nabla.presentation();
  const auto& R = L.ring();
  MatForm curv = curvature_matrix(nabla);
  Report rep;
  MatForm dR = cov_deriv_end(nabla, curv);
  if (dR.size() == 0) rep.info("bianchi2", "fewer than three generators; the identity is vacuous");
  std::vector<Entry> slots(dR.size());
  parallel_for(dR.size(), threads, [&](std::size_t r) {
    const auto& t = dR.tuples()[r];
    Values bad = nonzero_values(dR.at_rank(r), R);
    slots[r] = {"bianchi2", {int(t[0] + 1), int(t[1] + 1), int(t[2] + 1)}, bad.empty() ? Status::Pass : Status::Fail,
                "covariant derivative of the curvature", bad};
  });
  for (auto& e : slots) rep.add(std::move(e));
  if (!nabla.carrier().is_L) return rep;
  const auto& vars = L.vars();
  const auto& triples = sorted_tuples(L.size(), std::min<std::size_t>(3, L.size()));
  if (L.size() < 3) rep.info("bianchi1", "fewer than three generators; the identity is vacuous");
  else
    for (const auto& t : triples) {
      std::size_t i = t[0], j = t[1], k = t[2];
      Mat Rij = curv.get({i, j}), Rjk = curv.get({j, k}), Rki = curv.get({k, i});
      Values bad;
      for (std::size_t v = 0; v < vars.num_coords(); ++v) {
        Frac s;
        for (std::size_t m = 0; m < L.size(); ++m) {
          const Poly& a = L.anchor(m).coeffs[v];
          if (a.is_zero()) continue;
          s += (Rij(k, m) + Rjk(i, m) + Rki(j, m)) * Frac(a);
        }
        s = R.nf(s);
        if (!s.is_zero()) bad.push_back({vars.coord_name(v), R.str(s)});
      }
      rep.add("bianchi1", {int(i + 1), int(j + 1), int(k + 1)}, bad.empty(), "cyclic sum R(X_i,X_j)X_k on coordinates",
              bad);
    }
  return rep;
}

// ------------------------------------------------------------ localization

namespace {

using LocDer = std::vector<Frac>;  // coefficients on the generators

struct Localized {
  const Connection& nabla;
  const LRPresentation& L;

  Mat apply(const LocDer& A, const Mat& w) const {
    Mat out(w.rows(), w.cols());
    for (std::size_t k = 0; k < A.size(); ++k)
      if (!A[k].is_zero()) out += nabla.act(k, w).scaled(A[k]);
    return out;
  }

  LocDer bracket(const LocDer& A, const LocDer& B) const {
    std::size_t l = L.size();
    LocDer out(l);
    for (std::size_t k = 0; k < l; ++k) {
      if (A[k].is_zero() && B[k].is_zero()) continue;
      for (std::size_t m = 0; m < l; ++m) {
        if (!A[k].is_zero()) out[m] += A[k] * L.act(k, B[m]);
        if (!B[k].is_zero()) out[m] -= B[k] * L.act(k, A[m]);
      }
    }
    for (std::size_t k = 0; k < l; ++k)
      for (std::size_t m = 0; m < l; ++m) {
        if (A[k].is_zero() || B[m].is_zero()) continue;
        for (std::size_t n = 0; n < l; ++n)
          if (!L.c(k, m, n).is_zero()) out[n] += A[k] * B[m] * Frac(L.c(k, m, n));
      }
    return out;
  }

  Mat curvature(const LocDer& A, const LocDer& B, const Mat& w) const {
    return apply(A, apply(B, w)) - apply(B, apply(A, w)) - apply(bracket(A, B), w);
  }
};

bool rows_equal(const Mat& a, const Mat& b, const QuotientRing& R, Values& bad) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!R.equal(a(0, j), b(0, j))) bad.push_back({pos(0, j), R.str(R.nf(a(0, j) - b(0, j)))});
  return bad.empty();
}

}  // namespace

Report localization_check(const Connection& nabla, const LocalizationInput& in) {
  const auto& L = nabla.presentation();
  const auto& R = L.ring();
  std::size_t l = L.size(), n = nabla.rank();
  if (in.x >= l || in.y >= l || in.v >= n) throw DomainError("localization indices out of range");
  for (const Poly* p : {&in.s, &in.t, &in.r, &in.u})
    if (R.is_zero_divisor(*p)) throw DomainError("localizing element " + R.str(*p) + " is a zero divisor");
  Localized loc{nabla, L};
  Frac s(in.s), t(in.t), r(in.r), u(in.u);
  LocDer Xs(l), Xr(l), Ys(l);
  Xs[in.x] = Frac(1) / s;
  Xr[in.x] = Frac(1) / r;
  Ys[in.y] = Frac(1) / s;
  Mat v = row_unit(n, in.v, Frac(1));
  Mat vt = row_unit(n, in.v, Frac(1) / t);
  Report rep;
  std::vector<int> idx{int(in.x + 1), int(in.y + 1), int(in.v + 1)};

  // [X/r, Y/s] against (rs[X,Y] - rX(s)Y + sY(r)X)/(r^2 s^2)
  {
    LocDer got = loc.bracket(Xr, Ys);
    LocDer want(l);
    for (std::size_t m = 0; m < l; ++m) want[m] = r * s * Frac(L.c(in.x, in.y, m));
    want[in.y] -= r * L.act(in.x, s);
    want[in.x] += s * L.act(in.y, r);
    Frac den = r * r * s * s;
    Values bad;
    for (std::size_t m = 0; m < l; ++m)
      if (!R.equal(got[m], want[m] / den)) bad.push_back({L.name(m), R.str(R.nf(got[m] - want[m] / den))});
    rep.add("localized-bracket", idx, bad.empty(), "bracket of localized generators", bad);
  }
  // nabla_{X/s}(v/t) = (t nabla_X v - X(t) v)/(s t^2)
  Mat direct = loc.apply(Xs, vt);
  {
    Mat want = (nabla.act(in.x, v).scaled(t) - v.scaled(L.act(in.x, t))).scaled(Frac(1) / (s * t * t));
    Values bad;
    rep.add("localized-connection", idx, rows_equal(direct, want, R, bad), "connection on fractions", bad);
  }
  // change of representative (v, t) -> (u v, u t)
  {
    Mat uv = row_unit(n, in.v, u / (u * t));
    Mat alt = loc.apply(Xs, uv);
    Values bad;
    rep.add("localized-representative", idx, rows_equal(direct, alt, R, bad), "independent of the representative",
            bad);
  }
  // R(X/r, Y/s)(v/t) = R(X,Y)v/(rst)
  {
    Mat got = loc.curvature(Xr, Ys, vt);
    Mat Rxy = curvature_at(nabla, in.x, in.y);
    Mat want = (v * Rxy).scaled(Frac(1) / (r * s * t));
    Values bad;
    rep.add("localized-curvature", idx, rows_equal(got, want, R, bad), "curvature scaling", bad);
  }
  return rep;
}

// ---------------------------------------------------------- well-formedness

Report connection_wellformed_report(const Connection& nabla) {
  const auto& L = nabla.presentation();
  const auto& R = L.ring();
  Report rep;
  for (std::size_t a = 0; a < L.syzygies().size(); ++a) {
    const auto& col = L.syzygies()[a];
    Mat s(nabla.rank(), nabla.rank());
    for (std::size_t i = 0; i < L.size(); ++i)
      if (!col[i].is_zero()) s += nabla.gamma(i).scaled(Frac(col[i]));
    Entry e{"connection-syzygy", {int(a + 1)}, Status::Info, "sum_i s^i Gamma_i for an L-syzygy",
            nonzero_values(s, R)};
    rep.add(std::move(e));
  }
  for (std::size_t a = 0; a < nabla.carrier().syzygies.size(); ++a) {
    const auto& col = nabla.carrier().syzygies[a];
    for (std::size_t i = 0; i < L.size(); ++i) {
      Mat row(1, nabla.rank());
      for (std::size_t mu = 0; mu < nabla.rank(); ++mu)
        if (!col[mu].is_zero()) row += row_unit(nabla.rank(), mu, Frac(col[mu])) * nabla.gamma(i);
      Entry e{"module-syzygy", {int(a + 1), int(i + 1)}, Status::Info, "nabla_i applied to a module syzygy",
              nonzero_values(row, R)};
      rep.add(std::move(e));
    }
  }
  return rep;
}

Report connection_difference_report(const Connection& a, const Connection& b) {
  if (a.presentation_ptr() != b.presentation_ptr() && a.gens() != b.gens())
    throw DomainError("connections over different presentations");
  if (a.rank() != b.rank()) throw DomainError("connections on carriers of different rank");
  const auto& L = a.presentation();
  Report rep;
  for (std::size_t k = 0; k < L.syzygies().size(); ++k) {
    const auto& col = L.syzygies()[k];
    Mat s(a.rank(), a.rank());
    for (std::size_t i = 0; i < L.size(); ++i)
      if (!col[i].is_zero()) s += (a.gamma(i) - b.gamma(i)).scaled(Frac(col[i]));
    Values bad = nonzero_values(s, L.ring());
    rep.add("connection-difference", {int(k + 1)}, bad.empty(), "syzygy contraction of Gamma - Gamma'", bad);
  }
  return rep;
}

}  // namespace lrgeom
