#pragma once

#include <vector>

#include "lrgeom/connection.hpp"

namespace lrgeom {

// {x^i, x^j} = pi[i][j] on the coordinates of a ring.
class PoissonStructure {
 public:
  PoissonStructure(VarTablePtr vars, std::vector<std::vector<Poly>> pi);
  const VarTable& vars() const { return *vars_; }
  std::size_t dim() const { return pi_.size(); }
  const Poly& pi(std::size_t i, std::size_t j) const { return pi_.at(i).at(j); }
  Poly bracket(const Poly& f, const Poly& g) const;
  // Hamiltonian derivation {f, .}.
  Derivation hamiltonian(const Poly& f) const;
  // Jacobi identity on all coordinate triples.
  Report jacobi_report() const;

 private:
  VarTablePtr vars_;
  std::vector<std::vector<Poly>> pi_;
};

struct AdjointResult {
  Connection connection;
  Report certificate;
};
AdjointResult adjoint_connection(PresentationPtr L);
// X -> nabla_X - T(X, .)/2 for a connection on L.
Connection torsion_corrected(const Connection& nabla);

struct BottResult {
  Connection connection;
  Report certificate;
};
// L must consist of derivations of the ambient ring tangent to (f_1..f_m).
BottResult bott_connection(const std::vector<Poly>& fs, PresentationPtr L);
// For each (i, j, mu): sum_nu R_ij[mu][nu] f_nu in I^2.
Report bott_certificate(const Connection& nabla, const std::vector<Poly>& fs);

struct PoissonResult {
  PresentationPtr presentation;  // Hamiltonian fields X_{x^i} over P/I
  Connection connection;         // on I/I^2 with the generators f_mu
  Report certificate;
};
PoissonResult poisson_connection(const PoissonStructure& pi, const std::vector<Poly>& fs);

struct DiracResult {
  PresentationPtr presentation;  // I/I^2 with anchors {f_mu, .}
  Connection connection;         // on the Kaehler differentials dx^1..dx^n
  Report certificate;
};
// tangent: generators of the derivations of P/I used for the pairing.
DiracResult dirac_connection(const PoissonStructure& pi, const std::vector<Poly>& fs,
                             const std::vector<Derivation>& tangent);

struct FedosovResult {
  Connection connection;  // generators v_mu = theta e_mu, syzygies the columns of Id - theta
  MatForm curvature;      // operator convention: theta [X_i(theta), X_j(theta)]
  Report certificate;
};
FedosovResult fedosov_connection(const Mat& theta, PresentationPtr L);
MatForm fedosov_curvature(const Mat& theta, const LRPresentation& L);
void require_idempotent(const Mat& theta, const QuotientRing& R);

}  // namespace lrgeom
