#pragma once

#include <memory>
#include <vector>

#include "lrgeom/liealgebra.hpp"

namespace lrgeom {

// The module carrying the connection: generators v_1..v_rank and their
// syzygy columns. When is_L is set, V = L and the syzygies are L's.
struct ModuleCarrier {
  std::size_t rank = 0;
  std::vector<std::vector<Poly>> syzygies;
  bool is_L = false;
};

enum class CoefficientMode { Polynomial, Fractional };

// Christoffel symbols in row convention: gamma(i)(mu, nu) = Gamma_{i mu}^nu,
// i.e. nabla_{X_i} v_mu = sum_nu Gamma_{i mu}^nu v_nu.
class Connection {
 public:
  Connection(PresentationPtr L, ModuleCarrier carrier, std::vector<Mat> gamma);
  static Connection on_L(PresentationPtr L, std::vector<Mat> gamma);
  static Connection on_free(PresentationPtr L, std::size_t rank, std::vector<Mat> gamma);
  static Connection trivial(PresentationPtr L, std::size_t rank);

  const LRPresentation& presentation() const { return *L_; }
  const PresentationPtr& presentation_ptr() const { return L_; }
  const QuotientRing& ring() const { return L_->ring(); }
  const ModuleCarrier& carrier() const { return carrier_; }
  std::size_t rank() const { return carrier_.rank; }
  std::size_t gens() const { return gamma_.size(); }
  const Mat& gamma(std::size_t i) const { return gamma_.at(i); }
  const std::vector<Mat>& gammas() const { return gamma_; }
  const Frac& christoffel(std::size_t i, std::size_t mu, std::size_t nu) const { return gamma_.at(i)(mu, nu); }
  CoefficientMode mode() const { return mode_; }

  MatForm form() const { return one_form(gamma_, Convention::Row); }
  // nabla + eta for a row-convention one-form eta.
  Connection plus(const MatForm& eta) const;

  // nabla_{X_i} applied to rows of coefficient vectors: X_i(w) + w Gamma_i.
  Mat act(std::size_t i, const Mat& w) const;
  // Induced connection on endomorphisms: X_i(phi) + phi Gamma_i - Gamma_i phi.
  Mat act_end(std::size_t i, const Mat& phi) const;

 private:
  PresentationPtr L_;
  ModuleCarrier carrier_;
  std::vector<Mat> gamma_;
  CoefficientMode mode_ = CoefficientMode::Polynomial;
};

// Forms whose values are r x rank matrices, each row a section of V.
using SectionForm = Form<Mat>;

SectionForm cov_deriv(const Connection& nabla, const SectionForm& w);
// Covariant derivative of an End(V)-valued form.
MatForm cov_deriv_end(const Connection& nabla, const MatForm& phi);

MatForm curvature_matrix(const Connection& nabla);
// R(X_i, X_j) from the componentwise formula, for any ordered pair.
Mat curvature_at(const Connection& nabla, std::size_t i, std::size_t j);
Report curvature_report(const Connection& nabla, const std::string& task);

Report torsion_check(const Connection& nabla);
// T(X_i, X_j) as coefficients on the generators.
std::vector<Frac> torsion_coefficients(const Connection& nabla, std::size_t i, std::size_t j);
Report metric_compat_check(const Connection& nabla, const Mat& G, unsigned threads = 1);

Frac koszul_rhs(const LRPresentation& L, const Mat& G, std::size_t i, std::size_t j, std::size_t k);
Report koszul_verify(const Connection& nabla, const Mat& G, unsigned threads = 1);
Connection koszul_solve_free(PresentationPtr L, const Mat& G);

Report bianchi_checks(const Connection& nabla, unsigned threads = 1);

struct LocalizationInput {
  Poly s = Poly(1), t = Poly(1), r = Poly(1);
  // Factor used for the change of representative (v, t) -> (u v, u t).
  Poly u = Poly(1);
  std::size_t v = 0, x = 0, y = 1;
};
Report localization_check(const Connection& nabla, const LocalizationInput& in);

// Raw syzygy contractions sum_i s^i Gamma_i; informational only.
Report connection_wellformed_report(const Connection& nabla);
// Contraction of Gamma - Gamma' with each L-syzygy column.
Report connection_difference_report(const Connection& a, const Connection& b);

}  // namespace lrgeom
