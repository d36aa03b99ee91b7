#pragma once

#include "lrgeom/constructions.hpp"

namespace lrgeom {

struct ChernPiece {
  std::size_t degree = 0;  // 2k
  GenForm form;            // tr(R^k) kappa^k / k!
  bool closed = true;
};

struct ChernReport {
  Rational kappa;
  std::size_t cutoff = 0;  // largest k with 2k <= l
  std::vector<ChernPiece> pieces;
  Report report;
};

// Matrix trace of an endomorphism of the image of theta.
Frac trace_end(const Mat& phi, const Mat& theta, const QuotientRing& R);

ChernReport chern_character(const Mat& theta, const PresentationPtr& L, const Rational& kappa);

// Curvature, in operator convention, of nabla + eta on the image of theta:
// theta (d(Omega + eta) + (Omega + eta)^2) theta with Omega_i = gamma_i^T.
MatForm projected_curvature(const Mat& theta, const Connection& nabla, const MatForm& eta);

// tr((R^eta)^m) - tr(R^m) against d of the integral of m tr(eta (R^s)^(m-1)) over s in [0,1].
Report transgression_check(const Mat& theta, const Connection& nabla, const MatForm& eta, unsigned m);

// ch(V (+) V') = ch(V) + ch(V') piecewise.
Report chern_additivity_check(const Mat& theta, const Mat& theta2, const PresentationPtr& L, const Rational& kappa);
// ch(V (x) V') = ch(V) ch(V') piecewise, plus the curvature of the tensor connection.
Report chern_tensor_check(const Mat& theta, const Mat& theta2, const PresentationPtr& L, const Rational& kappa);

}  // namespace lrgeom
