#pragma once

#include "lrgeom/connection.hpp"

namespace lrgeom {

// Invertible matrix over the ring with an explicitly supplied inverse.
// Matrices act on column coefficient vectors (operator convention).
class GaugeElement {
 public:
  GaugeElement(const QuotientRing& R, Mat g, Mat g_inv);
  static GaugeElement identity(std::size_t n);

  const Mat& g() const { return g_; }
  const Mat& inverse() const { return inv_; }
  std::size_t size() const { return g_.rows(); }
  // h * g; inverse g^-1 h^-1.
  GaugeElement compose(const GaugeElement& g, const QuotientRing& R) const;

 private:
  GaugeElement(Mat g, Mat inv) : g_(std::move(g)), inv_(std::move(inv)) {}
  Mat g_, inv_;
};

// rho_g(X_i) = g (nabla_i g^-1), operator convention.
MatForm maurer_cartan(const GaugeElement& g, const Connection& nabla);
// g.eta = rho_g + g eta g^-1, operator convention; nabla.plus(result) is the acted connection.
MatForm gauge_act(const GaugeElement& g, const Connection& nabla, const MatForm& eta);
// Cocycle, Maurer-Cartan and curvature conjugation identities.
Report gauge_certificates(const GaugeElement& g, const GaugeElement& h, const Connection& nabla, const MatForm& eta,
                          unsigned threads = 1);

}  // namespace lrgeom
