#pragma once

#include <functional>
#include <vector>

#include "lrgeom/groebner.hpp"
#include "lrgeom/poly.hpp"

namespace lrgeom {

// Dense matrix with fraction entries.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  static Mat identity(std::size_t n);
  static Mat from_polys(const std::vector<std::vector<Poly>>& rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Frac& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Frac& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator-() const;
  Mat& operator+=(const Mat& o) { return *this = *this + o; }
  Mat& operator-=(const Mat& o) { return *this = *this - o; }
  Mat scaled(const Frac& s) const;
  Mat transpose() const;
  Mat map(const std::function<Frac(const Frac&)>& f) const;
  Frac trace() const;

  bool is_zero() const;
  bool same_shape(const Mat& o) const { return r_ == o.r_ && c_ == o.c_; }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Frac> a_;
};

Mat kronecker(const Mat& a, const Mat& b);
Mat block_diag(const Mat& a, const Mat& b);

Mat nf(const Mat& m, const QuotientRing& R);
bool is_zero_mod(const Mat& m, const QuotientRing& R);
bool equal_mod(const Mat& a, const Mat& b, const QuotientRing& R);
Mat parse_matrix(const std::vector<std::vector<std::string>>& rows, const VarTable& vars);
std::vector<std::vector<std::string>> matrix_strings(const Mat& m, const VarTable& vars);

// Fraction-free Gaussian elimination on A x = b for square A over polynomials.
// Returns (numerators, common denominator) with x = numerators / denominator.
struct BareissSolution {
  std::vector<std::vector<Poly>> numerators;  // one vector per right-hand side
  Poly determinant;
};
BareissSolution bareiss_solve(const std::vector<std::vector<Poly>>& A,
                              const std::vector<std::vector<Poly>>& rhs);
Poly determinant(const std::vector<std::vector<Poly>>& A);

}  // namespace lrgeom
