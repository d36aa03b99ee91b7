#include "lrgeom/matrix.hpp"

namespace lrgeom {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Frac(1);
  return m;
}

Mat Mat::from_polys(const std::vector<std::vector<Poly>>& rows) {
  Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.r_; ++i) {
    if (rows[i].size() != m.c_) throw DomainError("ragged matrix");
    for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = Frac(rows[i][j]);
  }
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  if (!same_shape(o)) throw DomainError("matrix shape mismatch");
  Mat m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  if (!same_shape(o)) throw DomainError("matrix shape mismatch");
  Mat m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
  return m;
}

Mat Mat::operator-() const {
  Mat m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw DomainError("matrix shape mismatch in product");
  Mat m(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Frac& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) {
        const Frac& y = o(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Mat Mat::scaled(const Frac& s) const {
  Mat m = *this;
  for (auto& x : m.a_) x = x * s;
  return m;
}

Mat Mat::transpose() const {
  Mat m(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Mat Mat::map(const std::function<Frac(const Frac&)>& f) const {
  Mat m = *this;
  for (auto& x : m.a_) x = f(x);
  return m;
}

Frac Mat::trace() const {
  Frac t;
  for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
  return t;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Mat kronecker(const Mat& a, const Mat& b) {
  Mat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Mat nf(const Mat& m, const QuotientRing& R) {
  return m.map([&](const Frac& x) { return R.nf(x); });
}

bool is_zero_mod(const Mat& m, const QuotientRing& R) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!R.is_zero(m(i, j))) return false;
  return true;
}

bool equal_mod(const Mat& a, const Mat& b, const QuotientRing& R) {
  if (!a.same_shape(b)) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!R.equal(a(i, j), b(i, j))) return false;
  return true;
}

Mat parse_matrix(const std::vector<std::vector<std::string>>& rows, const VarTable& vars) {
  Mat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw DomainError("ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = parse_frac(rows[i][j], vars);
  }
  return m;
}

std::vector<std::vector<std::string>> matrix_strings(const Mat& m, const VarTable& vars) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j), vars));
  return out;
}

BareissSolution bareiss_solve(const std::vector<std::vector<Poly>>& A, const std::vector<std::vector<Poly>>& rhs) {
  std::size_t n = A.size();
  std::size_t nr = rhs.size();
  // Augmented matrix [A | b_1 ... b_r].
  std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n + nr));
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != n) throw DomainError("bareiss_solve expects a square matrix");
    for (std::size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
    for (std::size_t r = 0; r < nr; ++r) M[i][n + r] = rhs[r].at(i);
  }
  Poly prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && M[piv][k].is_zero()) ++piv;
    if (piv == n) throw DomainError("singular matrix");
    if (piv != k) std::swap(M[piv], M[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n + nr; ++j)
        M[i][j] = divide_exact(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  // Back substitution over the common denominator, which is det(A) up to sign.
  BareissSolution sol;
  sol.determinant = M[n - 1][n - 1];
  for (std::size_t r = 0; r < nr; ++r) {
    std::vector<Poly> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
      Poly acc = M[ii][n + r] * sol.determinant;
      for (std::size_t j = ii + 1; j < n; ++j) acc -= M[ii][j] * x[j];
      x[ii] = divide_exact(acc, M[ii][ii]);
    }
    sol.numerators.push_back(std::move(x));
  }
  return sol;
}

Poly determinant(const std::vector<std::vector<Poly>>& A) {
  std::size_t n = A.size();
  if (n == 0) return Poly(1);
  std::vector<std::vector<Poly>> M = A;
  Poly prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && M[piv][k].is_zero()) ++piv;
    if (piv == n) return Poly();
    if (piv != k) {
      std::swap(M[piv], M[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = divide_exact(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[n - 1][n - 1] : -M[n - 1][n - 1];
}

}  // namespace lrgeom
