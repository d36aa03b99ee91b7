#pragma once

#include <memory>
#include <optional>
#include <functional>
#include <string>
#include <vector>

#include "lrgeom/groebner.hpp"
#include "lrgeom/matrix.hpp"
#include "lrgeom/report.hpp"

namespace lrgeom {

struct Derivation {
  std::vector<Poly> coeffs;  // sum_i coeffs[i] d/du^i
  bool operator==(const Derivation&) const = default;
};

Poly deriv_apply(const Derivation& X, const Poly& p, const VarTable& vars);
Frac deriv_apply(const Derivation& X, const Frac& f, const VarTable& vars);
Mat deriv_apply(const Derivation& X, const Mat& m, const VarTable& vars);
Derivation deriv_bracket(const Derivation& X, const Derivation& Y, const VarTable& vars);
Derivation parse_derivation(const std::vector<std::string>& coeffs, const VarTable& vars);

class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t l) : l_(l), c_(l * l * l) {}
  std::size_t size() const { return l_; }
  Poly& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * l_ + j) * l_ + k]; }
  const Poly& at(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * l_ + j) * l_ + k]; }
  bool operator==(const StructureConstants&) const = default;

 private:
  std::size_t l_ = 0;
  std::vector<Poly> c_;
};

// A Lie-Rinehart algebra given by generators, their anchors, structure
// constants and syzygy columns (each column has one entry per generator).
class LRPresentation {
 public:
  LRPresentation(RingPtr ring, std::vector<std::string> names, std::vector<Derivation> anchors,
                 std::optional<StructureConstants> structure,
                 std::vector<std::vector<Poly>> syzygies = {});

  const QuotientRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const VarTable& vars() const { return ring_->vars(); }
  std::size_t size() const { return anchors_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const Derivation& anchor(std::size_t i) const { return anchors_.at(i); }
  const std::vector<Derivation>& anchors() const { return anchors_; }
  const Poly& c(std::size_t i, std::size_t j, std::size_t k) const { return c_.at(i, j, k); }
  const StructureConstants& structure() const { return c_; }
  bool structure_declared() const { return declared_; }
  const std::vector<std::vector<Poly>>& syzygies() const { return syz_; }

  Poly act(std::size_t i, const Poly& p) const { return deriv_apply(anchors_.at(i), p, vars()); }
  Frac act(std::size_t i, const Frac& f) const { return deriv_apply(anchors_.at(i), f, vars()); }
  Mat act(std::size_t i, const Mat& m) const { return deriv_apply(anchors_.at(i), m, vars()); }

 private:
  RingPtr ring_;
  std::vector<std::string> names_;
  std::vector<Derivation> anchors_;
  StructureConstants c_;
  bool declared_ = false;
  std::vector<std::vector<Poly>> syz_;
};

using PresentationPtr = std::shared_ptr<const LRPresentation>;

// Structure constants expressing [X_i,X_j] through the generators mod I.
StructureConstants compute_structure_constants(const QuotientRing& R, const std::vector<Derivation>& X);

Report verify_presentation(const LRPresentation& L);

// ------------------------------------------------------------------- forms

// Sorted index tuples of size m drawn from {0..l-1}, lexicographic.
const std::vector<std::vector<std::size_t>>& sorted_tuples(std::size_t l, std::size_t m);
std::size_t tuple_rank(const std::vector<std::size_t>& sorted);

template <class V>
class Form {
 public:
  Form() = default;
  Form(std::size_t l, std::size_t arity, const V& zero)
      : l_(l), m_(arity), zero_(zero), v_(arity <= l ? sorted_tuples(l, arity).size() : 0, zero) {}

  std::size_t gens() const { return l_; }
  std::size_t arity() const { return m_; }
  std::size_t size() const { return v_.size(); }
  const std::vector<std::vector<std::size_t>>& tuples() const { return sorted_tuples(l_, m_); }
  const V& zero() const { return zero_; }

  // Value on the sorted tuple with the given colex rank.
  V& at_rank(std::size_t r) { return v_.at(r); }
  const V& at_rank(std::size_t r) const { return v_.at(r); }
  V& at(const std::vector<std::size_t>& sorted) { return v_.at(tuple_rank(sorted)); }
  const V& at(const std::vector<std::size_t>& sorted) const { return v_.at(tuple_rank(sorted)); }

  // Value on an arbitrary tuple, by antisymmetry.
  V get(std::vector<std::size_t> t) const {
    if (t.size() != m_) throw DomainError("form evaluated on a tuple of the wrong arity");
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i)
      for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
        std::swap(t[j - 1], t[j]);
        sign = -sign;
      }
    for (std::size_t j = 0; j + 1 < t.size(); ++j)
      if (t[j] == t[j + 1]) return zero_;
    if (sign > 0) return at(t);
    return -at(t);
  }

 private:
  std::size_t l_ = 0, m_ = 0;
  V zero_{};
  std::vector<V> v_;
};

enum class Convention { Row, Operator };
std::string to_string(Convention c);

using GenForm = Form<Frac>;

class MatForm : public Form<Mat> {
 public:
  MatForm() = default;
  MatForm(std::size_t l, std::size_t arity, std::size_t beta, Convention conv)
      : Form<Mat>(l, arity, Mat(beta, beta)), beta_(beta), conv_(conv) {}
  std::size_t beta() const { return beta_; }
  Convention convention() const { return conv_; }
  // Flips the convention by transposing every value.
  MatForm transposed() const;
  // Entry (mu, nu) as a scalar form.
  GenForm entry(std::size_t mu, std::size_t nu) const;

 private:
  std::size_t beta_ = 0;
  Convention conv_ = Convention::Row;
};

GenForm nf(const GenForm& w, const QuotientRing& R);
MatForm nf(const MatForm& w, const QuotientRing& R);
bool is_zero_mod(const GenForm& w, const QuotientRing& R);
bool is_zero_mod(const MatForm& w, const QuotientRing& R);
bool equal_mod(const GenForm& a, const GenForm& b, const QuotientRing& R);
bool equal_mod(const MatForm& a, const MatForm& b, const QuotientRing& R);

GenForm operator+(const GenForm& a, const GenForm& b);
GenForm operator-(const GenForm& a, const GenForm& b);
GenForm scale(const GenForm& a, const Frac& s);
MatForm operator+(const MatForm& a, const MatForm& b);
MatForm operator-(const MatForm& a, const MatForm& b);
MatForm scale(const MatForm& a, const Frac& s);
// Apply a matrix map to every value (conjugation and similar).
MatForm map_values(const MatForm& a, const std::function<Mat(const Mat&)>& f);

GenForm zero_form(const LRPresentation& L, std::size_t arity);
GenForm function_form(const LRPresentation& L, const Frac& a);
MatForm one_form(const std::vector<Mat>& values, Convention conv);

GenForm ddr(const GenForm& w, const LRPresentation& L);
MatForm ddr(const MatForm& w, const LRPresentation& L);
GenForm cup(const GenForm& a, const GenForm& b);
// Matrix product combined with the shuffle product.
MatForm cup(const MatForm& a, const MatForm& b);
MatForm graded_commutator(const MatForm& a, const MatForm& b);
GenForm trace(const MatForm& w);

// d C + sign * (1/2)[C,C], where (1/2)[C,C](X_i,X_j) = C_i C_j - C_j C_i.
MatForm mc_defect(const MatForm& C, const LRPresentation& L, int sign);
Report mc_defect_report(const MatForm& C, const LRPresentation& L, int sign, const std::string& task);

bool form_wellformed(const GenForm& w, const LRPresentation& L);
Report form_wellformed_report(const GenForm& w, const LRPresentation& L, const std::string& task);
// Row contractions sum_k S[k][a] G[k][j] of a symmetric tensor.
Report tensor_wellformed_report(const Mat& G, const LRPresentation& L, const std::string& task);

namespace detail {

std::vector<std::size_t> drop(const std::vector<std::size_t>& t, std::size_t a);
std::vector<std::size_t> drop2(const std::vector<std::size_t>& t, std::size_t a, std::size_t b);
inline Frac scale_value(const Frac& v, const Poly& c) { return v * Frac(c); }
inline Mat scale_value(const Mat& v, const Poly& c) { return v.scaled(Frac(c)); }
inline Frac nf_value(const Frac& v, const QuotientRing& R) { return R.nf(v); }
inline Mat nf_value(const Mat& v, const QuotientRing& R) { return nf(v, R); }

// Koszul-type differential; act(i, value) replaces the anchor action.
template <class FormT, class Act>
void koszul_into(const FormT& w, const LRPresentation& L, FormT& out, Act act) {
  std::size_t m = w.arity(), l = L.size();
  if (m + 1 > l) return;
  for (const auto& t : out.tuples()) {
    auto acc = w.zero();
    for (std::size_t p = 0; p <= m; ++p) {
      auto term = act(t[p], w.get(drop(t, p)));
      if (p % 2 == 0) acc += term; else acc -= term;
    }
    for (std::size_t a = 0; a <= m; ++a)
      for (std::size_t b = a + 1; b <= m; ++b) {
        std::vector<std::size_t> rest = drop2(t, a, b);
        for (std::size_t k = 0; k < l; ++k) {
          const Poly& c = L.c(t[a], t[b], k);
          if (c.is_zero()) continue;
          std::vector<std::size_t> args{k};
          args.insert(args.end(), rest.begin(), rest.end());
          auto term = scale_value(w.get(args), c);
          if ((a + b) % 2 == 0) acc += term; else acc -= term;
        }
      }
    out.at(t) = nf_value(acc, L.ring());
  }
}

// Shuffle product; mul combines the two values in order.
template <class FormA, class FormB, class FormT, class Mul>
void cup_into(const FormA& a, const FormB& b, FormT& out, Mul mul) {
  std::size_t k = a.arity(), m = b.arity(), n = k + m;
  if (n > a.gens()) return;
  const auto& subsets = sorted_tuples(n, k);
  for (const auto& t : out.tuples()) {
    auto acc = out.zero();
    for (const auto& S : subsets) {
      std::vector<std::size_t> left, right;
      std::vector<bool> in(n, false);
      for (auto s : S) in[s] = true;
      int inversions = 0;
      for (std::size_t pos = 0; pos < n; ++pos) {
        if (in[pos]) {
          left.push_back(t[pos]);
        } else {
          right.push_back(t[pos]);
          for (auto s : S) inversions += s > pos;
        }
      }
      auto term = mul(a.get(left), b.get(right));
      if (inversions % 2 == 0) acc += term; else acc -= term;
    }
    out.at(t) = acc;
  }
}

}  // namespace detail

}  // namespace lrgeom
