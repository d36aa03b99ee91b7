#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lrgeom/poly.hpp"

namespace lrgeom {

class Ideal {
 public:
  Ideal() = default;
  Ideal(std::vector<Poly> gens, MonomialOrder order = MonomialOrder::Grevlex);

  const std::vector<Poly>& generators() const { return gens_; }
  // Reduced monic Groebner basis, sorted by decreasing leading monomial.
  const std::vector<Poly>& basis() const { return basis_; }
  MonomialOrder order() const { return order_; }
  bool is_zero_ideal() const { return basis_.empty(); }

  Poly reduce(const Poly& p) const;
  bool contains(const Poly& p) const { return reduce(p).is_zero(); }

 private:
  std::vector<Poly> gens_;
  std::vector<Poly> basis_;
  MonomialOrder order_ = MonomialOrder::Grevlex;
};

Ideal buchberger(const std::vector<Poly>& gens, MonomialOrder order = MonomialOrder::Grevlex);
Ideal ideal_power(const Ideal& I, unsigned k);
bool is_groebner(const std::vector<Poly>& gens, MonomialOrder order);

// Full reduction of p by an arbitrary divisor list, tracking quotients.
struct Division {
  std::vector<Poly> quotients;
  Poly remainder;
};
Division divide(const Poly& p, const std::vector<Poly>& divisors, MonomialOrder order);

struct CofactorResult {
  std::vector<Poly> cofactors;
  Poly remainder;
  // False when the cofactors refer to `basis` instead of the given generators.
  bool against_generators = true;
  std::vector<Poly> basis;
};

struct CofactorOptions {
  MonomialOrder order = MonomialOrder::Grevlex;
  unsigned extra_degree = 2;
};

CofactorResult reduce_with_cofactors(const Poly& p, const std::vector<Poly>& gens,
                                     const CofactorOptions& opts = {});

// Degree-bounded solve of sum_k q_k * gens[k][c] == target[c] modulo the ideal
// generated by ideal_gens, for every component c. Coordinate polynomials only.
std::optional<std::vector<Poly>> solve_combination(const std::vector<std::vector<Poly>>& gens,
                                                   const std::vector<Poly>& target,
                                                   const std::vector<Poly>& ideal_gens,
                                                   unsigned degree_bound);

class QuotientRing {
 public:
  QuotientRing(VarTablePtr vars, std::vector<Poly> ideal_gens,
               MonomialOrder order = MonomialOrder::Grevlex,
               std::vector<Poly> invertibles = {});

  const VarTable& vars() const { return *vars_; }
  const VarTablePtr& vars_ptr() const { return vars_; }
  const Ideal& ideal() const { return ideal_; }
  MonomialOrder order() const { return ideal_.order(); }
  const std::vector<Poly>& invertibles() const { return invertibles_; }

  Poly nf(const Poly& p) const;
  Frac nf(const Frac& f) const;
  bool is_zero(const Poly& p) const { return nf(p).is_zero(); }
  bool is_zero(const Frac& f) const { return nf(f.num()).is_zero(); }
  bool equal(const Frac& x, const Frac& y) const;
  bool equal(const Poly& x, const Poly& y) const { return is_zero(x - y); }

  // True when s is zero or annihilates a nonzero class, i.e. (I : s) != I.
  bool is_zero_divisor(const Poly& s) const;
  // Product of declared invertibles and a nonzero constant.
  bool is_admissible_denominator(const Poly& d) const;

  std::string str(const Poly& p) const { return to_string(p, *vars_); }
  std::string str(const Frac& f) const { return to_string(f, *vars_); }
  Poly parse(std::string_view s) const { return parse_poly(s, *vars_); }
  Frac parse_fraction(std::string_view s) const;

 private:
  const Poly& nf_coord_monomial(const Monomial& m) const;

  VarTablePtr vars_;
  Ideal ideal_;
  std::vector<Poly> invertibles_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Monomial, std::unique_ptr<Poly>, MonomialHash> cache_;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

}  // namespace lrgeom
