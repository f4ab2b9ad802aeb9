#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "core/scalar.hpp"

namespace canext {

using Expvec = std::vector<unsigned>;

// Monomial orders.  grevlex: higher total degree wins, ties broken by the
// *last* position where exponents differ, smaller exponent there winning.
// lex: first position where exponents differ, larger exponent winning.
// block_elim(b): grevlex on the first b variables, ties by grevlex on the
// rest; monomials free of the first block are smaller than any that use it.
class MonomialOrder {
 public:
  static MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  static MonomialOrder block_elim(size_t first_block) { return MonomialOrder(Kind::block, first_block); }

  // strict a < b
  bool less(const Expvec& a, const Expvec& b) const;

 private:
  enum class Kind { grevlex, lex, block };
  MonomialOrder(Kind k, size_t b) : kind_(k), block_(b) {}
  Kind kind_;
  size_t block_;
};

// Sparse multivariate polynomial over Q.  Terms are keyed by exponent vector
// (always of length vars.size()); zero coefficients are never stored, so
// equality of the map is equality of polynomials.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(std::vector<std::string> vars, const Rat& c);
  static MultiPoly variable(std::vector<std::string> vars, size_t index);
  static MultiPoly monomial(std::vector<std::string> vars, const Rat& c, Expvec e);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Expvec, Rat>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // coefficient of the empty monomial
  unsigned total_degree() const;

  void add_term(const Expvec& e, const Rat& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(const Rat& c) const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // Leading term under the given order.
  std::pair<Expvec, Rat> leading_term(const MonomialOrder& ord) const;  // requires nonzero

  // Replace variable i by assignment[i]; assignments share one variable list.
  MultiPoly substitute(const std::vector<MultiPoly>& assignment) const;

  std::complex<double> eval(const std::vector<std::complex<double>>& point) const;
  Rat eval_rat(const RatVec& point) const;

  // Canonical text: terms in descending grevlex order, "-2/3*v1^2*v2 + 1".
  std::string to_string() const;

  // Inverse of to_string; accepts any +/- separated combination of rational
  // coefficients and named powers of the given variables.
  static MultiPoly parse(const std::vector<std::string>& vars, const std::string& text);

 private:
  std::vector<std::string> vars_;
  std::map<Expvec, Rat> terms_;
};

}  // namespace canext
