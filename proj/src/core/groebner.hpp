#pragma once

#include "core/matrix.hpp"
#include "core/poly.hpp"

namespace canext {

// Remainder of p on full division by basis (every monomial reduced).
// Divisors are tried in list order, so the result is deterministic; for a
// Groebner basis it is the unique normal form.
MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis, const MonomialOrder& ord);

// Reduced Groebner basis (monic, autoreduced, sorted by decreasing leading
// term).  Uniqueness of the reduced basis makes the output independent of
// generator order.
std::vector<MultiPoly> buchberger(std::vector<MultiPoly> gens, const MonomialOrder& ord);

// x^plus - x^minus with disjoint supports.
struct Binomial {
  Expvec plus;
  Expvec minus;
  bool operator==(const Binomial& o) const = default;
};

MultiPoly binomial_to_poly(const Binomial& b, const std::vector<std::string>& vars);

// Defining binomials of the closure of the image of the monomial map
// x_j = prod_i u_i^{exponents[j][i]} (exponents may be negative): the
// saturated lattice ideal of ker(exponents^T), as a reduced grevlex
// Groebner basis.  With zero columns the image is the point (1, ..., 1)
// and the result is {x_j - 1}.
std::vector<Binomial> toric_ideal_binomials(const IntMat& exponents);

}  // namespace canext
