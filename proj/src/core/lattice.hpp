#pragma once

#include <optional>

#include "core/matrix.hpp"

namespace canext {

struct HnfResult {
  IntMat h;  // row-style Hermite normal form of the input
  IntMat u;  // unimodular, u * input = h
};

// Row-style Hermite normal form: pivots positive, entries above each pivot
// reduced into [0, pivot), zero rows at the bottom.
HnfResult hnf(const IntMat& m);

struct SnfResult {
  IntMat s;  // diagonal, nonnegative, d1 | d2 | ...
  IntMat u;  // unimodular, u * input * v = s
  IntMat v;
};

SnfResult snf(const IntMat& m);

// A sublattice of Z^n given by a basis; `basis` rows are the HNF of any
// generating set, so equal lattices compare equal.
struct LatticeBasis {
  size_t ambient = 0;
  std::vector<IntVec> basis;  // may be empty (rank 0)

  size_t rank() const { return basis.size(); }
  IntMat as_rows() const;
  bool operator==(const LatticeBasis& o) const = default;
};

// Canonical basis of the span over Z of the given rows (drops dependencies).
LatticeBasis lattice_from_rows(const IntMat& rows);

// Is v an integer combination of the basis?
bool lattice_contains(const LatticeBasis& lat, const IntVec& v);

// {a in Z^cols : m * a = 0}; saturated by construction.
LatticeBasis kernel_lattice(const RatMat& m);

// Is the lattice saturated in Z^n (i.e. equal to (span_Q intersect Z^n))?
bool lattice_is_saturated(const LatticeBasis& lat);

// Unimodular A (det +1 when rank < ambient) whose last `rank` columns are the
// canonical basis of the lattice.  Requires a saturated lattice.
IntMat unimodular_completion(const LatticeBasis& lat);

// A lattice vector with every coordinate >= 1, or nullopt if none exists.
// Deterministic: rational feasibility by Fourier-Motzkin elimination on the
// basis coefficients, canonical back-substitution, then scaled integral.
std::optional<IntVec> positive_lattice_point(const LatticeBasis& lat);

}  // namespace canext
