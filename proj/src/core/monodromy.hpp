#pragma once

#include <complex>
#include <optional>

#include "core/matrix.hpp"
#include "core/poly.hpp"

namespace canext {

// Commuting unipotent integer matrices T_1..T_n acting on Z^d, together with
// their nilpotent logarithms N_j = -log T_j (so T_j = exp(-N_j) exactly).
struct MonodromyModel {
  size_t n = 0, d = 0;
  std::vector<IntMat> T;
  std::vector<RatMat> N;
  std::optional<long> boundary_components;  // input metadata, carried through
};

// N = -log T = sum_{m>=1} (I - T)^m / m; finite because I - T is nilpotent.
RatMat log_unipotent(const IntMat& t);

// exp m = sum m^i / i!; throws if m is not nilpotent.
RatMat exp_nilpotent(const RatMat& m);

// Checks shapes, unipotence and pairwise commutation, then fills in N.
// Throws model_error with messages "DimensionMismatch", "NotUnipotent(j)",
// "NotCommuting(i,j)" (1-based indices).
MonodromyModel validate_model(std::vector<IntMat> t);

// Same model from the logarithms; T = exp(-N) must be integral.
MonodromyModel model_from_logs(std::vector<RatMat> n);

// Coordinates of exp(-(w_1 M_1 + ... + w_k M_k)) h as polynomials in the
// named variables, for commuting nilpotent M_j.
std::vector<MultiPoly> exp_action_poly(const std::vector<RatMat>& ms, const RatVec& h,
                                       const std::vector<std::string>& wvars);

struct NumericPoint {
  std::vector<std::complex<double>> t;
  std::vector<std::complex<double>> v;
};

// (e^{2 pi i z_1}, ..., e^{2 pi i z_n}, e^{-(z_1 N_1 + ... + z_n N_n)} h);
// requires Im z_j > 0 so the point lies over the punctured polydisk.
NumericPoint sample_sheet(const MonodromyModel& model, const std::vector<std::complex<double>>& z,
                          const IntVec& h);

struct OrbitResult {
  bool equal = false;
  std::optional<std::vector<long>> witness;  // a with T^a h0 = h1
};

// Does some T_1^{a_1} ... T_n^{a_n} map h0 to h1 with |a_j| <= bound?
// Exact integer search; the witness is the first hit in a fixed scan order
// (each coordinate scanned 0, 1, -1, 2, -2, ...).
OrbitResult orbit_equal(const MonodromyModel& model, const IntVec& h0, const IntVec& h1, long bound);

}  // namespace canext
