#pragma once

#include "core/groebner.hpp"
#include "core/lattice.hpp"
#include "core/monodromy.hpp"

namespace canext {

// t^{beta_plus} e^{-2 pi i lam_plus(v)} - t^{beta_minus} e^{-2 pi i lam_minus(v)}
struct TwistedBinomial {
  Expvec beta_plus;
  Expvec beta_minus;
  MultiPoly lam_plus;
  MultiPoly lam_minus;
};

// Defining data for the closure of the sheet through h: polynomial equations
// in the fiber coordinates v plus twisted binomial equations linking the base
// coordinates t to v.
struct SheetPresentation {
  size_t n = 0, d = 0;
  IntVec h;
  LatticeBasis stab;           // lattice of integer relations fixing h
  size_t k = 0;                // n - rank(stab)
  IntMat A;                    // unimodular change of coordinates, last columns = stab basis
  std::vector<RatMat> M;       // adapted nilpotents, columns of A against N
  std::vector<MultiPoly> p;    // left inverses: p_s(exp(-sum w M) h) = w_s
  std::vector<MultiPoly> eqA;  // v_i - (exp(-sum p_s(v) M_s) h)_i
  std::vector<bool> eqA_zero;  // component is identically zero
  std::vector<Binomial> toric;
  std::vector<TwistedBinomial> eqB;
};

// {a in Z^n : T^a h = h} = {a : (a_1 N_1 + ... + a_n N_n) h = 0}.
LatticeBasis stabilizer_lattice(const MonodromyModel& model, const IntVec& h);

struct AdaptedCoordinates {
  IntMat A;
  std::vector<RatMat> M;  // M_j = sum_i A[i][j] N_i
  size_t k = 0;
};

// Unimodular coordinates splitting off the stabilizer: M_j h are independent
// for j <= k and M_j h = 0 for j > k.
AdaptedCoordinates adapted_coordinates(const MonodromyModel& model, const LatticeBasis& stab);

// Polynomials p_s with p_s(exp(-(w_1 M_1 + ... + w_k M_k)) h) = w_s as an
// identity in w; requires the M_j h to be linearly independent
// (error "DependentDirections" otherwise).
std::vector<MultiPoly> inverse_polynomials(const std::vector<RatMat>& ms, const RatVec& h,
                                           const std::vector<std::string>& vvars);

std::vector<MultiPoly> equations_A(const std::vector<RatMat>& ms, const std::vector<MultiPoly>& p,
                                   const RatVec& h, const std::vector<std::string>& vvars);

std::vector<TwistedBinomial> equations_B(const IntMat& a, size_t k, const std::vector<MultiPoly>& p,
                                         const std::vector<Binomial>& toric);

SheetPresentation compute_sheet(const MonodromyModel& model, const IntVec& h);

// A positive integer relation witnessing that the closure meets the fiber
// over the origin, if one exists.
std::optional<IntVec> boundary_contact(const MonodromyModel& model, const IntVec& h);

struct LimitSet {
  LatticeBasis stab;
  std::optional<IntVec> contact;
  size_t dim = 0;                // = k when contact exists
  std::vector<MultiPoly> param;  // coordinates of exp(-(w_1 N_1 + ... + w_n N_n)) h
};

// Limit points of the sheet over the origin: empty when no positive relation
// exists, otherwise the orbit of h parametrized over w in C^n.
LimitSet limit_set(const MonodromyModel& model, const IntVec& h);

// Point of the arc t |-> (t^{a_1} e^{2 pi i w_1}, ..., exp(-sum w_j N_j) h);
// requires a_j >= 1 and sum a_j N_j h = 0 ("InvalidRelation" otherwise).
NumericPoint arc_point(const MonodromyModel& model, const IntVec& h, const IntVec& a,
                       const std::vector<std::complex<double>>& w, double t);

struct VerifyPointReport {
  std::vector<double> res_a;
  std::vector<double> res_b;
  double max_res_a = 0.0;
  double max_res_b = 0.0;
  bool pass = false;
};

VerifyPointReport verify_point(const SheetPresentation& pres, const NumericPoint& pt, double tol_a,
                               double tol_b);

struct SheetVerifyReport {
  size_t samples = 0;
  double max_res_a = 0.0;
  double max_res_b = 0.0;
  bool pass = false;
};

// Samples the sheet at seeded pseudo-random base points and checks both
// equation families; deterministic for a fixed seed.
SheetVerifyReport verify_sheet(const MonodromyModel& model, const SheetPresentation& pres,
                               size_t samples, double tol_a, double tol_b, std::uint64_t seed);

// Random base points used by verify_sheet: Re z in [0,1), Im z in [0.5, 3].
std::vector<std::complex<double>> sample_base_point(size_t n, std::uint64_t seed, std::uint64_t index);

// Representatives h (up to bounded monodromy) of sheets whose closure passes
// through the point (0, v); h scanned over |h_i| <= h_bound.
std::vector<IntVec> components_through_point(const MonodromyModel& model,
                                             const std::vector<std::complex<double>>& v, long h_bound,
                                             long orbit_bound, double tol);

}  // namespace canext
