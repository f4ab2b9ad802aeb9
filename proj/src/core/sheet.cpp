#include "core/sheet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace canext {

namespace {

bool vec_is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// all alpha with M^alpha h != 0, applications in nondecreasing index order
void collect_words(const std::vector<RatMat>& ms, size_t j0, Expvec& alpha, const RatVec& vec,
                   std::map<Expvec, RatVec>& alive) {
  alive[alpha] = vec;
  for (size_t j = j0; j < ms.size(); ++j) {
    RatVec next = ms[j].apply(vec);
    if (vec_is_zero(next)) continue;
    alpha[j] += 1;
    collect_words(ms, j, alpha, next, alive);
    alpha[j] -= 1;
  }
}

RatMat word_matrix(const std::vector<RatMat>& ms, const Expvec& alpha, size_t d) {
  RatMat m = RatMat::identity(d);
  for (size_t j = 0; j < alpha.size(); ++j)
    for (unsigned e = 0; e < alpha[j]; ++e) m = m * ms[j];
  return m;
}

Rat factorial_inv_sign(const Expvec& alpha) {
  Int fact(1);
  unsigned len = 0;
  for (unsigned a : alpha) {
    len += a;
    for (unsigned i = 2; i <= a; ++i) fact *= Int(i);
  }
  Rat r = make_rat(Int(1), fact);
  return (len % 2) ? Rat(-r) : r;
}

std::vector<std::complex<double>> exp_apply(const std::vector<RatMat>& ms,
                                            const std::vector<std::complex<double>>& coeff,
                                            const RatVec& h) {
  size_t d = h.size();
  std::vector<std::vector<std::complex<double>>> x(d, std::vector<std::complex<double>>(d, 0.0));
  for (size_t j = 0; j < ms.size(); ++j)
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) x[r][c] += coeff[j] * rat_to_double(ms[j].at(r, c));
  std::vector<std::complex<double>> vec(d), acc(d);
  for (size_t i = 0; i < d; ++i) {
    vec[i] = std::complex<double>(rat_to_double(h[i]), 0.0);
    acc[i] = vec[i];
  }
  for (size_t m = 1; m < d; ++m) {
    std::vector<std::complex<double>> next(d, 0.0);
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) next[r] += x[r][c] * vec[c];
    for (size_t i = 0; i < d; ++i) {
      next[i] /= static_cast<double>(m);
      acc[i] += next[i];
    }
    vec = next;
  }
  return acc;
}

RatVec to_ratvec(const IntVec& h) {
  RatVec r;
  r.reserve(h.size());
  for (const auto& x : h) r.emplace_back(x);
  return r;
}

std::vector<std::string> v_vars(size_t d) {
  std::vector<std::string> vars;
  for (size_t i = 0; i < d; ++i) vars.push_back("v" + std::to_string(i + 1));
  return vars;
}

}  // namespace

LatticeBasis stabilizer_lattice(const MonodromyModel& model, const IntVec& h) {
  if (h.size() != model.d) throw domain_error("fiber vector has wrong dimension");
  RatMat k(model.d, model.n);
  RatVec hr = to_ratvec(h);
  for (size_t j = 0; j < model.n; ++j) {
    RatVec col = model.N[j].apply(hr);
    for (size_t i = 0; i < model.d; ++i) k.at(i, j) = col[i];
  }
  return kernel_lattice(k);
}

AdaptedCoordinates adapted_coordinates(const MonodromyModel& model, const LatticeBasis& stab) {
  if (stab.ambient != model.n) throw domain_error("stabilizer has wrong ambient dimension");
  AdaptedCoordinates ad;
  ad.A = unimodular_completion(stab);
  ad.k = model.n - stab.rank();
  for (size_t j = 0; j < model.n; ++j) {
    RatMat m(model.d, model.d);
    for (size_t i = 0; i < model.n; ++i)
      if (ad.A.at(i, j) != 0) m = m + model.N[i].scaled(Rat(ad.A.at(i, j)));
    ad.M.push_back(std::move(m));
  }
  return ad;
}

namespace {

std::vector<MultiPoly> inverse_impl(std::vector<RatMat> ms, const RatVec& h,
                                    const std::vector<std::string>& vvars) {
  size_t k = ms.size(), d = h.size();
  if (k == 0) return {};
  RatMat dirs(d, k);
  for (size_t j = 0; j < k; ++j) {
    RatVec col = ms[j].apply(h);
    for (size_t i = 0; i < d; ++i) dirs.at(i, j) = col[i];
  }
  if (dirs.rank() < k) throw domain_error("DependentDirections");

  std::map<Expvec, RatVec> alive;
  Expvec a0(k, 0);
  collect_words(ms, 0, a0, h, alive);
  size_t maxlen = 0;
  for (const auto& [a, vec] : alive) {
    size_t len = 0;
    for (unsigned x : a) len += x;
    maxlen = std::max(maxlen, len);
  }
  Expvec astar;
  for (const auto& [a, vec] : alive) {
    size_t len = 0;
    for (unsigned x : a) len += x;
    if (len == maxlen && (astar.empty() || astar < a)) astar = a;
  }

  size_t last = k - 1;
  size_t swapped = last;
  if (astar[last] == 0) {
    size_t jstar = 0;
    for (size_t j = 0; j < k; ++j)
      if (astar[j] > 0) jstar = j;
    std::swap(ms[jstar], ms[last]);
    std::swap(astar[jstar], astar[last]);
    swapped = jstar;
  }

  Expvec am = astar;
  am[last] -= 1;
  RatMat mstar = word_matrix(ms, am, d);  // M^{alpha* - e_k}
  RatVec mh = mstar.apply(h);
  RatVec top = ms[last].apply(mh);  // M^{alpha*} h, nonzero by choice of alpha*
  size_t piv = 0;
  while (piv < d && top[piv] == 0) ++piv;
  Rat denom = top[piv];

  RatVec c(k >= 1 ? k - 1 : 0);
  for (size_t j = 0; j + 1 < k; ++j) c[j] = -(ms[j].apply(mh))[piv] / denom;

  MultiPoly l = MultiPoly::constant(vvars, mh[piv] / denom);
  for (size_t t = 0; t < d; ++t) {
    if (mstar.at(piv, t) == 0) continue;
    Expvec e(vvars.size(), 0);
    e[t] = 1;
    l.add_term(e, -mstar.at(piv, t) / denom);
  }

  std::vector<RatMat> sub;
  for (size_t j = 0; j + 1 < k; ++j) sub.push_back(ms[j] + ms[last].scaled(c[j]));
  std::vector<MultiPoly> q = inverse_impl(sub, h, vvars);

  // v' = e^{l(v) M_k} v as polynomials in v
  std::vector<MultiPoly> vprime(d, MultiPoly(vvars));
  RatMat pw = RatMat::identity(d);
  Int fact(1);
  for (size_t m = 0; m <= d; ++m) {
    if (m > 0) {
      pw = pw * ms[last];
      fact *= Int(m);
    }
    if (pw.is_zero()) break;
    MultiPoly lm = l.pow(static_cast<unsigned>(m)).scaled(make_rat(Int(1), fact));
    for (size_t i = 0; i < d; ++i) {
      MultiPoly row(vvars);
      for (size_t t = 0; t < d; ++t) {
        if (pw.at(i, t) == 0) continue;
        Expvec e(vvars.size(), 0);
        e[t] = 1;
        row.add_term(e, pw.at(i, t));
      }
      if (!row.is_zero()) vprime[i] = vprime[i] + lm * row;
    }
    if (m == d && !pw.is_zero()) throw domain_error("matrix is not nilpotent");
  }

  std::vector<MultiPoly> p(k, MultiPoly(vvars));
  for (size_t j = 0; j + 1 < k; ++j) p[j] = q[j].substitute(vprime);
  MultiPoly pk = l;
  for (size_t j = 0; j + 1 < k; ++j) pk = pk + p[j].scaled(c[j]);
  p[last] = pk;
  if (swapped != last) std::swap(p[swapped], p[last]);
  return p;
}

}  // namespace

std::vector<MultiPoly> inverse_polynomials(const std::vector<RatMat>& ms, const RatVec& h,
                                           const std::vector<std::string>& vvars) {
  size_t d = h.size();
  if (vvars.size() != d) throw domain_error("need one variable per fiber coordinate");
  for (const auto& m : ms)
    if (m.rows() != d || m.cols() != d) throw domain_error("matrix size does not match vector");
  return inverse_impl(ms, h, vvars);
}

std::vector<MultiPoly> equations_A(const std::vector<RatMat>& ms, const std::vector<MultiPoly>& p,
                                   const RatVec& h, const std::vector<std::string>& vvars) {
  size_t k = ms.size(), d = h.size();
  if (p.size() != k) throw domain_error("need one inverse polynomial per matrix");
  std::vector<MultiPoly> image(d, MultiPoly(vvars));
  std::map<Expvec, RatVec> alive;
  Expvec a0(k, 0);
  collect_words(ms, 0, a0, h, alive);
  std::vector<std::vector<MultiPoly>> pows(k);
  auto ppow = [&](size_t s, unsigned e) -> const MultiPoly& {
    auto& cache = pows[s];
    if (cache.empty()) cache.push_back(MultiPoly::constant(vvars, Rat(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * p[s]);
    return cache[e];
  };
  for (const auto& [alpha, vec] : alive) {
    MultiPoly cp = MultiPoly::constant(vvars, factorial_inv_sign(alpha));
    for (size_t s = 0; s < k; ++s)
      if (alpha[s] > 0) cp = cp * ppow(s, alpha[s]);
    for (size_t i = 0; i < d; ++i)
      if (vec[i] != 0) image[i] = image[i] + cp.scaled(vec[i]);
  }
  std::vector<MultiPoly> eq(d, MultiPoly(vvars));
  for (size_t i = 0; i < d; ++i) eq[i] = MultiPoly::variable(vvars, i) - image[i];
  return eq;
}

std::vector<TwistedBinomial> equations_B(const IntMat& a, size_t k, const std::vector<MultiPoly>& p,
                                         const std::vector<Binomial>& toric) {
  size_t n = a.rows();
  std::vector<std::string> vvars = p.empty() ? v_vars(0) : p[0].vars();
  auto lam_from = [&](const Expvec& beta) {
    MultiPoly lam(vvars);
    for (size_t j = 0; j < n; ++j) {
      if (beta[j] == 0) continue;
      MultiPoly inner(vvars);
      for (size_t s = 0; s < k; ++s)
        if (a.at(j, s) != 0) inner = inner + p[s].scaled(Rat(a.at(j, s)));
      lam = lam + inner.scaled(Rat(beta[j]));
    }
    return lam;
  };
  std::vector<TwistedBinomial> out;
  for (const auto& b : toric) {
    TwistedBinomial tb{b.plus, b.minus, lam_from(b.plus), lam_from(b.minus)};
    out.push_back(std::move(tb));
  }
  return out;
}

SheetPresentation compute_sheet(const MonodromyModel& model, const IntVec& h) {
  SheetPresentation pres;
  pres.n = model.n;
  pres.d = model.d;
  pres.h = h;
  pres.stab = stabilizer_lattice(model, h);
  AdaptedCoordinates ad = adapted_coordinates(model, pres.stab);
  pres.k = ad.k;
  pres.A = ad.A;
  pres.M = ad.M;
  RatVec hr = to_ratvec(h);
  std::vector<std::string> vvars = v_vars(model.d);
  std::vector<RatMat> head(pres.M.begin(), pres.M.begin() + static_cast<std::ptrdiff_t>(pres.k));
  pres.p = inverse_polynomials(head, hr, vvars);
  pres.eqA = equations_A(head, pres.p, hr, vvars);
  for (const auto& e : pres.eqA) pres.eqA_zero.push_back(e.is_zero());
  IntMat ex(model.n, model.n - pres.k);
  for (size_t j = 0; j < model.n; ++j)
    for (size_t i = pres.k; i < model.n; ++i) ex.at(j, i - pres.k) = pres.A.at(j, i);
  pres.toric = toric_ideal_binomials(ex);
  pres.eqB = equations_B(pres.A, pres.k, pres.p, pres.toric);
  return pres;
}

std::optional<IntVec> boundary_contact(const MonodromyModel& model, const IntVec& h) {
  return positive_lattice_point(stabilizer_lattice(model, h));
}

LimitSet limit_set(const MonodromyModel& model, const IntVec& h) {
  LimitSet ls;
  ls.stab = stabilizer_lattice(model, h);
  ls.contact = positive_lattice_point(ls.stab);
  if (!ls.contact) return ls;
  ls.dim = model.n - ls.stab.rank();
  std::vector<std::string> wvars;
  for (size_t j = 0; j < model.n; ++j) wvars.push_back("w" + std::to_string(j + 1));
  std::vector<RatMat> neg;
  for (const auto& m : model.N) neg.push_back(m);
  ls.param = exp_action_poly(neg, to_ratvec(h), wvars);
  return ls;
}

NumericPoint arc_point(const MonodromyModel& model, const IntVec& h, const IntVec& a,
                       const std::vector<std::complex<double>>& w, double t) {
  if (h.size() != model.d) throw domain_error("fiber vector has wrong dimension");
  if (a.size() != model.n || w.size() != model.n) throw domain_error("arc data has wrong dimension");
  if (!(t >= 0.0 && t < 1.0)) throw domain_error("arc parameter must lie in [0, 1)");
  for (const auto& x : a)
    if (x < 1) throw model_error("InvalidRelation");
  RatVec hr = to_ratvec(h);
  RatVec rel(model.d, Rat(0));
  for (size_t j = 0; j < model.n; ++j) {
    RatVec col = model.N[j].apply(hr);
    for (size_t i = 0; i < model.d; ++i) rel[i] += Rat(a[j]) * col[i];
  }
  if (!vec_is_zero(rel)) throw model_error("InvalidRelation");
  const double two_pi = 2.0 * std::numbers::pi;
  NumericPoint pt;
  for (size_t j = 0; j < model.n; ++j) {
    double aj = a[j].get_d();
    std::complex<double> phase = std::exp(std::complex<double>(0, two_pi) * w[j]);
    pt.t.push_back(std::pow(t, aj) * phase);
  }
  std::vector<std::complex<double>> coeff(model.n);
  for (size_t j = 0; j < model.n; ++j) coeff[j] = -w[j];
  pt.v = exp_apply(model.N, coeff, hr);
  return pt;
}

VerifyPointReport verify_point(const SheetPresentation& pres, const NumericPoint& pt, double tol_a,
                               double tol_b) {
  if (pt.t.size() != pres.n || pt.v.size() != pres.d) throw domain_error("point has wrong dimension");
  VerifyPointReport rep;
  for (const auto& eq : pres.eqA) {
    double r = std::abs(eq.eval(pt.v));
    rep.res_a.push_back(r);
    rep.max_res_a = std::max(rep.max_res_a, r);
  }
  const std::complex<double> m2pi_i(0, -2.0 * std::numbers::pi);
  for (const auto& tb : pres.eqB) {
    auto side = [&](const Expvec& beta, const MultiPoly& lam) {
      std::complex<double> prod(1.0, 0.0);
      for (size_t j = 0; j < pres.n; ++j)
        for (unsigned e = 0; e < beta[j]; ++e) prod *= pt.t[j];
      return prod * std::exp(m2pi_i * lam.eval(pt.v));
    };
    double r = std::abs(side(tb.beta_plus, tb.lam_plus) - side(tb.beta_minus, tb.lam_minus));
    rep.res_b.push_back(r);
    rep.max_res_b = std::max(rep.max_res_b, r);
  }
  rep.pass = rep.max_res_a <= tol_a && rep.max_res_b <= tol_b;
  return rep;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<std::complex<double>> sample_base_point(size_t n, std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  std::vector<std::complex<double>> z;
  for (size_t j = 0; j < n; ++j) {
    double re = unit_double(splitmix64(state));
    double im = 0.5 + 2.5 * unit_double(splitmix64(state));
    z.emplace_back(re, im);
  }
  return z;
}

SheetVerifyReport verify_sheet(const MonodromyModel& model, const SheetPresentation& pres,
                               size_t samples, double tol_a, double tol_b, std::uint64_t seed) {
  SheetVerifyReport rep;
  rep.samples = samples;
  for (size_t i = 0; i < samples; ++i) {
    NumericPoint pt = sample_sheet(model, sample_base_point(model.n, seed, i), pres.h);
    VerifyPointReport r = verify_point(pres, pt, tol_a, tol_b);
    rep.max_res_a = std::max(rep.max_res_a, r.max_res_a);
    rep.max_res_b = std::max(rep.max_res_b, r.max_res_b);
  }
  rep.pass = rep.max_res_a <= tol_a && rep.max_res_b <= tol_b;
  return rep;
}

namespace {

void scan_fibers(const MonodromyModel& model, size_t i, IntVec& h, long bound,
                 const std::function<void(const IntVec&)>& visit) {
  if (i == model.d) {
    visit(h);
    return;
  }
  for (long step = 0; step <= 2 * bound; ++step) {
    long hi = (step + 1) / 2 * ((step % 2) ? 1 : -1);
    h[i] = int_from_i64(hi);
    scan_fibers(model, i + 1, h, bound, visit);
  }
  h[i] = 0;
}

}  // namespace

std::vector<IntVec> components_through_point(const MonodromyModel& model,
                                             const std::vector<std::complex<double>>& v, long h_bound,
                                             long orbit_bound, double tol) {
  if (v.size() != model.d) throw domain_error("point has wrong dimension");
  if (h_bound < 0) throw domain_error("fiber bound must be nonnegative");
  double count = std::pow(2.0 * static_cast<double>(h_bound) + 1.0, static_cast<double>(model.d));
  if (count > 2e6) throw domain_error("fiber bound too large for exhaustive scan");
  std::vector<std::string> vvars = v_vars(model.d);
  std::vector<IntVec> reps;
  IntVec h(model.d, Int(0));
  scan_fibers(model, 0, h, h_bound, [&](const IntVec& cand) {
    LatticeBasis stab = stabilizer_lattice(model, cand);
    if (!positive_lattice_point(stab)) return;
    AdaptedCoordinates ad = adapted_coordinates(model, stab);
    RatVec hr = to_ratvec(cand);
    bool member = false;
    if (ad.k == 0) {
      double err = 0.0;
      for (size_t i = 0; i < model.d; ++i)
        err = std::max(err, std::abs(v[i] - rat_to_double(hr[i])));
      member = err <= tol;
    } else {
      std::vector<RatMat> head(ad.M.begin(), ad.M.begin() + static_cast<std::ptrdiff_t>(ad.k));
      std::vector<MultiPoly> p = inverse_polynomials(head, hr, vvars);
      std::vector<std::complex<double>> coeff;
      for (const auto& ps : p) coeff.push_back(-ps.eval(v));
      std::vector<std::complex<double>> vhat = exp_apply(head, coeff, hr);
      double err = 0.0;
      for (size_t i = 0; i < model.d; ++i) err = std::max(err, std::abs(v[i] - vhat[i]));
      member = err <= tol;
    }
    if (!member) return;
    for (const auto& rep : reps)
      if (orbit_equal(model, rep, cand, orbit_bound).equal) return;
    reps.push_back(cand);
  });
  return reps;
}

}  // namespace canext
