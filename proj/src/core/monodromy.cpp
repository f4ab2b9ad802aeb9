#include "core/monodromy.hpp"

#include <cmath>
#include <numbers>

namespace canext {

RatMat log_unipotent(const IntMat& t) {
  if (t.rows() != t.cols()) throw model_error("DimensionMismatch");
  size_t d = t.rows();
  IntMat k = IntMat::identity(d) - t;
  // unipotence is the caller's contract; guard anyway
  RatMat n(d, d);
  RatMat kp = RatMat(k);
  for (size_t m = 1; m <= d; ++m) {
    if (kp.is_zero()) return n;
    n = n + kp.scaled(make_rat(Int(1), Int(m)));
    kp = kp * RatMat(k);
  }
  if (!kp.is_zero()) throw model_error("NotUnipotent");
  return n;
}

RatMat exp_nilpotent(const RatMat& m) {
  if (m.rows() != m.cols()) throw model_error("DimensionMismatch");
  size_t d = m.rows();
  RatMat acc = RatMat::identity(d);
  RatMat term = RatMat::identity(d);
  Int fact(1);
  for (size_t i = 1; i <= d; ++i) {
    term = term * m;
    if (term.is_zero()) return acc;
    fact *= Int(i);
    acc = acc + term.scaled(make_rat(Int(1), fact));
  }
  throw model_error("NotNilpotent");
}

namespace {

void check_common(const MonodromyModel& model) {
  for (size_t i = 0; i < model.n; ++i)
    for (size_t j = i + 1; j < model.n; ++j)
      if (model.N[i] * model.N[j] != model.N[j] * model.N[i])
        throw model_error("NotCommuting(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
}

}  // namespace

MonodromyModel validate_model(std::vector<IntMat> t) {
  MonodromyModel model;
  model.n = t.size();
  if (model.n == 0) throw model_error("DimensionMismatch");
  model.d = t[0].rows();
  for (const auto& m : t)
    if (m.rows() != model.d || m.cols() != model.d) throw model_error("DimensionMismatch");
  for (size_t j = 0; j < model.n; ++j) {
    IntMat k = IntMat::identity(model.d) - t[j];
    IntMat kp = k;
    for (size_t m = 1; m < model.d && !kp.is_zero(); ++m) kp = kp * k;
    if (!kp.is_zero()) throw model_error("NotUnipotent(" + std::to_string(j + 1) + ")");
  }
  for (size_t i = 0; i < model.n; ++i)
    for (size_t j = i + 1; j < model.n; ++j)
      if (t[i] * t[j] != t[j] * t[i])
        throw model_error("NotCommuting(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  model.T = std::move(t);
  for (const auto& m : model.T) model.N.push_back(log_unipotent(m));
  check_common(model);
  return model;
}

MonodromyModel model_from_logs(std::vector<RatMat> n) {
  MonodromyModel model;
  model.n = n.size();
  if (model.n == 0) throw model_error("DimensionMismatch");
  model.d = n[0].rows();
  for (const auto& m : n)
    if (m.rows() != model.d || m.cols() != model.d) throw model_error("DimensionMismatch");
  model.N = std::move(n);
  check_common(model);
  for (size_t j = 0; j < model.n; ++j) {
    RatMat t = exp_nilpotent(model.N[j].scaled(Rat(-1)));
    if (!t.is_integral()) throw model_error("NotIntegral(" + std::to_string(j + 1) + ")");
    model.T.push_back(t.to_int());
  }
  return model;
}

std::vector<MultiPoly> exp_action_poly(const std::vector<RatMat>& ms, const RatVec& h,
                                       const std::vector<std::string>& wvars) {
  size_t k = ms.size(), d = h.size();
  if (wvars.size() != k) throw domain_error("need one variable per matrix");
  for (const auto& m : ms)
    if (m.rows() != d || m.cols() != d) throw domain_error("matrix size does not match vector");
  std::vector<MultiPoly> out(d, MultiPoly(wvars));
  // walk multi-indices alpha with M^alpha h != 0; applications in
  // nondecreasing matrix index order reach each alpha exactly once
  struct Walker {
    const std::vector<RatMat>& ms;
    std::vector<MultiPoly>& out;
    size_t d;
    void go(size_t j0, Expvec& alpha, const RatVec& vec, const Rat& coeff) {
      for (size_t i = 0; i < d; ++i)
        if (vec[i] != 0) out[i].add_term(alpha, coeff * vec[i]);
      for (size_t j = j0; j < ms.size(); ++j) {
        RatVec next = ms[j].apply(vec);
        bool zero = true;
        for (const auto& x : next)
          if (x != 0) {
            zero = false;
            break;
          }
        if (zero) continue;
        alpha[j] += 1;
        // coefficient (-1)^{|alpha|} / alpha!: adding one application of j
        // multiplies by -1/alpha[j]
        go(j, alpha, next, coeff * make_rat(Int(-1), Int(alpha[j])));
        alpha[j] -= 1;
      }
    }
  };
  Expvec alpha(k, 0);
  Walker w{ms, out, d};
  w.go(0, alpha, h, Rat(1));
  return out;
}

NumericPoint sample_sheet(const MonodromyModel& model, const std::vector<std::complex<double>>& z,
                          const IntVec& h) {
  if (z.size() != model.n) throw domain_error("base point has wrong dimension");
  if (h.size() != model.d) throw domain_error("fiber vector has wrong dimension");
  for (const auto& zj : z)
    if (!(zj.imag() > 0)) throw domain_error("base point must have positive imaginary part");
  const double two_pi = 2.0 * std::numbers::pi;
  NumericPoint pt;
  for (const auto& zj : z) pt.t.push_back(std::exp(std::complex<double>(0, two_pi) * zj));
  size_t d = model.d;
  std::vector<std::vector<std::complex<double>>> x(d, std::vector<std::complex<double>>(d, 0.0));
  for (size_t j = 0; j < model.n; ++j)
    for (size_t r = 0; r < d; ++r)
      for (size_t c = 0; c < d; ++c) x[r][c] -= z[j] * rat_to_double(model.N[j].at(r, c));
  std::vector<std::complex<double>> vec(d), acc(d);
  for (size_t i = 0; i < d; ++i) {
    vec[i] = std::complex<double>(h[i].get_d(), 0.0);
    acc[i] = vec[i];
  }
  // x is nilpotent (commuting nilpotent summands), so d terms suffice
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
  pt.v = acc;
  return pt;
}

namespace {

bool scan_orbit(const MonodromyModel& model, const std::vector<std::vector<IntMat>>& powers,
                size_t j, const IntVec& cur, const IntVec& target, long bound,
                std::vector<long>& a) {
  if (j == model.n) return cur == target;
  for (long step = 0; step <= 2 * bound; ++step) {
    long aj = (step + 1) / 2 * ((step % 2) ? 1 : -1);  // 0, 1, -1, 2, -2, ...
    a[j] = aj;
    const IntMat& m = powers[j][static_cast<size_t>(aj + bound)];
    if (scan_orbit(model, powers, j + 1, m.apply(cur), target, bound, a)) return true;
  }
  a[j] = 0;
  return false;
}

}  // namespace

OrbitResult orbit_equal(const MonodromyModel& model, const IntVec& h0, const IntVec& h1, long bound) {
  if (h0.size() != model.d || h1.size() != model.d) throw domain_error("fiber vector has wrong dimension");
  if (bound < 0) throw domain_error("orbit bound must be nonnegative");
  std::vector<std::vector<IntMat>> powers(model.n);
  for (size_t j = 0; j < model.n; ++j) {
    IntMat inv = inverse_unimodular(model.T[j]);
    std::vector<IntMat> p(static_cast<size_t>(2 * bound + 1), IntMat::identity(model.d));
    for (long e = 1; e <= bound; ++e) {
      p[static_cast<size_t>(bound + e)] = p[static_cast<size_t>(bound + e - 1)] * model.T[j];
      p[static_cast<size_t>(bound - e)] = p[static_cast<size_t>(bound - e + 1)] * inv;
    }
    powers[j] = std::move(p);
  }
  OrbitResult res;
  std::vector<long> a(model.n, 0);
  if (scan_orbit(model, powers, 0, h0, h1, bound, a)) {
    res.equal = true;
    res.witness = a;
  }
  return res;
}

}  // namespace canext
