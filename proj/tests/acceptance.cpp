// Acceptance gate: ten end-to-end checks, one [PASS]/[FAIL] line each.
// Exit code = number of failed checks.  Tolerances and time limits are pinned
// here on purpose; loosening them is a behavior change, not a cleanup.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/groebner.hpp"
#include "core/json_io.hpp"
#include "core/sheet.hpp"
#include "corpus.hpp"

using namespace canext;
using corpus::cplx;
using corpus::iv;
using corpus::rnd_int;

namespace {

struct check_failure {
  std::string msg;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw check_failure{msg};
}

std::vector<std::string> wvars(size_t k) {
  std::vector<std::string> out;
  for (size_t s = 0; s < k; ++s) out.push_back("w" + std::to_string(s + 1));
  return out;
}

std::vector<MultiPoly> slice_param(const SheetPresentation& pres) {
  RatVec hr;
  for (const auto& x : pres.h) hr.emplace_back(Rat(x));
  std::vector<RatMat> head(pres.M.begin(), pres.M.begin() + static_cast<long>(pres.k));
  return exp_action_poly(head, hr, wvars(pres.k));
}

// unit vector transverse to span{cols}: orthonormalize the span, then take
// the coordinate direction with the largest residual after projection
std::vector<cplx> transverse_direction(std::vector<std::vector<cplx>> span, size_t d) {
  std::vector<std::vector<cplx>> ortho;
  for (auto& v : span) {
    for (const auto& u : ortho) {
      cplx dot(0);
      for (size_t i = 0; i < d; ++i) dot += std::conj(u[i]) * v[i];
      for (size_t i = 0; i < d; ++i) v[i] -= dot * u[i];
    }
    double n2 = 0;
    for (const auto& x : v) n2 += std::norm(x);
    if (n2 > 1e-20) {
      double inv = 1.0 / std::sqrt(n2);
      for (auto& x : v) x *= inv;
      ortho.push_back(v);
    }
  }
  std::vector<cplx> best;
  double best_norm = -1;
  for (size_t i = 0; i < d; ++i) {
    std::vector<cplx> r(d, cplx(0));
    r[i] = 1;
    for (const auto& u : ortho) {
      cplx dot = std::conj(u[i]);  // <u, e_i>
      for (size_t j = 0; j < d; ++j) r[j] -= dot * u[j];
    }
    double n2 = 0;
    for (const auto& x : r) n2 += std::norm(x);
    if (n2 > best_norm) {
      best_norm = n2;
      best = r;
    }
  }
  double inv = 1.0 / std::sqrt(best_norm);
  for (auto& x : best) x *= inv;
  return best;
}

// random contact instance from the block family; h and the forced relation
// come back through the out parameters
MonodromyModel random_contact(std::mt19937_64& eng, IntVec* h, IntVec* a) {
  return corpus::random_rect_model(eng, 3, 4, true, h, a);
}

std::string run_cli(const std::string& args) {
  std::string path = "/tmp/canext_acceptance_out.json";
  std::string cmd = std::string(CANEXT_CLI_PATH) + " " + args + " > " + path + " 2> /dev/null";
  int rc = std::system(cmd.c_str());
  require(rc != -1, "could not spawn the command line tool");
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::remove(path.c_str());
  return ss.str();
}

// ---------------------------------------------------------------- criteria

// exact exp/log roundtrip on random unipotent integer matrices
void c1_roundtrip() {
  std::mt19937_64 eng(20240001);
  for (int it = 0; it < 200; ++it) {
    size_t d = static_cast<size_t>(rnd_int(eng, 2, 6));
    IntMat t = corpus::random_unipotent(eng, d, static_cast<int>(rnd_int(eng, 3, 6)), 3);
    RatMat n = log_unipotent(t);
    RatMat back = exp_nilpotent(n.scaled(Rat(-1)));
    require(back.is_integral(), "exp of the log left the integers");
    require(back.to_int() == t, "exp(log) roundtrip not exact");
    require(log_unipotent(back.to_int()) == n, "log(exp) roundtrip not exact");
  }
}

// stabilizer membership == brute force, under both characterizations
void c2_stabilizer_oracle() {
  std::mt19937_64 eng(20240002);
  for (int it = 0; it < 50; ++it) {
    size_t n = static_cast<size_t>(rnd_int(eng, 1, 3));
    size_t d = static_cast<size_t>(rnd_int(eng, 2, 4));
    MonodromyModel model;
    if (it % 2 == 0 && d >= 4) {
      IntVec hh, aa;
      model = corpus::random_rect_model(eng, n, d, false, &hh, &aa);
    } else {
      model = corpus::random_line_model(eng, n, d);
    }
    IntVec h = corpus::random_h(eng, d, 3);
    auto stab = stabilizer_lattice(model, h);
    std::vector<IntMat> tinv;
    for (const auto& t : model.T) tinv.push_back(inverse_unimodular(t));
    std::vector<long> a(n, -4);
    while (true) {
      IntVec av;
      for (long x : a) av.push_back(Int(x));
      bool member = lattice_contains(stab, av);
      RatVec img(d, Rat(0));
      for (size_t j = 0; j < n; ++j)
        for (size_t r = 0; r < d; ++r)
          for (size_t c = 0; c < d; ++c) img[r] += Rat(av[j]) * model.N[j].at(r, c) * Rat(h[c]);
      bool log_fixes = true;
      for (const auto& x : img)
        if (x != 0) log_fixes = false;
      IntVec moved = h;
      for (size_t j = 0; j < n; ++j) {
        const IntMat& pw = a[j] >= 0 ? model.T[j] : tinv[j];
        for (long s = 0; s < std::labs(a[j]); ++s) moved = pw.apply(moved);
      }
      bool orbit_fixes = moved == h;
      require(log_fixes == member, "log characterization disagrees with the lattice");
      require(orbit_fixes == member, "orbit characterization disagrees with the lattice");
      size_t pos = 0;
      while (pos < n && a[pos] == 4) a[pos++] = -4;
      if (pos == n) break;
      ++a[pos];
    }
  }
}

// the inverse polynomials undo the orbit parametrization, symbolically
void c3_symbolic_identity() {
  for (const auto& inst : corpus::desk_instances()) {
    auto pres = compute_sheet(inst.model, inst.h);
    auto param = slice_param(pres);
    for (size_t s = 0; s < pres.k; ++s)
      require(pres.p[s].substitute(param) == MultiPoly::variable(wvars(pres.k), s),
              inst.name + ": inverse polynomial " + std::to_string(s + 1) + " is not a left inverse");
    for (size_t i = 0; i < inst.model.d; ++i)
      require(pres.eqA[i].substitute(param).is_zero(),
              inst.name + ": closure equation " + std::to_string(i + 1) + " does not vanish");
  }
}

// sampled residuals of both equation families, fixed seed
void c4_residuals() {
  for (const auto& inst : corpus::desk_instances()) {
    auto pres = compute_sheet(inst.model, inst.h);
    auto rep = verify_sheet(inst.model, pres, 100, 1e-12, 1e-9, 2024);
    require(rep.pass, inst.name + ": sampled residuals exceed 1e-12 / 1e-9 (got " +
                          std::to_string(rep.max_res_a) + " / " + std::to_string(rep.max_res_b) + ")");
  }
}

// the worked two-by-two instance, every derived object pinned exactly
void c5_worked_instance() {
  MonodromyModel m = corpus::worked2x2();
  auto pres = compute_sheet(m, iv({0, 1}));
  require(pres.stab.basis == std::vector<IntVec>{iv({1, 1})}, "stabilizer is not Z(1,1)");
  require(pres.k == 1, "slice dimension is not 1");
  require(pres.p.size() == 1 && pres.p[0].to_string() == "-v1", "inverse polynomial is not -v1");
  require(pres.eqA.size() == 2 && pres.eqA[0].is_zero() && pres.eqA[1].to_string() == "v2 - 1",
          "closure equations are not [0, v2 - 1]");
  require(pres.eqB.size() == 1, "expected one twisted binomial");
  const auto& b = pres.eqB[0];
  require(b.beta_plus == Expvec{1, 0} && b.beta_minus == Expvec{0, 1},
          "binomial exponents are not t1 | t2");
  require(b.lam_plus.to_string() == "-v1" && b.lam_minus.is_zero(),
          "twist exponents are not (-v1, 0)");
  auto lim = limit_set(m, iv({0, 1}));
  require(lim.contact.has_value() && *lim.contact == iv({1, 1}), "boundary contact is not (1,1)");
  require(lim.dim == 1, "limit fiber dimension is not 1");
  require(lim.param.size() == 2 && lim.param[0].to_string() == "-w1 + w2" &&
              lim.param[1].to_string() == "1",
          "limit fiber is not the line {(c, 1)}");
}

// arcs converge to their limit and stay on the sheet at every positive t
void c6_arc_convergence() {
  auto check_arc = [](const MonodromyModel& model, const IntVec& h, const IntVec& a,
                      const std::string& tag) {
    auto pres = compute_sheet(model, h);
    std::vector<cplx> w(model.n, cplx(0, 0));
    NumericPoint limit = arc_point(model, h, a, w, 0.0);
    NumericPoint deep = arc_point(model, h, a, w, std::ldexp(1.0, -20));
    double gap = 0;
    for (size_t i = 0; i < deep.t.size(); ++i) gap = std::max(gap, std::abs(deep.t[i] - limit.t[i]));
    for (size_t i = 0; i < deep.v.size(); ++i) gap = std::max(gap, std::abs(deep.v[i] - limit.v[i]));
    require(gap <= 1e-5, tag + ": arc point at depth 20 is " + std::to_string(gap) + " from the limit");
    for (int mm : {1, 5, 10, 20}) {
      NumericPoint pt = arc_point(model, h, a, w, std::ldexp(1.0, -mm));
      require(verify_point(pres, pt, 1e-9, 1e-9).pass,
              tag + ": arc point at depth " + std::to_string(mm) + " fails verification");
    }
  };
  check_arc(corpus::worked2x2(), iv({0, 1}), iv({1, 1}), "worked");
  std::mt19937_64 eng(20240006);
  for (int it = 0; it < 10; ++it) {
    IntVec h, a;
    MonodromyModel model = random_contact(eng, &h, &a);
    auto contact = boundary_contact(model, h);
    require(contact.has_value(), "forced relation did not produce boundary contact");
    check_arc(model, h, *contact, "random " + std::to_string(it + 1));
  }
}

// golden toric ideals, plus substitution and ideal-equality oracles
void c7_toric_goldens() {
  auto ord = MonomialOrder::grevlex();

  IntMat cusp(2, 1);
  cusp.at(0, 0) = 2;
  cusp.at(1, 0) = 3;
  auto cs = toric_ideal_binomials(cusp);
  require(cs.size() == 1 && cs[0].plus == Expvec{3, 0} && cs[0].minus == Expvec{0, 2},
          "monomial curve ideal is not {x1^3 - x2^2}");
  // substitution: x1 = u^2, x2 = u^3 kills the binomial
  std::vector<std::string> uvar = {"u"};
  std::vector<MultiPoly> sub_u = {MultiPoly::monomial(uvar, Rat(1), {2}),
                                  MultiPoly::monomial(uvar, Rat(1), {3})};
  require(binomial_to_poly(cs[0], {"x1", "x2"}).substitute(sub_u).is_zero(),
          "curve binomial does not vanish under substitution");

  IntMat graph(3, 2);
  graph.at(0, 0) = 1;
  graph.at(1, 1) = 1;
  graph.at(2, 0) = 1;
  graph.at(2, 1) = 1;
  auto gs = toric_ideal_binomials(graph);
  require(gs.size() == 1 && gs[0].plus == Expvec{1, 1, 0} && gs[0].minus == Expvec{0, 0, 1},
          "product-graph ideal is not {x1 x2 - x3}");
  std::vector<std::string> x3 = {"x1", "x2", "x3"};
  std::vector<std::string> uv = {"u1", "u2"};
  std::vector<MultiPoly> sub_uv = {MultiPoly::monomial(uv, Rat(1), {1, 0}),
                                   MultiPoly::monomial(uv, Rat(1), {0, 1}),
                                   MultiPoly::monomial(uv, Rat(1), {1, 1})};
  require(binomial_to_poly(gs[0], x3).substitute(sub_uv).is_zero(),
          "graph binomial does not vanish under substitution");
  // ideal equality against the hand generator x3 - x1 x2, both directions
  auto gb_got = buchberger({binomial_to_poly(gs[0], x3)}, ord);
  auto gb_hand = buchberger({MultiPoly::parse(x3, "x3 - x1*x2")}, ord);
  require(normal_form(MultiPoly::parse(x3, "x3 - x1*x2"), gb_got, ord).is_zero(),
          "hand generator is not in the computed ideal");
  require(normal_form(binomial_to_poly(gs[0], x3), gb_hand, ord).is_zero(),
          "computed generator is not in the hand ideal");

  auto pt = toric_ideal_binomials(IntMat(3, 0));
  require(pt.size() == 3, "point ideal should have three generators");
  for (size_t j = 0; j < 3; ++j) {
    Expvec unit(3, 0);
    unit[j] = 1;
    require(pt[j].plus == unit && pt[j].minus == Expvec{0, 0, 0},
            "point ideal generator " + std::to_string(j + 1) + " is not x_j - 1");
  }
}

// limit points verify; points pushed off the limit set do not
void c8_limit_converse() {
  struct Case {
    std::string name;
    MonodromyModel model;
    IntVec h;
  };
  std::vector<Case> cases = {{"worked2x2", corpus::worked2x2(), iv({0, 1})},
                             {"trivial2x2", corpus::trivial2x2(), iv({3, -1})},
                             {"rank2s3x2", corpus::rank2s3x2(), iv({0, 1})},
                             {"ktwo3x3", corpus::ktwo3x3(), iv({0, 0, 1})}};
  std::mt19937_64 seed_eng(20240008);
  for (int it = 0; it < 6; ++it) {
    IntVec h, a;
    MonodromyModel model = random_contact(seed_eng, &h, &a);
    cases.push_back({"random " + std::to_string(it + 1), model, h});
  }
  for (const auto& c : cases) {
    auto lim = limit_set(c.model, c.h);
    require(lim.contact.has_value(), c.name + ": expected boundary contact");
    auto pres = compute_sheet(c.model, c.h);
    size_t n = c.model.n, d = c.model.d;
    std::mt19937_64 eng(20240080 + n + d);
    for (int s = 0; s < 50; ++s) {
      std::vector<cplx> w;
      for (size_t j = 0; j < n; ++j)
        w.emplace_back(rnd_int(eng, -1000, 1000) / 1000.0, rnd_int(eng, -500, 500) / 1000.0);
      NumericPoint pt;
      pt.t.assign(n, cplx(0, 0));
      for (const auto& poly : lim.param) pt.v.push_back(poly.eval(w));
      require(verify_point(pres, pt, 1e-9, 1e-9).pass,
              c.name + ": limit point " + std::to_string(s + 1) + " fails verification");
      // push 0.1 off the limit set, transverse to its tangent directions
      std::vector<std::vector<cplx>> tangent;
      for (size_t j = 0; j < n; ++j) {
        std::vector<cplx> col(d, cplx(0));
        for (size_t r = 0; r < d; ++r)
          for (size_t cc = 0; cc < d; ++cc)
            col[r] += rat_to_double(c.model.N[j].at(r, cc)) * pt.v[cc];
        tangent.push_back(std::move(col));
      }
      auto dir = transverse_direction(tangent, d);
      NumericPoint off = pt;
      for (size_t i = 0; i < d; ++i) off.v[i] += 0.1 * dir[i];
      require(!verify_point(pres, off, 1e-9, 1e-9).pass,
              c.name + ": perturbed point " + std::to_string(s + 1) + " still verifies");
    }
  }
}

// no-contact instances: closure misses the origin fiber, and the twisted
// equations keep every nearby candidate point bounded away from solving them
void c9_no_contact() {
  struct Case {
    std::string name;
    MonodromyModel model;
    IntVec h;
  };
  std::vector<Case> cases = {{"nocontact2x2", corpus::nocontact2x2(), iv({0, 1})},
                             {"deep2x3", corpus::deep2x3(), iv({0, 0, 1})}};
  for (const auto& c : cases) {
    require(!boundary_contact(c.model, c.h).has_value(), c.name + ": unexpected boundary contact");
    auto lim = limit_set(c.model, c.h);
    require(!lim.contact.has_value() && lim.param.empty(), c.name + ": limit set is not empty");
    auto pres = compute_sheet(c.model, c.h);
    std::mt19937_64 eng(20240009);
    for (double mag : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      double min_res = 1e300;
      for (int s = 0; s < 200; ++s) {
        NumericPoint pt;
        for (size_t j = 0; j < c.model.n; ++j) {
          double phase = rnd_int(eng, 0, 999) / 1000.0 * 2.0 * 3.14159265358979323846;
          pt.t.emplace_back(mag * std::cos(phase), mag * std::sin(phase));
        }
        for (size_t i = 0; i < c.model.d; ++i)
          pt.v.emplace_back(rnd_int(eng, -2000, 2000) / 1000.0, rnd_int(eng, -100, 100) / 1000.0);
        auto rep = verify_point(pres, pt, 1e-9, 1e-9);
        min_res = std::min(min_res, rep.max_res_b);
      }
      require(min_res >= 0.5, c.name + ": twisted residual dips to " + std::to_string(min_res) +
                                  " at |t| = " + std::to_string(mag));
    }
  }
}

// the command line tool is byte-deterministic for fixed seeds
void c10_cli_determinism() {
  std::string model = std::string(CANEXT_DATA_DIR) + "/worked2x2.json";
  std::string eq1 = run_cli("-i " + model + " equations --h 0,1");
  std::string eq2 = run_cli("-i " + model + " equations --h 0,1");
  require(!eq1.empty(), "equations produced no output");
  require(eq1 == eq2, "equations output differs between runs");
  std::string v1 = run_cli("-i " + model + " verify --h 0,1 --samples 100 --seed 42");
  std::string v2 = run_cli("-i " + model + " verify --h 0,1 --samples 100 --seed 42");
  require(!v1.empty(), "verify produced no output");
  require(v1 == v2, "verify output differs between runs");
}

struct Criterion {
  int id;
  const char* label;
  double time_limit;  // seconds; 0 = no limit
  std::function<void()> fn;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "exact log/exp roundtrip on 200 random unipotent matrices", 5.0, c1_roundtrip},
      {2, "stabilizer lattice matches brute force on 50 random models", 10.0, c2_stabilizer_oracle},
      {3, "inverse polynomials invert the orbit map symbolically", 10.0, c3_symbolic_identity},
      {4, "sampled sheet residuals below 1e-12 / 1e-9", 10.0, c4_residuals},
      {5, "worked two-by-two instance reproduced exactly", 0.0, c5_worked_instance},
      {6, "arcs converge to their limits and verify along the way", 5.0, c6_arc_convergence},
      {7, "golden toric ideals with substitution oracles", 5.0, c7_toric_goldens},
      {8, "limit points verify, transverse perturbations fail", 10.0, c8_limit_converse},
      {9, "no-contact closures stay away from the origin fiber", 5.0, c9_no_contact},
      {10, "command line output is byte-deterministic", 0.0, c10_cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      c.fn();
    } catch (const check_failure& f) {
      verdict = "FAIL";
      detail = f.msg;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("unexpected error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (verdict == "PASS" && c.time_limit > 0 && secs > c.time_limit) {
      verdict = "FAIL";
      detail = "time limit " + std::to_string(c.time_limit) + "s exceeded";
    }
    if (verdict == "FAIL") ++failures;
    std::printf("[%s] %2d. %s (%.2fs)%s%s\n", verdict.c_str(), c.id, c.label, secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %zu acceptance checks passed\n", criteria.size());
  else
    std::printf("%d acceptance check(s) failed\n", failures);
  return failures;
}
