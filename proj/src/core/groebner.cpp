#include "core/groebner.hpp"

#include <algorithm>

#include "core/lattice.hpp"

namespace canext {

namespace {

bool divides(const Expvec& a, const Expvec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Expvec exp_sub(const Expvec& a, const Expvec& b) {
  Expvec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Expvec exp_lcm(const Expvec& a, const Expvec& b) {
  Expvec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

bool coprime(const Expvec& a, const Expvec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

}  // namespace

MultiPoly normal_form(const MultiPoly& p, const std::vector<MultiPoly>& basis, const MonomialOrder& ord) {
  MultiPoly rem(p.vars());
  MultiPoly work = p;
  std::vector<std::pair<Expvec, Rat>> lts;
  for (const auto& b : basis) lts.push_back(b.leading_term(ord));
  while (!work.is_zero()) {
    auto [le, lc] = work.leading_term(ord);
    bool reduced = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      if (!divides(lts[i].first, le)) continue;
      Rat f = lc / lts[i].second;
      MultiPoly mono = MultiPoly::monomial(p.vars(), f, exp_sub(le, lts[i].first));
      work = work - mono * basis[i];
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(le, lc);
      work.add_term(le, -lc);
    }
  }
  return rem;
}

std::vector<MultiPoly> buchberger(std::vector<MultiPoly> gens, const MonomialOrder& ord) {
  std::vector<MultiPoly> g;
  for (auto& p : gens) {
    if (p.is_zero()) continue;
    Rat lc = p.leading_term(ord).second;
    g.push_back(p.scaled(Rat(1) / lc));
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = i + 1; j < g.size(); ++j) pairs.emplace_back(i, j);
  size_t next = 0;
  while (next < pairs.size()) {
    auto [i, j] = pairs[next++];
    Expvec li = g[i].leading_term(ord).first;
    Expvec lj = g[j].leading_term(ord).first;
    if (coprime(li, lj)) continue;
    Expvec l = exp_lcm(li, lj);
    MultiPoly s = MultiPoly::monomial(g[i].vars(), Rat(1), exp_sub(l, li)) * g[i] -
                  MultiPoly::monomial(g[j].vars(), Rat(1), exp_sub(l, lj)) * g[j];
    MultiPoly r = normal_form(s, g, ord);
    if (r.is_zero()) continue;
    Rat lc = r.leading_term(ord).second;
    g.push_back(r.scaled(Rat(1) / lc));
    for (size_t t = 0; t + 1 < g.size(); ++t) pairs.emplace_back(t, g.size() - 1);
  }
  // minimal: drop any element whose leading term another leading term divides
  std::vector<MultiPoly> minimal;
  for (size_t i = 0; i < g.size(); ++i) {
    Expvec li = g[i].leading_term(ord).first;
    bool redundant = false;
    for (size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      Expvec lj = g[j].leading_term(ord).first;
      if (divides(lj, li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  // reduced: every element in normal form with respect to the others
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < minimal.size(); ++i) {
      std::vector<MultiPoly> others;
      for (size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      MultiPoly r = normal_form(minimal[i], others, ord);
      if (r.is_zero()) {
        minimal.erase(minimal.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      Rat lc = r.leading_term(ord).second;
      r = r.scaled(Rat(1) / lc);
      if (r != minimal[i]) {
        minimal[i] = r;
        changed = true;
      }
    }
  }
  std::sort(minimal.begin(), minimal.end(), [&](const MultiPoly& a, const MultiPoly& b) {
    return ord.less(b.leading_term(ord).first, a.leading_term(ord).first);
  });
  return minimal;
}

MultiPoly binomial_to_poly(const Binomial& b, const std::vector<std::string>& vars) {
  MultiPoly p(vars);
  p.add_term(b.plus, Rat(1));
  p.add_term(b.minus, Rat(-1));
  return p;
}

std::vector<Binomial> toric_ideal_binomials(const IntMat& exponents) {
  size_t n = exponents.rows(), m = exponents.cols();
  std::vector<std::string> xvars;
  for (size_t j = 0; j < n; ++j) xvars.push_back("x" + std::to_string(j + 1));
  std::vector<Binomial> out;
  if (n == 0) return out;
  if (m == 0) {
    // image is the single point (1, ..., 1)
    for (size_t j = 0; j < n; ++j) {
      Binomial b;
      b.plus.assign(n, 0);
      b.minus.assign(n, 0);
      b.plus[j] = 1;
      out.push_back(std::move(b));
    }
    return out;
  }
  LatticeBasis rel = kernel_lattice(RatMat(exponents.transpose()));
  if (rel.rank() == 0) return out;  // dominant map, no relations
  // lattice ideal generators x^{c+} - x^{c-}, then saturate by x1*...*xn
  // using an auxiliary inverse variable t: eliminate t from the ideal
  // generated by the lifts and t*x1*...*xn - 1.
  std::vector<std::string> tvars = {"t"};
  tvars.insert(tvars.end(), xvars.begin(), xvars.end());
  std::vector<MultiPoly> gens;
  for (const auto& c : rel.basis) {
    Expvec plus(n + 1, 0), minus(n + 1, 0);
    for (size_t j = 0; j < n; ++j) {
      if (c[j] > 0)
        plus[j + 1] = static_cast<unsigned>(c[j].get_ui());
      else if (c[j] < 0)
        minus[j + 1] = static_cast<unsigned>(Int(-c[j]).get_ui());
    }
    MultiPoly p(tvars);
    p.add_term(plus, Rat(1));
    p.add_term(minus, Rat(-1));
    gens.push_back(std::move(p));
  }
  {
    Expvec prod(n + 1, 1);  // t * x1 * ... * xn
    MultiPoly p(tvars);
    p.add_term(prod, Rat(1));
    p.add_term(Expvec(n + 1, 0), Rat(-1));
    gens.push_back(std::move(p));
  }
  std::vector<MultiPoly> gb = buchberger(gens, MonomialOrder::block_elim(1));
  std::vector<MultiPoly> eliminated;
  for (const auto& p : gb) {
    bool uses_t = false;
    for (const auto& [e, c] : p.terms())
      if (e[0] > 0) {
        uses_t = true;
        break;
      }
    if (!uses_t) {
      MultiPoly q(xvars);
      for (const auto& [e, c] : p.terms()) q.add_term(Expvec(e.begin() + 1, e.end()), c);
      eliminated.push_back(std::move(q));
    }
  }
  std::vector<MultiPoly> reduced = buchberger(eliminated, MonomialOrder::grevlex());
  MonomialOrder ord = MonomialOrder::grevlex();
  for (const auto& p : reduced) {
    if (p.terms().size() != 2) throw domain_error("toric basis element is not a binomial");
    auto it = p.terms().begin();
    auto [e1, c1] = *it;
    auto [e2, c2] = *std::next(it);
    Binomial b;
    if (ord.less(e1, e2)) {
      b.plus = e2;
      b.minus = e1;
      if (c2 != 1 || c1 != -1) throw domain_error("toric basis element is not a difference of monomials");
    } else {
      b.plus = e1;
      b.minus = e2;
      if (c1 != 1 || c2 != -1) throw domain_error("toric basis element is not a difference of monomials");
    }
    for (size_t j = 0; j < n; ++j)
      if (b.plus[j] > 0 && b.minus[j] > 0) throw domain_error("toric binomial is divisible by a variable");
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace canext
