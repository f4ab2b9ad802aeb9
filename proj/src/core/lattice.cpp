#include "core/lattice.hpp"

#include <algorithm>

namespace canext {

namespace {

int cmp_abs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

}  // namespace

HnfResult hnf(const IntMat& m) {
  size_t rows = m.rows(), cols = m.cols();
  HnfResult res{m, IntMat::identity(rows)};
  IntMat& h = res.h;
  IntMat& u = res.u;
  size_t pr = 0;
  for (size_t c = 0; c < cols && pr < rows; ++c) {
    // gcd elimination below the pivot row
    while (true) {
      size_t best = rows;
      for (size_t r = pr; r < rows; ++r) {
        if (h.at(r, c) == 0) continue;
        if (best == rows || cmp_abs(h.at(r, c), h.at(best, c)) < 0) best = r;
      }
      if (best == rows) break;
      h.swap_rows(pr, best);
      u.swap_rows(pr, best);
      bool cleared = true;
      for (size_t r = pr + 1; r < rows; ++r) {
        if (h.at(r, c) == 0) continue;
        Int q = h.at(r, c) / h.at(pr, c);
        h.addmul_row(r, pr, q);
        u.addmul_row(r, pr, q);
        if (h.at(r, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h.at(pr, c) == 0) continue;
    if (h.at(pr, c) < 0) {
      h.negate_row(pr);
      u.negate_row(pr);
    }
    for (size_t r = 0; r < pr; ++r) {
      Int q = fdiv_q(h.at(r, c), h.at(pr, c));
      h.addmul_row(r, pr, q);
      u.addmul_row(r, pr, q);
    }
    ++pr;
  }
  return res;
}

SnfResult snf(const IntMat& m) {
  size_t rows = m.rows(), cols = m.cols();
  SnfResult res{m, IntMat::identity(rows), IntMat::identity(cols)};
  IntMat& s = res.s;
  IntMat& u = res.u;
  IntMat& v = res.v;
  size_t nmin = std::min(rows, cols);
  size_t t = 0;
  while (t < nmin) {
    size_t bi = rows, bj = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (s.at(i, j) == 0) continue;
        if (bi == rows || cmp_abs(s.at(i, j), s.at(bi, bj)) < 0) {
          bi = i;
          bj = j;
        }
      }
    if (bi == rows) break;
    s.swap_rows(t, bi);
    u.swap_rows(t, bi);
    s.swap_cols(t, bj);
    v.swap_cols(t, bj);
    bool again = false;
    for (size_t i = t + 1; i < rows; ++i) {
      if (s.at(i, t) == 0) continue;
      Int q = s.at(i, t) / s.at(t, t);
      s.addmul_row(i, t, q);
      u.addmul_row(i, t, q);
      if (s.at(i, t) != 0) again = true;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (s.at(t, j) == 0) continue;
      Int q = s.at(t, j) / s.at(t, t);
      s.addmul_col(j, t, q);
      v.addmul_col(j, t, q);
      if (s.at(t, j) != 0) again = true;
    }
    if (again) continue;
    // pivot isolated; pull in any entry it does not divide
    bool fixed = false;
    for (size_t i = t + 1; i < rows && !fixed; ++i)
      for (size_t j = t + 1; j < cols && !fixed; ++j)
        if (s.at(i, j) % s.at(t, t) != 0) {
          s.addmul_row(t, i, Int(-1));
          u.addmul_row(t, i, Int(-1));
          fixed = true;
        }
    if (fixed) continue;
    if (s.at(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
    ++t;
  }
  return res;
}

IntMat LatticeBasis::as_rows() const {
  IntMat m(basis.size(), ambient);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < ambient; ++j) m.at(i, j) = basis[i][j];
  return m;
}

LatticeBasis lattice_from_rows(const IntMat& rows) {
  IntMat h = hnf(rows).h;
  LatticeBasis lat;
  lat.ambient = rows.cols();
  for (size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (size_t j = 0; j < h.cols(); ++j)
      if (h.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) break;  // zero rows are at the bottom
    IntVec v(h.cols());
    for (size_t j = 0; j < h.cols(); ++j) v[j] = h.at(i, j);
    lat.basis.push_back(std::move(v));
  }
  return lat;
}

bool lattice_contains(const LatticeBasis& lat, const IntVec& v) {
  if (v.size() != lat.ambient) throw domain_error("vector has wrong dimension");
  IntVec w = v;
  for (const auto& row : lat.basis) {
    size_t c = 0;
    while (c < lat.ambient && row[c] == 0) ++c;
    if (c == lat.ambient) continue;
    if (w[c] % row[c] != 0) return false;
    Int q = w[c] / row[c];
    for (size_t j = 0; j < lat.ambient; ++j) w[j] -= q * row[j];
  }
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

LatticeBasis kernel_lattice(const RatMat& m) {
  size_t rows = m.rows(), cols = m.cols();
  IntMat mi(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    Int l(1);
    for (size_t j = 0; j < cols; ++j) l = lcm_int(l, m.at(i, j).get_den());
    for (size_t j = 0; j < cols; ++j) {
      Rat x = m.at(i, j) * Rat(l);
      mi.at(i, j) = x.get_num();
    }
  }
  SnfResult sn = snf(mi);
  size_t r = 0;
  while (r < std::min(rows, cols) && sn.s.at(r, r) != 0) ++r;
  IntMat gens(cols - r, cols);
  for (size_t i = r; i < cols; ++i)
    for (size_t j = 0; j < cols; ++j) gens.at(i - r, j) = sn.v.at(j, i);
  return lattice_from_rows(gens);
}

bool lattice_is_saturated(const LatticeBasis& lat) {
  if (lat.rank() == 0) return true;
  SnfResult sn = snf(lat.as_rows());
  for (size_t i = 0; i < lat.rank(); ++i)
    if (sn.s.at(i, i) != 1) return false;
  return true;
}

IntMat unimodular_completion(const LatticeBasis& lat) {
  size_t n = lat.ambient;
  LatticeBasis canon = lattice_from_rows(lat.as_rows());
  if (canon.rank() != lat.rank()) throw domain_error("lattice basis is not independent");
  if (!lattice_is_saturated(canon)) throw domain_error("lattice is not saturated");
  size_t m = canon.rank();
  if (m == 0) return IntMat::identity(n);
  size_t k = n - m;

  IntMat bt = canon.as_rows();  // m x n, row i = i-th basis vector = column i of B'

  // Top block: HNF basis of {x : bt * x = 0}.
  LatticeBasis ker = kernel_lattice(RatMat(bt));
  // Bottom block: rows of a particular integer solution of bt * X = I_m.
  SnfResult sn = snf(bt);
  for (size_t i = 0; i < m; ++i)
    if (sn.s.at(i, i) != 1) throw domain_error("lattice is not saturated");
  // X = v * [u; 0], so bt * X = u^-1 [I|0] [u; 0] = I.
  IntMat lift(n, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) lift.at(i, j) = sn.u.at(i, j);
  IntMat x = sn.v * lift;

  IntMat w(n, n);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < n; ++j) w.at(i, j) = ker.basis[i][j];
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) w.at(k + i, j) = x.at(j, i);
  // Reduce each bottom row modulo the kernel lattice at its pivot columns;
  // this makes the bottom block a canonical coset representative.
  for (size_t i = k; i < n; ++i)
    for (size_t r = 0; r < k; ++r) {
      size_t c = 0;
      while (c < n && ker.basis[r][c] == 0) ++c;
      Int q = fdiv_q(w.at(i, c), ker.basis[r][c]);
      for (size_t j = 0; j < n; ++j) w.at(i, j) -= q * ker.basis[r][j];
    }
  Int dw = w.det();
  if (dw == -1) {
    if (k == 0) throw domain_error("completion determinant fix impossible");
    w.negate_row(0);
    dw = 1;
  }
  if (dw != 1) throw domain_error("completion is not unimodular");
  IntMat a = inverse_unimodular(w);
  // Last m columns of A are exactly the canonical basis.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      if (a.at(i, k + j) != bt.at(j, i)) throw domain_error("completion postcondition failed");
  return a;
}

namespace {

struct Ineq {
  RatVec c;  // c . q >= rhs
  Rat rhs;
};

}  // namespace

std::optional<IntVec> positive_lattice_point(const LatticeBasis& lat) {
  size_t n = lat.ambient, m = lat.rank();
  if (m == 0) return std::nullopt;
  std::vector<Ineq> cons;
  for (size_t j = 0; j < n; ++j) {
    Ineq q;
    q.c.resize(m);
    for (size_t i = 0; i < m; ++i) q.c[i] = Rat(lat.basis[i][j]);
    q.rhs = 1;
    cons.push_back(std::move(q));
  }
  // Fourier-Motzkin, eliminating q_{m-1}, ..., q_0; keep each stage for
  // back-substitution.
  std::vector<std::vector<Ineq>> stage(m);
  for (size_t e = m; e-- > 0;) {
    stage[e] = cons;
    std::vector<Ineq> next;
    std::vector<const Ineq*> lows, ups;
    for (const auto& con : cons) {
      if (con.c[e] > 0)
        lows.push_back(&con);
      else if (con.c[e] < 0)
        ups.push_back(&con);
      else
        next.push_back(con);
    }
    for (const Ineq* lo : lows)
      for (const Ineq* up : ups) {
        Ineq comb;
        comb.c.assign(m, Rat(0));
        Rat a = -up->c[e];  // > 0
        Rat b = lo->c[e];   // > 0
        for (size_t j = 0; j < e; ++j) comb.c[j] = a * lo->c[j] + b * up->c[j];
        comb.rhs = a * lo->rhs + b * up->rhs;
        next.push_back(std::move(comb));
      }
    cons = std::move(next);
  }
  for (const auto& con : cons)
    if (con.rhs > 0) return std::nullopt;
  RatVec q(m, Rat(0));
  for (size_t e = 0; e < m; ++e) {
    std::optional<Rat> lo, hi;
    for (const auto& con : stage[e]) {
      if (con.c[e] == 0) continue;
      Rat bound = con.rhs;
      for (size_t j = 0; j < e; ++j) bound -= con.c[j] * q[j];
      bound /= con.c[e];
      if (con.c[e] > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo)
      q[e] = *lo;
    else if (hi)
      q[e] = *hi;
  }
  Int scale(1);
  for (const auto& x : q) scale = lcm_int(scale, x.get_den());
  IntVec point(n, Int(0));
  for (size_t i = 0; i < m; ++i) {
    Rat a = q[i] * Rat(scale);
    for (size_t j = 0; j < n; ++j) point[j] += a.get_num() * lat.basis[i][j];
  }
  for (const auto& x : point)
    if (x < 1) throw domain_error("positive point postcondition failed");
  return point;
}

}  // namespace canext
