#include "core/matrix.hpp"

namespace canext {

IntMat IntMat::identity(size_t n) {
  IntMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMat::is_zero() const {
  for (const auto& x : e_)
    if (x != 0) return false;
  return true;
}

IntMat IntMat::transpose() const {
  IntMat t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols_ != o.rows_) throw domain_error("matrix product shape mismatch");
  IntMat r(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix sum shape mismatch");
  IntMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix difference shape mismatch");
  IntMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

IntVec IntMat::apply(const IntVec& v) const {
  if (v.size() != cols_) throw domain_error("matrix apply shape mismatch");
  IntVec r(rows_, Int(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

void IntMat::swap_rows(size_t i, size_t j) {
  if (i == j) return;
  for (size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::negate_row(size_t i) {
  for (size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMat::addmul_row(size_t i, size_t j, const Int& q) {
  if (q == 0) return;
  for (size_t c = 0; c < cols_; ++c) at(i, c) -= q * at(j, c);
}

void IntMat::swap_cols(size_t i, size_t j) {
  if (i == j) return;
  for (size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::negate_col(size_t i) {
  for (size_t r = 0; r < rows_; ++r) at(r, i) = -at(r, i);
}

void IntMat::addmul_col(size_t i, size_t j, const Int& q) {
  if (q == 0) return;
  for (size_t r = 0; r < rows_; ++r) at(r, i) -= q * at(r, j);
}

Int IntMat::det() const {
  if (rows_ != cols_) throw domain_error("determinant of non-square matrix");
  size_t n = rows_;
  if (n == 0) return Int(1);
  IntMat a(*this);
  Int sign(1), prev(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return Int(0);
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        // Bareiss: division is exact
        a.at(i, j) = t / prev;
      }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

RatMat::RatMat(const IntMat& m) : rows_(m.rows()), cols_(m.cols()), e_(rows_ * cols_, Rat(0)) {
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) at(i, j) = Rat(m.at(i, j));
}

RatMat RatMat::identity(size_t n) {
  RatMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool RatMat::is_zero() const {
  for (const auto& x : e_)
    if (x != 0) return false;
  return true;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw domain_error("matrix product shape mismatch");
  RatMat r(rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Rat& a = at(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix sum shape mismatch");
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw domain_error("matrix difference shape mismatch");
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

RatMat RatMat::scaled(const Rat& c) const {
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
  return r;
}

RatVec RatMat::apply(const RatVec& v) const {
  if (v.size() != cols_) throw domain_error("matrix apply shape mismatch");
  RatVec r(rows_, Rat(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

size_t RatMat::rank() const {
  RatMat a(*this);
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < rows_; ++c) {
    size_t p = r;
    while (p < rows_ && a.at(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (size_t j = c; j < cols_; ++j) std::swap(a.at(r, j), a.at(p, j));
    for (size_t i = r + 1; i < rows_; ++i) {
      if (a.at(i, c) == 0) continue;
      Rat f = a.at(i, c) / a.at(r, c);
      for (size_t j = c; j < cols_; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    ++r;
  }
  return r;
}

bool RatMat::is_integral() const {
  for (const auto& x : e_)
    if (x.get_den() != 1) return false;
  return true;
}

IntMat RatMat::to_int() const {
  if (!is_integral()) throw domain_error("matrix has non-integer entries");
  IntMat m(rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).get_num();
  return m;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& rhs) {
  if (rhs.size() != m.rows()) throw domain_error("solve shape mismatch");
  size_t rows = m.rows(), cols = m.cols();
  RatMat a(rows, cols + 1);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) a.at(i, j) = m.at(i, j);
    a.at(i, cols) = rhs[i];
  }
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a.at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (size_t j = 0; j <= cols; ++j) std::swap(a.at(r, j), a.at(p, j));
    Rat inv = Rat(1) / a.at(r, c);
    for (size_t j = c; j <= cols; ++j) a.at(r, j) *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      Rat f = a.at(i, c);
      for (size_t j = c; j <= cols; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (a.at(i, cols) != 0) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a.at(i, cols);
  return x;
}

IntMat inverse_unimodular(const IntMat& m) {
  if (m.rows() != m.cols()) throw domain_error("inverse of non-square matrix");
  size_t n = m.rows();
  RatMat a(m);
  RatMat inv = RatMat::identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a.at(p, c) == 0) ++p;
    if (p == n) throw domain_error("matrix is singular");
    if (p != c)
      for (size_t j = 0; j < n; ++j) {
        std::swap(a.at(c, j), a.at(p, j));
        std::swap(inv.at(c, j), inv.at(p, j));
      }
    Rat s = Rat(1) / a.at(c, c);
    for (size_t j = 0; j < n; ++j) {
      a.at(c, j) *= s;
      inv.at(c, j) *= s;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a.at(i, c) == 0) continue;
      Rat f = a.at(i, c);
      for (size_t j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(c, j);
        inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv.to_int();
}

}  // namespace canext
