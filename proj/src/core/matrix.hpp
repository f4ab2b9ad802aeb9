#pragma once

#include <cstddef>
#include <optional>

#include "core/scalar.hpp"

namespace canext {

// Dense row-major matrices over Z and Q.  Sizes here are desk scale; no
// attempt at sparsity.

class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}

  static IntMat identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Int& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Int& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  bool is_zero() const;
  IntMat transpose() const;
  IntMat operator*(const IntMat& o) const;
  IntMat operator+(const IntMat& o) const;
  IntMat operator-(const IntMat& o) const;
  IntVec apply(const IntVec& v) const;

  void swap_rows(size_t i, size_t j);
  void negate_row(size_t i);
  // row i -= q * row j
  void addmul_row(size_t i, size_t j, const Int& q);
  void swap_cols(size_t i, size_t j);
  void negate_col(size_t i);
  void addmul_col(size_t i, size_t j, const Int& q);

  Int det() const;  // Bareiss fraction-free elimination

 private:
  size_t rows_, cols_;
  std::vector<Int> e_;
};

class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}
  explicit RatMat(const IntMat& m);

  static RatMat identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rat& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Rat& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const RatMat& o) const { return !(*this == o); }

  bool is_zero() const;
  RatMat transpose() const;
  RatMat operator*(const RatMat& o) const;
  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat scaled(const Rat& c) const;
  RatVec apply(const RatVec& v) const;

  size_t rank() const;

  // All entries integral?
  bool is_integral() const;
  IntMat to_int() const;  // throws domain_error if not integral

 private:
  size_t rows_, cols_;
  std::vector<Rat> e_;
};

// Solve m * x = rhs over Q; empty optional if inconsistent.  When the
// solution space is positive dimensional the free variables are set to 0,
// so the result is deterministic.
std::optional<RatVec> solve(const RatMat& m, const RatVec& rhs);

// Exact inverse of a square integer matrix with det = +-1.
IntMat inverse_unimodular(const IntMat& m);

}  // namespace canext
