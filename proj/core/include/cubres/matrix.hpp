#pragma once

#include <initializer_list>
#include <vector>

#include "cubres/rational.hpp"

namespace cubres {

// Dense matrix over Q.  Matrices act on column vectors, so a map V -> W with
// dim V = n and dim W = m is an m x n matrix.  Sizes in this project are small
// (hundreds at most); dense Gaussian elimination is exact and fast enough.
class MatQ {
 public:
  MatQ() = default;
  MatQ(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static MatQ identity(int n);
  static MatQ zero(int rows, int cols) { return MatQ(rows, cols); }
  static MatQ from_rows(std::initializer_list<std::initializer_list<Rat>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  bool is_zero() const;
  MatQ transpose() const;
  MatQ operator*(const MatQ& o) const;
  MatQ operator+(const MatQ& o) const;
  MatQ operator-() const;
  bool operator==(const MatQ& o) const = default;

  MatQ col(int c) const;
  // Stacks columns side by side / rows on top of each other.
  static MatQ hcat(const MatQ& a, const MatQ& b);
  static MatQ vcat(const MatQ& a, const MatQ& b);
  // Block-diagonal sum.
  static MatQ dsum(const MatQ& a, const MatQ& b);
  // Kronecker product (basis ordering: index = i_a * cols_b + i_b).
  static MatQ kron(const MatQ& a, const MatQ& b);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

int rank(const MatQ& m);

// Basis of the null space, returned as columns.
MatQ kernel_basis(const MatQ& m);

// Basis of the column space (a subset of the original columns).
MatQ image_basis(const MatQ& m);

// Basis (as columns) of { x : m*x lies in the column span of w }.
MatQ preimage_basis(const MatQ& m, const MatQ& w);

// Solves m*x = b; returns false if inconsistent.
bool solve(const MatQ& m, const MatQ& b, MatQ& x);

// A subspace of Q^n in canonical form (reduced row-echelon basis, stored as
// rows).  Canonical form makes equality and printing deterministic.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient) {}

  // Span of the columns of m.
  static Subspace col_span(const MatQ& m);
  static Subspace full(int ambient);
  static Subspace zero(int ambient) { return Subspace(ambient); }

  int ambient() const { return ambient_; }
  int dim() const { return basis_rre_.rows(); }
  // Basis vectors as columns of an ambient x dim matrix.
  MatQ basis_cols() const {
    if (basis_rre_.rows() == 0) return MatQ(ambient_, 0);
    return basis_rre_.transpose();
  }

  bool contains(const Subspace& o) const;
  bool contains_vec(const MatQ& v) const;
  bool operator==(const Subspace& o) const = default;

  friend Subspace operator+(const Subspace& a, const Subspace& b);
  friend Subspace operator&(const Subspace& a, const Subspace& b);

 private:
  int ambient_ = 0;
  MatQ basis_rre_;  // dim x ambient, reduced row-echelon, no zero rows
};

// dim (a+b)/b  ==  dim a - dim(a & b), for subspaces of the same ambient.
int quotient_dim(const Subspace& a, const Subspace& b);

}  // namespace cubres
