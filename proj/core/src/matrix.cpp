#include "cubres/matrix.hpp"

#include <stdexcept>

namespace cubres {

MatQ MatQ::identity(int n) {
  MatQ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatQ MatQ::from_rows(std::initializer_list<std::initializer_list<Rat>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  MatQ m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw std::invalid_argument("ragged matrix literal");
    int j = 0;
    for (const auto& v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

bool MatQ::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

MatQ MatQ::transpose() const {
  MatQ t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

MatQ MatQ::operator*(const MatQ& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  MatQ p(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o.at(k, j) != 0) p.at(i, j) += v * o.at(k, j);
    }
  return p;
}

MatQ MatQ::operator+(const MatQ& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  MatQ s(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] + o.a_[i];
  return s;
}

MatQ MatQ::operator-() const {
  MatQ s(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) s.a_[i] = -a_[i];
  return s;
}

MatQ MatQ::col(int c) const {
  MatQ v(rows_, 1);
  for (int i = 0; i < rows_; ++i) v.at(i, 0) = at(i, c);
  return v;
}

MatQ MatQ::hcat(const MatQ& a, const MatQ& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hcat shape mismatch");
  MatQ m(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
  }
  return m;
}

MatQ MatQ::vcat(const MatQ& a, const MatQ& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vcat shape mismatch");
  MatQ m(a.rows_ + b.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, j) = b.at(i, j);
  return m;
}

MatQ MatQ::dsum(const MatQ& a, const MatQ& b) {
  MatQ m(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, a.cols_ + j) = b.at(i, j);
  return m;
}

MatQ MatQ::kron(const MatQ& a, const MatQ& b) {
  MatQ m(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int ia = 0; ia < a.rows_; ++ia)
    for (int ja = 0; ja < a.cols_; ++ja) {
      if (a.at(ia, ja) == 0) continue;
      for (int ib = 0; ib < b.rows_; ++ib)
        for (int jb = 0; jb < b.cols_; ++jb)
          m.at(ia * b.rows_ + ib, ja * b.cols_ + jb) = a.at(ia, ja) * b.at(ib, jb);
    }
  return m;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref_inplace(MatQ& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
    Rat inv = m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) /= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(const MatQ& m) {
  MatQ w = m;
  return static_cast<int>(rref_inplace(w).size());
}

MatQ kernel_basis(const MatQ& m) {
  MatQ w = m;
  std::vector<int> pivots = rref_inplace(w);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  int nullity = m.cols() - static_cast<int>(pivots.size());
  MatQ k(m.cols(), nullity);
  int out = 0;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    k.at(c, out) = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr) k.at(pivots[pr], out) = -w.at(static_cast<int>(pr), c);
    ++out;
  }
  return k;
}

MatQ image_basis(const MatQ& m) {
  MatQ w = m;
  std::vector<int> pivots = rref_inplace(w);
  MatQ b(m.rows(), static_cast<int>(pivots.size()));
  for (size_t j = 0; j < pivots.size(); ++j)
    for (int i = 0; i < m.rows(); ++i) b.at(i, static_cast<int>(j)) = m.at(i, pivots[j]);
  return b;
}

MatQ preimage_basis(const MatQ& m, const MatQ& w) {
  if (m.rows() != w.rows()) throw std::invalid_argument("preimage_basis shape mismatch");
  // x with m*x = w*y for some y: take x-parts of the kernel of [m | -w].
  MatQ stacked = MatQ::hcat(m, -w);
  MatQ k = kernel_basis(stacked);
  MatQ xs(m.cols(), k.cols());
  for (int j = 0; j < k.cols(); ++j)
    for (int i = 0; i < m.cols(); ++i) xs.at(i, j) = k.at(i, j);
  return image_basis(xs);
}

bool solve(const MatQ& m, const MatQ& b, MatQ& x) {
  if (m.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  MatQ aug = MatQ::hcat(m, b);
  std::vector<int> pivots = rref_inplace(aug);
  for (int p : pivots)
    if (p >= m.cols()) return false;
  x = MatQ(m.cols(), b.cols());
  for (size_t pr = 0; pr < pivots.size(); ++pr)
    for (int j = 0; j < b.cols(); ++j) x.at(pivots[pr], j) = aug.at(static_cast<int>(pr), m.cols() + j);
  return true;
}

Subspace Subspace::col_span(const MatQ& m) {
  Subspace s(m.rows());
  MatQ t = m.transpose();
  std::vector<int> pivots = rref_inplace(t);
  MatQ basis(static_cast<int>(pivots.size()), m.rows());
  for (int i = 0; i < basis.rows(); ++i)
    for (int j = 0; j < m.rows(); ++j) basis.at(i, j) = t.at(i, j);
  s.basis_rre_ = basis;
  return s;
}

Subspace Subspace::full(int ambient) { return col_span(MatQ::identity(ambient)); }

bool Subspace::contains_vec(const MatQ& v) const {
  MatQ x;
  return solve(basis_cols(), v, x);
}

bool Subspace::contains(const Subspace& o) const {
  if (ambient_ != o.ambient_) return false;
  for (int j = 0; j < o.dim(); ++j)
    if (!contains_vec(o.basis_cols().col(j))) return false;
  return true;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace sum ambient mismatch");
  return Subspace::col_span(MatQ::hcat(a.basis_cols(), b.basis_cols()));
}

Subspace operator&(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace meet ambient mismatch");
  // Columns of A*x that equal B*y: x-parts of kernel of [A | -B], mapped by A.
  MatQ A = a.basis_cols(), B = b.basis_cols();
  if (A.cols() == 0 || B.cols() == 0) return Subspace::zero(a.ambient());
  MatQ k = kernel_basis(MatQ::hcat(A, -B));
  MatQ xs(A.cols(), k.cols());
  for (int j = 0; j < k.cols(); ++j)
    for (int i = 0; i < A.cols(); ++i) xs.at(i, j) = k.at(i, j);
  return Subspace::col_span(A * xs);
}

int quotient_dim(const Subspace& a, const Subspace& b) { return a.dim() - (a & b).dim(); }

}  // namespace cubres
