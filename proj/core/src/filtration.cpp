#include "cubres/filtration.hpp"

#include "cubres/arrangement.hpp"  // validation_error

namespace cubres {

Subspace FilteredComplex::level(int p, int n) const {
  if (p <= p_min) return Subspace::full(c.dim(n));
  if (p > p_max) return Subspace::zero(c.dim(n));
  auto pit = filt.find(p);
  if (pit == filt.end()) return Subspace::full(c.dim(n));  // no jump recorded at p
  auto nit = pit->second.find(n);
  if (nit == pit->second.end()) return Subspace::zero(c.dim(n));
  return nit->second;
}

void FilteredComplex::validate() const {
  c.validate();
  if (c.zero()) return;
  for (int p = p_min; p <= p_max + 1; ++p) {
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
      Subspace fp = level(p, n);
      if (fp.ambient() != c.dim(n)) throw validation_error("filtration ambient mismatch");
      if (!fp.contains(level(p + 1, n))) throw validation_error("filtration not decreasing");
      // d F^p is contained in F^p
      if (c.dim(n + 1) > 0 && fp.dim() > 0) {
        Subspace img = Subspace::col_span(c.d(n) * fp.basis_cols());
        if (!level(p, n + 1).contains(img)) throw validation_error("filtration not d-stable");
      }
    }
  }
}

FilteredComplex trivial_filtration(const Complex& c) {
  FilteredComplex fc;
  fc.c = c;
  fc.p_min = 0;
  fc.p_max = 0;  // one level: F^0 everything, F^1 zero
  return fc;
}

FilteredComplex canonical_filtration(const Complex& c) {
  FilteredComplex fc;
  fc.c = c;
  if (c.zero()) {
    fc.p_min = 0;
    fc.p_max = -1;
    return fc;
  }
  fc.p_min = -c.max_degree();
  fc.p_max = -c.min_degree();
  for (int p = fc.p_min + 1; p <= fc.p_max; ++p) {
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
      if (c.dim(n) == 0) continue;
      if (n < -p) fc.filt[p][n] = Subspace::full(c.dim(n));
      else if (n == -p) fc.filt[p][n] = Subspace::col_span(kernel_basis(c.d(n)));
      // n > -p: zero, i.e. absent
    }
  }
  return fc;
}

std::map<std::pair<int, int>, int> graded_dims(const FilteredComplex& fc) {
  std::map<std::pair<int, int>, int> out;
  if (fc.c.zero()) return out;
  for (int p = fc.p_min; p <= fc.p_max; ++p)
    for (int n = fc.c.min_degree(); n <= fc.c.max_degree(); ++n) {
      int g = fc.level(p, n).dim() - fc.level(p + 1, n).dim();
      if (g != 0) out[{p, n}] = g;
    }
  return out;
}

namespace {

// Columns extending a basis of `small` to one of `big`.
MatQ extend_basis(const Subspace& big, const Subspace& small) {
  MatQ bb = big.basis_cols();
  Subspace span = small;
  MatQ out(big.ambient(), big.dim() - (big & small).dim());
  int kept = 0;
  for (int j = 0; j < bb.cols() && kept < out.cols(); ++j) {
    Subspace cand = span + Subspace::col_span(bb.col(j));
    if (cand.dim() > span.dim()) {
      for (int i = 0; i < bb.rows(); ++i) out.at(i, kept) = bb.at(i, j);
      ++kept;
      span = cand;
    }
  }
  return out;
}

MatQ coords_mod(const MatQ& lift, const Subspace& small, const MatQ& y) {
  MatQ full = MatQ::hcat(lift, small.basis_cols());
  MatQ c;
  if (!solve(full, y, c)) throw validation_error("graded piece coordinate solve failed");
  MatQ out(lift.cols(), y.cols());
  for (int i = 0; i < lift.cols(); ++i)
    for (int j = 0; j < y.cols(); ++j) out.at(i, j) = c.at(i, j);
  return out;
}

}  // namespace

Complex graded_piece(const FilteredComplex& fc, int p) {
  Complex out;
  if (fc.c.zero()) return out;
  std::map<int, MatQ> lifts;
  for (int n = fc.c.min_degree(); n <= fc.c.max_degree(); ++n) {
    if (fc.c.dim(n) == 0) continue;
    MatQ lift = extend_basis(fc.level(p, n), fc.level(p + 1, n));
    lifts[n] = lift;
    if (lift.cols() > 0) out.dims[n] = lift.cols();
  }
  for (int n = fc.c.min_degree(); n < fc.c.max_degree(); ++n) {
    if (!out.dims.count(n) || !out.dims.count(n + 1)) continue;
    MatQ image = fc.c.d(n) * lifts[n];
    out.diff[n] = coords_mod(lifts[n + 1], fc.level(p + 1, n + 1), image);
  }
  out.validate();
  return out;
}

ChainMap graded_map(const FilteredComplex& a, const FilteredComplex& b, const ChainMap& f, int p) {
  ChainMap out;
  out.source = graded_piece(a, p);
  out.target = graded_piece(b, p);
  if (a.c.zero() || b.c.zero()) return out;
  for (int n = a.c.min_degree(); n <= a.c.max_degree(); ++n) {
    if (out.source.dim(n) == 0) continue;
    MatQ lift_a = extend_basis(a.level(p, n), a.level(p + 1, n));
    if (out.target.dim(n) == 0) {
      out.comp[n] = MatQ::zero(0, lift_a.cols());
      continue;
    }
    MatQ lift_b = extend_basis(b.level(p, n), b.level(p + 1, n));
    out.comp[n] = coords_mod(lift_b, b.level(p + 1, n), f.at(n) * lift_a);
  }
  out.validate();
  return out;
}

}  // namespace cubres
