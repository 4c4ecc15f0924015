#include "cubres/complexes.hpp"

#include "cubres/arrangement.hpp"  // validation_error

namespace cubres {

void Complex::validate() const {
  for (const auto& [n, dn] : dims)
    if (dn <= 0) throw validation_error("complex dimension table has a non-positive entry");
  for (const auto& [n, m] : diff) {
    if (m.rows() != dim(n + 1) || m.cols() != dim(n))
      throw validation_error("differential shape mismatch in degree " + std::to_string(n));
    MatQ dd = d(n + 1) * m;
    if (!dd.is_zero()) throw validation_error("d after d is nonzero in degree " + std::to_string(n));
  }
}

Complex concentrated(int degree, int dimension) {
  Complex c;
  if (dimension > 0) c.dims[degree] = dimension;
  return c;
}

Complex shift(const Complex& c, int k) {
  Complex out;
  for (const auto& [n, dn] : c.dims) out.dims[n - k] = dn;
  for (const auto& [n, m] : c.diff) {
    MatQ s = m;
    if (k % 2 != 0) s = -s;
    out.diff[n - k] = s;
  }
  return out;
}

Complex direct_sum(const Complex& a, const Complex& b) {
  Complex out;
  int lo = std::min(a.min_degree(), b.min_degree());
  int hi = std::max(a.max_degree(), b.max_degree());
  for (int n = lo; n <= hi; ++n) {
    int dn = a.dim(n) + b.dim(n);
    if (dn > 0) out.dims[n] = dn;
  }
  for (int n = lo; n < hi; ++n) {
    if (out.dims.count(n) == 0 || out.dims.count(n + 1) == 0) continue;
    out.diff[n] = MatQ::dsum(a.d(n), b.d(n));
  }
  return out;
}

Complex tensor(const Complex& a, const Complex& b) {
  Complex out;
  if (a.zero() || b.zero()) return out;
  int lo = a.min_degree() + b.min_degree();
  int hi = a.max_degree() + b.max_degree();
  auto blocks_of = [&](int n) {
    std::vector<std::pair<int, int>> blocks;  // (p, offset)
    int off = 0;
    for (const auto& [p, dp] : a.dims) {
      int q = n - p;
      if (b.dim(q) == 0) continue;
      blocks.emplace_back(p, off);
      off += dp * b.dim(q);
    }
    return std::make_pair(blocks, off);
  };
  for (int n = lo; n <= hi; ++n) {
    auto [blocks, total] = blocks_of(n);
    if (total > 0) out.dims[n] = total;
  }
  for (int n = lo; n < hi; ++n) {
    auto [src_blocks, src_total] = blocks_of(n);
    auto [dst_blocks, dst_total] = blocks_of(n + 1);
    if (src_total == 0 || dst_total == 0) continue;
    MatQ m(dst_total, src_total);
    auto dst_offset = [&](int p) {
      for (auto [pp, off] : dst_blocks)
        if (pp == p) return off;
      return -1;
    };
    for (auto [p, off] : src_blocks) {
      int q = n - p;
      // d_A (x) id : block (p, q) -> (p+1, q)
      if (a.dim(p + 1) > 0) {
        int doff = dst_offset(p + 1);
        if (doff >= 0) {
          MatQ blk = MatQ::kron(a.d(p), MatQ::identity(b.dim(q)));
          for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j) m.at(doff + i, off + j) = blk.at(i, j);
        }
      }
      // (-1)^p id (x) d_B : block (p, q) -> (p, q+1)
      if (b.dim(q + 1) > 0) {
        int doff = dst_offset(p);
        if (doff >= 0) {
          MatQ blk = MatQ::kron(MatQ::identity(a.dim(p)), b.d(q));
          Rat sign = (p % 2 == 0) ? 1 : -1;
          for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j) m.at(doff + i, off + j) = sign * blk.at(i, j);
        }
      }
    }
    out.diff[n] = m;
  }
  return out;
}

std::map<int, int> cohomology_dims(const Complex& c) {
  std::map<int, int> h;
  if (c.zero()) return h;
  for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
    if (c.dim(n) == 0) continue;
    int ker = c.dim(n) - rank(c.d(n));
    int im = (n - 1 >= c.min_degree()) ? rank(c.d(n - 1)) : 0;
    if (ker - im != 0) h[n] = ker - im;
  }
  return h;
}

Cohomology cohomology(const Complex& c) {
  Cohomology out;
  out.dims = cohomology_dims(c);
  for (const auto& [n, hn] : out.dims) {
    MatQ ker = kernel_basis(c.d(n));
    Subspace im = Subspace::col_span(c.d(n - 1));
    // Greedily keep kernel vectors independent modulo the image.
    MatQ reps(c.dim(n), hn);
    Subspace span = im;
    int kept = 0;
    for (int j = 0; j < ker.cols() && kept < hn; ++j) {
      Subspace cand = span + Subspace::col_span(ker.col(j));
      if (cand.dim() > span.dim()) {
        for (int i = 0; i < c.dim(n); ++i) reps.at(i, kept) = ker.at(i, j);
        ++kept;
        span = cand;
      }
    }
    out.representatives[n] = reps;
  }
  return out;
}

int euler_characteristic(const Complex& c) {
  int chi = 0;
  for (const auto& [n, dn] : c.dims) chi += (n % 2 == 0) ? dn : -dn;
  return chi;
}

void ChainMap::validate() const {
  source.validate();
  target.validate();
  for (const auto& [n, m] : comp)
    if (m.rows() != target.dim(n) || m.cols() != source.dim(n))
      throw validation_error("chain map shape mismatch in degree " + std::to_string(n));
  int lo = std::min(source.min_degree(), target.min_degree());
  int hi = std::max(source.max_degree(), target.max_degree());
  for (int n = lo; n < hi; ++n) {
    MatQ left = target.d(n) * at(n);
    MatQ right = at(n + 1) * source.d(n);
    if (!(left == right)) throw validation_error("chain map does not commute with d in degree " + std::to_string(n));
  }
}

Complex cone(const ChainMap& f) {
  Complex out;
  const Complex& a = f.source;
  const Complex& b = f.target;
  int lo = std::min(a.min_degree() - 1, b.min_degree());
  int hi = std::max(a.max_degree() - 1, b.max_degree());
  for (int n = lo; n <= hi; ++n) {
    int dn = a.dim(n + 1) + b.dim(n);
    if (dn > 0) out.dims[n] = dn;
  }
  for (int n = lo; n < hi; ++n) {
    if (out.dims.count(n) == 0 || out.dims.count(n + 1) == 0) continue;
    int rows = a.dim(n + 2) + b.dim(n + 1);
    int cols = a.dim(n + 1) + b.dim(n);
    MatQ m(rows, cols);
    MatQ da = a.d(n + 1), db = b.d(n), fn = f.at(n + 1);
    for (int i = 0; i < da.rows(); ++i)
      for (int j = 0; j < da.cols(); ++j) m.at(i, j) = -da.at(i, j);
    for (int i = 0; i < fn.rows(); ++i)
      for (int j = 0; j < fn.cols(); ++j) m.at(a.dim(n + 2) + i, j) = fn.at(i, j);
    for (int i = 0; i < db.rows(); ++i)
      for (int j = 0; j < db.cols(); ++j) m.at(a.dim(n + 2) + i, a.dim(n + 1) + j) = db.at(i, j);
    out.diff[n] = m;
  }
  return out;
}

bool quasi_iso(const ChainMap& f) { return cohomology_dims(cone(f)).empty(); }

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  ChainMap out;
  out.source = tensor(f.source, g.source);
  out.target = tensor(f.target, g.target);
  if (out.source.zero() || out.target.zero()) return out;
  for (const auto& [n, dn] : out.source.dims) {
    if (out.target.dim(n) == 0) continue;
    MatQ m(out.target.dim(n), dn);
    // Source blocks (p, n-p) in ascending p; same for target.
    int soff = 0;
    for (const auto& [p, dp] : f.source.dims) {
      int q = n - p;
      int sq = g.source.dim(q);
      if (sq == 0) continue;
      int toff = 0;
      for (const auto& [tp, tdp] : f.target.dims) {
        int tq = n - tp;
        int ttq = g.target.dim(tq);
        if (ttq == 0) continue;
        if (tp == p) {
          MatQ blk = MatQ::kron(f.at(p), g.at(q));
          for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j) m.at(toff + i, soff + j) = blk.at(i, j);
        }
        toff += tdp * ttq;
      }
      soff += dp * sq;
    }
    out.comp[n] = m;
  }
  return out;
}

}  // namespace cubres
