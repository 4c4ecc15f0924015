#include "cubres/cube_complex.hpp"

#include <bit>

#include "cubres/arrangement.hpp"  // validation_error

namespace cubres {

int CubeCodiagram::total_bits() const {
  int b = 0;
  for (int f : factor_bits) b += f;
  return b;
}

bool CubeCodiagram::valid_vertex(unsigned mask) const {
  int off = 0;
  for (int f : factor_bits) {
    unsigned part = (mask >> off) & ((1u << f) - 1u);
    if (part == 0) return false;
    off += f;
  }
  return true;
}

std::vector<unsigned> CubeCodiagram::vertices() const {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << total_bits()); ++m)
    if (valid_vertex(m)) out.push_back(m);
  return out;
}

ChainMap CubeCodiagram::map_for(unsigned lo, unsigned hi) const {
  auto it = maps.find({lo, hi});
  if (it != maps.end()) return it->second;
  ChainMap zero;
  zero.source = at.count(lo) ? at.at(lo) : Complex{};
  zero.target = at.count(hi) ? at.at(hi) : Complex{};
  return zero;
}

void CubeCodiagram::validate() const {
  for (unsigned v : vertices())
    if (!at.count(v)) throw validation_error("cube codiagram missing vertex " + std::to_string(v));
  for (unsigned v : vertices()) at.at(v).validate();
  int bits = total_bits();
  for (unsigned v : vertices()) {
    for (int k = 0; k < bits; ++k) {
      if ((v >> k) & 1u) continue;
      unsigned w = v | (1u << k);
      ChainMap f = map_for(v, w);
      if (!(f.source == at.at(v)) || !(f.target == at.at(w)))
        throw validation_error("cube codiagram map endpoints mismatch");
      f.validate();
      // commuting squares with every later flip
      for (int l = k + 1; l < bits; ++l) {
        if ((v >> l) & 1u) continue;
        unsigned vl = v | (1u << l), vkl = w | (1u << l);
        int lo2 = std::min(map_for(w, vkl).source.min_degree(), 0);
        int hi2 = std::max(map_for(w, vkl).source.max_degree(), 0);
        for (int n = lo2; n <= hi2; ++n) {
          MatQ one = map_for(w, vkl).at(n) * f.at(n);
          MatQ two = map_for(vl, vkl).at(n) * map_for(v, vl).at(n);
          if (!(one == two))
            throw validation_error("cube codiagram square does not commute at vertex " + std::to_string(v));
        }
      }
    }
  }
}

int flip_sign(unsigned alpha, int slot) {
  unsigned below = alpha & ((1u << slot) - 1u);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

SimpleLayout simple_layout(const CubeCodiagram& k) {
  SimpleLayout layout;
  int f = k.factors();
  std::map<int, int> cursor;
  for (unsigned v : k.vertices()) {
    const Complex& c = k.at.at(v);
    for (const auto& [deg, dn] : c.dims) {
      int n = std::popcount(v) - f + deg;
      int off = cursor[n];
      layout.blocks[n].emplace_back(v, deg, off, dn);
      cursor[n] = off + dn;
    }
  }
  for (const auto& [n, off] : cursor)
    if (off > 0) layout.dims[n] = off;
  return layout;
}

Complex simple(const CubeCodiagram& k) {
  SimpleLayout layout = simple_layout(k);
  Complex out;
  out.dims = layout.dims;
  int f = k.factors();
  int bits = k.total_bits();
  for (const auto& [n, blocks] : layout.blocks) {
    if (layout.dims.count(n + 1) == 0) continue;
    MatQ m(layout.dims.at(n + 1), layout.dims.at(n));
    auto find_block = [&](int deg_total, unsigned v, int internal) -> std::pair<int, int> {
      auto it = layout.blocks.find(deg_total);
      if (it == layout.blocks.end()) return {-1, 0};
      for (const auto& [bv, bk, boff, bsz] : it->second)
        if (bv == v && bk == internal) return {boff, bsz};
      return {-1, 0};
    };
    for (const auto& [v, deg, off, sz] : blocks) {
      const Complex& c = k.at.at(v);
      // internal differential with sign (-1)^{|v| - f}
      if (c.dim(deg + 1) > 0) {
        auto [doff, dsz] = find_block(n + 1, v, deg + 1);
        if (doff >= 0) {
          MatQ dmat = c.d(deg);
          Rat sign = ((std::popcount(v) - f) % 2 == 0) ? 1 : -1;
          for (int i = 0; i < dmat.rows(); ++i)
            for (int j = 0; j < dmat.cols(); ++j) m.at(doff + i, off + j) = sign * dmat.at(i, j);
        }
      }
      // cube maps with the bits-below sign
      for (int slot = 0; slot < bits; ++slot) {
        if ((v >> slot) & 1u) continue;
        unsigned w = v | (1u << slot);
        if (!k.valid_vertex(w)) continue;
        ChainMap step = k.map_for(v, w);
        MatQ smat = step.at(deg);
        if (smat.rows() == 0 || smat.cols() == 0) continue;
        auto [doff, dsz] = find_block(n + 1, w, deg);
        if (doff < 0) continue;
        Rat sign = flip_sign(v, slot);
        for (int i = 0; i < smat.rows(); ++i)
          for (int j = 0; j < smat.cols(); ++j)
            if (smat.at(i, j) != 0) m.at(doff + i, off + j) += sign * smat.at(i, j);
      }
    }
    out.diff[n] = m;
  }
  out.validate();
  return out;
}

ChainMap unit_map(const Complex& base, const std::map<unsigned, ChainMap>& into,
                  const CubeCodiagram& k) {
  if (k.factors() != 1) throw validation_error("unit map needs a single-factor cube");
  SimpleLayout layout = simple_layout(k);
  ChainMap u;
  u.source = base;
  u.target = simple(k);
  for (const auto& [n, dn] : base.dims) {
    if (u.target.dim(n) == 0) {
      if (dn > 0) u.comp[n] = MatQ::zero(0, dn);
      continue;
    }
    MatQ m(u.target.dim(n), dn);
    auto bit = layout.blocks.find(n);
    if (bit != layout.blocks.end()) {
      for (const auto& [v, deg, off, sz] : bit->second) {
        if (std::popcount(v) != 1) continue;  // components only into weight-one vertices
        auto iit = into.find(v);
        if (iit == into.end()) continue;
        MatQ comp = iit->second.at(deg);
        for (int i = 0; i < comp.rows(); ++i)
          for (int j = 0; j < comp.cols(); ++j) m.at(off + i, j) = comp.at(i, j);
      }
    }
    u.comp[n] = m;
  }
  u.validate();
  return u;
}

FilteredComplex simple_filtered(const FilteredCubeCodiagram& fk) {
  CubeCodiagram k;
  k.factor_bits = fk.factor_bits;
  for (const auto& [v, fc] : fk.at) k.at[v] = fc.c;
  k.maps = fk.maps;
  SimpleLayout layout = simple_layout(k);

  FilteredComplex out;
  out.c = simple(k);
  out.p_min = 0;
  out.p_max = -1;
  bool any = false;
  for (const auto& [v, fc] : fk.at) {
    if (fc.c.zero()) continue;
    if (!any) {
      out.p_min = fc.p_min;
      out.p_max = fc.p_max;
      any = true;
    } else {
      out.p_min = std::min(out.p_min, fc.p_min);
      out.p_max = std::max(out.p_max, fc.p_max);
    }
  }
  for (int p = out.p_min + 1; p <= out.p_max; ++p) {
    for (const auto& [n, dn] : out.c.dims) {
      // F^p of the total degree-n piece: direct sum of vertex-level F^p.
      MatQ cols(dn, 0);
      auto bit = layout.blocks.find(n);
      if (bit != layout.blocks.end()) {
        for (const auto& [v, deg, off, sz] : bit->second) {
          const FilteredComplex& fc = fk.at.at(v);
          MatQ basis = fc.level(p, deg).basis_cols();
          MatQ lifted(dn, basis.cols());
          for (int i = 0; i < basis.rows(); ++i)
            for (int j = 0; j < basis.cols(); ++j) lifted.at(off + i, j) = basis.at(i, j);
          cols = MatQ::hcat(cols, lifted);
        }
      }
      out.filt[p][n] = Subspace::col_span(cols);
    }
  }
  out.validate();
  return out;
}

}  // namespace cubres
