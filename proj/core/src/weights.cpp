#include "cubres/weights.hpp"

#include <algorithm>
#include <sstream>

#include "cubres/hyperres.hpp"

namespace cubres {


void OpenPair::validate() const {
  space.validate();
  if (!space.is_regular()) throw validation_error("open pair needs a regular space");
  if (boundary.size() != space.pieces.size())
    throw validation_error("open pair boundary not total on pieces");
  for (size_t p = 0; p < space.pieces.size(); ++p)
    if (!boundary[p].subset_of(space.pieces[p].arrangement.facets[0]))
      throw validation_error("boundary coordinates must be free on the cell");
}

void PairMorphism::validate() const {
  source.validate();
  target.validate();
  morphism.validate();
  if (!(morphism.source == source.space) || !(morphism.target == target.space))
    throw validation_error("pair morphism endpoints mismatch");
  for (size_t p = 0; p < source.space.pieces.size(); ++p) {
    const PieceMap& pm = morphism.assignment[p];
    CoordSet t_target = target.boundary[pm.target_piece];
    CoordSet img = pm.image_universe(source.space.pieces[p].arrangement.universe.size());
    if (!t_target.subset_of(img))
      throw validation_error("pair morphism: boundary not visible from the source");
    if (!(pm.preimage_of(t_target) == source.boundary[p]))
      throw validation_error("pair morphism: boundary does not pull back to the boundary");
  }
}

WeightModel gysin_weight_complex(const OpenPair& p) {
  p.validate();
  WeightModel model;
  // Basis: per piece, the strata of the boundary, a codimension-q stratum in
  // degree q.
  for (size_t piece = 0; piece < p.space.pieces.size(); ++piece) {
    int t = p.boundary[piece].size();
    for (unsigned s = 0; s < (1u << t); ++s)
      model.basis[std::popcount(s)].emplace_back(static_cast<int>(piece), s);
  }
  Complex c;
  for (const auto& [deg, basis] : model.basis) c.dims[deg] = static_cast<int>(basis.size());
  // Alternating-inclusion Gysin differentials: each map lands in a shifted
  // cohomological degree of the deeper stratum, which vanishes on affine
  // cells, so every matrix entry evaluates to zero.
  for (const auto& [deg, basis] : model.basis) {
    if (!model.basis.count(deg + 1)) continue;
    c.diff[deg] =
        MatQ::zero(static_cast<int>(model.basis.at(deg + 1).size()), static_cast<int>(basis.size()));
  }
  c.validate();
  model.fc = canonical_filtration(c);
  return model;
}

ChainMap weight_pullback(const PairMorphism& g, const WeightModel& target_model,
                         const WeightModel& source_model) {
  g.validate();
  ChainMap out;
  out.source = target_model.fc.c;
  out.target = source_model.fc.c;
  for (const auto& [deg, tgt_basis] : target_model.basis) {
    if (!source_model.basis.count(deg)) {
      if (!tgt_basis.empty()) out.comp[deg] = MatQ::zero(0, static_cast<int>(tgt_basis.size()));
      continue;
    }
    const auto& src_basis = source_model.basis.at(deg);
    MatQ m(static_cast<int>(src_basis.size()), static_cast<int>(tgt_basis.size()));
    for (size_t col = 0; col < tgt_basis.size(); ++col) {
      const auto& [tp, smask] = tgt_basis[col];
      std::vector<int> tgt_slots = g.target.boundary[tp].elements();
      for (size_t sp = 0; sp < g.source.space.pieces.size(); ++sp) {
        const PieceMap& pm = g.morphism.assignment[sp];
        if (pm.target_piece != tp) continue;
        std::vector<int> src_coords = g.source.boundary[sp].elements();
        // Transport the stratum through the coordinate map; orientation sign
        // from re-sorting the pulled-back hyperplane order.
        unsigned pulled = 0;
        std::vector<int> positions;
        for (size_t t = 0; t < tgt_slots.size(); ++t) {
          if (!((smask >> t) & 1u)) continue;
          int src_coord = pm.preimage_of(CoordSet::single(tgt_slots[t])).elements().at(0);
          int pos = static_cast<int>(
              std::lower_bound(src_coords.begin(), src_coords.end(), src_coord) -
              src_coords.begin());
          pulled |= 1u << pos;
          positions.push_back(pos);
        }
        int inversions = 0;
        for (size_t a = 0; a < positions.size(); ++a)
          for (size_t b = a + 1; b < positions.size(); ++b)
            if (positions[a] > positions[b]) ++inversions;
        int row = -1;
        for (size_t i = 0; i < src_basis.size(); ++i)
          if (src_basis[i].first == static_cast<int>(sp) && src_basis[i].second == pulled) {
            row = static_cast<int>(i);
            break;
          }
        if (row < 0) throw validation_error("weight pullback basis lookup failed");
        m.at(row, static_cast<int>(col)) = (inversions % 2 == 0) ? 1 : -1;
      }
    }
    out.comp[deg] = m;
  }
  out.validate();
  return out;
}

WeightSSResult weight_ss(const OpenPair& p, int r_max) {
  WeightSSResult out;
  out.model = gysin_weight_complex(p);
  out.ss = spectral_sequence(out.model.fc, r_max);
  for (const auto& [n, dim] : out.ss.abutment) out.table.h[n] = dim;
  for (const auto& [pq, dim] : out.ss.einf) {
    int k = pq.first + pq.second;
    int w = pq.second;
    out.table.graded[{k, w}] = dim;
    if (w < k || w > 2 * k) out.table.weight_window_ok = false;
  }
  std::map<int, int> row_sums;
  for (const auto& [kw, dim] : out.table.graded) row_sums[kw.first] += dim;
  if (row_sums != out.table.h) out.table.rows_match = false;
  return out;
}

std::string weight_table_text(const WeightTable& t) {
  std::ostringstream os;
  os << "k,dim H^k,weights\n";
  for (const auto& [k, dim] : t.h) {
    os << k << "," << dim << ",";
    bool first = true;
    for (const auto& [kw, g] : t.graded) {
      if (kw.first != k) continue;
      os << (first ? "" : ";") << "w" << kw.second << "=" << g;
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

std::string weight_table_csv(const WeightTable& t) {
  std::ostringstream os;
  os << "k,w,dim\n";
  for (const auto& [kw, g] : t.graded) os << kw.first << "," << kw.second << "," << g << "\n";
  return os.str();
}

SquareValidation validate_pair_square(const PairSquare& s) {
  SquareValidation v;
  auto fail = [&](const std::string& axiom) {
    v.ok = false;
    if (v.violated_axiom.empty()) v.violated_axiom = axiom;
  };
  try {
    PairMorphism pf{s.xt, s.x, s.f};
    pf.validate();
    PairMorphism pi{s.y, s.x, s.i};
    pi.validate();
    PairMorphism pg{s.yt, s.y, s.g};
    pg.validate();
    PairMorphism pj{s.yt, s.xt, s.j};
    pj.validate();
  } catch (const validation_error& e) {
    fail(std::string("pair morphism invalid: ") + e.what());
    return v;
  }
  if (!(compose(s.i, s.g) == compose(s.f, s.j))) fail("square does not commute");
  if (!is_closed_immersion(s.i)) fail("closed leg is not a closed immersion");
  FiberProduct fp = fiber_product(s.i, s.f);
  SpaceMorphism mediated;
  try {
    mediated = fiber_product_mediate(fp, s.i, s.f, s.g, s.j);
  } catch (const validation_error&) {
    fail("square is not Cartesian");
    return v;
  }
  // Cartesian: the mediating map must identify yt with the fiber product.
  if (!(image_closure(mediated) == fp.space) || !is_closed_immersion(mediated))
    fail("square is not Cartesian");
  if (!subspace_contained(discriminant(s.f), image_closure(s.i)))
    fail("closed leg does not contain the discriminant");
  return v;
}

LesReport les_exactness(const MatQ& a1, const MatQ& a2, const MatQ& b1, const MatQ& b2) {
  LesReport rep;
  MatQ a = MatQ::vcat(a1, a2);
  MatQ b = MatQ::hcat(b1, -b2);
  if (rank(a) != a.cols()) {
    rep.ok = false;
    rep.failure = "first map is not injective";
    return rep;
  }
  MatQ ba = b * a;
  if (!ba.is_zero()) {
    rep.ok = false;
    rep.failure = "composite of the two maps is nonzero";
    return rep;
  }
  if (rank(b) != b.rows()) {
    rep.ok = false;
    rep.failure = "second map is not surjective";
    return rep;
  }
  int ker_b = b.cols() - rank(b);
  if (ker_b != rank(a)) {
    rep.ok = false;
    rep.failure = "sequence is not exact in the middle";
    return rep;
  }
  return rep;
}

LesReport acyclic_square_les_check(const PairSquare& s) {
  LesReport rep;
  SquareValidation v = validate_pair_square(s);
  if (!v.ok) {
    rep.ok = false;
    rep.failure = "rejected: " + v.violated_axiom;
    return rep;
  }
  WeightModel mx = gysin_weight_complex(s.x);
  WeightModel mxt = gysin_weight_complex(s.xt);
  WeightModel my = gysin_weight_complex(s.y);
  WeightModel myt = gysin_weight_complex(s.yt);

  ChainMap fx = weight_pullback({s.xt, s.x, s.f}, mx, mxt);
  ChainMap ix = weight_pullback({s.y, s.x, s.i}, mx, my);
  ChainMap jx = weight_pullback({s.yt, s.xt, s.j}, mxt, myt);
  ChainMap gx = weight_pullback({s.yt, s.y, s.g}, my, myt);

  const int r = 2;
  auto px = page_map(mx.fc, mxt.fc, fx, r);
  auto py = page_map(mx.fc, my.fc, ix, r);
  auto pj = page_map(mxt.fc, myt.fc, jx, r);
  auto pg = page_map(my.fc, myt.fc, gx, r);

  // Collect every page cell present anywhere.
  auto dims_of = [&](const WeightModel& m) {
    SpectralSequence ss = spectral_sequence(m.fc);
    return ss.einf;  // pages degenerate at E_1, so E_2 = E_infinity
  };
  auto ex = dims_of(mx), ext = dims_of(mxt), ey = dims_of(my), eyt = dims_of(myt);
  std::map<std::pair<int, int>, int> cells;
  for (const auto& [pq, d] : ex) cells[pq] |= 1;
  for (const auto& [pq, d] : ext) cells[pq] |= 1;
  for (const auto& [pq, d] : ey) cells[pq] |= 1;
  for (const auto& [pq, d] : eyt) cells[pq] |= 1;

  auto cell_dim = [](const std::map<std::pair<int, int>, int>& t, std::pair<int, int> pq) {
    auto it = t.find(pq);
    return it == t.end() ? 0 : it->second;
  };
  auto cell_map = [](const std::map<std::pair<int, int>, MatQ>& t, std::pair<int, int> pq,
                     int rows, int cols) {
    auto it = t.find(pq);
    if (it != t.end() && it->second.rows() == rows && it->second.cols() == cols) return it->second;
    return MatQ::zero(rows, cols);
  };

  for (const auto& [pq, flag] : cells) {
    int dx = cell_dim(ex, pq), dxt = cell_dim(ext, pq), dy = cell_dim(ey, pq),
        dyt = cell_dim(eyt, pq);
    MatQ a1 = cell_map(px, pq, dxt, dx);
    MatQ a2 = cell_map(py, pq, dy, dx);
    MatQ b1 = cell_map(pj, pq, dyt, dxt);
    MatQ b2 = cell_map(pg, pq, dyt, dy);
    LesReport cell_rep = les_exactness(a1, a2, b1, b2);
    if (!cell_rep.ok) {
      rep.ok = false;
      rep.failure = "cell (p=" + std::to_string(pq.first) + ", q=" + std::to_string(pq.second) +
                    "): " + cell_rep.failure;
      return rep;
    }
  }
  return rep;
}

}  // namespace cubres
