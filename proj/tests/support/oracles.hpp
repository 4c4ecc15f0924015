#pragma once

// Independent oracles.  These deliberately avoid the engine's pipelines:
// they work straight from facet combinatorics, sampled points, or explicit
// cell complexes, so the engine's outputs can be checked against them.

#include <map>
#include <set>
#include <vector>

#include "cubres/arrangement.hpp"
#include "cubres/complexes.hpp"

namespace oracle {

// Simplicial cohomology of the nerve of the facet cover, one simplex per
// tuple of facets with nonempty intersection (coordinate cells always meet
// at the origin, but the test is performed honestly), summed over pieces.
inline std::vector<int> nerve_betti(const cubres::Space& x) {
  cubres::Complex sum;
  for (const cubres::Piece& piece : x.pieces) {
    int k = static_cast<int>(piece.arrangement.facets.size());
    // Simplices: facet tuples with nonempty intersection.  The intersection
    // of coordinate cells is the cell of the intersection set, which always
    // contains the origin, so every tuple qualifies; the meet is still
    // computed so the simplex records its cell.
    std::vector<std::vector<unsigned>> simplices;  // by dimension
    for (unsigned s = 1; s < (1u << k); ++s) {
      cubres::CoordSet meet = cubres::CoordSet::full(piece.arrangement.universe.size());
      for (int i = 0; i < k; ++i)
        if ((s >> i) & 1u) meet = meet & piece.arrangement.facets[i];
      int dim = std::popcount(s) - 1;
      if (static_cast<int>(simplices.size()) <= dim) simplices.resize(dim + 1);
      simplices[dim].push_back(s);
    }
    cubres::Complex c;
    for (size_t d = 0; d < simplices.size(); ++d)
      if (!simplices[d].empty()) c.dims[static_cast<int>(d)] = static_cast<int>(simplices[d].size());
    for (size_t d = 0; d + 1 < simplices.size(); ++d) {
      cubres::MatQ m(static_cast<int>(simplices[d + 1].size()), static_cast<int>(simplices[d].size()));
      for (size_t row = 0; row < simplices[d + 1].size(); ++row) {
        unsigned simplex = simplices[d + 1][row];
        int pos = 0;
        for (int i = 0; i < k; ++i) {
          if (!((simplex >> i) & 1u)) continue;
          unsigned face = simplex & ~(1u << i);
          for (size_t col = 0; col < simplices[d].size(); ++col)
            if (simplices[d][col] == face)
              m.at(static_cast<int>(row), static_cast<int>(col)) = (pos % 2 == 0) ? 1 : -1;
          ++pos;
        }
      }
      c.diff[static_cast<int>(d)] = m;
    }
    c.validate();
    sum = direct_sum(sum, c);
  }
  auto h = cohomology_dims(sum);
  cubres::Dim d = x.dimension();
  std::vector<int> out;
  if (!d) return out;
  for (int i = 0; i <= *d; ++i) out.push_back(h.count(i) ? h.at(i) : 0);
  return out;
}

// Kernel of the first Cech differential of the normalization, straight from
// the facet data, per squarefree multidegree of one piece.
inline int normalization_kernel_dim(const cubres::Arrangement& a, unsigned m) {
  cubres::CoordSet mask{m};
  std::vector<int> carriers;
  for (size_t f = 0; f < a.facets.size(); ++f)
    if (mask.subset_of(a.facets[f])) carriers.push_back(static_cast<int>(f));
  if (carriers.empty()) return 0;
  // Rows: ordered pairs of carriers; the intersection always carries m.
  int n = static_cast<int>(carriers.size());
  std::vector<std::pair<int, int>> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (mask.subset_of(a.facets[carriers[i]] & a.facets[carriers[j]])) rows.emplace_back(i, j);
  cubres::MatQ delta(static_cast<int>(rows.size()), n);
  for (size_t r = 0; r < rows.size(); ++r) {
    delta.at(static_cast<int>(r), rows[r].first) = 1;
    delta.at(static_cast<int>(r), rows[r].second) = -1;
  }
  return n - rank(delta);
}

// Sampled rational points of a space: one generic point per face of each
// piece.  Coordinate values are derived injectively from the coordinate NAME
// so that points transported along morphisms (which rename slots but keep
// names) can be compared exactly across different ambient universes.
struct SamplePoint {
  int piece;
  std::vector<cubres::Rat> coords;  // over the piece universe
  auto operator<=>(const SamplePoint&) const = default;
};

inline cubres::Rat coordinate_value(const std::string& name) {
  cubres::Int h = 0;
  cubres::Int base = 1;
  for (unsigned char ch : name) {
    h += cubres::Int(static_cast<int>(ch) + 1) * base;
    base *= 257;
  }
  return cubres::Rat(h + 2);
}

inline std::vector<SamplePoint> sample_points(const cubres::Space& x) {
  std::vector<SamplePoint> out;
  for (size_t p = 0; p < x.pieces.size(); ++p) {
    for (cubres::CoordSet t : x.pieces[p].arrangement.faces()) {
      SamplePoint pt;
      pt.piece = static_cast<int>(p);
      pt.coords.assign(x.pieces[p].arrangement.universe.size(), 0);
      for (int i : t.elements())
        pt.coords[i] = coordinate_value(x.pieces[p].arrangement.universe.labels[i]);
      out.push_back(pt);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline SamplePoint map_point(const cubres::SpaceMorphism& f, const SamplePoint& pt) {
  const cubres::PieceMap& pm = f.assignment[pt.piece];
  SamplePoint out;
  out.piece = pm.target_piece;
  out.coords.assign(f.target.pieces[pm.target_piece].arrangement.universe.size(), 0);
  for (size_t i = 0; i < pt.coords.size(); ++i) out.coords[pm.coord_map[i]] = pt.coords[i];
  return out;
}

// Cellular cochain complex of a circle: two vertices, two edges.
inline cubres::Complex circle_complex() {
  cubres::Complex c;
  c.dims[0] = 2;
  c.dims[1] = 2;
  c.diff[0] = cubres::MatQ::from_rows({{-1, 1}, {-1, 1}});
  c.validate();
  return c;
}

// Betti numbers of a torus-times-cell product by tensoring circle complexes.
inline std::vector<int> torus_betti(int torus_rank) {
  cubres::Complex acc = cubres::concentrated(0, 1);
  for (int i = 0; i < torus_rank; ++i) acc = tensor(acc, circle_complex());
  auto h = cohomology_dims(acc);
  std::vector<int> out;
  for (int k = 0; k <= torus_rank; ++k) out.push_back(h.count(k) ? h.at(k) : 0);
  return out;
}

}  // namespace oracle
