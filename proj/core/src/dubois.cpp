#include "cubres/dubois.hpp"

#include <algorithm>
#include <sstream>

namespace cubres {

namespace {

int popcount_mask(unsigned m) { return std::popcount(m); }

// Enumerate subsets S of `mask` with |S| = p.
std::vector<unsigned> p_subsets(unsigned mask, int p) {
  std::vector<unsigned> out;
  unsigned s = 0;
  while (true) {
    if (popcount_mask(s) == p) out.push_back(s);
    if (s == mask) break;
    s = (s - mask) & mask;
  }
  return out;
}

// Sign of the permutation sorting the preimage slots of the ascending
// elements of `s` under the coordinate map.
int pullback_sign(const PieceMap& pm, CoordSet s) {
  std::vector<int> pre;
  for (int j : s.elements()) pre.push_back(pm.preimage_of(CoordSet::single(j)).elements().at(0));
  int inversions = 0;
  for (size_t a = 0; a < pre.size(); ++a)
    for (size_t b = a + 1; b < pre.size(); ++b)
      if (pre[a] > pre[b]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

SquarefreeModule structure_sections(const Space& x) {
  SquarefreeModule mod;
  mod.space = x;
  for (const Piece& piece : x.pieces) {
    std::set<unsigned> masks;
    unsigned full = static_cast<unsigned>(CoordSet::full(piece.arrangement.universe.size()).bits());
    for (unsigned m = 0;; ++m) {
      if (piece.arrangement.contains_face(CoordSet{m})) masks.insert(m);
      if (m == full) break;
    }
    mod.sections.push_back(std::move(masks));
  }
  return mod;
}

OmegaCube omega_cube(const Hyperresolution& h, int p, int base_piece, unsigned m) {
  const DiagramOfSpaces& z = h.diagram;
  if (z.bits() == 0) throw validation_error("omega cube needs a nontrivial hyperresolution");
  OmegaCube out;
  out.cube.factor_bits = {z.bits()};
  CoordSet mset{m};

  // Bases: cells whose composite to the base pulls the multidegree back to a
  // section, paired with the p-element dz subsets.
  for (unsigned alpha = 1; alpha < z.cube_size(); ++alpha) {
    std::vector<std::pair<int, unsigned>> basis;
    const Space& za = z.at({alpha, 0});
    const SpaceMorphism& to_base = z.arrow({alpha, 0}, {0, 0});
    for (size_t w = 0; w < za.pieces.size(); ++w) {
      const PieceMap& pm = to_base.assignment[w];
      if (pm.target_piece != base_piece) continue;
      if (!mset.subset_of(pm.image_universe(za.pieces[w].arrangement.universe.size()))) continue;
      CoordSet mw = pm.preimage_of(mset);
      if (!za.pieces[w].arrangement.contains_face(mw)) continue;
      for (unsigned s : p_subsets(static_cast<unsigned>(mw.bits()), p))
        basis.emplace_back(static_cast<int>(w), s);
    }
    out.basis[alpha] = basis;
    out.cube.at[alpha] = concentrated(0, static_cast<int>(basis.size()));
  }

  // Flip maps: restriction of monomial forms.
  for (unsigned alpha = 1; alpha < z.cube_size(); ++alpha) {
    for (int k = 0; k < z.bits(); ++k) {
      if ((alpha >> k) & 1u) continue;
      unsigned beta = alpha | (1u << k);
      const auto& src = out.basis[alpha];
      const auto& dst = out.basis[beta];
      MatQ mat(static_cast<int>(dst.size()), static_cast<int>(src.size()));
      const SpaceMorphism& step = z.arrow({beta, 0}, {alpha, 0});
      for (size_t d = 0; d < dst.size(); ++d) {
        auto [wprime, sprime] = dst[d];
        const PieceMap& pm = step.assignment[wprime];
        int w = pm.target_piece;
        unsigned s = static_cast<unsigned>(pm.image_of(CoordSet{sprime}).bits());
        auto it = std::find(src.begin(), src.end(), std::make_pair(w, s));
        if (it == src.end()) continue;
        mat.at(static_cast<int>(d), static_cast<int>(it - src.begin())) =
            pullback_sign(pm, CoordSet{s});
      }
      ChainMap f;
      f.source = out.cube.at[alpha];
      f.target = out.cube.at[beta];
      if (mat.rows() > 0 && mat.cols() > 0) f.comp[0] = mat;
      out.cube.maps[{alpha, beta}] = f;
    }
  }
  out.cube.validate();
  return out;
}

DuBoisResult du_bois_zero(const Space& x) {
  DuBoisResult out;
  out.hyper = cubical_hyperresolution(x);
  const Space& base = out.hyper.diagram.at({0, 0});
  SquarefreeModule sections = structure_sections(base);

  for (size_t p = 0; p < base.pieces.size(); ++p) {
    unsigned full = static_cast<unsigned>(
        CoordSet::full(base.pieces[p].arrangement.universe.size()).bits());
    for (unsigned m = 0;; ++m) {
      MultidegreeLine line;
      line.piece = base.pieces[p].label;
      line.mask = m;
      line.sections_dim = sections.dim_at(static_cast<int>(p), m);
      if (out.hyper.diagram.bits() == 0) {
        // Regular clause: the identity is the comparison map.
        line.h0 = line.sections_dim;
        line.unit_qiso = true;
      } else {
        OmegaCube oc = omega_cube(out.hyper, 0, static_cast<int>(p), m);
        Complex total = simple(oc.cube);
        auto h = cohomology_dims(total);
        line.h0 = h.count(0) ? h.at(0) : 0;
        for (const auto& [deg, dim] : h)
          if (deg > 0) line.higher[deg] = dim;

        Complex b = concentrated(0, line.sections_dim);
        std::map<unsigned, ChainMap> into;
        for (int k = 0; k < out.hyper.diagram.bits(); ++k) {
          unsigned e = 1u << k;
          ChainMap comp;
          comp.source = b;
          comp.target = oc.cube.at[e];
          if (line.sections_dim > 0 && comp.target.dim(0) > 0) {
            MatQ mat(comp.target.dim(0), line.sections_dim);
            for (int r = 0; r < mat.rows(); ++r) mat.at(r, 0) = 1;
            comp.comp[0] = mat;
          }
          into[e] = comp;
        }
        line.unit_qiso = quasi_iso(unit_map(b, into, oc.cube));
      }
      bool line_ok = line.unit_qiso;
      if (!line_ok) {
        out.report.du_bois = false;
        out.report.obstructions.emplace_back(line.piece, line.mask);
      }
      out.report.lines.push_back(std::move(line));
      if (m == full) break;
    }
  }
  return out;
}

OmegaPReport omega_p(const Space& x, int p) {
  if (p < 0) throw validation_error("omega_p: negative p");
  OmegaPReport rep;
  rep.p = p;
  Hyperresolution h = cubical_hyperresolution(x);
  const Space& base = h.diagram.at({0, 0});
  Dim dim_x = base.dimension();

  for (size_t piece = 0; piece < base.pieces.size(); ++piece) {
    const Arrangement& a = base.pieces[piece].arrangement;
    unsigned full = static_cast<unsigned>(CoordSet::full(a.universe.size()).bits());
    for (unsigned m = 0;; ++m) {
      std::map<int, int> hm;
      if (h.diagram.bits() == 0) {
        // Regular clause: forms on a disjoint union of cells.
        if (a.contains_face(CoordSet{m})) {
          int count = static_cast<int>(p_subsets(m, p).size());
          if (count > 0) hm[0] = count;
        }
      } else {
        OmegaCube oc = omega_cube(h, p, static_cast<int>(piece), m);
        hm = cohomology_dims(simple(oc.cube));
      }
      if (!hm.empty()) rep.h[{base.pieces[piece].label, m}] = hm;
      for (const auto& [deg, dim] : hm) {
        auto it = rep.support_dims.find(deg);
        int weight_m = popcount_mask(m);
        if (it == rep.support_dims.end() || it->second < weight_m) rep.support_dims[deg] = weight_m;
      }
      if (m == full) break;
    }
  }

  int dx = dim_x ? *dim_x : -1;
  if ((p > dx || dx < 0) && !rep.h.empty()) rep.range_ok = false;
  for (const auto& [key, hm] : rep.h)
    for (const auto& [deg, dim] : hm)
      if (deg < 0 || deg > dx) rep.degree_bounds_ok = false;
  for (const auto& [deg, supp] : rep.support_dims)
    if (supp > dx - deg) rep.support_bound_ok = false;
  return rep;
}

namespace {

// Constant-coefficient cube: one generator per cell at each vertex.
Complex constant_cube_total(const Hyperresolution& h) {
  const DiagramOfSpaces& z = h.diagram;
  CubeCodiagram cube;
  cube.factor_bits = {z.bits()};
  for (unsigned alpha = 1; alpha < z.cube_size(); ++alpha)
    cube.at[alpha] = concentrated(0, static_cast<int>(z.at({alpha, 0}).pieces.size()));
  for (unsigned alpha = 1; alpha < z.cube_size(); ++alpha) {
    for (int k = 0; k < z.bits(); ++k) {
      if ((alpha >> k) & 1u) continue;
      unsigned beta = alpha | (1u << k);
      const SpaceMorphism& step = z.arrow({beta, 0}, {alpha, 0});
      MatQ mat(static_cast<int>(z.at({beta, 0}).pieces.size()),
               static_cast<int>(z.at({alpha, 0}).pieces.size()));
      for (size_t wprime = 0; wprime < step.assignment.size(); ++wprime)
        mat.at(static_cast<int>(wprime), step.assignment[wprime].target_piece) = 1;
      ChainMap f;
      f.source = cube.at[alpha];
      f.target = cube.at[beta];
      if (mat.rows() > 0 && mat.cols() > 0) f.comp[0] = mat;
      cube.maps[{alpha, beta}] = f;
    }
  }
  cube.validate();
  return simple(cube);
}

std::vector<int> betti_vector(const std::map<int, int>& h, int dim) {
  std::vector<int> out;
  for (int i = 0; i <= dim; ++i) out.push_back(h.count(i) ? h.at(i) : 0);
  return out;
}

}  // namespace

std::vector<int> constant_sheaf_descent(const Space& x) {
  Hyperresolution h = cubical_hyperresolution(x);
  const Space& base = h.diagram.at({0, 0});
  Dim d = base.dimension();
  if (!d) return {};
  if (h.diagram.bits() == 0) {
    std::vector<int> out(static_cast<size_t>(*d) + 1, 0);
    out[0] = static_cast<int>(base.pieces.size());
    return out;
  }
  return betti_vector(cohomology_dims(constant_cube_total(h)), *d);
}

namespace {

// Total complex of the nerve resolution with constant coefficients.
Complex nerve_constant_total(const SemisimplicialSpace& nerve) {
  Complex c;
  for (size_t k = 0; k < nerve.levels.size(); ++k) {
    int dk = static_cast<int>(nerve.levels[k].pieces.size());
    if (dk > 0) c.dims[static_cast<int>(k)] = dk;
  }
  for (size_t k = 0; k + 1 < nerve.levels.size(); ++k) {
    int rows = static_cast<int>(nerve.levels[k + 1].pieces.size());
    int cols = static_cast<int>(nerve.levels[k].pieces.size());
    if (rows == 0 || cols == 0) continue;
    MatQ m(rows, cols);
    for (int i = 0; i <= static_cast<int>(k) + 1; ++i) {
      const SpaceMorphism& face = nerve.faces[k + 1][i];
      Rat sign = (i % 2 == 0) ? 1 : -1;
      for (int c2 = 0; c2 < rows; ++c2) m.at(c2, face.assignment[c2].target_piece) += sign;
    }
    c.diff[static_cast<int>(k)] = m;
  }
  c.validate();
  return c;
}

// Total complex of the nerve resolution in one base multidegree.
Complex nerve_omega0_total(const SemisimplicialSpace& nerve, int base_piece, unsigned m) {
  CoordSet mset{m};
  // Valid cells per level and their indices.
  std::vector<std::vector<int>> valid(nerve.levels.size());
  std::vector<SpaceMorphism> to_base;
  for (size_t k = 0; k < nerve.levels.size(); ++k) {
    SpaceMorphism comp = (k == 0) ? nerve.augmentation
                                  : compose(to_base[k - 1], nerve.faces[k][0]);
    to_base.push_back(comp);
    for (size_t c = 0; c < nerve.levels[k].pieces.size(); ++c) {
      const PieceMap& pm = comp.assignment[c];
      if (pm.target_piece != base_piece) continue;
      if (!mset.subset_of(pm.image_universe(
              nerve.levels[k].pieces[c].arrangement.universe.size())))
        continue;
      if (!nerve.levels[k].pieces[c].arrangement.contains_face(pm.preimage_of(mset))) continue;
      valid[k].push_back(static_cast<int>(c));
    }
  }
  Complex out;
  for (size_t k = 0; k < valid.size(); ++k)
    if (!valid[k].empty()) out.dims[static_cast<int>(k)] = static_cast<int>(valid[k].size());
  for (size_t k = 0; k + 1 < valid.size(); ++k) {
    if (valid[k].empty() || valid[k + 1].empty()) continue;
    MatQ m2(static_cast<int>(valid[k + 1].size()), static_cast<int>(valid[k].size()));
    for (size_t row = 0; row < valid[k + 1].size(); ++row) {
      int cell = valid[k + 1][row];
      for (int i = 0; i <= static_cast<int>(k) + 1; ++i) {
        int target = nerve.faces[k + 1][i].assignment[cell].target_piece;
        auto it = std::find(valid[k].begin(), valid[k].end(), target);
        if (it == valid[k].end()) continue;
        Rat sign = (i % 2 == 0) ? 1 : -1;
        m2.at(static_cast<int>(row), static_cast<int>(it - valid[k].begin())) += sign;
      }
    }
    out.diff[static_cast<int>(k)] = m2;
  }
  out.validate();
  return out;
}

}  // namespace

std::map<std::pair<std::string, unsigned>, std::map<int, int>> omega0_via_nerve(const Space& x,
                                                                                int depth) {
  Space base = x;
  base.normalize();
  SemisimplicialSpace nerve = cech_nerve_resolution(base, depth);
  std::map<std::pair<std::string, unsigned>, std::map<int, int>> out;
  for (size_t p = 0; p < base.pieces.size(); ++p) {
    unsigned full = static_cast<unsigned>(
        CoordSet::full(base.pieces[p].arrangement.universe.size()).bits());
    for (unsigned m = 0;; ++m) {
      Complex total = nerve_omega0_total(nerve, static_cast<int>(p), m);
      auto h = cohomology_dims(total);
      // Degrees at the truncation edge are unreliable; drop them.
      h.erase(depth);
      if (!h.empty()) out[{base.pieces[p].label, m}] = h;
      if (m == full) break;
    }
  }
  return out;
}

IndependenceReport hyperres_independence_test(const Space& x) {
  IndependenceReport rep;
  Space base = x;
  base.normalize();
  Dim d = base.dimension();
  if (!d) return rep;  // empty space: both pipelines trivial
  int dim = *d;
  int depth = dim + 1;

  rep.betti_cubical = constant_sheaf_descent(base);
  SemisimplicialSpace nerve = cech_nerve_resolution(base, depth);
  rep.betti_cech = betti_vector(cohomology_dims(nerve_constant_total(nerve)), dim);
  if (rep.betti_cubical != rep.betti_cech) {
    rep.ok = false;
    rep.first_diff = "betti numbers disagree";
    return rep;
  }

  DuBoisResult cubical = du_bois_zero(base);
  std::map<std::pair<std::string, unsigned>, std::map<int, int>> cubical_h;
  for (const MultidegreeLine& line : cubical.report.lines) {
    std::map<int, int> hm;
    if (line.h0 > 0) hm[0] = line.h0;
    for (const auto& [deg, dimh] : line.higher) hm[deg] = dimh;
    if (!hm.empty()) cubical_h[{line.piece, line.mask}] = hm;
  }
  auto nerve_h = omega0_via_nerve(base, depth);
  // Compare in degrees 0..dim only.
  auto clip = [&](std::map<std::pair<std::string, unsigned>, std::map<int, int>>& table) {
    for (auto& [key, hm] : table)
      for (auto it = hm.begin(); it != hm.end();)
        it = (it->first < 0 || it->first > dim) ? hm.erase(it) : std::next(it);
    std::erase_if(table, [](const auto& kv) { return kv.second.empty(); });
  };
  clip(cubical_h);
  clip(nerve_h);
  if (cubical_h != nerve_h) {
    rep.ok = false;
    for (const auto& [key, hm] : cubical_h)
      if (!nerve_h.count(key) || nerve_h.at(key) != hm) {
        rep.first_diff = "omega0 cohomology disagrees at piece " + key.first + " multidegree " +
                         std::to_string(key.second);
        return rep;
      }
    rep.first_diff = "omega0 cohomology has extra nerve entries";
  }
  return rep;
}

std::string report_to_text(const OmegaZeroReport& r) {
  std::ostringstream os;
  os << "du bois verdict: " << (r.du_bois ? "true" : "false") << "\n";
  os << "piece,mask,sections,h0,higher,unit_qiso\n";
  for (const MultidegreeLine& line : r.lines) {
    os << line.piece << "," << line.mask << "," << line.sections_dim << "," << line.h0 << ",";
    bool first = true;
    for (const auto& [deg, dim] : line.higher) {
      os << (first ? "" : ";") << "h" << deg << "=" << dim;
      first = false;
    }
    os << "," << (line.unit_qiso ? "yes" : "no") << "\n";
  }
  return os.str();
}

std::string report_to_json(const OmegaZeroReport& r) {
  std::ostringstream os;
  os << "{\"du_bois\":" << (r.du_bois ? "true" : "false") << ",\"lines\":[";
  bool first = true;
  for (const MultidegreeLine& line : r.lines) {
    if (!first) os << ",";
    first = false;
    os << "{\"piece\":\"" << line.piece << "\",\"mask\":" << line.mask
       << ",\"sections\":" << line.sections_dim << ",\"h0\":" << line.h0 << ",\"unit_qiso\":"
       << (line.unit_qiso ? "true" : "false") << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace cubres
