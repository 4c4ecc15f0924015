#include "cubres/arrangement.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace cubres {

int CoordUniverse::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == name) return i;
  return -1;
}

bool Arrangement::is_antichain() const {
  for (size_t i = 0; i < facets.size(); ++i)
    for (size_t j = 0; j < facets.size(); ++j)
      if (i != j && facets[i].subset_of(facets[j])) return false;
  return true;
}

void Arrangement::normalize() {
  std::vector<CoordSet> keep;
  for (CoordSet f : facets) {
    bool dominated = false;
    for (CoordSet g : facets)
      if (!(f == g) && f.subset_of(g)) { dominated = true; break; }
    if (!dominated) keep.push_back(f);
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  facets = keep;
}

Dim Arrangement::dimension() const {
  Dim d;
  for (CoordSet f : facets) d = dim_max(d, f.size());
  return d;
}

std::vector<CoordSet> Arrangement::faces() const {
  std::set<CoordSet> out;
  for (CoordSet f : facets)
    for (CoordSet s : f.subsets()) out.insert(s);
  return {out.begin(), out.end()};
}

bool Arrangement::contains_face(CoordSet t) const {
  for (CoordSet f : facets)
    if (t.subset_of(f)) return true;
  return false;
}

void Space::validate() const {
  std::set<std::string> seen;
  for (const Piece& p : pieces) {
    if (!seen.insert(p.label).second) throw validation_error("duplicate piece label: " + p.label);
    std::set<std::string> coords;
    for (const auto& c : p.arrangement.universe.labels)
      if (!coords.insert(c).second)
        throw validation_error("duplicate coordinate name in piece " + p.label + ": " + c);
    if (!p.arrangement.is_antichain())
      throw validation_error("facets of piece " + p.label + " are not an antichain");
    for (CoordSet f : p.arrangement.facets)
      if (!f.subset_of(CoordSet::full(p.arrangement.universe.size())))
        throw validation_error("facet outside universe in piece " + p.label);
  }
}

void Space::normalize() {
  for (Piece& p : pieces) p.arrangement.normalize();
  std::erase_if(pieces, [](const Piece& p) { return p.arrangement.empty(); });
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.label < b.label; });
}

Dim Space::dimension() const {
  Dim d;
  for (const Piece& p : pieces) d = dim_max(d, p.arrangement.dimension());
  return d;
}

bool Space::is_regular() const {
  for (const Piece& p : pieces)
    if (p.arrangement.facets.size() != 1) return false;
  return true;
}

int Space::piece_index(const std::string& label) const {
  for (size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].label == label) return static_cast<int>(i);
  return -1;
}

CoordSet PieceMap::image_of(CoordSet s) const {
  CoordSet out;
  for (int i : s.elements()) out = out.with(coord_map[i]);
  return out;
}

CoordSet PieceMap::preimage_of(CoordSet t) const {
  CoordSet out;
  for (size_t i = 0; i < coord_map.size(); ++i)
    if (t.contains(coord_map[i])) out = out.with(static_cast<int>(i));
  return out;
}

CoordSet PieceMap::image_universe(int source_universe_size) const {
  CoordSet out;
  for (int i = 0; i < source_universe_size; ++i) out = out.with(coord_map[i]);
  return out;
}

void SpaceMorphism::validate() const {
  source.validate();
  target.validate();
  if (assignment.size() != source.pieces.size())
    throw validation_error("morphism assignment not total on source pieces");
  for (size_t p = 0; p < assignment.size(); ++p) {
    const PieceMap& pm = assignment[p];
    const Arrangement& src = source.pieces[p].arrangement;
    if (pm.target_piece < 0 || pm.target_piece >= static_cast<int>(target.pieces.size()))
      throw validation_error("morphism target piece out of range for " + source.pieces[p].label);
    const Arrangement& tgt = target.pieces[pm.target_piece].arrangement;
    if (static_cast<int>(pm.coord_map.size()) != src.universe.size())
      throw validation_error("coordinate map not total on piece " + source.pieces[p].label);
    std::set<int> hit;
    for (int c : pm.coord_map) {
      if (c < 0 || c >= tgt.universe.size())
        throw validation_error("coordinate map out of range on piece " + source.pieces[p].label);
      if (!hit.insert(c).second)
        throw validation_error("coordinate map not injective on piece " + source.pieces[p].label);
    }
    for (CoordSet f : src.facets)
      if (!tgt.contains_face(pm.image_of(f)))
        throw validation_error("facet " + to_string(f) + " of piece " + source.pieces[p].label +
                               " does not land in a target facet");
  }
}

SpaceMorphism SpaceMorphism::identity(const Space& x) {
  SpaceMorphism m;
  m.source = x;
  m.target = x;
  for (size_t p = 0; p < x.pieces.size(); ++p) {
    PieceMap pm;
    pm.target_piece = static_cast<int>(p);
    pm.coord_map.resize(x.pieces[p].arrangement.universe.size());
    for (size_t i = 0; i < pm.coord_map.size(); ++i) pm.coord_map[i] = static_cast<int>(i);
    m.assignment.push_back(pm);
  }
  return m;
}

SpaceMorphism compose(const SpaceMorphism& g, const SpaceMorphism& f) {
  if (!(f.target == g.source)) throw validation_error("compose: middle spaces differ");
  SpaceMorphism h;
  h.source = f.source;
  h.target = g.target;
  for (size_t p = 0; p < f.assignment.size(); ++p) {
    const PieceMap& a = f.assignment[p];
    const PieceMap& b = g.assignment[a.target_piece];
    PieceMap c;
    c.target_piece = b.target_piece;
    c.coord_map.resize(a.coord_map.size());
    for (size_t i = 0; i < a.coord_map.size(); ++i) c.coord_map[i] = b.coord_map[a.coord_map[i]];
    h.assignment.push_back(c);
  }
  return h;
}

SpaceMorphism inclusion_morphism(const Space& sub, const Space& super) {
  SpaceMorphism m;
  m.source = sub;
  m.target = super;
  for (const Piece& p : sub.pieces) {
    int t = super.piece_index(p.label);
    if (t < 0) throw validation_error("inclusion: no piece named " + p.label + " in superspace");
    if (!(super.pieces[t].arrangement.universe == p.arrangement.universe))
      throw validation_error("inclusion: universe mismatch on piece " + p.label);
    PieceMap pm;
    pm.target_piece = t;
    pm.coord_map.resize(p.arrangement.universe.size());
    for (size_t i = 0; i < pm.coord_map.size(); ++i) pm.coord_map[i] = static_cast<int>(i);
    m.assignment.push_back(pm);
  }
  m.validate();
  return m;
}

bool subspace_contained(const Space& sub, const Space& super) {
  for (const Piece& p : sub.pieces) {
    int t = super.piece_index(p.label);
    if (t < 0) return false;
    for (CoordSet f : p.arrangement.facets)
      if (!super.pieces[t].arrangement.contains_face(f)) return false;
  }
  return true;
}

namespace {

std::string facet_name(const Arrangement& a, CoordSet f) {
  if (f.empty()) return "pt";
  std::string out;
  for (int i : f.elements()) {
    if (!out.empty()) out += "+";
    out += a.universe.labels[i];
  }
  return out;
}

}  // namespace

Components irreducible_components(const Space& x) {
  Components out;
  out.normalization.target = x;
  for (size_t p = 0; p < x.pieces.size(); ++p) {
    const Arrangement& a = x.pieces[p].arrangement;
    for (size_t fi = 0; fi < a.facets.size(); ++fi) {
      CoordSet f = a.facets[fi];
      Piece cell;
      cell.label = x.pieces[p].label + "/" + facet_name(a, f);
      for (int i : f.elements()) cell.arrangement.universe.labels.push_back(a.universe.labels[i]);
      cell.arrangement.facets = {CoordSet::full(f.size())};
      out.space.pieces.push_back(cell);
      PieceMap pm;
      pm.target_piece = static_cast<int>(p);
      pm.coord_map = f.elements();
      out.normalization.assignment.push_back(pm);
      out.origin.emplace_back(static_cast<int>(p), static_cast<int>(fi));
    }
  }
  out.normalization.source = out.space;
  out.normalization.validate();
  return out;
}

FiberProduct fiber_product(const SpaceMorphism& f, const SpaceMorphism& g) {
  if (!(f.target == g.target)) throw validation_error("fiber_product: targets differ");
  FiberProduct out;
  for (size_t p = 0; p < f.source.pieces.size(); ++p) {
    for (size_t q = 0; q < g.source.pieces.size(); ++q) {
      const PieceMap& fp = f.assignment[p];
      const PieceMap& gq = g.assignment[q];
      if (fp.target_piece != gq.target_piece) continue;
      const Arrangement& s = f.target.pieces[fp.target_piece].arrangement;
      const Arrangement& ap = f.source.pieces[p].arrangement;
      const Arrangement& aq = g.source.pieces[q].arrangement;
      // Coordinates where both projections are defined.
      CoordSet common = fp.image_universe(ap.universe.size()) & gq.image_universe(aq.universe.size());
      Arrangement cell;
      for (int i : common.elements()) cell.universe.labels.push_back(s.universe.labels[i]);
      auto compress = [&](CoordSet t) {
        CoordSet out_set;
        int slot = 0;
        for (int i : common.elements()) {
          if (t.contains(i)) out_set = out_set.with(slot);
          ++slot;
        }
        return out_set;
      };
      for (CoordSet F : ap.facets)
        for (CoordSet G : aq.facets) cell.facets.push_back(compress(fp.image_of(F) & gq.image_of(G)));
      cell.normalize();
      if (cell.facets.empty() && !(ap.facets.empty() || aq.facets.empty())) {
        // all candidate cells were dominated into nothing: cannot happen,
        // normalize() keeps at least the maximal ones
      }
      if (cell.facets.empty()) continue;
      Piece piece;
      piece.label = f.source.pieces[p].label + "|" + g.source.pieces[q].label;
      piece.arrangement = cell;
      out.space.pieces.push_back(piece);
      out.piece_origin.emplace_back(static_cast<int>(p), static_cast<int>(q));

      PieceMap left, right;
      left.target_piece = static_cast<int>(p);
      right.target_piece = static_cast<int>(q);
      for (int i : common.elements()) {
        left.coord_map.push_back(fp.preimage_of(CoordSet::single(i)).elements().at(0));
        right.coord_map.push_back(gq.preimage_of(CoordSet::single(i)).elements().at(0));
      }
      out.proj_left.assignment.push_back(left);
      out.proj_right.assignment.push_back(right);
    }
  }
  out.proj_left.source = out.space;
  out.proj_left.target = f.source;
  out.proj_right.source = out.space;
  out.proj_right.target = g.source;
  out.proj_left.validate();
  out.proj_right.validate();
  return out;
}

SpaceMorphism fiber_product_mediate(const FiberProduct& fp, const SpaceMorphism& f,
                                    const SpaceMorphism& g, const SpaceMorphism& left,
                                    const SpaceMorphism& right) {
  if (!(left.source == right.source)) throw validation_error("mediate: span sources differ");
  SpaceMorphism lf = compose(f, left);
  SpaceMorphism rg = compose(g, right);
  if (!(lf == rg)) throw validation_error("mediate: span does not commute over the base");
  SpaceMorphism m;
  m.source = left.source;
  m.target = fp.space;
  for (size_t t = 0; t < left.source.pieces.size(); ++t) {
    int px = left.assignment[t].target_piece;
    int qy = right.assignment[t].target_piece;
    int cell = -1;
    for (size_t c = 0; c < fp.piece_origin.size(); ++c)
      if (fp.piece_origin[c] == std::make_pair(px, qy)) { cell = static_cast<int>(c); break; }
    if (cell < 0) throw validation_error("mediate: no fiber-product cell for the landing pieces");
    const PieceMap& fpm = f.assignment[px];
    PieceMap pm;
    pm.target_piece = cell;
    const Arrangement& cellArr = fp.space.pieces[cell].arrangement;
    // Cell coordinates are named by base coordinates; route through f's map.
    for (size_t i = 0; i < left.source.pieces[t].arrangement.universe.labels.size(); ++i) {
      int in_x = left.assignment[t].coord_map[i];
      int in_base = fpm.coord_map[in_x];
      int slot = cellArr.universe.index_of(f.target.pieces[fpm.target_piece].arrangement.universe.labels[in_base]);
      if (slot < 0) throw validation_error("mediate: coordinate missing in fiber-product cell");
      pm.coord_map.push_back(slot);
    }
    m.assignment.push_back(pm);
  }
  m.validate();
  // Mediating property: projections recover the span.
  if (!(compose(fp.proj_left, m) == left) || !(compose(fp.proj_right, m) == right))
    throw validation_error("mediate: projections do not recover the span");
  return m;
}

int fiber_cardinality(const SpaceMorphism& f, int target_piece, CoordSet t) {
  int count = 0;
  for (size_t p = 0; p < f.source.pieces.size(); ++p) {
    const PieceMap& pm = f.assignment[p];
    if (pm.target_piece != target_piece) continue;
    CoordSet img = pm.image_universe(f.source.pieces[p].arrangement.universe.size());
    if (!t.subset_of(img)) continue;
    if (f.source.pieces[p].arrangement.contains_face(pm.preimage_of(t))) ++count;
  }
  return count;
}

Space discriminant(const SpaceMorphism& f) {
  Space out;
  for (size_t tp = 0; tp < f.target.pieces.size(); ++tp) {
    const Arrangement& ta = f.target.pieces[tp].arrangement;
    Arrangement bad;
    bad.universe = ta.universe;
    for (CoordSet t : ta.faces())
      if (fiber_cardinality(f, static_cast<int>(tp), t) != 1) bad.facets.push_back(t);
    bad.normalize();
    if (!bad.facets.empty())
      out.pieces.push_back({f.target.pieces[tp].label, bad});
  }
  return out;
}

Space image_closure(const SpaceMorphism& f) {
  Space out;
  for (size_t tp = 0; tp < f.target.pieces.size(); ++tp) {
    Arrangement img;
    img.universe = f.target.pieces[tp].arrangement.universe;
    for (size_t p = 0; p < f.source.pieces.size(); ++p) {
      const PieceMap& pm = f.assignment[p];
      if (pm.target_piece != static_cast<int>(tp)) continue;
      for (CoordSet F : f.source.pieces[p].arrangement.facets) img.facets.push_back(pm.image_of(F));
    }
    img.normalize();
    if (!img.facets.empty()) out.pieces.push_back({f.target.pieces[tp].label, img});
  }
  return out;
}

SpaceMorphism restrict_morphism(const SpaceMorphism& f, const Space& sub) {
  if (!subspace_contained(sub, f.source))
    throw validation_error("restrict_morphism: not a closed subspace of the source");
  SpaceMorphism r;
  r.source = sub;
  r.target = f.target;
  for (const Piece& p : sub.pieces) {
    int sp = f.source.piece_index(p.label);
    r.assignment.push_back(f.assignment[sp]);
  }
  r.validate();
  return r;
}

S2Witness s2_check(const Arrangement& a) {
  S2Witness w;
  const auto& F = a.facets;
  int n = static_cast<int>(F.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      CoordSet meet = F[i] & F[j];
      // BFS over facets; step u -> v allowed when the intersection has
      // codimension one in both and still contains meet.
      std::vector<int> prev(n, -2);
      std::deque<int> queue{i};
      prev[i] = -1;
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == j) break;
        for (int v = 0; v < n; ++v) {
          if (prev[v] != -2 || v == u) continue;
          CoordSet iv = F[u] & F[v];
          if (!meet.subset_of(iv)) continue;
          if (F[u].size() - iv.size() != 1 || F[v].size() - iv.size() != 1) continue;
          prev[v] = u;
          queue.push_back(v);
        }
      }
      if (prev[j] == -2) {
        w.ok = false;
        w.bad_f = F[i];
        w.bad_g = F[j];
        return w;
      }
      std::vector<int> chain;
      for (int v = j; v != -1; v = prev[v]) chain.push_back(v);
      std::reverse(chain.begin(), chain.end());
      w.chains[{i, j}] = chain;
    }
  }
  w.ok = true;
  return w;
}

CoordSet BoundaryDivisor::support() const {
  CoordSet s;
  for (const auto& [i, b] : coefficients)
    if (b != 0) s = s.with(i);
  return s;
}

bool BoundaryDivisor::coefficients_in_unit_interval() const {
  for (const auto& [i, b] : coefficients)
    if (b < 0 || b > 1) return false;
  return true;
}

GncReport gnc_local_model_check(const Arrangement& a, const BoundaryDivisor& b) {
  GncReport r;
  r.antichain = a.is_antichain();
  if (!r.antichain) {
    r.diagnostic = "facets are not an antichain";
    return r;
  }
  S2Witness s2 = s2_check(a);
  r.s2 = s2.ok;
  if (!r.s2) r.diagnostic = "S2 chain condition fails for pair " + to_string(s2.bad_f) + ", " + to_string(s2.bad_g);

  CoordSet sigma = a.facets.empty() ? CoordSet{} : a.facets[0];
  for (CoordSet f : a.facets) sigma = sigma & f;

  r.codim1_face_condition = true;
  for (CoordSet f : a.facets) {
    for (int i : (f - sigma).elements()) {
      CoordSet tau = f.without(i);
      bool found = false;
      for (CoordSet g : a.facets)
        if (!(g == f) && (f & g) == tau) { found = true; break; }
      if (!found) {
        r.codim1_face_condition = false;
        if (r.diagnostic.empty())
          r.diagnostic = "codim-1 face " + to_string(tau) + " of facet " + to_string(f) +
                         " is not a facet intersection";
      }
    }
  }

  r.boundary_ok = b.support().subset_of(sigma) && b.coefficients_in_unit_interval();
  if (!r.boundary_ok && r.diagnostic.empty()) {
    if (!b.support().subset_of(sigma))
      r.diagnostic = "boundary supported outside sigma = " + to_string(sigma);
    else
      r.diagnostic = "boundary coefficient outside [0,1]";
  }

  r.ok = r.antichain && r.s2 && r.codim1_face_condition && r.boundary_ok;
  return r;
}

}  // namespace cubres
