#include "cubres/hyperres.hpp"

#include <algorithm>
#include <set>

namespace cubres {

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

// The cell A_F inside one piece, as a standalone single-piece space keeping
// the piece's label and universe.
Space cell_subspace(const Space& s, int piece, CoordSet facet) {
  Space out;
  Piece p;
  p.label = s.pieces[piece].label;
  p.arrangement.universe = s.pieces[piece].arrangement.universe;
  p.arrangement.facets = {facet};
  out.pieces.push_back(p);
  return out;
}

bool is_cell(const Space& s) {
  return s.pieces.size() == 1 && s.pieces[0].arrangement.facets.size() == 1;
}

// Re-presents an irreducible cell on its own trimmed universe, with the
// isomorphism onto the input.  The resolution step of the induction: cells
// of this class are affine spaces, so resolving is re-presentation.
std::pair<Space, SpaceMorphism> standard_cell(const Space& cell, const std::string& label) {
  if (!is_cell(cell)) throw validation_error("resolution step expects an irreducible cell");
  const Arrangement& a = cell.pieces[0].arrangement;
  CoordSet f = a.facets[0];
  Space std_cell;
  Piece p;
  p.label = label;
  for (int i : f.elements()) p.arrangement.universe.labels.push_back(a.universe.labels[i]);
  p.arrangement.facets = {CoordSet::full(f.size())};
  std_cell.pieces.push_back(p);
  SpaceMorphism iso;
  iso.source = std_cell;
  iso.target = cell;
  PieceMap pm;
  pm.target_piece = 0;
  pm.coord_map = f.elements();
  iso.assignment.push_back(pm);
  iso.validate();
  return {std_cell, iso};
}

Space union_subspace(const Space& a, const Space& b) {
  Space out = a;
  for (const Piece& p : b.pieces) {
    int i = out.piece_index(p.label);
    if (i < 0) {
      out.pieces.push_back(p);
    } else {
      for (CoordSet f : p.arrangement.facets) out.pieces[i].arrangement.facets.push_back(f);
      out.pieces[i].arrangement.normalize();
    }
  }
  out.normalize();
  return out;
}

// Retargets a morphism into a closed subspace of its target that contains
// the image.
SpaceMorphism retarget_into_subspace(const SpaceMorphism& m, const Space& sub) {
  SpaceMorphism out;
  out.source = m.source;
  out.target = sub;
  for (size_t p = 0; p < m.assignment.size(); ++p) {
    PieceMap pm = m.assignment[p];
    int idx = sub.piece_index(m.target.pieces[pm.target_piece].label);
    if (idx < 0) throw validation_error("retarget: image piece missing in subspace");
    pm.target_piece = idx;
    out.assignment.push_back(pm);
  }
  out.validate();
  return out;
}

bool all_regular(const DiagramOfSpaces& d) {
  for (CubeVertex v : d.vertices())
    if (!d.at(v).is_regular()) return false;
  return true;
}

}  // namespace

SigmaSet sigma_set(const DiagramOfSpaces& s) {
  SigmaSet out;
  for (CubeVertex v : s.vertices()) {
    std::set<SigmaCell> acc;
    for (CubeVertex w : s.vertices()) {
      if (!s.comparable(v, w)) continue;
      const Space& sw = s.at(w);
      for (size_t pw = 0; pw < sw.pieces.size(); ++pw) {
        for (CoordSet fw : sw.pieces[pw].arrangement.facets) {
          if (w == v) {
            acc.insert({static_cast<int>(pw), fw});
          } else {
            const PieceMap& pm = s.arrow(w, v).assignment[pw];
            acc.insert({pm.target_piece, pm.image_of(fw)});
          }
        }
      }
    }
    out.cells[v] = {acc.begin(), acc.end()};
  }
  for (CubeVertex hi : s.vertices()) {
    for (CubeVertex lo : s.vertices()) {
      if (lo == hi || !s.comparable(lo, hi)) continue;
      std::vector<int> idx;
      for (const SigmaCell& c : out.cells[hi]) {
        const PieceMap& pm = s.arrow(hi, lo).assignment[c.piece];
        SigmaCell image{pm.target_piece, pm.image_of(c.facet)};
        auto& lo_cells = out.cells[lo];
        auto it = std::lower_bound(lo_cells.begin(), lo_cells.end(), image);
        if (it == lo_cells.end() || !(*it == image))
          throw validation_error("sigma set not closed under the index maps");
        idx.push_back(static_cast<int>(it - lo_cells.begin()));
      }
      out.maps[{hi, lo}] = idx;
    }
  }
  return out;
}

bool sigma_isomorphic_via(const DiagramMorphism& f) {
  SigmaSet sx = sigma_set(f.source);
  SigmaSet ss = sigma_set(f.target);
  std::map<CubeVertex, std::vector<int>> phi;  // X-cell index -> S-cell index
  for (CubeVertex v : f.source.vertices()) {
    const auto& xc = sx.cells[v];
    const auto& sc = ss.cells[v];
    if (xc.size() != sc.size()) return false;
    std::vector<int> map_v;
    std::set<int> hit;
    for (const SigmaCell& c : xc) {
      const PieceMap& pm = f.at.at(v).assignment[c.piece];
      SigmaCell image{pm.target_piece, pm.image_of(c.facet)};
      auto it = std::lower_bound(sc.begin(), sc.end(), image);
      if (it == sc.end() || !(*it == image)) return false;
      int idx = static_cast<int>(it - sc.begin());
      if (!hit.insert(idx).second) return false;  // not injective
      map_v.push_back(idx);
    }
    phi[v] = map_v;
  }
  for (const auto& [pair, xmap] : sx.maps) {
    const auto& smap = ss.maps.at(pair);
    const auto& [hi, lo] = pair;
    for (size_t a = 0; a < xmap.size(); ++a)
      if (smap[phi[hi][a]] != phi[lo][xmap[a]]) return false;
  }
  return true;
}

StrictTransform strict_transform(const SpaceMorphism& a, const SpaceMorphism& f) {
  if (!(a.target == f.target)) throw validation_error("strict transform: targets differ");
  // Dominance onto the components the map hits: every image facet must be a
  // facet of the target, not a strict subface.
  for (const Piece& image_piece : image_closure(a).pieces) {
    const Arrangement& tgt = a.target.pieces[a.target.piece_index(image_piece.label)].arrangement;
    for (CoordSet g : image_piece.arrangement.facets) {
      bool is_target_facet = false;
      for (CoordSet tf : tgt.facets)
        if (tf == g) is_target_facet = true;
      if (!is_target_facet) throw validation_error("strict transform: map is not dominant");
    }
  }

  Space delta = discriminant(f);
  FiberProduct fp = fiber_product(f, a);
  // Keep the cells whose generic point maps off the discriminant.
  Space z;
  std::vector<int> kept_pieces;
  for (size_t c = 0; c < fp.space.pieces.size(); ++c) {
    const Piece& piece = fp.space.pieces[c];
    const PieceMap& to_mod = fp.proj_left.assignment[c];
    const PieceMap& mod_to_base = f.assignment[to_mod.target_piece];
    Arrangement keep;
    keep.universe = piece.arrangement.universe;
    for (CoordSet h : piece.arrangement.facets) {
      CoordSet t = mod_to_base.image_of(to_mod.image_of(h));
      int dp = delta.piece_index(f.target.pieces[mod_to_base.target_piece].label);
      bool in_delta = dp >= 0 && delta.pieces[dp].arrangement.contains_face(t);
      if (!in_delta) keep.facets.push_back(h);
    }
    keep.normalize();
    if (!keep.facets.empty()) {
      z.pieces.push_back({piece.label, keep});
      kept_pieces.push_back(static_cast<int>(c));
    }
  }
  StrictTransform st;
  st.z = z;
  st.to_modification = restrict_morphism(fp.proj_left, z);
  st.to_source = restrict_morphism(fp.proj_right, z);
  return st;
}

UpperEnvelope upper_envelope(const Space& base, const std::vector<SpaceMorphism>& family) {
  UpperEnvelope out;
  if (family.empty()) {
    out.space = base;
    out.to_base = SpaceMorphism::identity(base);
    return out;
  }
  for (const SpaceMorphism& f : family)
    if (!(f.target == base)) throw validation_error("upper envelope: family member target differs");

  Space acc = family[0].source;
  SpaceMorphism to_base = family[0];
  std::vector<SpaceMorphism> projections{SpaceMorphism::identity(family[0].source)};
  for (size_t r = 1; r < family.size(); ++r) {
    FiberProduct fp = fiber_product(to_base, family[r]);
    for (SpaceMorphism& proj : projections) proj = compose(proj, fp.proj_left);
    projections.push_back(fp.proj_right);
    to_base = compose(to_base, fp.proj_left);
    acc = fp.space;
  }
  Space delta;
  for (const SpaceMorphism& f : family) delta = union_subspace(delta, discriminant(f));

  Space env;
  for (size_t c = 0; c < acc.pieces.size(); ++c) {
    Arrangement keep;
    keep.universe = acc.pieces[c].arrangement.universe;
    int base_piece = to_base.assignment[c].target_piece;
    int dp = delta.piece_index(base.pieces[base_piece].label);
    for (CoordSet h : acc.pieces[c].arrangement.facets) {
      CoordSet t = to_base.assignment[c].image_of(h);
      bool in_delta = dp >= 0 && delta.pieces[dp].arrangement.contains_face(t);
      if (!in_delta) keep.facets.push_back(h);
    }
    keep.normalize();
    if (!keep.facets.empty()) env.pieces.push_back({acc.pieces[c].label, keep});
  }
  out.space = env;
  out.to_base = restrict_morphism(to_base, env);
  for (const SpaceMorphism& proj : projections) out.projections.push_back(restrict_morphism(proj, env));
  return out;
}

DiagramMorphism very_weak_resolution(const DiagramOfSpaces& s) {
  SigmaSet sig = sigma_set(s);
  std::vector<CubeVertex> order = s.linear_vertices();

  struct ResolvedCell {
    Space cell;                // standard cell on its own universe
    SpaceMorphism to_base;     // cell -> cell_subspace(S_v, piece, facet)
    std::map<CubeVertex, SpaceMorphism> to_lower;  // cell -> resolved cell at lo
  };
  std::map<CubeVertex, std::vector<ResolvedCell>> resolved;

  for (CubeVertex v : order) {
    const Space& sv = s.at(v);
    std::vector<ResolvedCell> cells_v;
    for (size_t ai = 0; ai < sig.cells[v].size(); ++ai) {
      const SigmaCell& alpha = sig.cells[v][ai];
      Space base_cell = cell_subspace(sv, alpha.piece, alpha.facet);

      // Strict transforms over every arrow into an already-resolved vertex.
      std::vector<CubeVertex> lowers;
      std::vector<StrictTransform> transforms;
      for (CubeVertex lo : order) {
        if (lo == v) break;  // order is a linear extension
        if (!s.comparable(lo, v)) continue;
        int beta = sig.maps.at({v, lo})[ai];
        const SigmaCell& bc = sig.cells[lo][beta];
        Space lo_cell = cell_subspace(s.at(lo), bc.piece, bc.facet);
        SpaceMorphism a;
        a.source = base_cell;
        a.target = lo_cell;
        PieceMap pm = s.arrow(v, lo).assignment[alpha.piece];
        pm.target_piece = 0;
        a.assignment.push_back(pm);
        a.validate();
        SpaceMorphism f = resolved[lo][beta].to_base;
        transforms.push_back(strict_transform(a, f));
        lowers.push_back(lo);
      }

      std::vector<SpaceMorphism> family;
      for (const StrictTransform& st : transforms) family.push_back(st.to_source);
      UpperEnvelope env = upper_envelope(base_cell, family);

      std::string label = sv.pieces[alpha.piece].label + "/" +
                          facet_name(sv.pieces[alpha.piece].arrangement, alpha.facet);
      auto [cell, iso] = standard_cell(env.space, label);

      ResolvedCell rc;
      rc.cell = cell;
      rc.to_base = compose(env.to_base, iso);
      for (size_t u = 0; u < lowers.size(); ++u) {
        SpaceMorphism into_w = compose(env.projections[u], iso);
        rc.to_lower[lowers[u]] = compose(transforms[u].to_modification, into_w);
      }
      cells_v.push_back(std::move(rc));
    }
    resolved[v] = std::move(cells_v);
  }

  // Assemble the resolved diagram and the augmentation.
  DiagramOfSpaces x(s.bits(), s.cat());
  DiagramMorphism f;
  for (CubeVertex v : s.vertices()) {
    Space xv;
    SpaceMorphism fv;
    for (const auto& rc : resolved[v]) {
      xv.pieces.push_back(rc.cell.pieces[0]);
      PieceMap pm = rc.to_base.assignment[0];
      pm.target_piece = sig.cells[v][xv.pieces.size() - 1].piece;
      fv.assignment.push_back(pm);
    }
    fv.source = xv;
    fv.target = s.at(v);
    fv.validate();
    x.set_space(v, xv);
    f.at[v] = fv;
  }
  for (CubeVertex hi : x.vertices()) {
    for (CubeVertex lo : x.down_covers(hi)) {
      SpaceMorphism m;
      m.source = x.at(hi);
      m.target = x.at(lo);
      for (size_t ai = 0; ai < resolved[hi].size(); ++ai) {
        const SpaceMorphism& comp = resolved[hi][ai].to_lower.at(lo);
        PieceMap pm = comp.assignment[0];
        pm.target_piece = sig.maps.at({hi, lo})[ai];
        m.assignment.push_back(pm);
      }
      m.validate();
      x.set_generator(hi, lo, m);
    }
  }
  x.finalize();
  f.source = x;
  f.target = s;
  f.validate();

  if (!all_regular(x)) throw validation_error("very weak resolution produced a singular diagram");
  if (!sigma_isomorphic_via(f))
    throw validation_error("very weak resolution does not preserve the sigma set");
  // Steenbrink-corrected inequalities: against dim(S), not the per-object dims.
  Dim dim_s = s.dimension();
  for (CubeVertex v : s.vertices()) {
    Space delta_v = discriminant(f.at.at(v));
    if (!delta_v.empty() && !dim_less(delta_v.dimension(), dim_s))
      throw validation_error("discriminant dimension bound fails in the very weak resolution");
    if (!delta_v.empty()) {
      FiberProduct pre = fiber_product(inclusion_morphism(delta_v, s.at(v)), f.at.at(v));
      if (!pre.space.empty() && !dim_less(pre.space.dimension(), dim_s))
        throw validation_error("discriminant preimage dimension bound fails in the very weak resolution");
    }
  }
  return f;
}

DiagramOfSpaces diagram_discriminant(const DiagramMorphism& f) {
  const DiagramOfSpaces& s = f.target;
  std::map<CubeVertex, Space> dv;
  for (CubeVertex v : s.vertices()) dv[v] = discriminant(f.at.at(v));
  // Saturate to a closed sub-diagram: images of higher discriminants land in
  // lower ones.
  bool changed = true;
  while (changed) {
    changed = false;
    for (CubeVertex hi : s.vertices()) {
      if (dv[hi].empty()) continue;
      for (CubeVertex lo : s.vertices()) {
        if (lo == hi || !s.comparable(lo, hi)) continue;
        SpaceMorphism restricted = restrict_morphism(s.arrow(hi, lo), dv[hi]);
        Space img = image_closure(restricted);
        Space merged = union_subspace(dv[lo], img);
        if (!(merged == dv[lo])) {
          dv[lo] = merged;
          changed = true;
        }
      }
    }
  }
  DiagramOfSpaces d(s.bits(), s.cat());
  for (CubeVertex v : s.vertices()) d.set_space(v, dv[v]);
  for (CubeVertex hi : d.vertices())
    for (CubeVertex lo : d.down_covers(hi)) {
      SpaceMorphism restricted = restrict_morphism(s.arrow(hi, lo), dv[hi]);
      d.set_generator(hi, lo, retarget_into_subspace(restricted, dv[lo]));
    }
  d.finalize();
  return d;
}

DiagramOfSpaces two_resolution(const DiagramOfSpaces& s) {
  DiagramMorphism f = very_weak_resolution(s);
  DiagramOfSpaces delta = diagram_discriminant(f);

  // Reduced pullbacks with their induced arrows.
  std::map<CubeVertex, FiberProduct> pullback;
  std::map<CubeVertex, SpaceMorphism> incl;
  for (CubeVertex v : s.vertices()) {
    incl[v] = inclusion_morphism(delta.at(v), s.at(v));
    pullback[v] = fiber_product(incl[v], f.at.at(v));
  }

  int b = s.bits();
  unsigned second = 1u << b;      // new alpha_1 bit
  unsigned lead = 1u << (b + 1);  // new alpha_0 bit (fixed to 1 when recursing)
  DiagramOfSpaces z(b + 2, s.cat());
  for (CubeVertex v : s.vertices()) {
    z.set_space({v.mask, v.iobj}, s.at(v));
    z.set_space({v.mask | second, v.iobj}, f.source.at(v));
    z.set_space({v.mask | lead, v.iobj}, delta.at(v));
    z.set_space({v.mask | lead | second, v.iobj}, pullback[v].space);
  }
  for (CubeVertex v : s.vertices()) {
    // New-bit flips.
    z.set_generator({v.mask | second, v.iobj}, {v.mask, v.iobj}, f.at.at(v));
    z.set_generator({v.mask | lead, v.iobj}, {v.mask, v.iobj}, incl[v]);
    z.set_generator({v.mask | lead | second, v.iobj}, {v.mask | second, v.iobj},
                    pullback[v].proj_right);
    z.set_generator({v.mask | lead | second, v.iobj}, {v.mask | lead, v.iobj},
                    pullback[v].proj_left);
  }
  // Inherited covers inside each of the four layers.
  DiagramOfSpaces x = f.source;
  for (CubeVertex hi : s.vertices()) {
    for (CubeVertex lo : s.down_covers(hi)) {
      z.set_generator({hi.mask, hi.iobj}, {lo.mask, lo.iobj}, s.arrow(hi, lo));
      z.set_generator({hi.mask | second, hi.iobj}, {lo.mask | second, lo.iobj}, x.arrow(hi, lo));
      z.set_generator({hi.mask | lead, hi.iobj}, {lo.mask | lead, lo.iobj}, delta.arrow(hi, lo));
      SpaceMorphism left = compose(delta.arrow(hi, lo), pullback[hi].proj_left);
      SpaceMorphism right = compose(x.arrow(hi, lo), pullback[hi].proj_right);
      z.set_generator({hi.mask | lead | second, hi.iobj}, {lo.mask | lead | second, lo.iobj},
                      fiber_product_mediate(pullback[lo], incl[lo], f.at.at(lo), left, right));
    }
  }
  z.finalize();
  return z;
}

DiagramOfSpaces as_point_diagram(const Space& x) {
  DiagramOfSpaces d(0, FinOrdCat::point());
  Space normalized = x;
  normalized.normalize();
  normalized.validate();
  d.set_space({0, 0}, normalized);
  d.finalize();
  return d;
}

Hyperresolution cubical_hyperresolution(const DiagramOfSpaces& s) {
  Hyperresolution out;
  out.base_bits = s.bits();
  DiagramOfSpaces cur = s;
  Dim prev = cur.dimension();
  while (!all_regular(cur)) {
    DiagramOfSpaces stage = two_resolution(cur);
    out.stages.push_back(stage);
    cur = fix_first_bit(stage, 1);
    Dim now = cur.dimension();
    if (!dim_less(now, prev)) throw validation_error("hyperresolution recursion failed to drop dimension");
    prev = now;
  }
  out.diagram = out.stages.empty() ? s : reduction(out.stages);
  return out;
}

Hyperresolution cubical_hyperresolution(const Space& x) {
  return cubical_hyperresolution(as_point_diagram(x));
}

bool is_closed_immersion(const SpaceMorphism& m) {
  std::set<int> seen;
  for (const PieceMap& pm : m.assignment)
    if (!seen.insert(pm.target_piece).second) return false;
  return true;
}

HyperresAudit audit_hyperresolution(const Hyperresolution& h, const DiagramOfSpaces& s) {
  HyperresAudit audit;
  Dim dim_s = s.dimension();
  const DiagramOfSpaces& z = h.diagram;
  for (CubeVertex v : z.vertices()) {
    int alpha = weight(v.mask >> h.base_bits);
    if (alpha == 0) continue;
    AuditRow row;
    row.vertex = v;
    row.dim = z.at(v).dimension();
    row.bound = (dim_s ? *dim_s : 0) - alpha + 1;
    row.regular = z.at(v).is_regular();
    row.bound_ok = z.at(v).empty() || (dim_s && dim_leq(row.dim, row.bound));
    if (!row.regular || !row.bound_ok) audit.ok = false;
    audit.rows.push_back(row);
  }
  // Constituent squares are acyclic squares.
  for (const DiagramOfSpaces& stage : h.stages) {
    int b = stage.bits() - 2;
    unsigned second = 1u << b, lead = 1u << (b + 1);
    for (unsigned rest = 0; rest < (1u << b); ++rest) {
      for (int i = 0; i < stage.cat().objects(); ++i) {
        CubeVertex cs{rest, i}, cx{rest | second, i}, cd{rest | lead, i},
            cp{rest | lead | second, i};
        const SpaceMorphism& fv = stage.arrow(cx, cs);
        const SpaceMorphism& iv = stage.arrow(cd, cs);
        if (!is_closed_immersion(iv) || !is_closed_immersion(stage.arrow(cp, cx))) {
          audit.squares_ok = false;
          audit.square_diag = "inclusion leg is not a closed immersion";
        }
        FiberProduct fp = fiber_product(iv, fv);
        if (!(fp.space == stage.at(cp))) {
          audit.squares_ok = false;
          audit.square_diag = "square is not Cartesian";
        }
        Space disc = discriminant(fv);
        if (!subspace_contained(disc, stage.at(cd))) {
          audit.squares_ok = false;
          audit.square_diag = "closed leg does not contain the discriminant";
        }
      }
    }
  }
  if (!audit.squares_ok) audit.ok = false;
  return audit;
}

SemisimplicialSpace cech_nerve_resolution(const Space& x, int depth) {
  if (depth < 0) throw validation_error("cech nerve depth must be nonnegative");
  Space base = x;
  base.normalize();
  SemisimplicialSpace out;

  // Level k: one cell per (piece, (k+1)-tuple of facets), on the universe of
  // the tuple intersection.
  struct CellRef {
    int piece;
    std::vector<int> tuple;
    CoordSet meet;
  };
  std::vector<std::vector<CellRef>> refs(depth + 1);
  for (int k = 0; k <= depth; ++k) {
    Space level;
    for (size_t p = 0; p < base.pieces.size(); ++p) {
      const Arrangement& a = base.pieces[p].arrangement;
      int nf = static_cast<int>(a.facets.size());
      std::vector<int> tuple(k + 1, 0);
      while (true) {
        CoordSet meet = a.facets.empty() ? CoordSet{} : a.facets[tuple[0]];
        for (int t = 1; t <= k; ++t) meet = meet & a.facets[tuple[t]];
        if (nf > 0) {
          Piece cell;
          cell.label = base.pieces[p].label + "~";
          for (int t = 0; t <= k; ++t) cell.label += (t ? "." : "") + std::to_string(tuple[t]);
          for (int i : meet.elements()) cell.arrangement.universe.labels.push_back(a.universe.labels[i]);
          cell.arrangement.facets = {CoordSet::full(meet.size())};
          level.pieces.push_back(cell);
          refs[k].push_back({static_cast<int>(p), tuple, meet});
        }
        int t = k;
        while (t >= 0 && tuple[t] == nf - 1) tuple[t--] = 0;
        if (t < 0 || nf == 0) break;
        ++tuple[t];
      }
    }
    out.levels.push_back(level);
  }
  // Face maps d_i drop the i-th tuple entry.
  out.faces.resize(depth + 1);
  for (int k = 1; k <= depth; ++k) {
    for (int i = 0; i <= k; ++i) {
      SpaceMorphism d;
      d.source = out.levels[k];
      d.target = out.levels[k - 1];
      for (const CellRef& ref : refs[k]) {
        std::vector<int> sub = ref.tuple;
        sub.erase(sub.begin() + i);
        int tgt = -1;
        for (size_t c = 0; c < refs[k - 1].size(); ++c)
          if (refs[k - 1][c].piece == ref.piece && refs[k - 1][c].tuple == sub) {
            tgt = static_cast<int>(c);
            break;
          }
        PieceMap pm;
        pm.target_piece = tgt;
        const CoordSet target_meet = refs[k - 1][tgt].meet;
        for (int e : ref.meet.elements()) {
          int slot = 0;
          for (int te : target_meet.elements()) {
            if (te == e) break;
            ++slot;
          }
          pm.coord_map.push_back(slot);
        }
        d.assignment.push_back(pm);
      }
      d.validate();
      out.faces[k].push_back(d);
    }
  }
  // Augmentation from level zero.
  out.augmentation.source = out.levels[0];
  out.augmentation.target = base;
  for (const CellRef& ref : refs[0]) {
    PieceMap pm;
    pm.target_piece = ref.piece;
    pm.coord_map = ref.meet.elements();
    out.augmentation.assignment.push_back(pm);
  }
  out.augmentation.validate();
  // Semisimplicial identities.
  for (int k = 2; k <= depth; ++k)
    for (int i = 0; i < static_cast<int>(out.faces[k].size()); ++i)
      for (int j = i + 1; j < static_cast<int>(out.faces[k].size()); ++j) {
        SpaceMorphism a = compose(out.faces[k - 1][i], out.faces[k][j]);
        SpaceMorphism b = compose(out.faces[k - 1][j - 1], out.faces[k][i]);
        if (!(a == b)) throw validation_error("semisimplicial identities fail in the nerve resolution");
      }
  return out;
}

}  // namespace cubres
