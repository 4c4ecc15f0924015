#include "cubres/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace cubres {

std::string mask_to_string(unsigned mask, int bits) {
  std::string s;
  for (int k = 0; k < bits; ++k) s += ((mask >> k) & 1u) ? '1' : '0';
  return s.empty() ? "()" : s;
}

void CubeMap::validate() const {
  if (static_cast<int>(slot_of.size()) != from_bits) throw validation_error("cube map not total");
  for (size_t t = 0; t < slot_of.size(); ++t) {
    if (slot_of[t] < 0 || slot_of[t] >= to_bits) throw validation_error("cube map slot out of range");
    if (t > 0 && slot_of[t] <= slot_of[t - 1]) throw validation_error("cube map not strictly increasing");
  }
}

unsigned CubeMap::apply(unsigned alpha) const {
  unsigned beta = 0;
  for (int t = 0; t < from_bits; ++t)
    if ((alpha >> t) & 1u) beta |= 1u << slot_of[t];
  return beta;
}

bool CubeMap::in_image(unsigned beta) const {
  unsigned image_slots = 0;
  for (int s : slot_of) image_slots |= 1u << s;
  return (beta & ~image_slots) == 0;
}

unsigned CubeMap::extract(unsigned beta) const {
  unsigned alpha = 0;
  for (int t = 0; t < from_bits; ++t)
    if ((beta >> slot_of[t]) & 1u) alpha |= 1u << t;
  return alpha;
}

CubeMap CubeMap::identity(int bits) {
  CubeMap m;
  m.from_bits = m.to_bits = bits;
  for (int t = 0; t < bits; ++t) m.slot_of.push_back(t);
  return m;
}

CubeMap face_functor(int i, int n) {
  // Box_n^+ has n+1 slots.  delta_i inserts a zero at slot i.
  if (i < 0 || i > n + 1) throw validation_error("face functor slot out of range");
  CubeMap m;
  m.from_bits = n + 1;
  m.to_bits = n + 2;
  for (int t = 0; t < n + 1; ++t) m.slot_of.push_back(t < i ? t : t + 1);
  m.validate();
  return m;
}

CubeMap compose(const CubeMap& outer, const CubeMap& inner) {
  if (inner.to_bits != outer.from_bits) throw validation_error("cube map composition mismatch");
  CubeMap m;
  m.from_bits = inner.from_bits;
  m.to_bits = outer.to_bits;
  for (int t = 0; t < inner.from_bits; ++t) m.slot_of.push_back(outer.slot_of[inner.slot_of[t]]);
  m.validate();
  return m;
}

DiagramOfSpaces::DiagramOfSpaces(int bits, FinOrdCat cat) : bits_(bits), cat_(std::move(cat)) {
  spaces_.resize(static_cast<size_t>(1u << bits_) * cat_.objects());
}

const SpaceMorphism& DiagramOfSpaces::arrow(CubeVertex hi, CubeVertex lo) const {
  auto it = arrows_.find({hi, lo});
  if (it == arrows_.end()) throw validation_error("no arrow between requested vertices");
  return it->second;
}

bool DiagramOfSpaces::has_arrow(CubeVertex hi, CubeVertex lo) const {
  return arrows_.count({hi, lo}) > 0;
}

void DiagramOfSpaces::set_generator(CubeVertex hi, CubeVertex lo, SpaceMorphism m) {
  arrows_[{hi, lo}] = std::move(m);
}

bool DiagramOfSpaces::comparable(CubeVertex lo, CubeVertex hi) const {
  return (lo.mask & ~hi.mask) == 0 && cat_.leq(lo.iobj, hi.iobj);
}

std::vector<CubeVertex> DiagramOfSpaces::vertices() const {
  std::vector<CubeVertex> out;
  for (unsigned m = 0; m < cube_size(); ++m)
    for (int i = 0; i < cat_.objects(); ++i) out.push_back({m, i});
  return out;
}

std::vector<CubeVertex> DiagramOfSpaces::down_covers(CubeVertex v) const {
  std::vector<CubeVertex> out;
  for (int k = 0; k < bits_; ++k)
    if ((v.mask >> k) & 1u) out.push_back({v.mask & ~(1u << k), v.iobj});
  for (auto [lo, hi] : cat_.covers())
    if (hi == v.iobj) out.push_back({v.mask, lo});
  return out;
}

std::vector<CubeVertex> DiagramOfSpaces::linear_vertices() const {
  std::vector<int> below(cat_.objects(), 0);
  for (int i = 0; i < cat_.objects(); ++i)
    for (int k = 0; k < cat_.objects(); ++k) below[i] += cat_.leq(k, i);
  auto order = vertices();
  std::stable_sort(order.begin(), order.end(), [&](CubeVertex a, CubeVertex b) {
    int ha = weight(a.mask), hb = weight(b.mask);
    if (ha != hb) return ha < hb;
    if (below[a.iobj] != below[b.iobj]) return below[a.iobj] < below[b.iobj];
    return a < b;
  });
  return order;
}

void DiagramOfSpaces::finalize() {
  // Fill composite arrows by descending one canonical cover at a time.
  // Vertices are processed along a linear extension of the product order so
  // that every down-cover is handled before the vertex itself.
  auto vertices_by_height = linear_vertices();
  for (CubeVertex hi : vertices_by_height) {
    for (CubeVertex lo : vertices()) {
      if (lo == hi || !comparable(lo, hi)) continue;
      if (arrows_.count({hi, lo})) continue;
      bool built = false;
      for (CubeVertex mid : down_covers(hi)) {
        if (!comparable(lo, mid)) continue;
        if (!arrows_.count({hi, mid})) continue;
        if (mid == lo) {
          arrows_[{hi, lo}] = arrows_[{hi, mid}];
          built = true;
          break;
        }
        if (arrows_.count({mid, lo})) {
          arrows_[{hi, lo}] = compose(arrows_[{mid, lo}], arrows_[{hi, mid}]);
          built = true;
          break;
        }
      }
      if (!built)
        throw validation_error("missing generator path from " + mask_to_string(hi.mask, bits_) +
                               "/" + cat_.name(hi.iobj) + " to " + mask_to_string(lo.mask, bits_) +
                               "/" + cat_.name(lo.iobj));
    }
  }
  finalized_ = true;
  FunctorialityReport rep = validate_functoriality(*this);
  if (!rep.ok) throw validation_error("diagram not functorial: " + rep.counterexample);
}

Dim DiagramOfSpaces::dimension() const {
  Dim d;
  for (CubeVertex v : vertices()) d = dim_max(d, at(v).dimension());
  return d;
}

void DiagramMorphism::validate() const {
  if (source.bits() != target.bits() || !(source.cat() == target.cat()))
    throw validation_error("diagram morphism index mismatch");
  for (CubeVertex v : source.vertices()) {
    auto it = at.find(v);
    if (it == at.end()) throw validation_error("diagram morphism missing a vertex component");
    it->second.validate();
    if (!(it->second.source == source.at(v)) || !(it->second.target == target.at(v)))
      throw validation_error("diagram morphism component endpoints mismatch");
  }
  for (CubeVertex hi : source.vertices())
    for (CubeVertex lo : source.vertices()) {
      if (lo == hi || !source.comparable(lo, hi)) continue;
      SpaceMorphism one = compose(at.at(lo), source.arrow(hi, lo));
      SpaceMorphism two = compose(target.arrow(hi, lo), at.at(hi));
      if (!(one == two))
        throw validation_error("diagram morphism does not commute with arrow " +
                               mask_to_string(hi.mask, source.bits()) + " -> " +
                               mask_to_string(lo.mask, source.bits()));
    }
}

FunctorialityReport validate_functoriality(const DiagramOfSpaces& d) {
  FunctorialityReport rep;
  for (CubeVertex hi : d.vertices()) {
    for (CubeVertex lo : d.vertices()) {
      if (lo == hi || !d.comparable(lo, hi)) continue;
      if (!d.has_arrow(hi, lo)) {
        rep.ok = false;
        rep.counterexample = "missing arrow " + mask_to_string(hi.mask, d.bits()) + "/" +
                             d.cat().name(hi.iobj) + " -> " + mask_to_string(lo.mask, d.bits()) +
                             "/" + d.cat().name(lo.iobj);
        return rep;
      }
      const SpaceMorphism& direct = d.arrow(hi, lo);
      if (!(direct.source == d.at(hi)) || !(direct.target == d.at(lo))) {
        rep.ok = false;
        rep.counterexample = "arrow endpoints disagree with vertex spaces at " +
                             mask_to_string(hi.mask, d.bits()) + " -> " +
                             mask_to_string(lo.mask, d.bits());
        return rep;
      }
      for (CubeVertex mid : d.down_covers(hi)) {
        if (mid == lo || !d.comparable(lo, mid)) continue;
        if (!d.has_arrow(hi, mid) || !d.has_arrow(mid, lo)) continue;
        SpaceMorphism two_step = compose(d.arrow(mid, lo), d.arrow(hi, mid));
        if (!(two_step == direct)) {
          rep.ok = false;
          rep.counterexample = "square fails: " + mask_to_string(hi.mask, d.bits()) + "/" +
                               d.cat().name(hi.iobj) + " via " + mask_to_string(mid.mask, d.bits()) +
                               "/" + d.cat().name(mid.iobj) + " vs direct to " +
                               mask_to_string(lo.mask, d.bits()) + "/" + d.cat().name(lo.iobj);
          return rep;
        }
      }
    }
  }
  return rep;
}

namespace {

SpaceMorphism empty_morphism_to(const Space& target) {
  SpaceMorphism m;
  m.target = target;
  return m;
}

}  // namespace

DiagramOfSpaces direct_image(const CubeMap& delta, const DiagramOfSpaces& x) {
  delta.validate();
  if (delta.from_bits != x.bits()) throw validation_error("direct image: cube map domain mismatch");
  DiagramOfSpaces y(delta.to_bits, x.cat());
  for (unsigned beta = 0; beta < y.cube_size(); ++beta)
    for (int i = 0; i < x.cat().objects(); ++i) {
      if (delta.in_image(beta)) y.set_space({beta, i}, x.at({delta.extract(beta), i}));
      else y.set_space({beta, i}, Space{});
    }
  for (CubeVertex hi : y.vertices())
    for (CubeVertex lo : y.down_covers(hi)) {
      if (delta.in_image(hi.mask)) {
        // The image is downward closed, so lo is in the image as well.
        y.set_generator(hi, lo, x.arrow({delta.extract(hi.mask), hi.iobj},
                                        {delta.extract(lo.mask), lo.iobj}));
      } else {
        y.set_generator(hi, lo, empty_morphism_to(y.at(lo)));
      }
    }
  y.finalize();
  return y;
}

DiagramOfSpaces restrict_along(const CubeMap& delta, const DiagramOfSpaces& y) {
  delta.validate();
  if (delta.to_bits != y.bits()) throw validation_error("restriction: cube map codomain mismatch");
  DiagramOfSpaces x(delta.from_bits, y.cat());
  for (unsigned alpha = 0; alpha < x.cube_size(); ++alpha)
    for (int i = 0; i < y.cat().objects(); ++i) x.set_space({alpha, i}, y.at({delta.apply(alpha), i}));
  for (CubeVertex hi : x.vertices())
    for (CubeVertex lo : x.down_covers(hi))
      x.set_generator(hi, lo, y.arrow({delta.apply(hi.mask), hi.iobj}, {delta.apply(lo.mask), lo.iobj}));
  x.finalize();
  return x;
}

DiagramOfSpaces fix_first_bit(const DiagramOfSpaces& d, int value) {
  if (d.bits() < 1) throw validation_error("fix_first_bit: no cube bits");
  int b = d.bits() - 1;
  DiagramOfSpaces out(b, d.cat());
  // Leading bit is the HIGHEST slot: stage bits are prepended.
  unsigned high = value ? (1u << b) : 0u;
  for (unsigned m = 0; m < (1u << b); ++m)
    for (int i = 0; i < d.cat().objects(); ++i) out.set_space({m, i}, d.at({m | high, i}));
  for (CubeVertex hi : out.vertices())
    for (CubeVertex lo : out.down_covers(hi))
      out.set_generator(hi, lo, d.arrow({hi.mask | high, hi.iobj}, {lo.mask | high, lo.iobj}));
  out.finalize();
  return out;
}

namespace {

// Binary reduction step.  A has k bits, B has k+1 bits, and B with its two
// leading bits 00 must equal A with its leading bit 1.  The splice keeps A's
// 0-slice on leading bits 00 and B elsewhere.
DiagramOfSpaces rd2(const DiagramOfSpaces& a, const DiagramOfSpaces& b) {
  if (b.bits() != a.bits() + 1) throw validation_error("reduction: stage bit counts must step by one");
  if (!(a.cat() == b.cat())) throw validation_error("reduction: index categories differ");
  int k = a.bits();        // output has k+1 bits; leading two slots are k, k-1
  int lead = k;            // leading bit slot in the output/B
  int second = k - 1;      // second bit slot
  if (k < 1) throw validation_error("reduction: stages need at least one bit");

  // Overlap: B_{00 rest} == A_{1 rest} including arrows.
  unsigned rest_count = 1u << (k - 1);
  for (unsigned rest = 0; rest < rest_count; ++rest)
    for (int i = 0; i < a.cat().objects(); ++i) {
      CubeVertex vb{rest, i}, va{rest | (1u << (k - 1)), i};
      if (!(b.at(vb) == a.at(va)))
        throw validation_error("reduction overlap mismatch at face " + mask_to_string(rest, k - 1) +
                               "/" + a.cat().name(i));
    }
  for (unsigned hi_rest = 0; hi_rest < rest_count; ++hi_rest)
    for (unsigned lo_rest = 0; lo_rest < rest_count; ++lo_rest)
      for (int ih = 0; ih < a.cat().objects(); ++ih)
        for (int il = 0; il < a.cat().objects(); ++il) {
          CubeVertex bh{hi_rest, ih}, bl{lo_rest, il};
          if (bh == bl || !b.comparable(bl, bh)) continue;
          CubeVertex ah{hi_rest | (1u << (k - 1)), ih}, al{lo_rest | (1u << (k - 1)), il};
          if (!(b.arrow(bh, bl) == a.arrow(ah, al)))
            throw validation_error("reduction overlap arrow mismatch at face " +
                                   mask_to_string(hi_rest, k - 1) + " -> " +
                                   mask_to_string(lo_rest, k - 1));
        }

  DiagramOfSpaces z(k + 1, a.cat());
  auto in_a_region = [&](unsigned m) { return ((m >> lead) & 1u) == 0 && ((m >> second) & 1u) == 0; };
  // Vertices.
  for (unsigned m = 0; m < z.cube_size(); ++m)
    for (int i = 0; i < a.cat().objects(); ++i) {
      if (in_a_region(m)) {
        unsigned rest = m & ((1u << (k - 1)) - 1);
        z.set_space({m, i}, a.at({rest, i}));  // A with leading bit 0
      } else {
        z.set_space({m, i}, b.at({m, i}));
      }
    }
  // Generators.
  for (CubeVertex hi : z.vertices()) {
    for (CubeVertex lo : z.down_covers(hi)) {
      bool hi_in_a = in_a_region(hi.mask), lo_in_a = in_a_region(lo.mask);
      if (hi_in_a && lo_in_a) {
        unsigned hr = hi.mask & ((1u << (k - 1)) - 1), lr = lo.mask & ((1u << (k - 1)) - 1);
        z.set_generator(hi, lo, a.arrow({hr, hi.iobj}, {lr, lo.iobj}));
      } else if (!hi_in_a && !lo_in_a) {
        z.set_generator(hi, lo, b.arrow({hi.mask, hi.iobj}, {lo.mask, lo.iobj}));
      } else {
        // hi in B region, lo = 00(rest): compose B's drop to 00 with A's
        // leading-bit arrow 1(rest) -> 0(rest).
        unsigned rest = lo.mask & ((1u << (k - 1)) - 1);
        SpaceMorphism to_base = b.arrow({hi.mask, hi.iobj}, {rest, lo.iobj});
        SpaceMorphism a_drop =
            a.arrow({rest | (1u << (k - 1)), lo.iobj}, {rest, lo.iobj});
        z.set_generator(hi, lo, compose(a_drop, to_base));
      }
    }
  }
  z.finalize();
  return z;
}

}  // namespace

DiagramOfSpaces reduction(const std::vector<DiagramOfSpaces>& stages) {
  if (stages.empty()) throw validation_error("reduction of an empty stage list");
  DiagramOfSpaces acc = stages[0];
  for (size_t n = 1; n < stages.size(); ++n) acc = rd2(acc, stages[n]);
  return acc;
}

std::string to_dot(const DiagramOfSpaces& d, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
  for (CubeVertex v : d.vertices()) {
    os << "  \"" << mask_to_string(v.mask, d.bits()) << "/" << d.cat().name(v.iobj) << "\" [label=\""
       << mask_to_string(v.mask, d.bits()) << " | " << d.cat().name(v.iobj) << "\\n";
    const Space& s = d.at(v);
    if (s.empty()) os << "(empty)";
    for (const Piece& p : s.pieces) {
      os << p.label << ":";
      for (CoordSet f : p.arrangement.facets) {
        os << " {";
        bool first = true;
        for (int i : f.elements()) {
          if (!first) os << ",";
          os << p.arrangement.universe.labels[i];
          first = false;
        }
        os << "}";
      }
      os << "\\n";
    }
    os << "\"];\n";
  }
  for (CubeVertex hi : d.vertices())
    for (CubeVertex lo : d.down_covers(hi)) {
      if (!d.has_arrow(hi, lo)) continue;
      os << "  \"" << mask_to_string(hi.mask, d.bits()) << "/" << d.cat().name(hi.iobj) << "\" -> \""
         << mask_to_string(lo.mask, d.bits()) << "/" << d.cat().name(lo.iobj) << "\";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace cubres
