#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubres/arrangement.hpp"
#include "cubres/spectral.hpp"

namespace cubres {

// A regular space with a normal crossing coordinate boundary: per piece, the
// subset of free coordinates whose hyperplanes are removed.  The open part
// is a product of tori and affine factors.
struct OpenPair {
  Space space;                     // every piece a single affine cell
  std::vector<CoordSet> boundary;  // per piece, inside the facet

  void validate() const;
  Dim dimension() const { return space.dimension(); }
};

// A morphism of pairs: a space morphism pulling the boundary back to the
// boundary (so the open parts map to each other).
struct PairMorphism {
  OpenPair source, target;
  SpaceMorphism morphism;
  void validate() const;
};

// Stratum model of the derived pushforward from the open part: one
// generator per boundary stratum (an intersection of q of the removed
// hyperplanes sits in degree q), with the alternating-inclusion Gysin
// differentials, which vanish on these cell strata for degree reasons.  The
// canonical filtration packages it; its spectral sequence is the weight
// spectral sequence of the pair.
struct WeightModel {
  FilteredComplex fc;
  // basis per degree: (piece, subset of the boundary as a slot mask)
  std::map<int, std::vector<std::pair<int, unsigned>>> basis;
};

WeightModel gysin_weight_complex(const OpenPair& p);

// Pullback chain map M(target of g) -> M(source of g), filtered.
ChainMap weight_pullback(const PairMorphism& g, const WeightModel& target_model,
                         const WeightModel& source_model);

struct WeightTable {
  std::map<int, int> h;                          // k -> dim H^k(U; Q)
  std::map<std::pair<int, int>, int> graded;     // (k, w) -> dim gr^W_w H^k
  bool rows_match = true;
  bool weight_window_ok = true;                  // w within [k, 2k]
};

struct WeightSSResult {
  WeightModel model;
  SpectralSequence ss;
  WeightTable table;
};

WeightSSResult weight_ss(const OpenPair& p, int r_max = 32);

std::string weight_table_text(const WeightTable& t);
std::string weight_table_csv(const WeightTable& t);

// An acyclic square of pairs: i a closed immersion, the first components
// Cartesian with the closed leg containing the discriminant, and boundaries
// pulled back compatibly.
struct PairSquare {
  OpenPair x, xt, y, yt;  // base, modification, closed leg, pullback
  SpaceMorphism f;        // xt -> x
  SpaceMorphism i;        // y  -> x
  SpaceMorphism g;        // yt -> y
  SpaceMorphism j;        // yt -> xt
};

struct SquareValidation {
  bool ok = true;
  std::string violated_axiom;
};
SquareValidation validate_pair_square(const PairSquare& s);

struct LesReport {
  bool ok = true;
  std::string failure;  // names the page cell and the failing spot
};

// Exactness of 0 -> E(X) -> E(Xt) (+) E(Y) -> E(Yt) -> 0 on every E_2 page
// cell, with maps induced by the square.  Non-acyclic squares are rejected
// with the violated axiom named.
LesReport acyclic_square_les_check(const PairSquare& s);

// Exactness core on explicit matrices, exposed so mutation tests can feed a
// perturbed map: checks 0 -> A -> B -> C -> 0 with B-map pair (a1, a2) and
// C-maps (b1, b2), i.e. a = (a1, a2), b = b1 - b2.
LesReport les_exactness(const MatQ& a1, const MatQ& a2, const MatQ& b1, const MatQ& b2);

}  // namespace cubres
