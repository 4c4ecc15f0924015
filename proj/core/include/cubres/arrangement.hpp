#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubres/rational.hpp"
#include "cubres/smallset.hpp"

namespace cubres {

// Dimension of a possibly empty space: nullopt means the empty space (-inf).
using Dim = std::optional<int>;

inline bool dim_less(Dim a, Dim b) {
  if (!b) return false;        // nothing is < -inf, not even -inf
  if (!a) return true;         // -inf < any integer
  return *a < *b;
}
inline bool dim_leq(Dim a, Dim b) { return !dim_less(b, a); }
inline Dim dim_max(Dim a, Dim b) { return dim_less(a, b) ? b : a; }
inline std::string to_string(Dim d) { return d ? std::to_string(*d) : "-inf"; }

struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Ordered list of coordinate names for one ambient affine space.
struct CoordUniverse {
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& name) const;  // -1 if absent
  bool operator==(const CoordUniverse&) const = default;
};

// A finite union of coordinate subspaces of the affine space on `universe`.
// A facet F lists the coordinates that are FREE on the subspace A_F (all
// others vanish there), so dim A_F = |F|.  Facets form an antichain; the
// empty facet list is the empty space and the single empty facet is a point.
struct Arrangement {
  CoordUniverse universe;
  std::vector<CoordSet> facets;  // canonical: strictly increasing masks

  bool is_antichain() const;
  void normalize();  // drop dominated facets, sort, dedupe
  bool empty() const { return facets.empty(); }
  Dim dimension() const;
  // All faces: intersections of subsets of facets, i.e. the possible support
  // sets of points.  Includes the facets themselves; empty for empty space.
  std::vector<CoordSet> faces() const;
  bool contains_face(CoordSet t) const;

  bool operator==(const Arrangement&) const = default;
};

struct Piece {
  std::string label;
  Arrangement arrangement;
  bool operator==(const Piece&) const = default;
};

// Finite disjoint union of arrangements.
struct Space {
  std::vector<Piece> pieces;

  void validate() const;
  void normalize();  // normalize pieces, drop empty ones, sort by label
  Dim dimension() const;
  bool empty() const { return pieces.empty(); }
  // Every piece has exactly one facet (so each piece is an affine cell).
  bool is_regular() const;
  int piece_index(const std::string& label) const;  // -1 if absent

  bool operator==(const Space&) const = default;
};

// Piece-wise coordinate-subspace inclusion.  On the piece `p` of the source,
// the map embeds the source universe into the target piece's universe by the
// injection `coord_map`, sending each source facet into some target facet.
struct PieceMap {
  int target_piece = -1;
  std::vector<int> coord_map;  // source coord slot -> target coord slot
  bool operator==(const PieceMap&) const = default;

  CoordSet image_of(CoordSet s) const;
  // Preimage of a target coordinate set, defined when t is inside the image.
  CoordSet preimage_of(CoordSet t) const;
  CoordSet image_universe(int source_universe_size) const;
};

struct SpaceMorphism {
  Space source;
  Space target;
  std::vector<PieceMap> assignment;  // one per source piece

  void validate() const;
  bool operator==(const SpaceMorphism&) const = default;

  static SpaceMorphism identity(const Space& x);
};

SpaceMorphism compose(const SpaceMorphism& g, const SpaceMorphism& f);  // g after f

// The evident inclusion when `sub` has pieces with labels/universes matching
// pieces of `super` and every facet of `sub` lies inside a facet of `super`.
SpaceMorphism inclusion_morphism(const Space& sub, const Space& super);

// Is `sub` (with matching piece labels and universes) a closed subspace of
// `super`?  Used for discriminant-containment audits.
bool subspace_contained(const Space& sub, const Space& super);

// Normalization: one affine cell per (piece, facet), with the evident finite
// surjection onto the original space.
struct Components {
  Space space;                     // disjoint union of cells
  SpaceMorphism normalization;     // cells -> original
  // cell index -> (piece index, facet index) of the original space
  std::vector<std::pair<int, int>> origin;
};
Components irreducible_components(const Space& x);

struct FiberProduct {
  Space space;
  SpaceMorphism proj_left;   // to the source of f
  SpaceMorphism proj_right;  // to the source of g
  // output piece index -> (left piece index, right piece index)
  std::vector<std::pair<int, int>> piece_origin;
};

// Reduced fiber product of f : X -> S and g : Y -> S over the common target.
FiberProduct fiber_product(const SpaceMorphism& f, const SpaceMorphism& g);

// Unique mediating morphism T -> X x_S Y for a commuting span (left: T -> X,
// right: T -> Y).  Throws validation_error if the span does not commute.
SpaceMorphism fiber_product_mediate(const FiberProduct& fp, const SpaceMorphism& f,
                                    const SpaceMorphism& g, const SpaceMorphism& left,
                                    const SpaceMorphism& right);

// Number of preimages of a point with support `t` in target piece `tp`.
// Constant on support strata, which refine the intersection-lattice strata.
int fiber_cardinality(const SpaceMorphism& f, int target_piece, CoordSet t);

// Smallest closed subspace of the target off which f is an isomorphism: the
// union of closures of support strata where the fiber cardinality is not 1
// (uncovered strata included).  Pieces keep the target's labels/universes.
Space discriminant(const SpaceMorphism& f);

// Union over source facets of their images, as a closed subspace of the
// target (target labels/universes kept, empty pieces dropped).
Space image_closure(const SpaceMorphism& f);

// Restriction of f to a closed subspace of its source (matching labels).
SpaceMorphism restrict_morphism(const SpaceMorphism& f, const Space& sub);

// S2 chain condition: any two facets are linked by a chain of facets with
// consecutive intersections of codimension one on both sides, all containing
// the two endpoints' intersection.
struct S2Witness {
  bool ok = false;
  // on failure: the unlinkable pair
  CoordSet bad_f, bad_g;
  // on success: one chain per unordered facet pair, keyed by (i,j), i<j
  std::map<std::pair<int, int>, std::vector<int>> chains;
};
S2Witness s2_check(const Arrangement& a);

// Boundary divisor data: rational coefficients on coordinate hyperplanes.
struct BoundaryDivisor {
  std::map<int, Rat> coefficients;  // coordinate slot -> b_i

  CoordSet support() const;
  bool coefficients_in_unit_interval() const;
};

struct GncReport {
  bool ok = false;
  bool antichain = false;
  bool s2 = false;
  bool codim1_face_condition = false;
  bool boundary_ok = false;
  std::string diagnostic;
};

// Local-model test: antichain + S2 + the codimension-one face condition
// (every codim-1 face of a facet containing sigma is a facet intersection)
// + boundary supported in sigma with coefficients in [0,1].
GncReport gnc_local_model_check(const Arrangement& a, const BoundaryDivisor& b);

}  // namespace cubres
