#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubres/diagram.hpp"

namespace cubres {

// A labeled irreducible closed subspace of one vertex space: a facet-cell
// inside one of its pieces.
struct SigmaCell {
  int piece = 0;
  CoordSet facet;
  auto operator<=>(const SigmaCell&) const = default;
};

// The I-set of closures of images of irreducible components.
struct SigmaSet {
  std::map<CubeVertex, std::vector<SigmaCell>> cells;  // sorted per vertex
  // (hi, lo) -> index map cells[hi] -> cells[lo], one per comparable pair
  std::map<std::pair<CubeVertex, CubeVertex>, std::vector<int>> maps;
};

SigmaSet sigma_set(const DiagramOfSpaces& s);

// Does f induce a bijection of sigma sets commuting with the index maps?
bool sigma_isomorphic_via(const DiagramMorphism& f);

// Strict transform of a dominant map a : X -> Y of irreducible cells along a
// proper modification f : Y' -> Y: the closure of the off-discriminant part
// of the fiber product.
struct StrictTransform {
  Space z;
  SpaceMorphism to_modification;  // b : Z -> Y'
  SpaceMorphism to_source;        // g : Z -> X
};
StrictTransform strict_transform(const SpaceMorphism& a, const SpaceMorphism& f);

// Upper envelope of a finite family of proper modifications of an
// irreducible cell: closure of the common iso locus in the iterated reduced
// fiber product, with its projections.
struct UpperEnvelope {
  Space space;
  SpaceMorphism to_base;                  // E -> X0
  std::vector<SpaceMorphism> projections; // E -> X_r
};
UpperEnvelope upper_envelope(const Space& base, const std::vector<SpaceMorphism>& family);

// Very weak resolution f : X -> S: X regular, Sigma X = Sigma S through f,
// and discriminants and their preimages of dimension strictly below dim S.
// Built by ascending induction with strict transforms and upper envelopes;
// on this class the per-cell resolution step is the identity on affine cells.
DiagramMorphism very_weak_resolution(const DiagramOfSpaces& s);

// Component-wise discriminant of a diagram morphism, saturated so that it is
// a closed sub-diagram of the target.
DiagramOfSpaces diagram_discriminant(const DiagramMorphism& f);

// Augmented 2-resolution of S: the square diagram on two new leading bits
// with S at 00, the very weak resolution at 01, the (saturated) discriminant
// at 10 and the reduced pullback at 11.
DiagramOfSpaces two_resolution(const DiagramOfSpaces& s);

struct Hyperresolution {
  DiagramOfSpaces diagram;               // bits = stages + 1 + base bits (0 when trivial)
  std::vector<DiagramOfSpaces> stages;   // the constituent 2-resolutions
  int base_bits = 0;                     // cube bits of the input diagram
  int r() const { return static_cast<int>(stages.size()); }
};

// Recursive construction: a regular diagram is its own hyperresolution (the
// one-vertex clause); otherwise splice a 2-resolution with the
// hyperresolution of its leading-bit-one slice.
Hyperresolution cubical_hyperresolution(const DiagramOfSpaces& s);

// Convenience entry point for a bare space (index = point category).
Hyperresolution cubical_hyperresolution(const Space& x);
DiagramOfSpaces as_point_diagram(const Space& x);

struct AuditRow {
  CubeVertex vertex;
  Dim dim;
  int bound = 0;       // dim(S) - |alpha| + 1
  bool regular = true;
  bool bound_ok = true;
};

struct HyperresAudit {
  bool ok = true;
  std::vector<AuditRow> rows;            // one per vertex with alpha != 0
  bool squares_ok = true;                // every constituent square acyclic
  std::string square_diag;
};

HyperresAudit audit_hyperresolution(const Hyperresolution& h, const DiagramOfSpaces& s);

// Is the morphism a closed immersion on this class: injective on pieces
// (coordinate maps are embeddings by construction).
bool is_closed_immersion(const SpaceMorphism& m);

// Truncated semisimplicial resolution by fiber powers of the normalization:
// level k is the (k+1)-st reduced fiber power with all face projections.
struct SemisimplicialSpace {
  std::vector<Space> levels;                       // levels[k], k = 0..depth
  std::vector<std::vector<SpaceMorphism>> faces;   // faces[k][i] : X_k -> X_{k-1}
  SpaceMorphism augmentation;                      // X_0 -> X
};
SemisimplicialSpace cech_nerve_resolution(const Space& x, int depth);

}  // namespace cubres
