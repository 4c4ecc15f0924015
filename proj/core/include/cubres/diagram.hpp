#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubres/arrangement.hpp"
#include "cubres/poset.hpp"

namespace cubres {

// Index object of an augmented-cube-times-I category: a bit vector alpha over
// `bits` slots together with an object of I.  alpha <= beta slotwise and the
// I-order give the product order; bits == 0 recovers a plain I-diagram.
struct CubeVertex {
  unsigned mask = 0;
  int iobj = 0;
  auto operator<=>(const CubeVertex&) const = default;
};

inline int weight(unsigned mask) { return std::popcount(mask); }

std::string mask_to_string(unsigned mask, int bits);

// A strictly increasing map of augmented cube categories, i.e. a composite of
// face functors: source slot t lands in target slot slot_of[t], and all other
// target slots read 0.
struct CubeMap {
  int from_bits = 0;
  int to_bits = 0;
  std::vector<int> slot_of;  // strictly increasing

  void validate() const;
  unsigned apply(unsigned alpha) const;
  bool in_image(unsigned beta) const;
  unsigned extract(unsigned beta) const;  // defined when in_image(beta)

  static CubeMap identity(int bits);
};

// delta_i : Box_n^+ -> Box_{n+1}^+ inserting a zero at slot i (0 <= i <= n+1).
CubeMap face_functor(int i, int n);
CubeMap compose(const CubeMap& outer, const CubeMap& inner);

// Contravariant functor from (Box_{bits-1}^+ x I) to spaces: a space per
// vertex and, for every comparable pair lo <= hi, a morphism X_hi -> X_lo.
// Constructed from covering-arrow generators; all composites are computed and
// every one-step factorization is validated at finalize time.
class DiagramOfSpaces {
 public:
  DiagramOfSpaces() = default;
  DiagramOfSpaces(int bits, FinOrdCat cat);

  int bits() const { return bits_; }
  unsigned cube_size() const { return 1u << bits_; }
  const FinOrdCat& cat() const { return cat_; }

  const Space& at(CubeVertex v) const { return spaces_[vid(v)]; }
  Space& at_mut(CubeVertex v) { return spaces_[vid(v)]; }
  const SpaceMorphism& arrow(CubeVertex hi, CubeVertex lo) const;
  bool has_arrow(CubeVertex hi, CubeVertex lo) const;

  void set_space(CubeVertex v, Space s) { spaces_[vid(v)] = std::move(s); }
  void set_generator(CubeVertex hi, CubeVertex lo, SpaceMorphism m);

  // Computes all composite arrows from the generators and validates
  // commutativity of every one-step factorization.
  void finalize();

  bool comparable(CubeVertex lo, CubeVertex hi) const;
  std::vector<CubeVertex> vertices() const;          // canonical order
  std::vector<CubeVertex> linear_vertices() const;   // a linear extension of the order
  std::vector<CubeVertex> down_covers(CubeVertex v) const;

  Dim dimension() const;

  bool operator==(const DiagramOfSpaces&) const = default;

 private:
  int vid(CubeVertex v) const { return static_cast<int>(v.mask) * cat_.objects() + v.iobj; }

  int bits_ = 0;
  FinOrdCat cat_ = FinOrdCat::point();
  std::vector<Space> spaces_;
  std::map<std::pair<CubeVertex, CubeVertex>, SpaceMorphism> arrows_;  // (hi, lo)
  bool finalized_ = false;
};

// Morphism of diagrams over the same index: a space morphism per vertex
// commuting with every arrow.
struct DiagramMorphism {
  DiagramOfSpaces source;
  DiagramOfSpaces target;
  std::map<CubeVertex, SpaceMorphism> at;

  void validate() const;
  bool operator==(const DiagramMorphism&) const = default;
};

struct FunctorialityReport {
  bool ok = true;
  std::string counterexample;  // names the failing square when !ok
};

// Exhaustive identity/composite check, usable on foreign or mutated diagrams.
FunctorialityReport validate_functoriality(const DiagramOfSpaces& d);

// Direct image along a cube map: (delta_* X)_beta = X_alpha when
// beta = delta(alpha), the empty space otherwise.
DiagramOfSpaces direct_image(const CubeMap& delta, const DiagramOfSpaces& x);

// Inverse image along a cube map (restriction): (delta^* Y)_alpha = Y_delta(alpha).
DiagramOfSpaces restrict_along(const CubeMap& delta, const DiagramOfSpaces& y);

// Slice fixing the leading cube bit; the result has one bit fewer.
DiagramOfSpaces fix_first_bit(const DiagramOfSpaces& d, int value);

// Reduction rd(X^1, ..., X^r): the recursive splice of a chain of diagrams
// where each X^{n+1} restricted to leading bits 00 equals X^n restricted to
// leading bit 1.  Overlap mismatches are reported with the offending face.
DiagramOfSpaces reduction(const std::vector<DiagramOfSpaces>& stages);

std::string to_dot(const DiagramOfSpaces& d, const std::string& name = "diagram");

}  // namespace cubres
