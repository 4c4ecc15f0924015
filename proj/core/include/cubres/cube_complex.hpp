#pragma once

#include <map>
#include <vector>

#include "cubres/complexes.hpp"
#include "cubres/filtration.hpp"

namespace cubres {

// A codiagram of complexes over a product of (non-augmented) cubes: vertices
// are bit vectors that are nonzero on every factor, and for each upward bit
// flip there is a chain map.  The hyperresolution pipelines use a single
// factor; multi-factor cubes arise when splicing simples monoidally.
struct CubeCodiagram {
  std::vector<int> factor_bits;                 // slot counts per factor
  std::map<unsigned, Complex> at;               // valid vertices only
  std::map<std::pair<unsigned, unsigned>, ChainMap> maps;  // alpha -> alpha|bit

  int total_bits() const;
  int factors() const { return static_cast<int>(factor_bits.size()); }
  bool valid_vertex(unsigned mask) const;       // nonzero on every factor
  std::vector<unsigned> vertices() const;       // ascending mask order
  ChainMap map_for(unsigned lo, unsigned hi) const;

  void validate() const;  // chain maps present, commuting squares
};

// Sign of the cube direction flipping `slot` at vertex `alpha`:
// (-1)^{number of set bits below slot}.
int flip_sign(unsigned alpha, int slot);

// Totalization: degree n collects C_alpha^k with |alpha| - #factors + k = n.
// The differential is the internal d with sign (-1)^{|alpha| - #factors} plus
// the signed cube maps.
Complex simple(const CubeCodiagram& k);

// Block offset bookkeeping for the totalization, exposed so pipelines can
// address vertex summands inside simple(k).
struct SimpleLayout {
  // degree -> list of (vertex mask, internal degree k, offset, size)
  std::map<int, std::vector<std::tuple<unsigned, int, int, int>>> blocks;
  std::map<int, int> dims;
};
SimpleLayout simple_layout(const CubeCodiagram& k);

// Unit map from an augmentation: base -> simple(k), whose cone is the
// augmented total complex over the augmented cube.  `into` holds chain maps
// base -> C_{e_j} for the weight-one vertices (single-factor cubes only).
ChainMap unit_map(const Complex& base, const std::map<unsigned, ChainMap>& into,
                  const CubeCodiagram& k);

// Filtered totalization: filtration of the simple is the degreewise direct
// sum of the vertex filtrations.
struct FilteredCubeCodiagram {
  std::vector<int> factor_bits;
  std::map<unsigned, FilteredComplex> at;
  std::map<std::pair<unsigned, unsigned>, ChainMap> maps;
};
FilteredComplex simple_filtered(const FilteredCubeCodiagram& k);

}  // namespace cubres
