#pragma once

#include <map>

#include "cubres/complexes.hpp"

namespace cubres {

// Bounded complex with a decreasing biregular filtration.  Only the jump
// window [p_min, p_max] is stored: F^p = everything for p <= p_min and
// F^p = 0 for p > p_max, so biregularity is structural.
struct FilteredComplex {
  Complex c;
  int p_min = 0;
  int p_max = -1;  // empty window means the trivial filtration in one step
  std::map<int, std::map<int, Subspace>> filt;  // p in (p_min, p_max] -> degree -> F^p C^n

  Subspace level(int p, int n) const;
  void validate() const;  // nesting and d-stability
};

FilteredComplex trivial_filtration(const Complex& c);

// Canonical filtration: F^p = tau_{<= -p}, i.e. full below degree -p, the
// kernel of d in degree -p, zero above.  Graded pieces have cohomology
// concentrated in a single degree.
FilteredComplex canonical_filtration(const Complex& c);

// dim gr_F^p C^n over the stored jump window.
std::map<std::pair<int, int>, int> graded_dims(const FilteredComplex& fc);

// The subquotient complex F^p / F^{p+1} with its induced differential.
Complex graded_piece(const FilteredComplex& fc, int p);

// Map induced on p-th graded pieces by a filtered chain map.
ChainMap graded_map(const FilteredComplex& a, const FilteredComplex& b, const ChainMap& f, int p);

}  // namespace cubres
