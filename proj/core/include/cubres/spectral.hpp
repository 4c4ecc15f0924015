#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubres/filtration.hpp"

namespace cubres {

struct SpectralSequencePage {
  int r = 0;
  std::map<std::pair<int, int>, int> dims;           // (p,q) -> dim E_r^{p,q}
  std::map<std::pair<int, int>, MatQ> d;             // d_r : (p,q) -> (p+r, q-r+1)
};

struct SpectralSequence {
  std::vector<SpectralSequencePage> pages;           // r = 1, 2, ...
  int degenerated_at = 1;                            // all d_r vanish from here on
  std::map<std::pair<int, int>, int> einf;           // limit page dimensions
  std::map<int, int> abutment;                       // dim H^n of the underlying complex
  std::map<std::pair<int, int>, int> graded_abutment;  // (p,n) -> dim gr_F^p H^n
};

// Pages of the spectral sequence of a biregular filtered complex, with exact
// rational quotient bases.  Stops once the page index exceeds the filtration
// width (from then on everything vanishes) or at r_max.  The E_{r+1} page is
// recomputed as the cohomology of (E_r, d_r) and compared against the direct
// subquotient formula; a mismatch throws.
SpectralSequence spectral_sequence(const FilteredComplex& fc, int r_max = 32);

// Map induced on the E_r page by a filtered chain map (one that respects the
// filtrations; this is validated).  Keyed by (p, q).
std::map<std::pair<int, int>, MatQ> page_map(const FilteredComplex& a, const FilteredComplex& b,
                                             const ChainMap& f, int r);

std::string page_to_text(const SpectralSequencePage& page);
std::string page_to_csv(const SpectralSequencePage& page);

}  // namespace cubres
