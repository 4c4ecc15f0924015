#pragma once

// Seeded generators for randomized suites.  The seed comes from CUBRES_SEED
// so failing runs can be replayed exactly.

#include <cstdlib>
#include <random>
#include <string>

#include "cubres/diagram.hpp"

namespace testgen {

inline std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("CUBRES_SEED")) return std::strtoull(s, nullptr, 10);
  return 20260801ull;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed = seed_from_env()) : eng(seed) {}
  int uniform(int lo, int hi) {  // inclusive
    return static_cast<int>(eng() % static_cast<unsigned long long>(hi - lo + 1)) + lo;
  }
  bool coin() { return (eng() & 1ull) != 0; }
};

inline cubres::Arrangement random_arrangement(Rng& rng, int max_n = 6, int max_facets = 5) {
  cubres::Arrangement a;
  int n = rng.uniform(1, max_n);
  for (int i = 0; i < n; ++i) a.universe.labels.push_back("z" + std::to_string(i + 1));
  int k = rng.uniform(1, max_facets);
  for (int f = 0; f < k; ++f) a.facets.push_back(cubres::CoordSet{static_cast<std::uint64_t>(
      rng.uniform(0, (1 << n) - 1))});
  a.normalize();
  if (a.facets.empty()) a.facets.push_back(cubres::CoordSet::empty_set());
  return a;
}

inline cubres::Space random_space(Rng& rng, int max_pieces = 2, int max_n = 6,
                                  int max_facets = 5) {
  cubres::Space s;
  int pieces = rng.uniform(1, max_pieces);
  for (int p = 0; p < pieces; ++p)
    s.pieces.push_back({"P" + std::to_string(p), random_arrangement(rng, max_n, max_facets)});
  s.normalize();
  s.validate();
  return s;
}

// A random closed subspace with the same labels and universes.
inline cubres::Space random_subspace(Rng& rng, const cubres::Space& x) {
  cubres::Space sub;
  for (const cubres::Piece& p : x.pieces) {
    cubres::Arrangement a;
    a.universe = p.arrangement.universe;
    for (cubres::CoordSet f : p.arrangement.faces())
      if (rng.uniform(0, 3) == 0) a.facets.push_back(f);
    a.normalize();
    if (!a.facets.empty()) sub.pieces.push_back({p.label, a});
  }
  return sub;
}

// An arrow-indexed diagram: a random space at the low object receiving a
// random closed subspace from the high object.
inline cubres::DiagramOfSpaces random_arrow_diagram(Rng& rng) {
  cubres::Space base = random_space(rng);
  cubres::Space sub = random_subspace(rng, base);
  cubres::DiagramOfSpaces d(0, cubres::FinOrdCat::arrow());
  d.set_space({0, 0}, base);
  d.set_space({0, 1}, sub);
  d.set_generator({0, 1}, {0, 0}, cubres::inclusion_morphism(sub, base));
  d.finalize();
  return d;
}

inline cubres::Space node() {
  cubres::Space s;
  cubres::Piece p;
  p.label = "X";
  p.arrangement.universe.labels = {"z1", "z2"};
  p.arrangement.facets = {cubres::CoordSet{1}, cubres::CoordSet{2}};
  s.pieces.push_back(p);
  return s;
}

inline cubres::Space axes(int n) {  // n coordinate axes in A^n
  cubres::Space s;
  cubres::Piece p;
  p.label = "X";
  for (int i = 0; i < n; ++i) p.arrangement.universe.labels.push_back("z" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) p.arrangement.facets.push_back(cubres::CoordSet::single(i));
  s.pieces.push_back(p);
  return s;
}

inline cubres::Space smooth_cell(int n) {
  cubres::Space s;
  cubres::Piece p;
  p.label = "A";
  for (int i = 0; i < n; ++i) p.arrangement.universe.labels.push_back("z" + std::to_string(i + 1));
  p.arrangement.facets = {cubres::CoordSet::full(n)};
  s.pieces.push_back(p);
  return s;
}

// Facets {z1,z2} and {z2,z3} in A^3.
inline cubres::Space umbrella() {
  cubres::Space s;
  cubres::Piece p;
  p.label = "X";
  p.arrangement.universe.labels = {"z1", "z2", "z3"};
  p.arrangement.facets = {cubres::CoordSet{3}, cubres::CoordSet{6}};
  s.pieces.push_back(p);
  return s;
}

}  // namespace testgen
