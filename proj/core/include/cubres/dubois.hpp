#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cubres/cube_complex.hpp"
#include "cubres/hyperres.hpp"

namespace cubres {

// Squarefree sections of the structure sheaf: all modules in play are
// squarefree monomial modules, so multidegrees in {0,1}^N determine
// everything.  dims are 0/1: the monomial with support m is a section of a
// piece exactly when m sits inside one of its facets.
struct SquarefreeModule {
  Space space;
  std::vector<std::set<unsigned>> sections;  // per piece: masks with dim one

  int dim_at(int piece, unsigned mask) const {
    return sections[piece].count(mask) ? 1 : 0;
  }
};

SquarefreeModule structure_sections(const Space& x);

// The p-form cube over the box part of a hyperresolution, in one base
// multidegree.  Basis elements at a vertex are pairs (cell, subset S of the
// pulled-back multidegree with |S| = p).
struct OmegaCube {
  CubeCodiagram cube;
  // per vertex mask: basis as (piece index in Z_alpha, dz-subset mask)
  std::map<unsigned, std::vector<std::pair<int, unsigned>>> basis;
};
OmegaCube omega_cube(const Hyperresolution& h, int p, int base_piece, unsigned m);

struct MultidegreeLine {
  std::string piece;
  unsigned mask = 0;
  int sections_dim = 0;          // dim Gamma(O_X)_m
  int h0 = 0;                    // dim H^0 of the totalization
  std::map<int, int> higher;     // positive-degree cohomology, nonzero entries
  bool unit_qiso = true;
};

struct OmegaZeroReport {
  bool du_bois = true;
  std::vector<MultidegreeLine> lines;
  std::vector<std::pair<std::string, unsigned>> obstructions;
};

struct DuBoisResult {
  Hyperresolution hyper;
  OmegaZeroReport report;
};

// Omega^0 via the cubical hyperresolution, compared multidegree by
// multidegree against the sections of the structure sheaf through the
// augmentation; the verdict is the unit map being a quasi-isomorphism
// everywhere.  Regular spaces short-circuit to the identity comparison.
DuBoisResult du_bois_zero(const Space& x);

struct OmegaPReport {
  int p = 0;
  // (piece label, mask) -> cohomology dims by degree
  std::map<std::pair<std::string, unsigned>, std::map<int, int>> h;
  std::map<int, int> support_dims;  // i -> max |m| with H^i nonzero
  bool range_ok = true;             // Omega^p = 0 outside p in [0, dim X]
  bool degree_bounds_ok = true;     // H^i = 0 outside [0, dim X]
  bool support_bound_ok = true;     // dim Supp H^i <= dim X - i
};
OmegaPReport omega_p(const Space& x, int p);

// Betti numbers of X over Q in degrees 0..dim X, from the constant-sheaf
// cube over the hyperresolution (cube vertices contribute one class per
// cell).
std::vector<int> constant_sheaf_descent(const Space& x);

struct IndependenceReport {
  bool ok = true;
  std::string first_diff;
  std::vector<int> betti_cubical, betti_cech;
};

// Recomputes Betti numbers and the graded Omega^0 cohomology along the
// cubical hyperresolution and along the truncated Cech-nerve resolution and
// compares, reporting the first disagreeing invariant.
IndependenceReport hyperres_independence_test(const Space& x);

// Graded Omega^0 cohomology through the Cech-nerve pipeline (exposed for the
// cross-validation suites).
std::map<std::pair<std::string, unsigned>, std::map<int, int>> omega0_via_nerve(const Space& x,
                                                                                int depth);

std::string report_to_text(const OmegaZeroReport& r);
std::string report_to_json(const OmegaZeroReport& r);

}  // namespace cubres
