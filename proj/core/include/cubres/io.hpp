#pragma once

#include <string>

#include "cubres/arrangement.hpp"
#include "cubres/hyperres.hpp"
#include "cubres/projmodels.hpp"
#include "cubres/weights.hpp"

namespace cubres::io {

struct parse_error : std::runtime_error {
  int line = 0, column = 0;
  parse_error(const std::string& what, int l, int c)
      : std::runtime_error(what + " (line " + std::to_string(l) + ", column " + std::to_string(c) +
                           ")"),
        line(l),
        column(c) {}
};

// Space schema: array of pieces, each
//   {"label": "X", "universe": ["z1","z2"], "facets": [["z1"],["z2"]]}
// (a single piece object is accepted as well).  Serialization is canonical:
// pieces sorted by label, facet name lists sorted lexicographically.
Space parse_space(const std::string& text);
std::string space_to_json(const Space& s);

// Pair schema: array of {"label", "coords": [...], "boundary": [...]}.
OpenPair parse_pair(const std::string& text);

struct InjSpec {
  std::string theorem;  // "esnault-viehweg" | "tankeev-kollar"
  P1n x;
  TorusDivisorQ b;
  int r = 1;
  LineBundle l;
  TorusDivisorQ d;  // EV
  LineBundle h;     // TK
  Section s;        // TK
};
InjSpec parse_inj(const std::string& text);

struct VanishSpec {
  TorusDivisorQ b;
  int r = 1;
  LineBundle a;
};
VanishSpec parse_vanish(const std::string& text);

std::string hyperres_to_json(const Hyperresolution& h, const HyperresAudit& audit);
std::string audit_to_text(const HyperresAudit& audit, int bits);

}  // namespace cubres::io
