#include "cubres/io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace cubres::io {

namespace {

using nlohmann::json;

json parse_checked(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset into a line/column position.
    size_t offset = std::min(e.byte, text.size());
    int line = 1, col = 1;
    for (size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error(e.what(), line, col);
  }
}

Piece parse_piece(const json& j, int index) {
  if (!j.is_object()) throw validation_error("piece must be an object");
  Piece p;
  p.label = j.value("label", "p" + std::to_string(index));
  if (!j.contains("universe") || !j.at("universe").is_array())
    throw validation_error("piece " + p.label + " needs a universe array");
  for (const auto& name : j.at("universe")) p.arrangement.universe.labels.push_back(name.get<std::string>());
  if (!j.contains("facets") || !j.at("facets").is_array())
    throw validation_error("piece " + p.label + " needs a facets array");
  for (const auto& facet : j.at("facets")) {
    CoordSet f;
    for (const auto& name : facet) {
      int idx = p.arrangement.universe.index_of(name.get<std::string>());
      if (idx < 0)
        throw validation_error("facet coordinate " + name.get<std::string>() +
                               " not in the universe of piece " + p.label);
      f = f.with(idx);
    }
    p.arrangement.facets.push_back(f);
  }
  if (!p.arrangement.is_antichain())
    throw validation_error("facets of piece " + p.label + " are not an antichain");
  return p;
}

}  // namespace

Space parse_space(const std::string& text) {
  json j = parse_checked(text);
  Space s;
  if (j.is_object()) {
    s.pieces.push_back(parse_piece(j, 0));
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& pj : j) s.pieces.push_back(parse_piece(pj, i++));
  } else {
    throw validation_error("space input must be a piece object or an array of pieces");
  }
  s.normalize();
  s.validate();
  return s;
}

std::string space_to_json(const Space& s) {
  json out = json::array();
  std::vector<const Piece*> pieces;
  for (const Piece& p : s.pieces) pieces.push_back(&p);
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece* a, const Piece* b) { return a->label < b->label; });
  for (const Piece* p : pieces) {
    json pj;
    pj["label"] = p->label;
    pj["universe"] = p->arrangement.universe.labels;
    std::vector<std::vector<std::string>> facets;
    for (CoordSet f : p->arrangement.facets) {
      std::vector<std::string> names;
      for (int i : f.elements()) names.push_back(p->arrangement.universe.labels[i]);
      std::sort(names.begin(), names.end());
      facets.push_back(names);
    }
    std::sort(facets.begin(), facets.end());
    pj["facets"] = facets;
    out.push_back(pj);
  }
  return out.dump(2) + "\n";
}

OpenPair parse_pair(const std::string& text) {
  json j = parse_checked(text);
  if (j.is_object()) j = json::array({j});
  OpenPair pair;
  int index = 0;
  for (const auto& pj : j) {
    Piece piece;
    piece.label = pj.value("label", "p" + std::to_string(index++));
    for (const auto& name : pj.at("coords")) piece.arrangement.universe.labels.push_back(name.get<std::string>());
    piece.arrangement.facets = {CoordSet::full(piece.arrangement.universe.size())};
    CoordSet boundary;
    for (const auto& name : pj.at("boundary")) {
      int idx = piece.arrangement.universe.index_of(name.get<std::string>());
      if (idx < 0) throw validation_error("boundary coordinate not among coords");
      boundary = boundary.with(idx);
    }
    pair.space.pieces.push_back(piece);
    pair.boundary.push_back(boundary);
  }
  pair.validate();
  return pair;
}

namespace {

TorusDivisorQ parse_divisor(const json& j, int n) {
  TorusDivisorQ d = TorusDivisorQ::none(n);
  if (j.is_null()) return d;
  auto read_side = [&](const char* key, std::vector<Rat>& out) {
    if (!j.contains(key)) return;
    const auto& arr = j.at(key);
    if (static_cast<int>(arr.size()) != n) throw validation_error("divisor side has wrong length");
    for (int i = 0; i < n; ++i) {
      if (arr[i].is_number_integer()) out[i] = Rat(arr[i].get<long long>());
      else out[i] = parse_rational(arr[i].get<std::string>());
    }
  };
  read_side("zero", d.zero_coeff);
  read_side("inf", d.inf_coeff);
  return d;
}

LineBundle parse_bundle(const json& j) {
  LineBundle l;
  for (const auto& a : j) l.deg.push_back(a.get<int>());
  return l;
}

}  // namespace

InjSpec parse_inj(const std::string& text) {
  json j = parse_checked(text);
  InjSpec spec;
  spec.theorem = j.value("theorem", "esnault-viehweg");
  spec.x.n = j.value("factors", 1);
  spec.b = parse_divisor(j.contains("B") ? j.at("B") : json(), spec.x.n);
  spec.r = j.value("r", 1);
  if (!j.contains("L")) throw validation_error("inj-check input needs L");
  spec.l = parse_bundle(j.at("L"));
  if (spec.theorem == "esnault-viehweg") {
    spec.d = parse_divisor(j.contains("D") ? j.at("D") : json(), spec.x.n);
  } else if (spec.theorem == "tankeev-kollar") {
    if (!j.contains("H")) throw validation_error("tankeev-kollar input needs H");
    spec.h = parse_bundle(j.at("H"));
    if (!j.contains("s")) throw validation_error("tankeev-kollar input needs a section s");
    for (const auto& term : j.at("s")) {
      MonomialTerm t;
      for (const auto& v : term.at("zero")) t.zero_ord.push_back(v.get<int>());
      for (const auto& v : term.at("inf")) t.inf_ord.push_back(v.get<int>());
      if (term.contains("coeff")) {
        if (term.at("coeff").is_number_integer()) t.coeff = Rat(term.at("coeff").get<long long>());
        else t.coeff = parse_rational(term.at("coeff").get<std::string>());
      }
      spec.s.push_back(t);
    }
  } else {
    throw validation_error("unknown theorem: " + spec.theorem);
  }
  return spec;
}

VanishSpec parse_vanish(const std::string& text) {
  json j = parse_checked(text);
  VanishSpec spec;
  spec.b = parse_divisor(j.contains("B") ? j.at("B") : json(), 2);
  spec.r = j.value("r", 1);
  spec.a.deg = {j.value("A", 1)};
  return spec;
}

std::string hyperres_to_json(const Hyperresolution& h, const HyperresAudit& audit) {
  json out;
  out["bits"] = h.diagram.bits();
  out["stages"] = h.r();
  json verts = json::array();
  for (CubeVertex v : h.diagram.vertices()) {
    json vj;
    vj["alpha"] = mask_to_string(v.mask, h.diagram.bits());
    vj["object"] = h.diagram.cat().name(v.iobj);
    json pieces = json::array();
    for (const Piece& p : h.diagram.at(v).pieces) {
      json pj;
      pj["label"] = p.label;
      pj["universe"] = p.arrangement.universe.labels;
      std::vector<std::vector<std::string>> facets;
      for (CoordSet f : p.arrangement.facets) {
        std::vector<std::string> names;
        for (int i : f.elements()) names.push_back(p.arrangement.universe.labels[i]);
        std::sort(names.begin(), names.end());
        facets.push_back(names);
      }
      std::sort(facets.begin(), facets.end());
      pj["facets"] = facets;
      pieces.push_back(pj);
    }
    vj["space"] = pieces;
    verts.push_back(vj);
  }
  out["vertices"] = verts;
  json rows = json::array();
  for (const AuditRow& r : audit.rows) {
    json rj;
    rj["alpha"] = mask_to_string(r.vertex.mask, h.diagram.bits());
    rj["object"] = h.diagram.cat().name(r.vertex.iobj);
    rj["dim"] = r.dim ? json(*r.dim) : json(nullptr);
    rj["bound"] = r.bound;
    rj["regular"] = r.regular;
    rj["bound_ok"] = r.bound_ok;
    rows.push_back(rj);
  }
  out["audit"] = rows;
  out["audit_ok"] = audit.ok;
  return out.dump(2) + "\n";
}

std::string audit_to_text(const HyperresAudit& audit, int bits) {
  std::ostringstream os;
  os << "alpha,object,dim,bound,regular,bound_ok\n";
  for (const AuditRow& r : audit.rows) {
    os << mask_to_string(r.vertex.mask, bits) << "," << r.vertex.iobj << ","
       << cubres::to_string(r.dim) << "," << r.bound << "," << (r.regular ? "yes" : "no") << ","
       << (r.bound_ok ? "yes" : "no") << "\n";
  }
  os << "audit: " << (audit.ok ? "ok" : "FAILED") << (audit.squares_ok ? "" : " (squares)") << "\n";
  return os.str();
}

}  // namespace cubres::io
