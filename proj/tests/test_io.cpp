#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubres/io.hpp"
#include "support/gens.hpp"

using namespace cubres;

TEST_CASE("space parsing") {
  SUBCASE("the documented schema parses") {
    Space s = io::parse_space(R"({"universe":["z1","z2"],"facets":[["z1"],["z2"]]})");
    REQUIRE(s.pieces.size() == 1);
    CHECK(s.pieces[0].arrangement.facets.size() == 2);
  }
  SUBCASE("arrays of pieces parse with labels") {
    Space s = io::parse_space(
        R"([{"label":"A","universe":["x"],"facets":[["x"]]},
            {"label":"B","universe":["y"],"facets":[[]]}])");
    CHECK(s.pieces.size() == 2);
    CHECK(s.piece_index("A") == 0);
  }
  SUBCASE("parse errors carry line and column") {
    try {
      io::parse_space("[{\"universe\": [\n  \"z1\",,]}]");
      FAIL("expected a parse error");
    } catch (const io::parse_error& e) {
      CHECK(e.line >= 1);
      CHECK(e.column >= 1);
    }
  }
  SUBCASE("facets outside the universe are rejected") {
    CHECK_THROWS_AS(io::parse_space(R"({"universe":["z1"],"facets":[["z9"]]})"),
                    validation_error);
  }
  SUBCASE("non-antichain input is rejected") {
    CHECK_THROWS_AS(
        io::parse_space(R"({"universe":["z1","z2"],"facets":[["z1"],["z1","z2"]]})"),
        validation_error);
  }
}

TEST_CASE("round trips") {
  testgen::Rng rng;
  for (int trial = 0; trial < 40; ++trial) {
    Space x = testgen::random_space(rng);
    Space back = io::parse_space(io::space_to_json(x));
    CHECK(back == x);
    // Serialization is canonical: emitting the reparse is byte-identical.
    CHECK(io::space_to_json(back) == io::space_to_json(x));
  }
}

TEST_CASE("pair and harness inputs") {
  OpenPair p = io::parse_pair(R"({"coords":["z1","z2"],"boundary":["z1"]})");
  CHECK(p.space.pieces.size() == 1);
  CHECK(p.boundary[0] == CoordSet{1});

  io::InjSpec inj = io::parse_inj(
      R"({"theorem":"esnault-viehweg","factors":1,"B":{"zero":[1],"inf":[1]},"r":1,
          "L":[0],"D":{"zero":[1]}})");
  CHECK(inj.x.n == 1);
  CHECK(inj.b.zero_coeff[0] == Rat(1));

  io::VanishSpec v = io::parse_vanish(R"({"B":{"zero":[1,1],"inf":[1,1]},"A":1})");
  CHECK(v.a.deg[0] == 1);

  io::InjSpec tk = io::parse_inj(
      R"({"theorem":"tankeev-kollar","factors":1,"B":{"zero":[1],"inf":[1]},"r":1,
          "L":[1],"H":[1],"s":[{"zero":[1],"inf":[0]},{"zero":[0],"inf":[1]}]})");
  CHECK(tk.s.size() == 2);
}

TEST_CASE("hyperresolution json dump carries the audit") {
  Hyperresolution h = cubical_hyperresolution(testgen::node());
  HyperresAudit audit = audit_hyperresolution(h, as_point_diagram(testgen::node()));
  std::string json = io::hyperres_to_json(h, audit);
  CHECK(json.find("\"audit\"") != std::string::npos);
  CHECK(json.find("\"vertices\"") != std::string::npos);
  CHECK(json.find("\"audit_ok\": true") != std::string::npos);
}
