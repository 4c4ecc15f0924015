#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubres/diagram.hpp"
#include "cubres/hyperres.hpp"
#include "support/gens.hpp"

using namespace cubres;

TEST_CASE("orderable categories") {
  CHECK_NOTHROW(FinOrdCat::from_generators(3, {{0, 1}, {1, 2}}));
  CHECK_THROWS_AS(FinOrdCat::from_generators(2, {{0, 0}}), validation_error);
  CHECK_THROWS_AS(FinOrdCat::from_generators(2, {{0, 1}, {1, 0}}), validation_error);
  FinOrdCat prod = product(FinOrdCat::arrow(), FinOrdCat::arrow());
  CHECK(prod.objects() == 4);
  CHECK(prod.covers().size() == 4);
}

TEST_CASE("face functors") {
  SUBCASE("delta_0 on the point cube sends 0 to 0") {
    CubeMap d0 = face_functor(0, -1);
    CHECK(d0.from_bits == 0);
    CHECK(d0.to_bits == 1);
    CHECK(d0.apply(0) == 0u);
  }
  SUBCASE("delta_1 inserts a zero in slot one") {
    CubeMap d1 = face_functor(1, 1);
    // (1,0) as a mask has bit 0 set; the image (1,0,0) keeps bit 0 only.
    CHECK(d1.apply(0b01) == 0b001u);
    CHECK(d1.apply(0b10) == 0b100u);
  }
  SUBCASE("composition of two insertions") {
    CubeMap first = face_functor(0, 0);   // Box_0 -> Box_1
    CubeMap second = face_functor(0, 1);  // Box_1 -> Box_2
    CubeMap comp = compose(second, first);
    // (1) -> (0,1) -> (0,0,1)
    CHECK(comp.apply(1) == 0b100u);
  }
  SUBCASE("insertion preserves weight") {
    testgen::Rng rng;
    for (int trial = 0; trial < 50; ++trial) {
      int n = rng.uniform(0, 4);
      int i = rng.uniform(0, n + 1);
      CubeMap d = face_functor(i, n);
      unsigned alpha = static_cast<unsigned>(rng.uniform(0, (1 << (n + 1)) - 1));
      CHECK(weight(d.apply(alpha)) == weight(alpha));
    }
  }
}

TEST_CASE("direct images") {
  DiagramOfSpaces one(0, FinOrdCat::point());
  one.set_space({0, 0}, testgen::node());
  one.finalize();

  SUBCASE("pushing a one-vertex diagram along delta_0") {
    CubeMap d0 = face_functor(0, -1);
    DiagramOfSpaces pushed = direct_image(d0, one);
    CHECK(pushed.at({0, 0}) == testgen::node());
    CHECK(pushed.at({1, 0}).empty());
  }
  SUBCASE("identity direct image is the diagram itself") {
    DiagramOfSpaces same = direct_image(CubeMap::identity(0), one);
    CHECK(same == one);
  }
  SUBCASE("direct image then restriction recovers the diagram") {
    testgen::Rng rng;
    for (int trial = 0; trial < 50; ++trial) {
      DiagramOfSpaces d = testgen::random_arrow_diagram(rng);
      CubeMap delta = face_functor(0, -1);
      DiagramOfSpaces pushed = direct_image(delta, d);  // validates functoriality
      DiagramOfSpaces back = restrict_along(delta, pushed);
      CHECK(back == d);
    }
  }
}

TEST_CASE("reduction") {
  SUBCASE("a single stage reduces to itself") {
    DiagramOfSpaces x1 = two_resolution(as_point_diagram(testgen::node()));
    CHECK(reduction({x1}) == x1);
  }
  SUBCASE("hand-spliced two-stage reduction of the node") {
    DiagramOfSpaces x1 = two_resolution(as_point_diagram(testgen::node()));
    DiagramOfSpaces stratum = fix_first_bit(x1, 1);
    DiagramOfSpaces x2 = two_resolution(stratum);
    DiagramOfSpaces z = reduction({x1, x2});
    CHECK(z.bits() == 3);
    // Base and first resolution sit on the low-bit edge.
    CHECK(z.at({0b000, 0}) == testgen::node());
    CHECK(z.at({0b001, 0}).dimension() == Dim{1});
    // The stratum resolution appears at the second stage slots.
    CHECK(z.at({0b010, 0}).dimension() == Dim{0});
    // Restriction to alpha = 0 recovers the base.
    CHECK(z.at({0, 0}) == x1.at({0, 0}));
  }
  SUBCASE("overlap mismatch is reported with the offending face") {
    DiagramOfSpaces x1 = two_resolution(as_point_diagram(testgen::node()));
    DiagramOfSpaces x2 = two_resolution(fix_first_bit(x1, 1));
    DiagramOfSpaces wrong = two_resolution(fix_first_bit(two_resolution(as_point_diagram(testgen::axes(3))), 1));
    CHECK_THROWS_WITH_AS(reduction({x1, wrong}), doctest::Contains("overlap"), validation_error);
    CHECK_NOTHROW(reduction({x1, x2}));
  }
  SUBCASE("three-stage associativity against a flat splice") {
    DiagramOfSpaces x1 = two_resolution(as_point_diagram(testgen::umbrella()));
    DiagramOfSpaces x2 = two_resolution(fix_first_bit(x1, 1));
    DiagramOfSpaces x3 = two_resolution(fix_first_bit(x2, 1));
    DiagramOfSpaces folded = reduction({x1, x2, x3});
    CHECK(folded.bits() == 4);
    // Flat splice: vertices read off the stage diagrams directly.
    for (CubeVertex v : folded.vertices()) {
      unsigned m = v.mask;
      Space expect;
      if ((m & 0b1100) == 0) {
        unsigned rest = m & 0b0011;
        // region of rd(x1, x2): low two bits
        if ((rest & 0b10) == 0) expect = x1.at({rest & 0b01, 0});
        else expect = x2.at({rest, 0});
      } else {
        expect = x3.at({m, 0});
      }
      CHECK(folded.at(v) == expect);
    }
  }
}

TEST_CASE("functoriality validator") {
  SUBCASE("hyperresolution output validates") {
    Hyperresolution h = cubical_hyperresolution(testgen::node());
    CHECK(validate_functoriality(h.diagram).ok);
  }
  SUBCASE("a corrupted arrow is reported with its square") {
    // Two disjoint nodes; rerouting one resolved cell to the wrong piece
    // stays a valid morphism but breaks a commuting square.
    Space two = testgen::node();
    Piece second = two.pieces[0];
    second.label = "Y";
    two.pieces.push_back(second);
    Hyperresolution h = cubical_hyperresolution(two);
    DiagramOfSpaces bad = h.diagram;
    SpaceMorphism m = bad.arrow({0b01, 0}, {0b00, 0});
    REQUIRE(m.assignment.size() == 4);
    int other = m.assignment[0].target_piece == 0 ? 1 : 0;
    m.assignment[0].target_piece = other;
    m.validate();  // still a perfectly valid morphism on its own
    bad.set_generator({0b01, 0}, {0b00, 0}, m);
    FunctorialityReport rep = validate_functoriality(bad);
    CHECK(!rep.ok);
    CHECK(rep.counterexample.find("square") != std::string::npos);
  }
  SUBCASE("single-object diagram is functorial") {
    CHECK(validate_functoriality(as_point_diagram(testgen::node())).ok);
  }
}

TEST_CASE("dot emission mentions every vertex") {
  Hyperresolution h = cubical_hyperresolution(testgen::node());
  std::string dot = to_dot(h.diagram);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("00") != std::string::npos);
  CHECK(dot.find("11") != std::string::npos);
}
