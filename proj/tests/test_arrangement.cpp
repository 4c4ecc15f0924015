#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cubres/arrangement.hpp"
#include "support/gens.hpp"
#include "support/oracles.hpp"

using namespace cubres;

namespace {

Space cell_like(int coord) {
  Space s;
  Piece p;
  p.label = coord == 0 ? "ax1" : "ax2";
  p.arrangement.universe.labels = {coord == 0 ? "z1" : "z2"};
  p.arrangement.facets = {CoordSet{1}};
  s.pieces.push_back(p);
  return s;
}

SpaceMorphism inclusion_like(const Space& cell, const Space& node, int coord) {
  SpaceMorphism m;
  m.source = cell;
  m.target = node;
  m.assignment.push_back({0, {coord}});
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("irreducible components") {
  SUBCASE("node splits into the two axes") {
    Components c = irreducible_components(testgen::node());
    REQUIRE(c.space.pieces.size() == 2);
    CHECK(c.space.dimension() == Dim{1});
    CHECK(c.space.is_regular());
    c.normalization.validate();
    CHECK(image_closure(c.normalization) == testgen::node());
  }
  SUBCASE("a single facet is already irreducible") {
    Space cell = testgen::smooth_cell(2);
    Components c = irreducible_components(cell);
    REQUIRE(c.space.pieces.size() == 1);
    CHECK(c.space.pieces[0].arrangement.universe.size() == 2);
    CHECK(fiber_cardinality(c.normalization, 0, CoordSet{3}) == 1);
  }
  SUBCASE("three axes give three lines") {
    Components c = irreducible_components(testgen::axes(3));
    CHECK(c.space.pieces.size() == 3);
    for (const Piece& p : c.space.pieces) CHECK(p.arrangement.dimension() == Dim{1});
  }
  SUBCASE("empty in, empty out") {
    Components c = irreducible_components(Space{});
    CHECK(c.space.empty());
  }
}

TEST_CASE("fiber products") {
  Space node = testgen::node();
  Components norm = irreducible_components(node);

  SUBCASE("normalization squared over the node has four cells") {
    FiberProduct fp = fiber_product(norm.normalization, norm.normalization);
    REQUIRE(fp.space.pieces.size() == 4);
    int lines = 0, points = 0;
    for (const Piece& p : fp.space.pieces) {
      if (p.arrangement.dimension() == Dim{1}) ++lines;
      if (p.arrangement.dimension() == Dim{0}) ++points;
    }
    CHECK(lines == 2);
    CHECK(points == 2);
  }
  SUBCASE("identity pullback is the space itself") {
    SpaceMorphism id = SpaceMorphism::identity(node);
    FiberProduct fp = fiber_product(id, id);
    REQUIRE(fp.space.pieces.size() == 1);
    CHECK(fp.space.pieces[0].arrangement.facets == node.pieces[0].arrangement.facets);
    CHECK(fp.space.pieces[0].arrangement.universe == node.pieces[0].arrangement.universe);
  }
  SUBCASE("crossing axes meet in a point") {
    // axis {z1} and axis {z2} included into the node
    Space ax1 = cell_like(0), ax2 = cell_like(1);
    FiberProduct fp = fiber_product(inclusion_like(ax1, node, 0), inclusion_like(ax2, node, 1));
    REQUIRE(fp.space.pieces.size() == 1);
    CHECK(fp.space.dimension() == Dim{0});
  }
}

TEST_CASE("discriminants") {
  Space node = testgen::node();
  SUBCASE("normalization of the node drops the origin") {
    Components c = irreducible_components(node);
    Space d = discriminant(c.normalization);
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.dimension() == Dim{0});
    CHECK(d.pieces[0].arrangement.facets == std::vector<CoordSet>{CoordSet::empty_set()});
  }
  SUBCASE("identity has empty discriminant") {
    CHECK(discriminant(SpaceMorphism::identity(node)).empty());
  }
  SUBCASE("three axes also only ramify at the origin") {
    Components c = irreducible_components(testgen::axes(3));
    Space d = discriminant(c.normalization);
    CHECK(d.dimension() == Dim{0});
  }
  SUBCASE("minimality: fiber cardinality is one on every stratum outside") {
    testgen::Rng rng;
    for (int trial = 0; trial < 40; ++trial) {
      Space x = testgen::random_space(rng);
      Components c = irreducible_components(x);
      Space d = discriminant(c.normalization);
      for (size_t tp = 0; tp < x.pieces.size(); ++tp) {
        int dp = d.piece_index(x.pieces[tp].label);
        for (CoordSet t : x.pieces[tp].arrangement.faces()) {
          bool inside = dp >= 0 && d.pieces[dp].arrangement.contains_face(t);
          if (!inside)
            CHECK(fiber_cardinality(c.normalization, static_cast<int>(tp), t) == 1);
        }
      }
    }
  }
}

TEST_CASE("image closures") {
  Space node = testgen::node();
  SUBCASE("axis into node") {
    Space ax1 = cell_like(0);
    Space img = image_closure(inclusion_like(ax1, node, 0));
    REQUIRE(img.pieces.size() == 1);
    CHECK(img.pieces[0].arrangement.facets == std::vector<CoordSet>{CoordSet{1}});
  }
  SUBCASE("normalization covers the node") {
    Components c = irreducible_components(node);
    CHECK(image_closure(c.normalization) == node);
  }
  SUBCASE("point maps to the origin arrangement") {
    Space pt;
    pt.pieces.push_back({"pt", {{{}}, {CoordSet::empty_set()}}});
    SpaceMorphism m;
    m.source = pt;
    m.target = node;
    m.assignment.push_back({0, {}});
    m.validate();
    Space img = image_closure(m);
    REQUIRE(img.pieces.size() == 1);
    CHECK(img.dimension() == Dim{0});
  }
  SUBCASE("functoriality over random composable pairs") {
    testgen::Rng rng;
    int done = 0;
    while (done < 100) {
      Space c = testgen::random_space(rng);
      Space b = testgen::random_subspace(rng, c);
      if (b.empty()) continue;
      Space a = testgen::random_subspace(rng, b);
      if (a.empty()) continue;
      SpaceMorphism f = inclusion_morphism(a, b);
      SpaceMorphism g = inclusion_morphism(b, c);
      Space lhs = image_closure(compose(g, f));
      Space rhs = image_closure(restrict_morphism(g, image_closure(f)));
      CHECK(lhs == rhs);
      ++done;
    }
  }
}

TEST_CASE("antichain closure of operations") {
  testgen::Rng rng;
  auto all_antichains = [](const Space& s) {
    for (const Piece& p : s.pieces)
      if (!p.arrangement.is_antichain()) return false;
    return true;
  };
  for (int trial = 0; trial < 60; ++trial) {
    Space x = testgen::random_space(rng);
    Components c = irreducible_components(x);
    CHECK(all_antichains(c.space));
    CHECK(all_antichains(discriminant(c.normalization)));
    CHECK(all_antichains(image_closure(c.normalization)));
    FiberProduct fp = fiber_product(c.normalization, c.normalization);
    CHECK(all_antichains(fp.space));
  }
}

TEST_CASE("fiber product universal property against sampled points") {
  testgen::Rng rng;
  for (int trial = 0; trial < 25; ++trial) {
    Space x = testgen::random_space(rng, 1, 4, 4);
    Components c = irreducible_components(x);
    FiberProduct fp = fiber_product(c.normalization, c.normalization);
    // Brute-force pairs of sampled points with equal images.
    std::set<std::pair<oracle::SamplePoint, oracle::SamplePoint>> brute;
    for (const auto& p : oracle::sample_points(c.space))
      for (const auto& q : oracle::sample_points(c.space))
        if (oracle::map_point(c.normalization, p) == oracle::map_point(c.normalization, q))
          brute.insert({p, q});
    std::set<std::pair<oracle::SamplePoint, oracle::SamplePoint>> via_fp;
    for (const auto& z : oracle::sample_points(fp.space))
      via_fp.insert({oracle::map_point(fp.proj_left, z), oracle::map_point(fp.proj_right, z)});
    CHECK(brute == via_fp);
  }
}

TEST_CASE("S2 chain condition") {
  SUBCASE("node") {
    S2Witness w = s2_check(testgen::node().pieces[0].arrangement);
    CHECK(w.ok);
    REQUIRE(w.chains.count({0, 1}));
    CHECK(w.chains[{0, 1}].size() == 2);  // direct step
  }
  SUBCASE("two planes meeting at a point fail") {
    Arrangement a;
    a.universe.labels = {"z1", "z2", "z3", "z4"};
    a.facets = {CoordSet{3}, CoordSet{12}};
    S2Witness w = s2_check(a);
    CHECK(!w.ok);
    CHECK(w.bad_f == CoordSet{3});
    CHECK(w.bad_g == CoordSet{12});
  }
  SUBCASE("single facet has no pairs") {
    CHECK(s2_check(testgen::smooth_cell(3).pieces[0].arrangement).ok);
  }
}

TEST_CASE("gnc local models") {
  SUBCASE("node with empty boundary") {
    GncReport r = gnc_local_model_check(testgen::node().pieces[0].arrangement, {});
    CHECK(r.ok);
  }
  SUBCASE("two planes through a point fail S2") {
    Arrangement a;
    a.universe.labels = {"z1", "z2", "z3", "z4"};
    a.facets = {CoordSet{3}, CoordSet{12}};
    GncReport r = gnc_local_model_check(a, {});
    CHECK(!r.ok);
    CHECK(!r.s2);
  }
  SUBCASE("smooth plane with a half hyperplane") {
    BoundaryDivisor b;
    b.coefficients[0] = Rat(1, 2);
    GncReport r = gnc_local_model_check(testgen::smooth_cell(2).pieces[0].arrangement, b);
    CHECK(r.ok);
  }
  SUBCASE("boundary outside sigma is rejected with a diagnostic") {
    BoundaryDivisor b;
    b.coefficients[0] = 1;  // z1 is not in sigma = {} of the node
    GncReport r = gnc_local_model_check(testgen::node().pieces[0].arrangement, b);
    CHECK(!r.ok);
    CHECK(!r.boundary_ok);
    CHECK(r.diagnostic.find("sigma") != std::string::npos);
  }
}
