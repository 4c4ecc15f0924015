#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubres/projmodels.hpp"

using namespace cubres;

TEST_CASE("cech cohomology of line bundles") {
  P1n line{1};
  SUBCASE("trivial bundle") {
    CechCohomology h = cech_cohomology(line, {{0}});
    CHECK(h.dims == std::vector<int>{1, 0});
  }
  SUBCASE("O(-2) has a one-dimensional H^1") {
    CechCohomology h = cech_cohomology(line, {{-2}});
    CHECK(h.dims == std::vector<int>{0, 1});
    REQUIRE(h.bases.at(1).size() == 1);
    CHECK(h.bases.at(1)[0].exps == std::vector<int>{-1});
  }
  SUBCASE("Kunneth on the product") {
    CechCohomology h = cech_cohomology(P1n{2}, {{0, -2}});
    CHECK(h.dims == std::vector<int>{0, 1, 0});
  }
  SUBCASE("serre duality sanity over a degree window") {
    for (int a = -5; a <= 5; ++a) CHECK(h0_p1(a) == h1_p1(-a - 2));
  }
}

TEST_CASE("kunneth factorization of multiplication maps") {
  // Multiplication on a product bundle equals the Kronecker product of the
  // per-factor multiplications, after basis bookkeeping.
  P1n square{2};
  LineBundle from{{1, -2}}, to{{2, -2}};
  Section s = monomial_section({{1, 0}, {0, 0}});
  std::map<int, MatQ> maps = multiplication_maps(square, from, to, s);
  // Degree 1 = H^0 (x) H^1; first factor multiplies by x, second identity.
  P1n factor{1};
  std::map<int, MatQ> m1 = multiplication_maps(factor, {{1}}, {{2}}, monomial_section({{1}, {0}}));
  std::map<int, MatQ> m2 = multiplication_maps(factor, {{-2}}, {{-2}}, monomial_section({{0}, {0}}));
  CHECK(maps.at(1) == MatQ::kron(m1.at(0), m2.at(1)));
}

TEST_CASE("esnault viehweg harness") {
  P1n line{1};
  SUBCASE("full boundary on the line") {
    TorusDivisorQ b{{1}, {1}};
    TorusDivisorQ d{{1}, {0}};
    InjectivityResult r = esnault_viehweg_check(line, b, 1, {{0}}, d);
    REQUIRE(r.hypotheses_ok);
    CHECK(r.injective);
    CHECK(r.dims.at(0) == std::pair<int, int>{1, 2});
  }
  SUBCASE("H^1 instance on the product") {
    P1n square{2};
    TorusDivisorQ b{{1, 0}, {1, 0}};
    TorusDivisorQ d{{1, 0}, {0, 0}};
    InjectivityResult r = esnault_viehweg_check(square, b, 1, {{0, -2}}, d);
    REQUIRE(r.hypotheses_ok);
    CHECK(r.injective);
    CHECK(r.dims.at(1) == std::pair<int, int>{1, 2});
  }
  SUBCASE("D = 0 is the identity") {
    TorusDivisorQ b{{1}, {1}};
    InjectivityResult r = esnault_viehweg_check(line, b, 1, {{0}}, TorusDivisorQ::none(1));
    REQUIRE(r.hypotheses_ok);
    CHECK(r.injective);
  }
  SUBCASE("support violations are named") {
    TorusDivisorQ b{{1}, {0}};
    TorusDivisorQ d{{0}, {1}};
    InjectivityResult r = esnault_viehweg_check(line, b, 2, {{-1}}, d);
    CHECK(!r.hypotheses_ok);
    CHECK(r.failed_hypothesis.find("Supp") != std::string::npos);
  }
}

TEST_CASE("tankeev kollar harness") {
  P1n line{1};
  TorusDivisorQ b{{1}, {1}};
  SUBCASE("generic section of O(1)") {
    Section s = {{{1}, {0}, 1}, {{0}, {1}, 1}};  // x + y, vanishing at -1 only
    InjectivityResult r = tankeev_kollar_check(line, b, 1, {{1}}, {{1}}, s);
    REQUIRE(r.hypotheses_ok);
    CHECK(r.injective);
  }
  SUBCASE("a coordinate section vanishing on a stratum is rejected") {
    Section s = {{{1}, {0}, 1}};  // vanishes at 0_1
    InjectivityResult r = tankeev_kollar_check(line, b, 1, {{1}}, {{1}}, s);
    CHECK(!r.hypotheses_ok);
    CHECK(r.failed_hypothesis.find("stratum") != std::string::npos);
    CHECK(r.failed_hypothesis.find("0_1") != std::string::npos);
  }
  SUBCASE("trivial H with the unit section") {
    Section s = {{{0}, {0}, 1}};
    InjectivityResult r = tankeev_kollar_check(line, b, 1, {{0}}, {{0}}, s);
    REQUIRE(r.hypotheses_ok);
    CHECK(r.injective);
  }
}

TEST_CASE("ohsawa kollar vanishing") {
  SUBCASE("boundary on the fiber direction with A ample") {
    TorusDivisorQ b{{0, 1}, {0, 1}};
    VanishingResult r = vanishing_check_ohsawa_kollar(b, 1, {{1}});
    REQUIRE(r.hypotheses_ok);
    CHECK(r.vanishing);
    CHECK(r.table.at({0, 0}) == 0);  // L = O(-1, 0): nothing anywhere
  }
  SUBCASE("full boundary with A ample") {
    TorusDivisorQ b{{1, 1}, {1, 1}};
    VanishingResult r = vanishing_check_ohsawa_kollar(b, 1, {{1}});
    REQUIRE(r.hypotheses_ok);
    CHECK(r.vanishing);
    CHECK(r.table.at({0, 0}) == 2);  // R^0 g_* R^0 f_* of O(1, 0)
  }
  SUBCASE("falsification with a non-ample twist") {
    TorusDivisorQ b{{1, 1}, {1, 1}};
    VanishingResult r = vanishing_check_ohsawa_kollar(b, 1, {{-2}}, true);
    CHECK(!r.vanishing);
    CHECK(r.table.at({1, 0}) == 1);  // H^1(O(-2)) survives
  }
  SUBCASE("without the override the hypothesis is enforced") {
    TorusDivisorQ b{{1, 1}, {1, 1}};
    VanishingResult r = vanishing_check_ohsawa_kollar(b, 1, {{-2}});
    CHECK(!r.hypotheses_ok);
    CHECK(r.failed_hypothesis.find("ample") != std::string::npos);
  }
}

TEST_CASE("torsion freeness of product families") {
  SUBCASE("O(-2) pushes to a free rank-one module") {
    TorsionFreeResult r = torsion_free_check(P1n{1}, {{-2}});
    CHECK(r.ok);
    CHECK(r.pushforwards.at(1).free_rank == 1);
    CHECK(r.ass.at(1).generic_point);
    CHECK(r.ass.at(1).torsion_roots.empty());
  }
  SUBCASE("O(0) has vanishing R^1") {
    TorsionFreeResult r = torsion_free_check(P1n{1}, {{0}});
    CHECK(r.pushforwards.at(1).free_rank == 0);
    CHECK(r.ass.at(1).zero_module);
  }
  SUBCASE("injected torsion is flagged") {
    QtModule m;
    m.free_rank = 1;
    m.torsion.push_back({Rat(2), 1});
    AssociatedPrimesReport rep = associated_primes(m);
    CHECK(!rep.allowed);
    REQUIRE(rep.torsion_roots.size() == 1);
    CHECK(rep.torsion_roots[0] == Rat(2));
  }
}

TEST_CASE("grids") {
  SUBCASE("every hypothesis-satisfying vanishing instance passes and falsification is nonempty") {
    int falsified = 0;
    auto rows = vanishing_grid(3, &falsified);
    for (const HarnessRow& row : rows)
      if (row.hypotheses_ok) CHECK(row.verdict);
    CHECK(falsified > 0);
  }
  SUBCASE("EV and TK grids pass whenever the hypotheses hold") {
    for (const HarnessRow& row : esnault_viehweg_grid(2, 3))
      if (row.hypotheses_ok) CHECK(row.verdict);
    for (const HarnessRow& row : tankeev_kollar_grid(2))
      if (row.hypotheses_ok) CHECK(row.verdict);
  }
  SUBCASE("csv emission has a header and one line per row") {
    auto rows = torsion_free_grid(2);
    std::string csv = harness_csv(rows);
    CHECK(csv.find("instance,hypotheses,verdict,detail") == 0);
  }
}
