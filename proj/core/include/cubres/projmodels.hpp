#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubres/matrix.hpp"

namespace cubres {

// Product of projective lines with its torus-fixed divisors 0_j and inf_j.
struct P1n {
  int n = 1;
};

// Rational combination of the torus-fixed prime divisors.
struct TorusDivisorQ {
  std::vector<Rat> zero_coeff;  // coefficient of 0_j per factor
  std::vector<Rat> inf_coeff;   // coefficient of inf_j per factor

  static TorusDivisorQ none(int n) { return {std::vector<Rat>(n, 0), std::vector<Rat>(n, 0)}; }
  bool valid_for(const P1n& x) const {
    return static_cast<int>(zero_coeff.size()) == x.n && static_cast<int>(inf_coeff.size()) == x.n;
  }
  bool boundary_coefficients_ok() const;  // within [0, 1]
  bool effective_integral() const;
  Rat degree(int j) const { return zero_coeff[j] + inf_coeff[j]; }
};

struct LineBundle {
  std::vector<int> deg;  // multidegree (a_1, ..., a_n)
};

// One Kunneth component of Cech cohomology: which factors contribute H^1 and
// the Laurent exponent per factor.
struct CechBasisElt {
  unsigned h1_factors = 0;  // bitmask over factors
  std::vector<int> exps;
};

struct CechCohomology {
  std::vector<int> dims;                          // per degree 0..n
  std::map<int, std::vector<CechBasisElt>> bases; // per degree, canonical order
};

// h^0(P^1, O(a)) = max(a+1, 0) and h^1 = max(-a-1, 0), assembled across
// factors by Kunneth; bases are exponent vectors (H^1 boxes are the negative
// exponent windows).
CechCohomology cech_cohomology(const P1n& x, const LineBundle& l);

int h0_p1(int a);
int h1_p1(int a);

// A global section of the bundle with multidegree `orders_total`: a rational
// combination of torus monomials given by their vanishing orders.
struct MonomialTerm {
  std::vector<int> zero_ord;  // order along 0_j
  std::vector<int> inf_ord;   // order along inf_j
  Rat coeff = 1;
};
using Section = std::vector<MonomialTerm>;

Section monomial_section(const TorusDivisorQ& d);  // integral effective divisor

// Multiplication by a section as a matrix per cohomology degree, between the
// Kunneth monomial bases.  Classes whose exponents leave an H^1 window die.
std::map<int, MatQ> multiplication_maps(const P1n& x, const LineBundle& from,
                                        const LineBundle& to, const Section& s);

struct InjectivityResult {
  bool hypotheses_ok = true;
  std::string failed_hypothesis;
  bool injective = true;
  std::map<int, std::pair<int, int>> dims;  // degree -> (source, target)
  std::map<int, int> ranks;
};

// Esnault-Viehweg harness: L^r = O(r(K+B)) with rB integral, D effective
// with support in Supp(B); decides injectivity of H^i(L) -> H^i(L(D)).
InjectivityResult esnault_viehweg_check(const P1n& x, const TorusDivisorQ& b, int r,
                                        const LineBundle& l, const TorusDivisorQ& d);

// Tankeev-Kollar harness: L^r = O(r(K+B)) (x) H with H globally generated
// and s a section of H not vanishing on any stratum of the coefficient-one
// part of B; decides injectivity of multiplication by s.
InjectivityResult tankeev_kollar_check(const P1n& x, const TorusDivisorQ& b, int r,
                                       const LineBundle& l, const LineBundle& h,
                                       const Section& s);

struct VanishingResult {
  bool hypotheses_ok = true;
  std::string failed_hypothesis;
  bool vanishing = true;                      // R^p g_* R^q f_* L = 0 for p != 0
  std::map<std::pair<int, int>, int> table;   // (p, q) -> dimension
};

// Ohsawa-Kollar harness on (P^1)^2 -> P^1 -> pt: L^r = O(r(K+B)) (x) f^*A
// with A ample downstairs.  `skip_ample_hypothesis` runs the falsification
// path with the hypothesis deliberately broken.
VanishingResult vanishing_check_ohsawa_kollar(const TorusDivisorQ& b, int r, const LineBundle& a_y,
                                              bool skip_ample_hypothesis = false);
// The bundle the hypotheses force, handy for building grid instances.
LineBundle ohsawa_kollar_bundle(const TorusDivisorQ& b, const LineBundle& a_y);

// Finitely generated Q[t]-module in factored diagonal form.
struct QtModule {
  int free_rank = 0;
  std::vector<std::pair<Rat, int>> torsion;  // (root, multiplicity)
};

struct AssociatedPrimesReport {
  bool zero_module = true;
  bool generic_point = false;        // (0) is associated
  std::vector<Rat> torsion_roots;    // embedded/torsion primes (t - c)
  bool allowed = true;               // contained in {(0)}
};
AssociatedPrimesReport associated_primes(const QtModule& m);

struct TorsionFreeResult {
  std::map<int, QtModule> pushforwards;        // i -> R^i f_* L on the line
  std::map<int, AssociatedPrimesReport> ass;
  bool ok = true;
};

// Product family X x A^1 -> A^1 with L pulled back from X = (P^1)^n: the
// pushforwards are free with associated primes inside {(0)}.
TorsionFreeResult torsion_free_check(const P1n& x, const LineBundle& l);

// Grid harnesses used by the acceptance suite and the CLI reports.
struct HarnessRow {
  std::string instance;
  bool hypotheses_ok = true;
  bool verdict = true;
  std::string detail;
};

std::vector<HarnessRow> esnault_viehweg_grid(int n_max, int coeff_box);
std::vector<HarnessRow> tankeev_kollar_grid(int n_max);
std::vector<HarnessRow> vanishing_grid(int deg_box, int* falsification_count = nullptr);
std::vector<HarnessRow> torsion_free_grid(int deg_box);

std::string harness_csv(const std::vector<HarnessRow>& rows);
std::string harness_text(const std::vector<HarnessRow>& rows);

}  // namespace cubres
