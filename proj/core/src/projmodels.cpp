#include "cubres/projmodels.hpp"

#include <algorithm>
#include <sstream>

#include "cubres/arrangement.hpp"  // validation_error

namespace cubres {

int h0_p1(int a) { return std::max(a + 1, 0); }
int h1_p1(int a) { return std::max(-a - 1, 0); }

bool TorusDivisorQ::boundary_coefficients_ok() const {
  for (const Rat& c : zero_coeff)
    if (c < 0 || c > 1) return false;
  for (const Rat& c : inf_coeff)
    if (c < 0 || c > 1) return false;
  return true;
}

bool TorusDivisorQ::effective_integral() const {
  for (const Rat& c : zero_coeff)
    if (c < 0 || denominator(c) != 1) return false;
  for (const Rat& c : inf_coeff)
    if (c < 0 || denominator(c) != 1) return false;
  return true;
}

CechCohomology cech_cohomology(const P1n& x, const LineBundle& l) {
  if (static_cast<int>(l.deg.size()) != x.n) throw validation_error("line bundle rank mismatch");
  CechCohomology out;
  out.dims.assign(x.n + 1, 0);
  for (unsigned j_mask = 0; j_mask < (1u << x.n); ++j_mask) {
    int deg = std::popcount(j_mask);
    // Exponent windows: H^0 box [0, a], H^1 box [a+1, -1].
    std::vector<std::pair<int, int>> window(x.n);
    bool empty = false;
    for (int j = 0; j < x.n; ++j) {
      if ((j_mask >> j) & 1u) {
        window[j] = {l.deg[j] + 1, -1};
        if (h1_p1(l.deg[j]) == 0) empty = true;
      } else {
        window[j] = {0, l.deg[j]};
        if (h0_p1(l.deg[j]) == 0) empty = true;
      }
    }
    if (empty) continue;
    std::vector<int> e(x.n);
    for (int j = 0; j < x.n; ++j) e[j] = window[j].first;
    while (true) {
      out.bases[deg].push_back({j_mask, e});
      ++out.dims[deg];
      int j = x.n - 1;
      while (j >= 0 && e[j] == window[j].second) {
        e[j] = window[j].first;
        --j;
      }
      if (j < 0) break;
      ++e[j];
    }
  }
  return out;
}

Section monomial_section(const TorusDivisorQ& d) {
  if (!d.effective_integral())
    throw validation_error("monomial section needs an effective integral divisor");
  MonomialTerm t;
  for (const Rat& c : d.zero_coeff) t.zero_ord.push_back(static_cast<int>(numerator(c)));
  for (const Rat& c : d.inf_coeff) t.inf_ord.push_back(static_cast<int>(numerator(c)));
  return {t};
}

std::map<int, MatQ> multiplication_maps(const P1n& x, const LineBundle& from, const LineBundle& to,
                                        const Section& s) {
  for (const MonomialTerm& t : s) {
    if (static_cast<int>(t.zero_ord.size()) != x.n || static_cast<int>(t.inf_ord.size()) != x.n)
      throw validation_error("section term rank mismatch");
    for (int j = 0; j < x.n; ++j)
      if (from.deg[j] + t.zero_ord[j] + t.inf_ord[j] != to.deg[j])
        throw validation_error("section multidegree does not match the bundles");
  }
  CechCohomology src = cech_cohomology(x, from);
  CechCohomology dst = cech_cohomology(x, to);
  std::map<int, MatQ> maps;
  for (int i = 0; i <= x.n; ++i) {
    MatQ m(dst.dims[i], src.dims[i]);
    const auto& sb = src.bases.count(i) ? src.bases.at(i) : std::vector<CechBasisElt>{};
    const auto& db = dst.bases.count(i) ? dst.bases.at(i) : std::vector<CechBasisElt>{};
    for (size_t col = 0; col < sb.size(); ++col) {
      for (const MonomialTerm& t : s) {
        CechBasisElt shifted = sb[col];
        bool dies = false;
        for (int j = 0; j < x.n; ++j) {
          shifted.exps[j] += t.zero_ord[j];
          if ((shifted.h1_factors >> j) & 1u) {
            // Must stay in the H^1 window of the target bundle.
            if (shifted.exps[j] > -1 || shifted.exps[j] < to.deg[j] + 1) dies = true;
          }
        }
        if (dies) continue;
        auto it = std::find_if(db.begin(), db.end(), [&](const CechBasisElt& b) {
          return b.h1_factors == shifted.h1_factors && b.exps == shifted.exps;
        });
        if (it == db.end()) throw validation_error("multiplication image missing from the target basis");
        m.at(static_cast<int>(it - db.begin()), static_cast<int>(col)) += t.coeff;
      }
    }
    maps[i] = m;
  }
  return maps;
}

namespace {

bool bundle_matches_pairing(const TorusDivisorQ& b, int r, const LineBundle& l,
                            const std::vector<int>& extra, std::string& diag) {
  for (size_t j = 0; j < l.deg.size(); ++j) {
    Rat target = Rat(r) * (Rat(-2) + b.degree(static_cast<int>(j))) + extra[j];
    if (Rat(r) * l.deg[j] != target) {
      diag = "L^r does not match r(K+B) in factor " + std::to_string(j + 1);
      return false;
    }
  }
  return true;
}

bool rb_integral(const TorusDivisorQ& b, int r) {
  for (const Rat& c : b.zero_coeff)
    if (denominator(Rat(r) * c) != 1) return false;
  for (const Rat& c : b.inf_coeff)
    if (denominator(Rat(r) * c) != 1) return false;
  return true;
}

InjectivityResult decide_injectivity(const P1n& x, const LineBundle& from, const LineBundle& to,
                                     const Section& s) {
  InjectivityResult res;
  std::map<int, MatQ> maps = multiplication_maps(x, from, to, s);
  for (const auto& [deg, m] : maps) {
    res.dims[deg] = {m.cols(), m.rows()};
    res.ranks[deg] = rank(m);
    if (res.ranks[deg] != m.cols()) res.injective = false;
  }
  return res;
}

}  // namespace

InjectivityResult esnault_viehweg_check(const P1n& x, const TorusDivisorQ& b, int r,
                                        const LineBundle& l, const TorusDivisorQ& d) {
  InjectivityResult res;
  auto reject = [&](const std::string& why) {
    res.hypotheses_ok = false;
    res.failed_hypothesis = why;
    return res;
  };
  if (!b.valid_for(x) || !d.valid_for(x)) return reject("divisor rank mismatch");
  if (!b.boundary_coefficients_ok()) return reject("boundary coefficients outside [0,1]");
  if (r < 1) return reject("r must be positive");
  if (!rb_integral(b, r)) return reject("rB is not integral");
  std::string diag;
  if (!bundle_matches_pairing(b, r, l, std::vector<int>(x.n, 0), diag)) return reject(diag);
  if (!d.effective_integral()) return reject("D is not effective integral");
  for (int j = 0; j < x.n; ++j) {
    if (d.zero_coeff[j] > 0 && b.zero_coeff[j] == 0)
      return reject("D has support outside Supp(B) at 0_" + std::to_string(j + 1));
    if (d.inf_coeff[j] > 0 && b.inf_coeff[j] == 0)
      return reject("D has support outside Supp(B) at inf_" + std::to_string(j + 1));
  }
  LineBundle to = l;
  for (int j = 0; j < x.n; ++j)
    to.deg[j] += static_cast<int>(numerator(Rat(d.zero_coeff[j] + d.inf_coeff[j])));
  InjectivityResult computed = decide_injectivity(x, l, to, monomial_section(d));
  computed.hypotheses_ok = true;
  return computed;
}

InjectivityResult tankeev_kollar_check(const P1n& x, const TorusDivisorQ& b, int r,
                                       const LineBundle& l, const LineBundle& h,
                                       const Section& s) {
  InjectivityResult res;
  auto reject = [&](const std::string& why) {
    res.hypotheses_ok = false;
    res.failed_hypothesis = why;
    return res;
  };
  if (!b.valid_for(x)) return reject("divisor rank mismatch");
  if (!b.boundary_coefficients_ok()) return reject("boundary coefficients outside [0,1]");
  if (r < 1) return reject("r must be positive");
  if (!rb_integral(b, r)) return reject("rB is not integral");
  std::vector<int> extra(x.n);
  for (int j = 0; j < x.n; ++j) extra[j] = r * h.deg[j];
  std::string diag;
  if (!bundle_matches_pairing(b, r, l, extra, diag)) return reject(diag);
  for (int j = 0; j < x.n; ++j)
    if (h.deg[j] < 0) return reject("H is not globally generated in factor " + std::to_string(j + 1));
  for (const MonomialTerm& t : s)
    for (int j = 0; j < x.n; ++j)
      if (t.zero_ord[j] < 0 || t.inf_ord[j] < 0 ||
          t.zero_ord[j] + t.inf_ord[j] != h.deg[j])
        return reject("s is not a section of H");

  // Log canonical centers: intersections of coefficient-one components, at
  // most one side per factor.  s must not vanish identically on any of them.
  std::vector<std::pair<int, int>> ones;  // (factor, side 0/1)
  for (int j = 0; j < x.n; ++j) {
    if (b.zero_coeff[j] == 1) ones.emplace_back(j, 0);
    if (b.inf_coeff[j] == 1) ones.emplace_back(j, 1);
  }
  for (unsigned mask = 1; mask < (1u << ones.size()); ++mask) {
    unsigned factors_used = 0;
    bool valid = true;
    for (size_t k = 0; k < ones.size(); ++k)
      if ((mask >> k) & 1u) {
        if ((factors_used >> ones[k].first) & 1u) valid = false;
        factors_used |= 1u << ones[k].first;
      }
    if (!valid) continue;  // opposite divisors in one factor do not meet
    bool survives = false;
    for (const MonomialTerm& t : s) {
      bool nonzero = true;
      for (size_t k = 0; k < ones.size(); ++k) {
        if (!((mask >> k) & 1u)) continue;
        auto [j, side] = ones[k];
        if ((side == 0 ? t.zero_ord[j] : t.inf_ord[j]) > 0) nonzero = false;
      }
      if (nonzero) survives = true;
    }
    if (!survives) {
      std::string name;
      for (size_t k = 0; k < ones.size(); ++k)
        if ((mask >> k) & 1u)
          name += std::string(name.empty() ? "" : "&") + (ones[k].second == 0 ? "0_" : "inf_") +
                  std::to_string(ones[k].first + 1);
      return reject("s vanishes identically on the stratum " + name);
    }
  }

  LineBundle to = l;
  for (int j = 0; j < x.n; ++j) to.deg[j] += h.deg[j];
  InjectivityResult computed = decide_injectivity(x, l, to, s);
  computed.hypotheses_ok = true;
  return computed;
}

LineBundle ohsawa_kollar_bundle(const TorusDivisorQ& b, const LineBundle& a_y) {
  LineBundle l;
  l.deg = {static_cast<int>(numerator(Rat(-2) + b.degree(0))) + a_y.deg[0],
           static_cast<int>(numerator(Rat(-2) + b.degree(1)))};
  return l;
}

VanishingResult vanishing_check_ohsawa_kollar(const TorusDivisorQ& b, int r, const LineBundle& a_y,
                                              bool skip_ample_hypothesis) {
  VanishingResult res;
  auto reject = [&](const std::string& why) {
    res.hypotheses_ok = false;
    res.failed_hypothesis = why;
    return res;
  };
  P1n x{2};
  if (!b.valid_for(x)) return reject("divisor rank mismatch");
  if (!b.boundary_coefficients_ok()) return reject("boundary coefficients outside [0,1]");
  if (r < 1) return reject("r must be positive");
  if (!rb_integral(b, r)) return reject("rB is not integral");
  // The hypotheses force L: r*a = r(K+B) + (deg A, 0).
  Rat a0 = Rat(-2) + b.degree(0) + Rat(a_y.deg[0], r);
  Rat a1 = Rat(-2) + b.degree(1);
  if (denominator(a0) != 1 || denominator(a1) != 1)
    return reject("the hypotheses force a non-integral bundle");
  if (!skip_ample_hypothesis && a_y.deg[0] < 1) return reject("A is not g-ample");

  LineBundle l{{static_cast<int>(numerator(a0)), static_cast<int>(numerator(a1))}};
  // R^q f_* L = H^q(P^1, O(a_2)) (x) O(a_1); then push along g.
  for (int q = 0; q <= 1; ++q) {
    int fiber = q == 0 ? h0_p1(l.deg[1]) : h1_p1(l.deg[1]);
    for (int p = 0; p <= 1; ++p) {
      int base = p == 0 ? h0_p1(l.deg[0]) : h1_p1(l.deg[0]);
      res.table[{p, q}] = fiber * base;
      if (p != 0 && fiber * base != 0) res.vanishing = false;
    }
  }
  return res;
}

AssociatedPrimesReport associated_primes(const QtModule& m) {
  AssociatedPrimesReport rep;
  rep.zero_module = (m.free_rank == 0 && m.torsion.empty());
  rep.generic_point = m.free_rank > 0;
  for (const auto& [root, mult] : m.torsion)
    if (mult > 0) rep.torsion_roots.push_back(root);
  std::sort(rep.torsion_roots.begin(), rep.torsion_roots.end());
  rep.torsion_roots.erase(std::unique(rep.torsion_roots.begin(), rep.torsion_roots.end()),
                          rep.torsion_roots.end());
  rep.allowed = rep.torsion_roots.empty();
  return rep;
}

TorsionFreeResult torsion_free_check(const P1n& x, const LineBundle& l) {
  TorsionFreeResult res;
  CechCohomology h = cech_cohomology(x, l);
  for (int i = 0; i <= x.n; ++i) {
    QtModule m;
    m.free_rank = h.dims[i];
    res.pushforwards[i] = m;
    res.ass[i] = associated_primes(m);
    if (!res.ass[i].allowed) res.ok = false;
  }
  return res;
}

namespace {

std::string bundle_name(const LineBundle& l) {
  std::string s = "O(";
  for (size_t j = 0; j < l.deg.size(); ++j) s += (j ? "," : "") + std::to_string(l.deg[j]);
  return s + ")";
}

std::string divisor_name(const TorusDivisorQ& d) {
  std::ostringstream os;
  bool any = false;
  for (size_t j = 0; j < d.zero_coeff.size(); ++j) {
    if (d.zero_coeff[j] != 0) {
      os << (any ? "+" : "") << d.zero_coeff[j].str() << "*0_" << j + 1;
      any = true;
    }
    if (d.inf_coeff[j] != 0) {
      os << (any ? "+" : "") << d.inf_coeff[j].str() << "*inf_" << j + 1;
      any = true;
    }
  }
  return any ? os.str() : "0";
}

}  // namespace

std::vector<HarnessRow> esnault_viehweg_grid(int n_max, int coeff_box) {
  std::vector<HarnessRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    P1n x{n};
    // All subsets of the 2n boundary divisors with coefficient one (r = 1).
    for (unsigned bmask = 0; bmask < (1u << (2 * n)); ++bmask) {
      TorusDivisorQ b = TorusDivisorQ::none(n);
      for (int j = 0; j < n; ++j) {
        if ((bmask >> (2 * j)) & 1u) b.zero_coeff[j] = 1;
        if ((bmask >> (2 * j + 1)) & 1u) b.inf_coeff[j] = 1;
      }
      LineBundle l;
      for (int j = 0; j < n; ++j)
        l.deg.push_back(static_cast<int>(numerator(Rat(-2) + b.degree(j))));
      // D grid: multiples of the supported divisors.
      for (unsigned dmask = 0; dmask < (1u << (2 * n)); ++dmask) {
        TorusDivisorQ d = TorusDivisorQ::none(n);
        bool supported = true;
        for (int j = 0; j < n; ++j) {
          if ((dmask >> (2 * j)) & 1u) {
            d.zero_coeff[j] = std::min(coeff_box, 2);
            if (b.zero_coeff[j] == 0) supported = false;
          }
          if ((dmask >> (2 * j + 1)) & 1u) {
            d.inf_coeff[j] = 1;
            if (b.inf_coeff[j] == 0) supported = false;
          }
        }
        if (!supported) continue;
        InjectivityResult r1 = esnault_viehweg_check(x, b, 1, l, d);
        HarnessRow row;
        row.instance = "EV n=" + std::to_string(n) + " B=" + divisor_name(b) +
                       " L=" + bundle_name(l) + " D=" + divisor_name(d);
        row.hypotheses_ok = r1.hypotheses_ok;
        row.verdict = r1.hypotheses_ok && r1.injective;
        row.detail = r1.hypotheses_ok ? (r1.injective ? "injective" : "NOT injective")
                                      : r1.failed_hypothesis;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<HarnessRow> tankeev_kollar_grid(int n_max) {
  std::vector<HarnessRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    P1n x{n};
    for (unsigned bmask = 0; bmask < (1u << (2 * n)); ++bmask) {
      TorusDivisorQ b = TorusDivisorQ::none(n);
      for (int j = 0; j < n; ++j) {
        if ((bmask >> (2 * j)) & 1u) b.zero_coeff[j] = 1;
        if ((bmask >> (2 * j + 1)) & 1u) b.inf_coeff[j] = 1;
      }
      for (int hdeg = 0; hdeg <= 1; ++hdeg) {
        LineBundle h;
        h.deg.assign(n, hdeg);
        LineBundle l;
        for (int j = 0; j < n; ++j)
          l.deg.push_back(static_cast<int>(numerator(Rat(-2) + b.degree(j))) + hdeg);
        // A generic-style section: sum of all torus monomials of H.
        Section s;
        std::vector<int> z(n, 0);
        while (true) {
          MonomialTerm t;
          t.zero_ord = z;
          for (int j = 0; j < n; ++j) t.inf_ord.push_back(hdeg - z[j]);
          t.coeff = 1;
          s.push_back(t);
          int j = n - 1;
          while (j >= 0 && z[j] == hdeg) z[j--] = 0;
          if (j < 0) break;
          ++z[j];
        }
        InjectivityResult r1 = tankeev_kollar_check(x, b, 1, l, h, s);
        HarnessRow row;
        row.instance = "TK n=" + std::to_string(n) + " B=" + divisor_name(b) +
                       " H=" + bundle_name(h);
        row.hypotheses_ok = r1.hypotheses_ok;
        row.verdict = r1.hypotheses_ok && r1.injective;
        row.detail = r1.hypotheses_ok ? (r1.injective ? "injective" : "NOT injective")
                                      : r1.failed_hypothesis;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<HarnessRow> vanishing_grid(int deg_box, int* falsification_count) {
  std::vector<HarnessRow> rows;
  int falsified = 0;
  for (unsigned bmask = 0; bmask < 16; ++bmask) {
    TorusDivisorQ b = TorusDivisorQ::none(2);
    if (bmask & 1) b.zero_coeff[0] = 1;
    if (bmask & 2) b.inf_coeff[0] = 1;
    if (bmask & 4) b.zero_coeff[1] = 1;
    if (bmask & 8) b.inf_coeff[1] = 1;
    for (int adeg = -deg_box; adeg <= deg_box; ++adeg) {
      LineBundle a{{adeg}};
      bool breaking = adeg < 1;
      VanishingResult r1 = vanishing_check_ohsawa_kollar(b, 1, a, breaking);
      HarnessRow row;
      row.instance = "OK B=" + divisor_name(b) + " A=O(" + std::to_string(adeg) + ")" +
                     (breaking ? " [hypothesis broken]" : "");
      row.hypotheses_ok = !breaking && r1.hypotheses_ok;
      row.verdict = r1.vanishing;
      std::ostringstream det;
      for (const auto& [pq, dim] : r1.table)
        if (dim != 0) det << "R^" << pq.first << "g_*R^" << pq.second << "f_*=" << dim << " ";
      row.detail = det.str();
      if (breaking && !r1.vanishing) ++falsified;
      rows.push_back(row);
    }
  }
  if (falsification_count) *falsification_count = falsified;
  return rows;
}

std::vector<HarnessRow> torsion_free_grid(int deg_box) {
  std::vector<HarnessRow> rows;
  for (int a = -deg_box; a <= deg_box; ++a) {
    P1n x{1};
    LineBundle l{{a}};
    TorsionFreeResult r1 = torsion_free_check(x, l);
    HarnessRow row;
    row.instance = "TF family P1 x A1, L=" + bundle_name(l);
    row.verdict = r1.ok;
    std::ostringstream det;
    for (const auto& [i, m] : r1.pushforwards)
      if (m.free_rank > 0) det << "R^" << i << " free rank " << m.free_rank << " ";
    row.detail = det.str();
    rows.push_back(row);
  }
  return rows;
}

std::string harness_csv(const std::vector<HarnessRow>& rows) {
  std::ostringstream os;
  os << "instance,hypotheses,verdict,detail\n";
  for (const HarnessRow& r : rows)
    os << "\"" << r.instance << "\"," << (r.hypotheses_ok ? "ok" : "violated") << ","
       << (r.verdict ? "pass" : "fail") << ",\"" << r.detail << "\"\n";
  return os.str();
}

std::string harness_text(const std::vector<HarnessRow>& rows) {
  std::ostringstream os;
  for (const HarnessRow& r : rows)
    os << (r.verdict ? "[pass] " : "[fail] ") << r.instance << "  " << r.detail << "\n";
  return os.str();
}

}  // namespace cubres
