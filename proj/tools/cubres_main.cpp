// Batch driver: parse space or pair descriptions, run a pipeline, emit
// diagrams, tables, and verdicts deterministically.
//
// Exit codes: 0 success, 2 validation failure (bad input or precondition),
// 3 theorem-assertion failure (a checked statement computes false).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cubres/dubois.hpp"
#include "cubres/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAssertion = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cubres::validation_error("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Options {
  std::string input;
  bool dot = false, csv = false, json = false;
  int depth = -1;
  std::string break_hypothesis;
};

int run_hyperres(const Options& opt) {
  cubres::Space x = cubres::io::parse_space(slurp(opt.input));
  cubres::Hyperresolution h = cubres::cubical_hyperresolution(x);
  cubres::HyperresAudit audit = cubres::audit_hyperresolution(h, cubres::as_point_diagram(x));
  if (opt.dot) {
    std::cout << cubres::to_dot(h.diagram, "hyperresolution");
    std::istringstream table(cubres::io::audit_to_text(audit, h.diagram.bits()));
    for (std::string line; std::getline(table, line);) std::cout << "// " << line << "\n";
  } else if (opt.json) {
    std::cout << cubres::io::hyperres_to_json(h, audit);
  } else {
    std::cout << "stages: " << h.r() << ", cube bits: " << h.diagram.bits() << "\n";
    std::cout << cubres::io::audit_to_text(audit, h.diagram.bits());
  }
  return audit.ok ? kExitOk : kExitAssertion;
}

int run_dubois(const Options& opt) {
  cubres::Space x = cubres::io::parse_space(slurp(opt.input));
  cubres::DuBoisResult res = cubres::du_bois_zero(x);
  if (opt.json) std::cout << cubres::report_to_json(res.report);
  else std::cout << cubres::report_to_text(res.report);
  return res.report.du_bois ? kExitOk : kExitAssertion;
}

int run_betti(const Options& opt) {
  cubres::Space x = cubres::io::parse_space(slurp(opt.input));
  std::vector<int> betti = cubres::constant_sheaf_descent(x);
  if (opt.csv) {
    std::cout << "degree,dim\n";
    for (size_t i = 0; i < betti.size(); ++i) std::cout << i << "," << betti[i] << "\n";
  } else {
    std::cout << "betti:";
    for (int b : betti) std::cout << " " << b;
    std::cout << "\n";
  }
  return kExitOk;
}

int run_weights(const Options& opt) {
  cubres::OpenPair pair = cubres::io::parse_pair(slurp(opt.input));
  cubres::WeightSSResult res = cubres::weight_ss(pair);
  if (opt.csv) {
    std::cout << cubres::weight_table_csv(res.table);
  } else {
    for (const auto& page : res.ss.pages) std::cout << cubres::page_to_text(page);
    std::cout << "degenerates at r = " << res.ss.degenerated_at << "\n";
    std::cout << cubres::weight_table_text(res.table);
  }
  return (res.table.rows_match && res.table.weight_window_ok) ? kExitOk : kExitAssertion;
}

int run_inj_check(const Options& opt) {
  cubres::io::InjSpec spec = cubres::io::parse_inj(slurp(opt.input));
  cubres::InjectivityResult res;
  if (spec.theorem == "esnault-viehweg")
    res = cubres::esnault_viehweg_check(spec.x, spec.b, spec.r, spec.l, spec.d);
  else
    res = cubres::tankeev_kollar_check(spec.x, spec.b, spec.r, spec.l, spec.h, spec.s);
  if (!res.hypotheses_ok) {
    std::cout << "hypothesis violated: " << res.failed_hypothesis << "\n";
    return kExitValidation;
  }
  for (const auto& [deg, dims] : res.dims)
    std::cout << "H^" << deg << ": " << dims.first << " -> " << dims.second
              << " rank " << res.ranks.at(deg) << "\n";
  std::cout << "verdict: " << (res.injective ? "injective" : "NOT injective") << "\n";
  return res.injective ? kExitOk : kExitAssertion;
}

int run_vanish_check(const Options& opt) {
  cubres::io::VanishSpec spec = cubres::io::parse_vanish(slurp(opt.input));
  bool break_ample = opt.break_hypothesis == "ample";
  cubres::VanishingResult res =
      cubres::vanishing_check_ohsawa_kollar(spec.b, spec.r, spec.a, break_ample);
  if (!res.hypotheses_ok) {
    std::cout << "hypothesis violated: " << res.failed_hypothesis << "\n";
    return kExitValidation;
  }
  if (opt.csv) {
    std::cout << "p,q,dim\n";
    for (const auto& [pq, dim] : res.table)
      std::cout << pq.first << "," << pq.second << "," << dim << "\n";
  } else {
    for (const auto& [pq, dim] : res.table)
      std::cout << "R^" << pq.first << "g_* R^" << pq.second << "f_* L: " << dim << "\n";
  }
  std::cout << "verdict: " << (res.vanishing ? "vanishing holds" : "vanishing FAILS") << "\n";
  return res.vanishing ? kExitOk : kExitAssertion;
}

int run_independence(const Options& opt) {
  cubres::Space x = cubres::io::parse_space(slurp(opt.input));
  cubres::IndependenceReport rep = cubres::hyperres_independence_test(x);
  std::cout << "cubical betti:";
  for (int b : rep.betti_cubical) std::cout << " " << b;
  std::cout << "\nnerve betti:  ";
  for (int b : rep.betti_cech) std::cout << " " << b;
  std::cout << "\nverdict: " << (rep.ok ? "pipelines agree" : "DISAGREE: " + rep.first_diff)
            << "\n";
  return rep.ok ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordinate-subspace hyperresolution engine"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool with_break = false) {
    sub->add_option("input", opt.input, "input JSON file")->required();
    sub->add_flag("--dot", opt.dot, "emit DOT");
    sub->add_flag("--csv", opt.csv, "emit CSV");
    sub->add_flag("--json", opt.json, "emit JSON");
    sub->add_option("--depth", opt.depth, "nerve truncation depth");
    if (with_break)
      sub->add_option("--break-hypothesis", opt.break_hypothesis,
                      "run with the named hypothesis deliberately violated");
  };
  CLI::App* hyperres = app.add_subcommand("hyperres", "cubical hyperresolution with audit");
  add_common(hyperres);
  CLI::App* dubois = app.add_subcommand("dubois", "Du Bois comparison for an arrangement");
  add_common(dubois);
  CLI::App* betti = app.add_subcommand("betti", "Betti numbers by descent");
  add_common(betti);
  CLI::App* weights = app.add_subcommand("weights", "weight spectral sequence of a pair");
  add_common(weights);
  CLI::App* inj = app.add_subcommand("inj-check", "injectivity theorem harness");
  add_common(inj, true);
  CLI::App* vanish = app.add_subcommand("vanish-check", "vanishing theorem harness");
  add_common(vanish, true);
  CLI::App* indep = app.add_subcommand("independence", "cubical vs nerve pipeline comparison");
  add_common(indep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (hyperres->parsed()) return run_hyperres(opt);
    if (dubois->parsed()) return run_dubois(opt);
    if (betti->parsed()) return run_betti(opt);
    if (weights->parsed()) return run_weights(opt);
    if (inj->parsed()) return run_inj_check(opt);
    if (vanish->parsed()) return run_vanish_check(opt);
    if (indep->parsed()) return run_independence(opt);
  } catch (const cubres::io::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const cubres::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
