#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bifib/examples.hpp"
#include "bifib/suite.hpp"
#include "bifib/zigzag.hpp"

using namespace bifib;

namespace {

struct Session {
  std::string seed_name;
  std::string functor_file;
  std::optional<Seed> seed;

  Context context(int min_level = -1) {
    if (!functor_file.empty()) {
      auto f = functor_from_file(functor_file);
      return Context{f, "all", "all"};
    }
    std::string name = seed_name.empty() ? "p2" : seed_name;
    if (name.find('(') == std::string::npos && name.find(':') == std::string::npos &&
        min_level >= 0 && (name == "pomega" || name == "ambisimplex"))
      name += "(" + std::to_string(min_level) + ")";
    seed = make_seed(name);
    return seed->ctx;
  }
};

FormulaPtr read_formula(const Context& ctx, const std::string& text) {
  if (text.rfind("ord ", 0) == 0) {
    int n = std::stoi(text.substr(4));
    return p2_ordinal(ctx, n);
  }
  return parse_formula(ctx, text);
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: kind=" << error_kind_name(e.kind()) << " msg=\"" << e.what() << "\"\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: kind=Internal msg=\"" << e.what() << "\"\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof search, normalization and enumeration for free bifibrations"};
  app.require_subcommand(1);
  app.fallthrough();

  Session session;
  app.add_option("--seed", session.seed_name,
                 "builtin functor: p2 | pomega(k) | bnat | ambisimplex(k)");
  app.add_option("--functor", session.functor_file, "functor presentation file");
  uint64_t rng_seed = 2024;
  app.add_option("--seed-rng", rng_seed, "seed for randomized property suites");

  // count / enum
  std::string from_text, to_text, over_text;
  auto add_homset_opts = [&](CLI::App* cmd) {
    cmd->add_option("--from", from_text, "left formula (s-expression or 'ord N')")->required();
    cmd->add_option("--to", to_text, "right formula, or 'same'")->required();
    cmd->add_option("--over", over_text, "base arrow (default: identity)");
  };
  CLI::App* count_cmd = app.add_subcommand("count", "count the homset of a judgment");
  add_homset_opts(count_cmd);
  CLI::App* enum_cmd = app.add_subcommand("enum", "list the canonical proofs of a judgment");
  add_homset_opts(enum_cmd);

  // eq
  std::string lhs_term, rhs_term;
  CLI::App* eq_cmd = app.add_subcommand("eq", "decide equality of two derivations");
  eq_cmd->add_option("--lhs", lhs_term, "first derivation")->required();
  eq_cmd->add_option("--rhs", rhs_term, "second derivation")->required();

  // nf
  std::string nf_term;
  CLI::App* nf_cmd = app.add_subcommand("nf", "normal form of a derivation");
  nf_cmd->add_option("--term", nf_term, "derivation s-expression")->required();

  // render
  std::string render_term, svg_file;
  CLI::App* render_cmd = app.add_subcommand("render", "render a derivation as a stack");
  render_cmd->add_option("--term", render_term, "derivation s-expression")->required();
  render_cmd->add_option("--svg", svg_file, "write an SVG string diagram to this file");

  // poset
  int poset_k = 0, poset_n = 3;
  bool poset_lattice = false, poset_dot = false, poset_csv = false, poset_json = false;
  CLI::App* poset_cmd = app.add_subcommand("poset", "ambisimplicial fiber poset F_{k,n}");
  poset_cmd->add_option("--k", poset_k, "fiber object");
  poset_cmd->add_option("--n", poset_n, "atom object");
  poset_cmd->add_flag("--lattice", poset_lattice, "run the lattice check");
  poset_cmd->add_flag("--dot", poset_dot, "emit the DOT Hasse diagram");
  poset_cmd->add_flag("--csv", poset_csv, "emit the order matrix as CSV");
  poset_cmd->add_flag("--json", poset_json, "emit elements and covers as JSON");

  // suite
  std::string suite_name = "paper";
  CLI::App* suite_cmd = app.add_subcommand("suite", "run an acceptance suite");
  suite_cmd->add_option("name", suite_name, "suite name (paper)");

  CLI11_PARSE(app, argc, argv);

  if (count_cmd->parsed() || enum_cmd->parsed()) {
    return guarded([&] {
      Context ctx = session.context();
      FormulaPtr from = read_formula(ctx, from_text);
      FormulaPtr to = to_text == "same" ? from : read_formula(ctx, to_text);
      Arrow over = ctx.C().identity(from->ref);
      if (!over_text.empty()) {
        auto a = ctx.C().parse_arrow(over_text);
        if (!a) fail(ErrorKind::Parse, "cannot parse arrow: " + over_text);
        over = *a;
      }
      HomsetResult hs = homset(ctx, from, over, to);
      if (count_cmd->parsed()) {
        std::cout << hs.count << "\n";
      } else {
        for (const MPtr& m : hs.proofs) std::cout << multi_to_string(ctx, m) << "\n";
      }
      return 0;
    });
  }

  if (eq_cmd->parsed()) {
    return guarded([&] {
      Context ctx = session.context();
      DerivPtr a = parse_derivation(ctx, lhs_term);
      DerivPtr b = parse_derivation(ctx, rhs_term);
      bool equal = decide_equal(ctx, a, b);
      std::cout << (equal ? "EQUAL" : "DISTINCT") << " ("
                << (decide_mode(ctx) == DecideMode::NF ? "NF" : "BFS") << ")\n";
      return 0;
    });
  }

  if (nf_cmd->parsed()) {
    return guarded([&] {
      Context ctx = session.context();
      DerivPtr d = parse_derivation(ctx, nf_term);
      MPtr strong = strengthen(
          ctx, weak_preimage(ctx, strictify_derivation(ctx, d), d->j.lhs, d->j.rhs));
      NormalForm nf = normalize(ctx, strong, 0);
      std::cout << multi_to_string(ctx, nf.term) << "\n";
      std::cout << "rewrite steps: " << nf.steps << "\n";
      return 0;
    });
  }

  if (render_cmd->parsed()) {
    return guarded([&] {
      Context ctx = session.context();
      DerivPtr d = parse_derivation(ctx, render_term);
      auto [delta, stack] = decompose(ctx, d);
      std::cout << render_text(ctx, delta, stack);
      if (!svg_file.empty()) {
        std::ofstream out(svg_file);
        out << render_svg(ctx, delta, stack);
        std::cout << "wrote " << svg_file << "\n";
      }
      return 0;
    });
  }

  if (poset_cmd->parsed()) {
    return guarded([&] {
      if (session.seed_name.empty()) session.seed_name = "ambisimplex";
      Context ctx = session.context(poset_n);
      FiberPoset poset = ambisimplicial_fiber_poset(ctx, poset_k, poset_n);
      std::cout << poset.size() << " elements, " << poset.covers.size() << " covers, "
                << poset.interval_count() << " intervals\n";
      if (poset_lattice) {
        PosetAnalysis analysis = poset_analyze(poset);
        if (analysis.is_lattice) {
          std::cout << "LATTICE\n";
        } else {
          auto [x, y] = *analysis.failing_pair;
          std::cout << "NOT A LATTICE  witness: " << poset.labels[x] << " , "
                    << poset.labels[y] << "\n";
        }
      }
      if (poset_dot) std::cout << poset_to_dot(poset);
      if (poset_csv) std::cout << poset_to_csv(poset);
      if (poset_json) std::cout << poset_to_json(poset);
      return 0;
    });
  }

  if (suite_cmd->parsed()) {
    return guarded([&] {
      if (suite_name != "paper") fail(ErrorKind::Parse, "unknown suite: " + suite_name);
      auto results = run_paper_suite(rng_seed, std::cout);
      for (const auto& r : results)
        if (!r.pass) return 1;
      return 0;
    });
  }
  return 0;
}
