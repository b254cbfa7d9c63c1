#include "bifib/suite.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "bifib/examples.hpp"
#include "bifib/randgen.hpp"
#include "bifib/zigzag.hpp"

namespace bifib {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
  void note(const std::string& what) {
    if (detail.tellp() > 0) detail << "; ";
    detail << what;
  }
};

// ---------------------------------------------------------- criterion 1

void criterion_simplex_counts(Check& c) {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  Arrow id0 = ctx.C().identity(ObjId{0});
  for (int m = 0; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      HomsetResult hs = homset(ctx, p2_ordinal(ctx, m), id0, p2_ordinal(ctx, n));
      unsigned long long expect = binomial(unsigned(m + n - 1), unsigned(m));
      c.expect(hs.count == expect, "count(" + std::to_string(m) + "," + std::to_string(n) +
                                       ") = " + std::to_string(hs.count) + " expected " +
                                       std::to_string(expect));
    }
}

// ---------------------------------------------------------- criterion 2

void criterion_monotone_bijection(Check& c) {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  OrdinalTarget target{ctx};
  Arrow id0 = ctx.C().identity(ObjId{0});
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      HomsetResult hs = homset(ctx, p2_ordinal(ctx, m), id0, p2_ordinal(ctx, n));
      std::set<std::vector<int>> images;
      for (const MPtr& mp : hs.proofs) {
        OrdinalTarget::Mor mor = interpret(target, plain_of_multi(ctx, mp));
        c.expect(mor.src.size == m && mor.dst.size == n, "endpoint sizes disagree");
        images.insert(mor.map);
      }
      c.expect(images.size() == hs.count,
               "interpret not injective at (" + std::to_string(m) + "," + std::to_string(n) + ")");
      auto oracle = monotone_oracle(m, n);
      std::set<std::vector<int>> expect(oracle.begin(), oracle.end());
      c.expect(images == expect,
               "image set differs at (" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
}

// ---------------------------------------------------------- criterion 3

MarkedTree morphism_suite_src_tree() {
  MarkedTree t;
  t.t.par = {{0, 0, 0}, {0, 2, 2}};
  return t;
}

MarkedTree morphism_suite_dst_tree() {
  MarkedTree t;
  t.t.par = {{0, 0, 0}, {0, 0, 2}, {0}};
  return t;
}

void criterion_tree_morphisms(Check& c) {
  Seed seed = make_seed("pomega(4)");
  const Context& ctx = seed.ctx;
  MarkedTree s = morphism_suite_src_tree(), t = morphism_suite_dst_tree();
  FormulaPtr sf = formula_of_tree(ctx, s);
  FormulaPtr tf = formula_of_tree(ctx, t);
  c.expect(tree_of_formula(ctx, sf) == s && tree_of_formula(ctx, tf) == t,
           "tree encode/decode mismatch");
  HomsetResult hs = homset(ctx, sf, ctx.C().identity(ObjId{0}), tf);
  c.expect(hs.count == 11, "tree homset count = " + std::to_string(hs.count) + " expected 11");
  std::set<TreeMor> images;
  for (const MPtr& mp : hs.proofs) {
    TreeMor mor = tree_morphism_oracle(ctx, plain_of_multi(ctx, mp));
    c.expect(tree_mor_valid(mor), "oracle image is not a natural family");
    images.insert(mor);
  }
  c.expect(images.size() == hs.count, "oracle images are not pairwise distinct");
  std::vector<TreeMor> brute = all_tree_morphisms(s, t);
  c.expect(brute.size() == 11, "brute-force family count = " + std::to_string(brute.size()));
  std::set<TreeMor> expect(brute.begin(), brute.end());
  c.expect(images == expect, "oracle images differ from the brute-force families");
}

// ---------------------------------------------------------- criterion 4

void criterion_ambisimplicial_counts(Check& c) {
  const unsigned long long class_counts[] = {1, 1, 2, 7, 35, 226};
  for (int n = 0; n <= 5; ++n) {
    Seed seed = make_seed("ambisimplex(" + std::to_string(n) + ")");
    const Context& ctx = seed.ctx;
    std::vector<FormulaPtr> formulas = closed_ambisimplicial(ctx, 0, n);
    c.expect(formulas.size() == double_factorial_odd(unsigned(n)),
             "closed formula count at n=" + std::to_string(n) + " is " +
                 std::to_string(formulas.size()));
    std::set<std::string> classes;
    for (const FormulaPtr& s : formulas)
      classes.insert(formula_to_string(ctx, collapse_formula(ctx, s)));
    c.expect(classes.size() == class_counts[n],
             "class count at n=" + std::to_string(n) + " is " + std::to_string(classes.size()) +
                 " expected " + std::to_string(class_counts[n]));
  }
}

// ---------------------------------------------------------- criterion 5

void criterion_f03_structure(Check& c) {
  Seed seed = make_seed("ambisimplex(3)");
  const Context& ctx = seed.ctx;
  auto* sc = dynamic_cast<const SimplexCat*>(&ctx.C());
  FiberPoset poset = ambisimplicial_fiber_poset(ctx, 0, 3);
  c.expect(poset.size() == 7, "F_{0,3} has " + std::to_string(poset.size()) + " elements");

  // The seven canonical strictly alternating zigzags.
  auto mono = [&](int a, int b) {  // the unique monotone injection <a> -> <b> used here
    if (a == 0) return Arrow{ObjId{0}, ObjId{b}, {}};
    fail(ErrorKind::IllFormed, "unexpected mono request");
  };
  Arrow epi21 = sc->sigma(0, 1);                       // <2> ->> <1>
  Arrow epi31 = ctx.C().compose(sc->sigma(0, 2), epi21);  // the unique <3> ->> <1>
  FormulaPtr atom3 = mk_atom(ctx, ObjId{3});
  std::map<std::string, FormulaPtr> named;
  named["A"] = mk_pull(ctx, mono(0, 3), atom3);
  named["B"] = mk_pull(ctx, mono(0, 2), mk_push(ctx, sc->sigma(0, 2), atom3));
  named["C"] = mk_pull(ctx, mono(0, 2), mk_push(ctx, sc->sigma(1, 2), atom3));
  named["D"] =
      mk_pull(ctx, mono(0, 1), mk_push(ctx, epi21, mk_pull(ctx, sc->delta(0, 2), atom3)));
  named["E"] = mk_pull(ctx, mono(0, 1), mk_push(ctx, epi31, atom3));
  named["F"] =
      mk_pull(ctx, mono(0, 1), mk_push(ctx, epi21, mk_pull(ctx, sc->delta(1, 2), atom3)));
  named["G"] =
      mk_pull(ctx, mono(0, 1), mk_push(ctx, epi21, mk_pull(ctx, sc->delta(2, 2), atom3)));
  std::map<std::string, size_t> index;
  for (auto& [label, formula] : named) {
    bool found = false;
    for (size_t i = 0; i < poset.size(); ++i)
      if (formula_eq(poset.elements[i], formula)) {
        index[label] = i;
        found = true;
      }
    c.expect(found, "element " + label + " not found in F_{0,3}");
  }
  if (index.size() == 7) {
    std::set<std::pair<size_t, size_t>> expect;
    for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{
             {"A", "D"}, {"A", "F"}, {"A", "G"}, {"D", "C"}, {"G", "B"}, {"F", "E"},
             {"C", "E"}, {"B", "E"}})
      expect.insert({index[a], index[b]});
    std::set<std::pair<size_t, size_t>> got(poset.covers.begin(), poset.covers.end());
    c.expect(got == expect, "F_{0,3} Hasse covers differ from the expected eight");
  }

  Seed seed4 = make_seed("ambisimplex(4)");
  FiberPoset poset4 = ambisimplicial_fiber_poset(seed4.ctx, 0, 4);
  c.expect(poset4.size() == 35, "F_{0,4} has " + std::to_string(poset4.size()) + " elements");
  PosetAnalysis analysis = poset_analyze(poset4);
  c.expect(!analysis.is_lattice, "F_{0,4} unexpectedly a lattice");
  if (analysis.failing_pair) {
    auto [x, y] = *analysis.failing_pair;
    c.note("F_{0,4} lattice failure witness: " + poset4.labels[x] + " , " + poset4.labels[y]);
  } else {
    c.expect(false, "no lattice-failure witness produced");
  }
}

// ---------------------------------------------------------- criterion 6

void criterion_kreweras(Check& c) {
  for (int n = 0; n <= 5; ++n) {
    Seed seed = make_seed("ambisimplex(" + std::to_string(n) + ")");
    const Context& ctx = seed.ctx;
    FiberPoset fiber = ambisimplicial_fiber_poset(ctx, 0, n);
    FiberPoset k = bc_quotient(ctx, fiber);
    c.expect(k.size() == catalan(unsigned(n)),
             "K_" + std::to_string(n) + " has " + std::to_string(k.size()) + " elements");
    c.expect(all_noncrossing_partitions(n).size() == catalan(unsigned(n)),
             "brute-force noncrossing count differs at n=" + std::to_string(n));
    if (n <= 4) {
      FiberPoset oracle = kreweras_oracle(n);
      // Match by partition label and compare the full order.
      std::map<std::string, size_t> by_label;
      for (size_t i = 0; i < oracle.size(); ++i) by_label[oracle.labels[i]] = i;
      bool same = oracle.size() == k.size();
      for (size_t a = 0; same && a < k.size(); ++a)
        for (size_t b = 0; same && b < k.size(); ++b) {
          auto ia = by_label.find(k.labels[a]), ib = by_label.find(k.labels[b]);
          if (ia == by_label.end() || ib == by_label.end() ||
              k.leq[a][b] != oracle.leq[ia->second][ib->second])
            same = false;
        }
      c.expect(same, "quotient order differs from refinement at n=" + std::to_string(n));
      unsigned long long expect_intervals = binomial(unsigned(3 * n), unsigned(n)) / (2 * n + 1);
      c.expect(k.interval_count() == expect_intervals,
               "K_" + std::to_string(n) + " interval count " +
                   std::to_string(k.interval_count()) + " expected " +
                   std::to_string(expect_intervals));
    }
  }
}

// ---------------------------------------------------------- criterion 7

void criterion_rewriting_suite(Check& c, uint64_t rng_seed) {
  Rng rng(rng_seed);
  size_t trials = 0, lr_forms = 0, fired = 0, rich_homsets = 0;
  for (size_t round = 0; round < 125 && c.ok; ++round) {
    RandomInstance inst = random_instance(rng);
    const Context& ctx = inst.ctx;
    Context idc{identity_functor(inst.c_cat), "all", "all"};
    for (size_t i = 0; i < 4 && c.ok; ++i) {
      ++trials;
      DerivPtr a = random_derivation(rng, ctx, 6);
      size_t sz = deriv_size(a);
      if (sz < 7) a = random_wraps(rng, ctx, a, 7 - sz);

      // Strictification and canonical form.
      MPtr nf = canonical_form(ctx, a);

      // (a) weight decreases on every applicable par/gra step of a
      // seq-scrambled normal form, and (b) both strategies renormalize it.
      {
        BipoleChain chain = parse_chain(ctx, nf);
        for (const Bipole& b : chain.bips)
          if (b.cls == Bipole::Cls::LR) {
            ++lr_forms;
            break;
          }
      }
      MPtr scrambled = nf;
      for (int k = 0; k < 5; ++k) {
        size_t bips = parse_chain(ctx, scrambled).bips.size();
        if (!bips) break;
        auto r = rewrite_step(ctx, scrambled,
                              rng.flip() ? RewriteRule::SeqRL : RewriteRule::SeqLR,
                              rng.upto(bips));
        if (r) scrambled = *r;
      }
      size_t w = weight(ctx, scrambled);
      size_t bips = parse_chain(ctx, scrambled).bips.size();
      for (size_t pos = 0; pos < bips; ++pos)
        for (RewriteRule rule : {RewriteRule::ParRL, RewriteRule::ParLR, RewriteRule::GraL,
                                 RewriteRule::GraR})
          if (auto r = rewrite_step(ctx, scrambled, rule, pos)) {
            ++fired;
            c.expect(weight(ctx, *r) < w, "par/gra step did not decrease the weight");
          }
      c.expect(multi_eq(normalize(ctx, scrambled, 0).term, nf),
               "strategy 0 does not recover the normal form");
      c.expect(multi_eq(normalize(ctx, scrambled, 1).term, nf),
               "strategy 1 does not recover the normal form");

      // (c) decide_equal agrees with the BFS decision.
      DerivPtr b = random_permute(rng, ctx, a, 4);
      c.expect(decide_equal(ctx, a, b), "NF pipeline refutes a permuted derivation");
      c.expect(permeq_decide_bfs(ctx, a, b), "BFS refutes a permuted derivation");
      HomsetResult hs = homset(ctx, a->j.lhs, a->j.base, a->j.rhs);
      if (hs.count >= 2) {
        ++rich_homsets;
        DerivPtr d1 = plain_of_multi(ctx, hs.proofs[0]);
        DerivPtr d2 = plain_of_multi(ctx, hs.proofs[1]);
        c.expect(!decide_equal(ctx, d1, d2), "distinct maximal proofs decided equal");
        c.expect(!permeq_decide_bfs(ctx, d1, d2), "distinct maximal proofs BFS-equal");
      }

      // (d) categorical laws.
      DerivPtr beta = random_extension(rng, ctx, a->j.rhs, rng.upto(3));
      DerivPtr gamma = random_extension(rng, ctx, beta->j.rhs, rng.upto(3));
      DerivPtr ab = cut(ctx, a, beta);
      c.expect(multi_eq(canonical_form(ctx, cut(ctx, ab, gamma)),
                        canonical_form(ctx, cut(ctx, a, cut(ctx, beta, gamma)))),
               "cut associativity fails");
      c.expect(decide_equal(ctx, cut(ctx, identity_derivation(ctx, a->j.lhs), a), a),
               "left identity not neutral");
      c.expect(decide_equal(ctx, cut(ctx, a, identity_derivation(ctx, a->j.rhs)), a),
               "right identity not neutral");

      // eta-expansion on a derivation with a pushforward on the left.
      {
        const Arrow& h = a->j.base;
        size_t cutpos = rng.upto(h.data.size() + 1);
        Arrow f{h.dom,
                cutpos == 0 ? h.dom : ObjId{inst.c_cat->edge(h.data[cutpos - 1]).dst},
                {h.data.begin(), h.data.begin() + cutpos}};
        Arrow g{f.cod, h.cod, {h.data.begin() + cutpos, h.data.end()}};
        DerivPtr lifted = mk_ldiv(ctx, f, g, a);
        DerivPtr expanded =
            mk_ldiv(ctx, f, g, cut(ctx, opcart(ctx, f, a->j.lhs), lifted));
        c.expect(decide_equal(ctx, lifted, expanded), "eta-expansion (push) fails");
        DerivPtr rlifted = mk_rdiv(ctx, a, f, g);
        DerivPtr rexpanded =
            mk_rdiv(ctx, cut(ctx, rlifted, cart(ctx, g, a->j.rhs)), f, g);
        c.expect(decide_equal(ctx, rlifted, rexpanded), "eta-expansion (pull) fails");
      }

      // dagger involution, vcompose reversal, decompose round-trip.
      {
        auto [delta, stack] = decompose(ctx, a);
        c.expect(deriv_eq(recompose(ctx, delta, stack), a), "decompose/recompose round-trip");
        Stack dd = dagger(ctx, dagger(ctx, stack));
        c.expect(dd == stack, "dagger is not an involution");
        size_t cutpos2 = rng.upto(stack.cells.size() + 1);
        Stack s1{stack.top, {stack.cells.begin(), stack.cells.begin() + cutpos2}};
        Stack s2{stack_bottom(ctx, s1), {stack.cells.begin() + cutpos2, stack.cells.end()}};
        c.expect(vcompose(ctx, s1, s2) == stack, "vcompose does not rejoin a split stack");
        Stack lhs_dag = dagger(ctx, vcompose(ctx, s1, s2));
        Stack rhs_dag = vcompose(ctx, dagger(ctx, s2), dagger(ctx, s1));
        c.expect(lhs_dag == rhs_dag, "dagger does not reverse vertical composition");
      }

      // interchange: (a.a').(z.z') ~ (a.z).(a'.z') for a paired zigzag cut.
      {
        DerivPtr zig = mk_ax(idc, a->j.base);
        DerivPtr zig2 = mk_ax(idc, beta->j.base);
        for (int k = 0; k < 3; ++k) {
          switch (rng.upto(4)) {
            case 0:
              zig = mk_lmult(idc, random_word_into(rng, *inst.c_cat, zig->j.lhs->ref, 2), zig);
              break;
            case 1:
              zig2 = mk_rmult(idc, zig2, random_word_from(rng, *inst.c_cat, zig2->j.rhs->ref, 2));
              break;
            case 2: {  // grow a push on the middle boundary
              Arrow h = random_word_from(rng, *inst.c_cat, zig->j.rhs->ref, 2);
              const Arrow& base2 = zig2->j.base;
              if (h.data.size() <= base2.data.size() &&
                  std::equal(h.data.begin(), h.data.end(), base2.data.begin())) {
                Arrow rest{h.cod, base2.cod,
                           {base2.data.begin() + h.data.size(), base2.data.end()}};
                zig = mk_rmult(idc, zig, h);
                zig2 = mk_ldiv(idc, h, rest, zig2);
              }
              break;
            }
            default: {  // grow a pull on the middle boundary
              const Arrow& base1 = zig->j.base;
              size_t cutpos = rng.upto(base1.data.size() + 1);
              Arrow pre{base1.dom,
                        cutpos == 0 ? base1.dom
                                    : ObjId{inst.c_cat->edge(base1.data[cutpos - 1]).dst},
                        {base1.data.begin(), base1.data.begin() + cutpos}};
              Arrow h{pre.cod, base1.cod, {base1.data.begin() + cutpos, base1.data.end()}};
              zig = mk_rdiv(idc, zig, pre, h);
              zig2 = mk_lmult(idc, h, zig2);
              break;
            }
          }
        }
        DerivPtr lhs = action(ctx, cut(ctx, a, beta), cut(idc, zig, zig2));
        DerivPtr rhs = cut(ctx, action(ctx, a, zig), action(ctx, beta, zig2));
        c.expect(decide_equal(ctx, lhs, rhs), "interchange instance fails");
      }

      // strengthen/sequentialize round-trips.
      {
        WeakPtr w = weak_preimage(ctx, strictify_derivation(ctx, a), a->j.lhs, a->j.rhs);
        MPtr strong = strengthen(ctx, w);
        for (const WeakPtr& w2 : inv_sequentialize(ctx, strong)) {
          if (deriv_size(weak_ceil(ctx, w)) <= 8)
            c.expect(permeq_decide_bfs(ctx, weak_ceil(ctx, w), weak_ceil(ctx, w2)),
                     "InvSeq(S(w)) is not permutation equivalent to w");
          c.expect(multi_eq(normalize(ctx, strengthen(ctx, w2), 0).term,
                            normalize(ctx, strong, 0).term),
                   "S(InvSeq(m)) differs from m up to normal form");
        }
        for (const MPtr& mono : foc_sequentialize(ctx, nf))
          c.expect(multi_eq(normalize(ctx, mono, 0).term, nf),
                   "focal sequentialization leaves the equivalence class");
      }

      // (e) direct multifocused cut agrees with the extensional one.
      {
        WeakPtr wa = weak_preimage(ctx, strictify_derivation(ctx, a), a->j.lhs, a->j.rhs);
        WeakPtr wb =
            weak_preimage(ctx, strictify_derivation(ctx, beta), beta->j.lhs, beta->j.rhs);
        MPtr ma = strengthen(ctx, wa);
        MPtr mb = strengthen(ctx, wb);
        MPtr direct = mf_cut(ctx, ma, mb);
        c.expect(multi_eq(normalize(ctx, direct, 0).term, canonical_form(ctx, ab)),
                 "mf_cut disagrees with the extensional composition");
      }
    }
  }
  // The corpus itself must exercise the interesting cases.
  c.expect(lr_forms >= 50, "too few normal forms with a bi-focused bipole");
  c.expect(fired >= 50, "too few applicable par/gra redexes");
  c.expect(rich_homsets >= 5, "too few judgments with several proofs");
  c.note(std::to_string(trials) + " random derivations, " + std::to_string(lr_forms) +
         " with bi-focused bipoles, " + std::to_string(fired) + " par/gra redexes");
}

// ---------------------------------------------------------- criterion 8

void criterion_maximality(Check& c, uint64_t rng_seed) {
  Rng rng(rng_seed ^ 0xabcdef);
  size_t judged = 0;
  for (size_t round = 0; round < 60 && c.ok; ++round) {
    RandomInstance inst = random_instance(rng);
    const Context& ctx = inst.ctx;
    DerivPtr d = random_derivation(rng, ctx, 6);
    if (connective_count(d->j.lhs) > 3 || connective_count(d->j.rhs) > 3) continue;
    ++judged;
    std::vector<DerivPtr> proofs =
        all_plain_derivations(ctx, d->j.lhs, d->j.base, d->j.rhs);
    size_t classes = permeq_classes(ctx, proofs).size();
    std::vector<MPtr> maximal = max_search(ctx, d->j.lhs, d->j.base, d->j.rhs);
    for (const MPtr& m : maximal)
      c.expect(is_maximal(ctx, m), "search emitted a proof with a remaining redex");
    c.expect(maximal.size() == classes,
             "maximal proofs " + std::to_string(maximal.size()) + " vs permutation classes " +
                 std::to_string(classes));
  }
  c.note(std::to_string(judged) + " micro judgments");
}

}  // namespace

std::vector<CriterionResult> run_paper_suite(uint64_t rng_seed, std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  struct Entry {
    std::string name;
    double seconds_limit;
    std::function<void(Check&)> fn;
  };
  std::vector<Entry> criteria = {
      {"1 simplex homset counts", 30, [](Check& c) { criterion_simplex_counts(c); }},
      {"2 bijection with monotone maps", 30, [](Check& c) { criterion_monotone_bijection(c); }},
      {"3 plane tree morphisms", 30, [](Check& c) { criterion_tree_morphisms(c); }},
      {"4 ambisimplicial counts", 960, [](Check& c) { criterion_ambisimplicial_counts(c); }},
      {"5 F_{0,3} and F_{0,4} structure", 310, [](Check& c) { criterion_f03_structure(c); }},
      {"6 Kreweras quotient", 960, [](Check& c) { criterion_kreweras(c); }},
      {"7 rewriting soundness", 300,
       [rng_seed](Check& c) { criterion_rewriting_suite(c, rng_seed); }},
      {"8 maximality correspondence", 120,
       [rng_seed](Check& c) { criterion_maximality(c, rng_seed); }},
  };
  std::vector<CriterionResult> results;
  for (auto& [name, seconds_limit, fn] : criteria) {
    Check check;
    auto start = Clock::now();
    try {
      fn(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.note(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    check.expect(secs < seconds_limit,
                 "exceeded the time budget of " + std::to_string(int(seconds_limit)) + "s");
    results.push_back({name, check.ok, check.detail.str(), secs});
    out << (check.ok ? "PASS" : "FAIL") << "  " << name;
    char buf[32];
    snprintf(buf, sizeof buf, "  (%.2fs)", secs);
    out << buf;
    if (!check.detail.str().empty()) out << "  [" << check.detail.str() << "]";
    out << "\n";
    out.flush();
  }
  return results;
}

}  // namespace bifib
