#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "bifib/examples.hpp"
#include "bifib/randgen.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace bifib;

TEST_CASE("homsets over the interval instance") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  Arrow id0 = ctx.C().identity(ObjId{0});
  CHECK(homset(ctx, p2_ordinal(ctx, 2), id0, p2_ordinal(ctx, 2)).count == 3);
  CHECK(homset(ctx, p2_ordinal(ctx, 1), id0, p2_ordinal(ctx, 1)).count == 1);
  CHECK(homset(ctx, p2_ordinal(ctx, 0), id0, p2_ordinal(ctx, 1)).count == 1);
  CHECK(homset(ctx, p2_ordinal(ctx, 1), id0, p2_ordinal(ctx, 0)).count == 0);
  // identity always inhabits the reflexive homset
  for (int n = 0; n <= 3; ++n)
    CHECK(homset(ctx, p2_ordinal(ctx, n), id0, p2_ordinal(ctx, n)).count >= 1);
}

TEST_CASE("decide_equal on both decision modes") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  DerivPtr idd = identity_derivation(ctx, p2_ordinal(ctx, 2));
  CHECK(decide_equal(ctx, idd, idd));
  CHECK(decide_mode(ctx) == DecideMode::NF);
  EquivClassToken token = equiv_token(ctx, idd);
  CHECK(token.mode == DecideMode::NF);
  CHECK(multi_eq(token.canonical, canonical_form(ctx, idd)));
  // two distinct maximal proofs of one judgment are distinguished
  HomsetResult hs = homset(ctx, p2_ordinal(ctx, 2), ctx.C().identity(ObjId{0}),
                           p2_ordinal(ctx, 2));
  REQUIRE(hs.count >= 2);
  CHECK_FALSE(decide_equal(ctx, plain_of_multi(ctx, hs.proofs[0]),
                           plain_of_multi(ctx, hs.proofs[1])));
}

TEST_CASE("logical equivalence") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  Arrow f = *ctx.C().parse_arrow("f0");
  FormulaPtr atom = mk_atom(ctx, ObjId{0});
  // S is logically equivalent to its strictification
  FormulaPtr s = mk_push(ctx, ctx.C().identity(ObjId{1}), mk_push(ctx, f, atom));
  FormulaPtr collapsed = collapse_formula(ctx, s);
  auto wit = logical_equiv(ctx, s, collapsed);
  REQUIRE(wit.has_value());
  // push along the identity is equivalent to doing nothing
  FormulaPtr idpush = mk_push(ctx, ctx.C().identity(ObjId{0}), atom);
  CHECK(logical_equiv(ctx, idpush, atom).has_value());
  // the one-point and empty ordinals are not equivalent
  CHECK_FALSE(logical_equiv(ctx, p2_ordinal(ctx, 1), atom).has_value());
}

TEST_CASE("fiber poset structure and analysis") {
  Seed seed = make_seed("ambisimplex(3)");
  const Context& ctx = seed.ctx;
  FiberPoset f00 = ambisimplicial_fiber_poset(make_seed("ambisimplex(0)").ctx, 0, 0);
  CHECK(f00.size() == 1);
  FiberPoset f03 = ambisimplicial_fiber_poset(ctx, 0, 3);
  CHECK(f03.size() == 7);
  CHECK(f03.covers.size() == 8);

  // interval count against an independent closure of the eight covers
  std::vector<std::vector<bool>> leq(7, std::vector<bool>(7, false));
  for (size_t i = 0; i < 7; ++i) leq[i][i] = true;
  for (auto [a, b] : f03.covers) leq[a][b] = true;
  for (size_t k = 0; k < 7; ++k)
    for (size_t i = 0; i < 7; ++i)
      for (size_t j = 0; j < 7; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  size_t brute = 0;
  for (auto& row : leq)
    for (bool b : row) brute += b;
  CHECK(f03.interval_count() == brute);

  PosetAnalysis a3 = poset_analyze(f03);
  CHECK(a3.interval_count == f03.interval_count());

  // chains are lattices
  FiberPoset chain;
  chain.labels = {"0", "1", "2"};
  chain.elements.assign(3, nullptr);
  chain.witnesses.assign(3, nullptr);
  chain.leq = {{true, true, true}, {false, true, true}, {false, false, true}};
  compute_covers(chain);
  CHECK(chain.covers.size() == 2);
  CHECK(poset_analyze(chain).is_lattice);
}

TEST_CASE("bc quotient and the Kreweras oracle") {
  Seed seed = make_seed("ambisimplex(3)");
  const Context& ctx = seed.ctx;
  FiberPoset f03 = ambisimplicial_fiber_poset(ctx, 0, 3);
  FiberPoset k3 = bc_quotient(ctx, f03);
  CHECK(k3.size() == 5);
  CHECK(k3.interval_count() == 12);
  FiberPoset oracle = kreweras_oracle(3);
  CHECK(oracle.size() == 5);
  CHECK(oracle.interval_count() == 12);
  CHECK(all_noncrossing_partitions(4).size() == 14);
  FiberPoset k4 = kreweras_oracle(4);
  CHECK(k4.size() == 14);
  CHECK(k4.interval_count() == 55);
  CHECK(poset_analyze(oracle).is_lattice);  // Kreweras lattices are lattices
}

TEST_CASE("poset exports") {
  FiberPoset p;
  p.labels = {"x", "y"};
  p.elements.assign(2, nullptr);
  p.witnesses.assign(2, nullptr);
  p.leq = {{true, true}, {false, true}};
  compute_covers(p);
  CHECK(poset_to_dot(p).find("digraph") != std::string::npos);
  CHECK(poset_to_csv(p).find("x,1,1") != std::string::npos);
  auto j = nlohmann::json::parse(poset_to_json(p));
  CHECK(j["elements"].size() == 2);
  CHECK(j["intervals"] == 3);
}

TEST_CASE("homset fallback quotients plain derivations on non-FP baskets") {
  // The simplex backend with unrestricted classes declares neither FP nor
  // (for division-rich searches) canonical forms; counts still agree with
  // the declared-FP classes run on the same judgment.
  Seed amb = make_seed("ambisimplex(2)");
  Context all_ctx{amb.ctx.p, "all", "all"};
  FormulaPtr atom = mk_atom(all_ctx, ObjId{2});
  Arrow id2 = all_ctx.C().identity(ObjId{2});
  HomsetResult hs = homset(all_ctx, atom, id2, atom);
  CHECK_FALSE(hs.via_max_search);
  CHECK(hs.count == 1);
}

TEST_CASE("homset counts are invariant under strictification") {
  Rng rng(61);
  for (int i = 0; i < 20; ++i) {
    RandomInstance inst = random_instance(rng);
    const Context& ctx = inst.ctx;
    DerivPtr d = random_derivation(rng, ctx, 5);
    FormulaPtr s = d->j.lhs, t = d->j.rhs;
    size_t direct = homset(ctx, s, d->j.base, t).count;
    size_t collapsed = homset(ctx, collapse_formula(ctx, s), d->j.base,
                              collapse_formula(ctx, t)).count;
    CHECK(direct == collapsed);
  }
}

TEST_CASE("the ambisimplicial fiber is a preorder") {
  Seed seed = make_seed("ambisimplex(3)");
  const Context& ctx = seed.ctx;
  Arrow id0 = ctx.C().identity(ObjId{0});
  std::vector<FormulaPtr> formulas = closed_ambisimplicial(ctx, 0, 3);
  for (const FormulaPtr& s : formulas)
    for (const FormulaPtr& t : formulas)
      CHECK(homset(ctx, s, id0, t).count <= 1);
}

TEST_CASE("homsets over a non-identity base arrow") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  Arrow f = *ctx.C().parse_arrow("f0");
  // maps <1> -> L<1> over the step: point-preserving maps of the pointed
  // two-element ordinal, of which there are two
  CHECK(homset(ctx, p2_ordinal(ctx, 1), f, p2_ordinal_primed(ctx, 1)).count == 2);
  OrdinalTarget target{ctx};
  std::set<std::vector<int>> images;
  for (const MPtr& m : homset(ctx, p2_ordinal(ctx, 1), f, p2_ordinal_primed(ctx, 1)).proofs)
    images.insert(interpret(target, plain_of_multi(ctx, m)).map);
  CHECK(images == std::set<std::vector<int>>{{0}, {1}});
}

TEST_CASE("equivalence class tokens compare by denoted arrow") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  FormulaPtr two = p2_ordinal(ctx, 2);
  DerivPtr idd = identity_derivation(ctx, two);
  // a scrambled identity still yields the same token
  Rng rng(71);
  DerivPtr scrambled = random_permute(rng, ctx, idd, 6);
  CHECK(tokens_equal(ctx, equiv_token(ctx, idd), equiv_token(ctx, scrambled)));
  HomsetResult hs = homset(ctx, two, ctx.C().identity(ObjId{0}), two);
  REQUIRE(hs.count == 3);
  CHECK_FALSE(tokens_equal(ctx, equiv_token(ctx, plain_of_multi(ctx, hs.proofs[0])),
                           equiv_token(ctx, plain_of_multi(ctx, hs.proofs[1]))));
}

namespace {

// A closed ambisimplicial generator formula as its outermost-first step list.
struct GenStep {
  bool is_push;
  int i, n;  // sigma_i^n or delta_i^n
};

std::vector<GenStep> steps_of(const Context& ctx, const FormulaPtr& s) {
  auto* sc = dynamic_cast<const SimplexCat*>(&ctx.C());
  std::vector<GenStep> out;
  for (FormulaPtr cur = s; !cur->is_atom(); cur = cur->body) {
    const Arrow& a = cur->arrow;
    bool matched = false;
    if (a.dom.v == a.cod.v + 1)
      for (int i = 0; i < a.cod.v && !matched; ++i)
        if (a == sc->sigma(i, a.cod.v)) {
          out.push_back({true, i, a.cod.v});
          matched = true;
        }
    if (a.cod.v == a.dom.v + 1)
      for (int i = 0; i <= a.dom.v && !matched; ++i)
        if (a == sc->delta(i, a.dom.v)) {
          out.push_back({false, i, a.dom.v});
          matched = true;
        }
    REQUIRE(matched);
  }
  return out;
}

FormulaPtr formula_of_steps(const Context& ctx, const std::vector<GenStep>& steps, int atom) {
  auto* sc = dynamic_cast<const SimplexCat*>(&ctx.C());
  FormulaPtr cur = mk_atom(ctx, ObjId{atom});
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    cur = it->is_push ? mk_push(ctx, sc->sigma(it->i, it->n), cur)
                      : mk_pull(ctx, sc->delta(it->i, it->n), cur);
  return cur;
}

// One-step entailments generated by the three exchange laws, applied at
// every chain position (the congruence closure over formula contexts).
std::vector<std::vector<GenStep>> generator_order_successors(const std::vector<GenStep>& v) {
  std::vector<std::vector<GenStep>> out;
  for (size_t p = 0; p < v.size(); ++p) {
    // a pull becomes the parallel push when the indices touch
    if (!v[p].is_push) {
      for (int j : {v[p].i, v[p].i - 1})
        if (j >= 0 && j < v[p].n) {
          std::vector<GenStep> w = v;
          w[p] = {true, j, v[p].n};
          out.push_back(std::move(w));
        }
    }
    // a push over a pull commutes, shifting the index that passes by
    if (p + 1 < v.size() && v[p].is_push && !v[p + 1].is_push) {
      int jp = v[p].i, n = v[p + 1].n, i = v[p + 1].i;
      if (v[p].n != n - 1) continue;
      if (i <= jp) {  // the pull index is left of the collapsed pair
        std::vector<GenStep> w = v;
        w[p] = {false, i, n - 1};
        w[p + 1] = {true, jp + 1, n};
        out.push_back(std::move(w));
      } else if (i > jp + 1) {  // strictly right of it
        std::vector<GenStep> w = v;
        w[p] = {false, i - 1, n - 1};
        w[p + 1] = {true, jp, n};
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("the entailment order equals the generated exchange order") {
  for (int n = 0; n <= 4; ++n) {
    Seed seed = make_seed("ambisimplex(" + std::to_string(n) + ")");
    const Context& ctx = seed.ctx;
    FiberPoset fiber = ambisimplicial_fiber_poset(ctx, 0, n);

    // class index of a collapsed formula
    auto class_of = [&](const FormulaPtr& s) {
      FormulaPtr rep = collapse_formula(ctx, s);
      for (size_t i = 0; i < fiber.size(); ++i)
        if (formula_eq(fiber.elements[i], rep)) return i;
      REQUIRE(false);
      return size_t(0);
    };

    size_t m = fiber.size();
    std::vector<std::vector<bool>> gen(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i) gen[i][i] = true;
    for (const FormulaPtr& s : closed_ambisimplicial(ctx, 0, n)) {
      size_t a = class_of(s);
      for (const auto& succ : generator_order_successors(steps_of(ctx, s)))
        gen[a][class_of(formula_of_steps(ctx, succ, n))] = true;
    }
    for (size_t k = 0; k < m; ++k)
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
          if (gen[i][k] && gen[k][j]) gen[i][j] = true;
    CHECK(gen == fiber.leq);
  }
}

TEST_CASE("fibers over positive objects are posets too") {
  Seed seed = make_seed("ambisimplex(4)");
  const Context& ctx = seed.ctx;
  FiberPoset f13 = ambisimplicial_fiber_poset(ctx, 1, 3);
  CHECK(f13.size() >= 1);
  // reflexivity, transitivity, and the preorder property of the fiber
  Arrow id1 = ctx.C().identity(ObjId{1});
  for (size_t a = 0; a < f13.size(); ++a) {
    CHECK(f13.leq[a][a]);
    for (size_t b = 0; b < f13.size(); ++b) {
      CHECK(homset(ctx, f13.elements[a], id1, f13.elements[b]).count ==
            (f13.leq[a][b] ? 1u : 0u));
      for (size_t c = 0; c < f13.size(); ++c)
        if (f13.leq[a][b] && f13.leq[b][c]) CHECK(f13.leq[a][c]);
    }
  }
  // the one-step fiber F_{k,k+1} enumerates the generators out of k+1
  FiberPoset f34 = ambisimplicial_fiber_poset(ctx, 3, 4);
  size_t formulas = closed_ambisimplicial(ctx, 3, 4).size();
  CHECK(formulas == 7);  // four pulls and three pushes
  CHECK(f34.size() == formulas);
}

TEST_CASE("the quotient map is monotone") {
  Seed seed = make_seed("ambisimplex(3)");
  const Context& ctx = seed.ctx;
  FiberPoset fiber = ambisimplicial_fiber_poset(ctx, 0, 3);
  FiberPoset k3 = bc_quotient(ctx, fiber);
  auto cls = [&](size_t i) {
    std::string lbl = noncrossing_of(forest_of_formula(ctx, fiber.witnesses[i])).to_string();
    for (size_t q = 0; q < k3.size(); ++q)
      if (k3.labels[q] == lbl) return q;
    REQUIRE(false);
    return size_t(0);
  };
  for (size_t a = 0; a < fiber.size(); ++a)
    for (size_t b = 0; b < fiber.size(); ++b)
      if (fiber.leq[a][b]) CHECK(k3.leq[cls(a)][cls(b)]);
}
