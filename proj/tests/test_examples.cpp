#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "bifib/examples.hpp"
#include "bifib/randgen.hpp"
#include "doctest.h"

using namespace bifib;

TEST_CASE("builtin seeds") {
  Seed p2 = make_seed("p2");
  CHECK(p2.ctx.C().objects().size() == 2);
  Seed pw = make_seed("pomega(3)");
  CHECK(pw.ctx.C().objects().size() == 4);
  Seed bn = make_seed("bnat");
  CHECK(bn.ctx.C().objects().size() == 1);
  Seed amb = make_seed("ambisimplex(4)");
  CHECK(amb.ctx.clsP == "epi");
  CHECK(amb.ctx.clsN == "mono");
  CHECK(amb.ctx.fp());
  auto* sc = dynamic_cast<const SimplexCat*>(&amb.ctx.C());
  REQUIRE(sc != nullptr);
  CHECK_NOTHROW(sc->sigma(2, 3));
  CHECK_NOTHROW(sc->delta(4, 4));
}

TEST_CASE("monotone oracle counts") {
  CHECK(monotone_oracle(2, 2).size() == 3);
  CHECK(monotone_oracle(0, 1).size() == 1);
  CHECK(monotone_oracle(3, 2).size() == 4);
  CHECK(monotone_oracle(4, 1).size() == 1);
  CHECK(monotone_oracle(2, 0).empty());
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n)
      CHECK(monotone_oracle(m, n).size() ==
            (n == 0 ? (m == 0 ? 1 : 0) : binomial(unsigned(m + n - 1), unsigned(m))));
}

TEST_CASE("interpretation into the pointed-ordinal target") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  OrdinalTarget target{ctx};
  Arrow f = *ctx.C().parse_arrow("f0");
  FormulaPtr two = p2_ordinal(ctx, 2);
  CHECK(interpret_formula(target, two) == OrdinalTarget::Obj{0, 2});

  // identities interpret to identities
  OrdinalTarget::Mor idm = interpret(target, identity_derivation(ctx, two));
  CHECK(idm.map == std::vector<int>{0, 1});

  // the adjunction unit adds the point below: x -> x + 1
  FormulaPtr one = p2_ordinal(ctx, 1);
  DerivPtr unit = mk_rdiv(ctx, opcart(ctx, f, one), ctx.C().identity(ObjId{0}), f);
  OrdinalTarget::Mor u = interpret(target, unit);
  CHECK(u.src == OrdinalTarget::Obj{0, 1});
  CHECK(u.dst == OrdinalTarget::Obj{0, 2});
  CHECK(u.map == std::vector<int>{1});

  // interpretation is functorial for cut and invariant under permutation
  Rng rng(3);
  Arrow id0 = ctx.C().identity(ObjId{0});
  HomsetResult hs = homset(ctx, two, id0, two);
  for (const MPtr& m1 : hs.proofs)
    for (const MPtr& m2 : hs.proofs) {
      DerivPtr a = plain_of_multi(ctx, m1), b = plain_of_multi(ctx, m2);
      OrdinalTarget::Mor lhs = interpret(target, cut(ctx, a, b));
      OrdinalTarget::Mor rhs = target.compose(interpret(target, a), interpret(target, b));
      CHECK(lhs == rhs);
      for (const DerivPtr& nb : permeq_neighbors(ctx, a))
        CHECK(interpret(target, nb) == interpret(target, a));
    }
}

TEST_CASE("tree decoding of the worked example") {
  Seed seed = make_seed("pomega(4)");
  const Context& ctx = seed.ctx;
  // walk steps from the atom: +1+1-1-1+1-1+1+1-1+1+1-1-1-1
  std::vector<int> steps = {+1, +1, -1, -1, +1, -1, +1, +1, -1, +1, +1, -1, -1, -1};
  FormulaPtr formula = mk_atom(ctx, ObjId{0});
  int lvl = 0;
  for (int s : steps) {
    Arrow step = *ctx.C().parse_arrow("f" + std::to_string(s > 0 ? lvl : lvl - 1));
    formula = s > 0 ? mk_push(ctx, step, formula) : mk_pull(ctx, step, formula);
    lvl += s;
  }
  REQUIRE(lvl == 0);
  MarkedTree tree = tree_of_formula(ctx, formula);
  CHECK(tree.lvl == 0);
  MarkedTree expect;
  expect.t.par = {{0, 0, 0}, {0, 0, 2}, {0}};
  CHECK(tree == expect);
  CHECK(tree.t.vertex_count() == 8);
  // the alternating collapse matches the peak-valley zigzag 0 3 1 2 0 1 0 2 0
  FormulaPtr collapsed = collapse_formula(ctx, formula);
  std::vector<int> profile{0};
  for (FormulaPtr cur = collapsed; !cur->is_atom(); cur = cur->body) profile.push_back(0);
  CHECK(profile.size() == 9);
  // exact single-step re-encoding round-trips
  CHECK(formula_eq(formula_of_tree(ctx, tree), formula));
}

TEST_CASE("tree encode/decode round-trips on random walks") {
  Seed seed = make_seed("pomega(6)");
  const Context& ctx = seed.ctx;
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    FormulaPtr formula = mk_atom(ctx, ObjId{0});
    int lvl = 0;
    size_t len = rng.upto(12);
    for (size_t i = 0; i < len; ++i) {
      bool up = lvl == 0 || (lvl < 6 && rng.flip());
      Arrow step = *ctx.C().parse_arrow("f" + std::to_string(up ? lvl : lvl - 1));
      formula = up ? mk_push(ctx, step, formula) : mk_pull(ctx, step, formula);
      lvl += up ? 1 : -1;
    }
    MarkedTree t = tree_of_formula(ctx, formula);
    CHECK(t.lvl == lvl);
    CHECK(formula_eq(formula_of_tree(ctx, t), formula));
  }
}

TEST_CASE("walks below the axis and displacement") {
  Seed seed = make_seed("bnat");
  const Context& ctx = seed.ctx;
  auto* mn = dynamic_cast<const MonoidNat*>(&ctx.C());
  FormulaPtr atom = mk_atom(ctx, ObjId{0});
  // pull f push f push f push f pull f pull f push f *  (dips to -1)
  FormulaPtr walk =
      mk_pull(ctx, mn->step(1),
              mk_push(ctx, mn->step(1),
                      mk_push(ctx, mn->step(1),
                              mk_push(ctx, mn->step(1),
                                      mk_pull(ctx, mn->step(1),
                                              mk_pull(ctx, mn->step(1),
                                                      mk_push(ctx, mn->step(1), atom)))))));
  CHECK_THROWS_AS(tree_of_formula(ctx, walk), Error);
  DisplacementTarget target{ctx};
  CHECK(interpret_formula(target, walk).z == 1);

  // identity proof on the non-Dyck walk exists, and displacement tracks bases
  DerivPtr idw = identity_derivation(ctx, walk);
  DisplacementTarget::Mor m = interpret(target, idw);
  CHECK(m.src.z == 1);
  CHECK(m.dst.z == 1);
  Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    DerivPtr d = random_wraps(rng, ctx, mk_ax(ctx, ctx.D().identity(ObjId{0})), 5);
    DisplacementTarget::Mor dm = interpret(target, d);
    CHECK(dm.src.z <= dm.dst.z);
    CHECK(dm.dst.z - dm.src.z == d->j.base.data[0]);
  }
}

TEST_CASE("tree morphism oracle matches brute force") {
  Seed seed = make_seed("pomega(4)");
  const Context& ctx = seed.ctx;
  MarkedTree small;
  small.t.par = {{0, 0}};
  FormulaPtr sf = formula_of_tree(ctx, small);
  DerivPtr idd = identity_derivation(ctx, sf);
  TreeMor idm = tree_morphism_oracle(ctx, idd);
  CHECK(idm.maps == std::vector<std::vector<int>>{{0}, {0, 1}});

  // naturality: the oracle of a cut is the levelwise composite
  Arrow id0 = ctx.C().identity(ObjId{0});
  HomsetResult hs = homset(ctx, sf, id0, sf);
  for (const MPtr& m1 : hs.proofs)
    for (const MPtr& m2 : hs.proofs) {
      DerivPtr a = plain_of_multi(ctx, m1), b = plain_of_multi(ctx, m2);
      MarkedTreeTarget target{ctx};
      CHECK(tree_morphism_oracle(ctx, cut(ctx, a, b)) ==
            target.compose(tree_morphism_oracle(ctx, a), tree_morphism_oracle(ctx, b)));
    }
  CHECK(hs.count == all_tree_morphisms(small, small).size());
}

TEST_CASE("forests, partitions, and double factorial counts") {
  Seed seed = make_seed("ambisimplex(4)");
  const Context& ctx = seed.ctx;
  auto* sc = dynamic_cast<const SimplexCat*>(&ctx.C());
  FormulaPtr atom3 = mk_atom(ctx, ObjId{3});

  // D1 and C1 reduce to the partition {{0},{1 2}}
  FormulaPtr d1 = mk_pull(ctx, sc->delta(0, 0),
                          mk_push(ctx, sc->sigma(0, 1), mk_pull(ctx, sc->delta(0, 2), atom3)));
  FormulaPtr c1 = mk_pull(ctx, sc->delta(0, 0),
                          mk_pull(ctx, sc->delta(0, 1), mk_push(ctx, sc->sigma(1, 2), atom3)));
  CHECK(noncrossing_of(forest_of_formula(ctx, d1)).to_string() == "{0|1 2}");
  CHECK(noncrossing_of(forest_of_formula(ctx, c1)).to_string() == "{0|1 2}");
  // F-class representative glues the outer leaves across the rooted middle
  FormulaPtr f1 = mk_pull(ctx, sc->delta(0, 0),
                          mk_push(ctx, sc->sigma(0, 1), mk_pull(ctx, sc->delta(1, 2), atom3)));
  CHECK(noncrossing_of(forest_of_formula(ctx, f1)).to_string() == "{0 2|1}");
  // all-pull formulas are discrete, all-push-then-pull collapses to one block
  FormulaPtr a1 = mk_pull(ctx, sc->delta(0, 0),
                          mk_pull(ctx, sc->delta(0, 1), mk_pull(ctx, sc->delta(0, 2), atom3)));
  CHECK(noncrossing_of(forest_of_formula(ctx, a1)).blocks.size() == 3);
  FormulaPtr e1 = mk_pull(ctx, sc->delta(0, 0),
                          mk_push(ctx, sc->sigma(0, 1), mk_push(ctx, sc->sigma(1, 2), atom3)));
  CHECK(noncrossing_of(forest_of_formula(ctx, e1)).blocks.size() == 1);

  // chi = 0 gives the empty forest and the empty partition
  FormulaPtr zero = mk_atom(ctx, ObjId{0});
  CHECK(noncrossing_of(forest_of_formula(ctx, zero)).blocks.empty());

  // counts: (2n-1)!! formulas, Catalan many partition images
  CHECK(closed_ambisimplicial(ctx, 0, 4).size() == double_factorial_odd(4));
  std::set<std::string> images;
  for (const FormulaPtr& s : closed_ambisimplicial(ctx, 0, 4))
    images.insert(noncrossing_of(forest_of_formula(ctx, s)).to_string());
  CHECK(images.size() == catalan(4));
  CHECK(double_factorial_odd(5) == 945);
}

TEST_CASE("division laws of the cleaved targets on sampled inputs") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  OrdinalTarget target{ctx};
  Arrow f = *ctx.C().parse_arrow("f0");
  // unique-beta laws: opcart . ldiv(a) = a and rdiv(a) . cart = a
  for (int m = 0; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (const std::vector<int>& map : monotone_oracle(m, n + 1)) {
        OrdinalTarget::Mor alpha{{0, m}, {1, n + 1}, map};
        auto beta = target.ldiv(f, ctx.C().identity(ObjId{1}), alpha);
        REQUIRE(beta.has_value());
        CHECK(target.compose(target.opcart(f, alpha.src), *beta) == alpha);
        auto gamma = target.rdiv(alpha, ctx.C().identity(ObjId{0}), f);
        REQUIRE(gamma.has_value());
        CHECK(target.compose(*gamma, target.cart(f, alpha.dst)) == alpha);
      }
}

TEST_CASE("json codecs round-trip") {
  MarkedTree t;
  t.t.par = {{0, 0}, {1}};
  t.lvl = 1;
  CHECK(tree_from_json(tree_to_json(t)) == t);
  Seed seed = make_seed("ambisimplex(3)");
  FormulaPtr s = closed_ambisimplicial(seed.ctx, 0, 3).front();
  IncreasingBinaryForest forest = forest_of_formula(seed.ctx, s);
  CHECK(forest_to_json(forest).find("events") != std::string::npos);
  CHECK(partition_to_json(noncrossing_of(forest)).find("blocks") != std::string::npos);
}

TEST_CASE("triangle identities of the push-pull adjunction") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  Arrow f = *ctx.C().parse_arrow("f0");
  for (int n = 0; n <= 2; ++n) {
    FormulaPtr s = p2_ordinal(ctx, n);
    FormulaPtr ps = mk_push(ctx, f, s);
    FormulaPtr qs = mk_pull(ctx, f, ps);
    // unit eta : S |- pull_f push_f S and counit eps : push_f pull_f T |- T
    DerivPtr eta = mk_rdiv(ctx, opcart(ctx, f, s), ctx.C().identity(s->ref), f);
    DerivPtr eps = mk_ldiv(ctx, f, ctx.C().identity(ps->ref), cart(ctx, f, ps));
    // push_f applied to eta, pull_f applied to eps (the fiber functors)
    DerivPtr push_eta =
        mk_ldiv(ctx, f, ctx.C().identity(ps->ref), mk_rmult(ctx, eta, f));
    DerivPtr pull_eps =
        mk_rdiv(ctx, mk_lmult(ctx, f, eps), ctx.C().identity(qs->ref), f);
    // (push eta) ; eps_push = id_push  and  eta_pull ; (pull eps) = id_pull
    DerivPtr eps_at_push = mk_ldiv(ctx, f, ctx.C().identity(ps->ref), cart(ctx, f, ps));
    CHECK(decide_equal(ctx, cut(ctx, push_eta, eps_at_push), identity_derivation(ctx, ps)));
    FormulaPtr pt = mk_pull(ctx, f, ps);
    DerivPtr eta_at_pull = mk_rdiv(ctx, opcart(ctx, f, pt), ctx.C().identity(pt->ref), f);
    DerivPtr pulled = mk_rdiv(ctx, mk_lmult(ctx, f, eps), ctx.C().identity(pt->ref), f);
    CHECK(decide_equal(ctx, cut(ctx, eta_at_pull, pulled), identity_derivation(ctx, pt)));
  }
}

TEST_CASE("equivalence classes of the ambisimplicial fiber are vertical isos") {
  Seed seed = make_seed("ambisimplex(3)");
  const Context& ctx = seed.ctx;
  auto* sc = dynamic_cast<const SimplexCat*>(&ctx.C());
  FormulaPtr atom3 = mk_atom(ctx, ObjId{3});
  // B1 and B2 reorder two pulls: logically equivalent
  FormulaPtr b1 = mk_pull(ctx, sc->delta(0, 0),
                          mk_pull(ctx, sc->delta(0, 1), mk_push(ctx, sc->sigma(0, 2), atom3)));
  FormulaPtr b2 = mk_pull(ctx, sc->delta(0, 0),
                          mk_pull(ctx, sc->delta(1, 1), mk_push(ctx, sc->sigma(0, 2), atom3)));
  CHECK(formula_eq(collapse_formula(ctx, b1), collapse_formula(ctx, b2)));
  CHECK(logical_equiv(ctx, b1, b2).has_value());
  // A (all pulls) entails B but is not equivalent to it
  FormulaPtr a1 = mk_pull(ctx, sc->delta(0, 0),
                          mk_pull(ctx, sc->delta(0, 1), mk_pull(ctx, sc->delta(0, 2), atom3)));
  Arrow id0 = ctx.C().identity(ObjId{0});
  CHECK(homset(ctx, a1, id0, b1).count == 1);
  CHECK(homset(ctx, b1, id0, a1).count == 0);
  CHECK_FALSE(logical_equiv(ctx, a1, b1).has_value());
}

TEST_CASE("tree homsets transfer to the walk category") {
  // The faithful chain-to-monoid projection preserves relative homset
  // counts, so the tree-pair count recomputes over one-dimensional walks.
  Seed trees = make_seed("pomega(4)");
  Seed walks = make_seed("bnat");
  MarkedTree s, t;
  s.t.par = {{0, 0, 0}, {0, 2, 2}};
  t.t.par = {{0, 0, 0}, {0, 0, 2}, {0}};
  FormulaPtr sf = formula_of_tree(trees.ctx, s);
  FormulaPtr tf = formula_of_tree(trees.ctx, t);
  auto transfer = [&](const FormulaPtr& x) {
    auto* mn = dynamic_cast<const MonoidNat*>(&walks.ctx.C());
    std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& cur) -> FormulaPtr {
      if (cur->is_atom()) return mk_atom(walks.ctx, ObjId{0});
      Arrow step = mn->step(cur->arrow.cod.v - cur->arrow.dom.v);
      return cur->is_push() ? mk_push(walks.ctx, step, go(cur->body))
                            : mk_pull(walks.ctx, step, go(cur->body));
    };
    return go(x);
  };
  size_t over_trees =
      homset(trees.ctx, sf, trees.ctx.C().identity(ObjId{0}), tf).count;
  size_t over_walks =
      homset(walks.ctx, transfer(sf), walks.ctx.C().identity(ObjId{0}), transfer(tf)).count;
  CHECK(over_trees == 11);
  CHECK(over_walks == 11);
}

TEST_CASE("truncation level does not affect counts") {
  MarkedTree s, t;
  s.t.par = {{0, 0, 0}, {0, 2, 2}};
  t.t.par = {{0, 0, 0}, {0, 0, 2}, {0}};
  size_t counts[2];
  int idx = 0;
  for (const char* name : {"pomega(4)", "pomega(7)"}) {
    Seed seed = make_seed(name);
    counts[idx++] = homset(seed.ctx, formula_of_tree(seed.ctx, s),
                           seed.ctx.C().identity(ObjId{0}), formula_of_tree(seed.ctx, t))
                        .count;
  }
  CHECK(counts[0] == counts[1]);
}

TEST_CASE("walks that dip below the axis still compose") {
  Seed seed = make_seed("bnat");
  const Context& ctx = seed.ctx;
  auto* mn = dynamic_cast<const MonoidNat*>(&ctx.C());
  FormulaPtr atom = mk_atom(ctx, ObjId{0});
  // push_f pull_f * : the walk steps below the axis before returning
  FormulaPtr dip = mk_push(ctx, mn->step(1), mk_pull(ctx, mn->step(1), atom));
  CHECK_THROWS_AS(tree_of_formula(ctx, dip), Error);
  Arrow zero = mn->step(0);
  CHECK(homset(ctx, dip, zero, dip).count >= 1);   // identity
  CHECK(homset(ctx, dip, zero, atom).count == 1);  // the counit collapses the dip
  HomsetResult back = homset(ctx, atom, zero, dip);
  for (const MPtr& m : back.proofs) {
    DisplacementTarget target{ctx};
    DisplacementTarget::Mor mor = interpret(target, plain_of_multi(ctx, m));
    CHECK(mor.src.z == 0);
    CHECK(mor.dst.z == 0);
  }
}

TEST_CASE("the pointed fiber enumerates point-preserving maps") {
  Seed seed = make_seed("p2");
  const Context& ctx = seed.ctx;
  OrdinalTarget target{ctx};
  Arrow id1 = ctx.C().identity(ObjId{1});
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      HomsetResult hs =
          homset(ctx, p2_ordinal_primed(ctx, m), id1, p2_ordinal_primed(ctx, n));
      // brute force: monotone maps (1+m) -> (1+n) fixing the least element
      std::set<std::vector<int>> expect;
      for (const std::vector<int>& map : monotone_oracle(m + 1, n + 1))
        if (map[0] == 0) expect.insert(map);
      CHECK(hs.count == expect.size());
      std::set<std::vector<int>> images;
      for (const MPtr& mp : hs.proofs) {
        OrdinalTarget::Mor mor = interpret(target, plain_of_multi(ctx, mp));
        CHECK(mor.src.lvl == 1);
        CHECK(mor.dst.lvl == 1);
        images.insert(mor.map);
      }
      CHECK(images == expect);
    }
}
