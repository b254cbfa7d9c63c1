#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "bifib/derivation.hpp"
#include "bifib/enumeration.hpp"
#include "bifib/randgen.hpp"
#include "doctest.h"

using namespace bifib;

namespace {

// p : D -> C with D the free category on x --d--> y and C the chain 0 < 1 < 2,
// sending d to the first step.
Context chain_instance() {
  auto d_cat = std::make_shared<FreeCat>(std::vector<std::string>{"x", "y"},
                                         std::vector<FreeCat::Edge>{{"d", 0, 1}});
  auto c_cat = FinPoset::chain(2);
  auto p = std::make_shared<FunctorDef>();
  p->dom_cat = d_cat;
  p->cod_cat = c_cat;
  p->obj_map = {ObjId{0}, ObjId{1}};
  p->edge_map = {*c_cat->parse_arrow("f0")};
  p->validate();
  return Context{p, "all", "all"};
}

Context free_instance() {
  auto d_cat = std::make_shared<FreeCat>(std::vector<std::string>{"x", "y"},
                                         std::vector<FreeCat::Edge>{{"d", 0, 1}});
  auto c_cat = std::make_shared<FreeCat>(
      std::vector<std::string>{"a", "b", "c"},
      std::vector<FreeCat::Edge>{{"f", 0, 1}, {"g", 1, 2}, {"h", 2, 0}});
  auto p = std::make_shared<FunctorDef>();
  p->dom_cat = d_cat;
  p->cod_cat = c_cat;
  p->obj_map = {ObjId{0}, ObjId{1}};
  p->edge_map = {*c_cat->parse_arrow("f")};
  p->validate();
  return Context{p, "all", "all"};
}

}  // namespace

TEST_CASE("judgments of the term formers") {
  Context ctx = free_instance();
  DerivPtr ax = mk_ax(ctx, *ctx.D().parse_arrow("d"));
  CHECK(formula_eq(ax->j.lhs, mk_atom(ctx, ObjId{0})));
  CHECK(formula_eq(ax->j.rhs, mk_atom(ctx, ObjId{1})));
  CHECK(ax->j.base == *ctx.C().parse_arrow("f"));

  // LDiv on a derivation over f.g gives push_f S |-_g T.
  Arrow f = *ctx.C().parse_arrow("f"), g = *ctx.C().parse_arrow("g");
  DerivPtr over_fg = mk_rmult(ctx, ax, g);
  DerivPtr ldiv = mk_ldiv(ctx, f, g, over_fg);
  CHECK(ldiv->j.base == g);
  CHECK(ldiv->j.lhs->is_push());

  // Non-composable multiplication is rejected.
  CHECK_THROWS_AS(mk_rmult(ctx, ax, f), Error);
  // A stored base that is not f.g is rejected.
  CHECK_THROWS_AS(mk_ldiv(ctx, g, g, over_fg), Error);

  validate_derivation(ctx, ldiv);
  DerivPtr reparsed = parse_derivation(ctx, deriv_to_string(ctx, ldiv));
  CHECK(deriv_eq(reparsed, ldiv));
}

TEST_CASE("identity derivations follow the three clauses") {
  Context ctx = free_instance();
  Arrow f = *ctx.C().parse_arrow("f");
  FormulaPtr atom = mk_atom(ctx, ObjId{0});
  CHECK(deriv_eq(identity_derivation(ctx, atom), mk_ax(ctx, ctx.D().identity(ObjId{0}))));

  FormulaPtr push = mk_push(ctx, f, atom);
  DerivPtr idp = identity_derivation(ctx, push);
  CHECK(deriv_eq(idp, mk_ldiv(ctx, f, ctx.C().identity(f.cod),
                              mk_rmult(ctx, identity_derivation(ctx, atom), f))));

  FormulaPtr atom1 = mk_atom(ctx, ObjId{1});
  FormulaPtr pull = mk_pull(ctx, f, atom1);
  DerivPtr idq = identity_derivation(ctx, pull);
  CHECK(deriv_eq(idq, mk_rdiv(ctx, mk_lmult(ctx, f, identity_derivation(ctx, atom1)),
                              ctx.C().identity(f.dom), f)));

  // Cartesian lifts and the adjunction unit.
  CHECK(deriv_eq(opcart(ctx, f, atom), mk_rmult(ctx, identity_derivation(ctx, atom), f)));
  CHECK(deriv_eq(cart(ctx, f, atom1), mk_lmult(ctx, f, identity_derivation(ctx, atom1))));
  DerivPtr unit = mk_rdiv(ctx, opcart(ctx, f, atom), ctx.C().identity(f.dom), f);
  CHECK(formula_eq(unit->j.rhs, mk_pull(ctx, f, mk_push(ctx, f, atom))));
}

TEST_CASE("cut: principal and commutative cases") {
  Context ctx = free_instance();
  Arrow f = *ctx.C().parse_arrow("f"), g = *ctx.C().parse_arrow("g");
  DerivPtr axid = mk_ax(ctx, ctx.D().identity(ObjId{0}));
  DerivPtr axd = mk_ax(ctx, *ctx.D().parse_arrow("d"));
  CHECK(deriv_eq(cut(ctx, axid, axd), axd));  // atomic principal cut

  // (a . f^) . (f \_h b) = a . b
  DerivPtr lhs = mk_rmult(ctx, axid, f);
  DerivPtr rhs = mk_ldiv(ctx, f, g, mk_rmult(ctx, axd, g));
  CHECK(deriv_eq(cut(ctx, lhs, rhs), mk_rmult(ctx, axd, g)));

  // identity is neutral up to permutation equivalence
  DerivPtr alpha = mk_ldiv(ctx, f, g, mk_rmult(ctx, axd, g));
  CHECK(permeq_decide_bfs(ctx, cut(ctx, identity_derivation(ctx, alpha->j.lhs), alpha), alpha));
  CHECK(permeq_decide_bfs(ctx, cut(ctx, alpha, identity_derivation(ctx, alpha->j.rhs)), alpha));
}

TEST_CASE("permutation neighbors derive the same judgment") {
  Context ctx = free_instance();
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    DerivPtr d = random_derivation(rng, ctx, 6);
    for (const DerivPtr& nb : permeq_neighbors(ctx, d)) {
      CHECK(judgment_eq(nb->j, d->j));
      validate_derivation(ctx, nb);
    }
  }
}

TEST_CASE("the four generators as explicit neighbor instances") {
  Context ctx = free_instance();
  Arrow f = *ctx.C().parse_arrow("f"), g = *ctx.C().parse_arrow("g");
  Arrow h = *ctx.C().parse_arrow("h");
  DerivPtr axd = mk_ax(ctx, *ctx.D().parse_arrow("d"));

  // permgen1: (g_.a).h^ ~ g_.(a.h^) over the identity functor.
  Context idc{identity_functor(ctx.p->cod_cat), "all", "all"};
  DerivPtr zeta = mk_ax(idc, g);
  DerivPtr left = mk_rmult(idc, mk_lmult(idc, f, zeta), h);
  DerivPtr right = mk_lmult(idc, f, mk_rmult(idc, zeta, h));
  auto nbs = permeq_neighbors(idc, left);
  CHECK(std::any_of(nbs.begin(), nbs.end(),
                    [&](const DerivPtr& n) { return deriv_eq(n, right); }));
  auto back = permeq_neighbors(idc, right);
  CHECK(std::any_of(back.begin(), back.end(),
                    [&](const DerivPtr& n) { return deriv_eq(n, left); }));

  // permgen2 forward, and the reverse direction via divisor enumeration.
  DerivPtr over_fg = mk_rmult(ctx, axd, g);  // base f.g
  DerivPtr l2 = mk_rmult(ctx, mk_ldiv(ctx, f, g, over_fg), h);
  DerivPtr r2 = mk_ldiv(ctx, f, ctx.C().compose(g, h), mk_rmult(ctx, over_fg, h));
  auto nbs2 = permeq_neighbors(ctx, l2);
  CHECK(std::any_of(nbs2.begin(), nbs2.end(),
                    [&](const DerivPtr& n) { return deriv_eq(n, r2); }));
  auto back2 = permeq_neighbors(ctx, r2);
  CHECK(std::any_of(back2.begin(), back2.end(),
                    [&](const DerivPtr& n) { return deriv_eq(n, l2); }));
}

TEST_CASE("permutation equivalence is decidable by BFS") {
  Context ctx = free_instance();
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    DerivPtr d = random_derivation(rng, ctx, 5);
    CHECK(permeq_decide_bfs(ctx, d, d));
    DerivPtr e = random_permute(rng, ctx, d, 5);
    CHECK(permeq_decide_bfs(ctx, d, e));
  }
  // Distinct permutation classes of one judgment are told apart.
  for (int i = 0; i < 40; ++i) {
    DerivPtr d = random_derivation(rng, ctx, 4);
    auto proofs = all_plain_derivations(ctx, d->j.lhs, d->j.base, d->j.rhs);
    auto classes = permeq_classes(ctx, proofs);
    if (classes.size() >= 2) {
      CHECK_FALSE(permeq_decide_bfs(ctx, proofs[classes[0][0]], proofs[classes[1][0]]));
      return;
    }
  }
}

TEST_CASE("strictification collapses chunks and is invertible") {
  Context ctx = free_instance();
  Arrow f = *ctx.C().parse_arrow("f"), g = *ctx.C().parse_arrow("g");
  FormulaPtr atom = mk_atom(ctx, ObjId{0});
  FormulaPtr nested = mk_push(ctx, g, mk_push(ctx, f, atom));
  Strictification s = strictify(ctx, nested);
  CHECK(formula_eq(s.collapsed, mk_push(ctx, ctx.C().compose(f, g), atom)));
  CHECK(is_strictly_alternating(s.collapsed));
  CHECK(permeq_decide_bfs(ctx, cut(ctx, s.theta, s.theta_inv),
                          identity_derivation(ctx, nested)));
  CHECK(permeq_decide_bfs(ctx, cut(ctx, s.theta_inv, s.theta),
                          identity_derivation(ctx, s.collapsed)));

  Strictification satom = strictify(ctx, atom);
  CHECK(deriv_eq(satom.theta, identity_derivation(ctx, atom)));

  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    DerivPtr d = random_derivation(rng, ctx, 5);
    DerivPtr floored = strictify_derivation(ctx, d);
    CHECK(is_strictly_alternating(floored->j.lhs));
    CHECK(is_strictly_alternating(floored->j.rhs));
    CHECK(floored->j.base == d->j.base);
  }
}

TEST_CASE("pseudofunctoriality witnesses compose to identities") {
  Context ctx = chain_instance();
  Arrow f0 = *ctx.C().parse_arrow("f0"), f1 = *ctx.C().parse_arrow("f1");
  FormulaPtr atom = mk_atom(ctx, ObjId{0});
  FormulaPtr pp = mk_push(ctx, f1, mk_push(ctx, f0, atom));
  Strictification s = strictify(ctx, pp);
  CHECK(permeq_decide_bfs(ctx, cut(ctx, s.theta, s.theta_inv), identity_derivation(ctx, pp)));
  FormulaPtr q = mk_pull(ctx, f0, mk_pull(ctx, f1, mk_push(ctx, ctx.C().compose(f0, f1), atom)));
  Strictification sq = strictify(ctx, q);
  CHECK(permeq_decide_bfs(ctx, cut(ctx, sq.theta, sq.theta_inv), identity_derivation(ctx, q)));
  FormulaPtr idpush = mk_push(ctx, ctx.C().identity(ObjId{1}), mk_push(ctx, f0, atom));
  Strictification si = strictify(ctx, idpush);
  CHECK(formula_eq(si.collapsed, mk_push(ctx, f0, atom)));
  CHECK(permeq_decide_bfs(ctx, cut(ctx, si.theta, si.theta_inv),
                          identity_derivation(ctx, idpush)));
}

TEST_CASE("subformula property") {
  Context ctx = free_instance();
  Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    DerivPtr d = random_derivation(rng, ctx, 6);
    for (DerivPtr cur = d; cur; cur = cur->body) {
      CHECK(is_subformula(cur->j.lhs, d->j.lhs));
      CHECK(is_subformula(cur->j.rhs, d->j.rhs));
    }
  }
}

TEST_CASE("cut is associative up to permutation equivalence") {
  Context ctx = free_instance();
  Rng rng(41);
  for (int i = 0; i < 15; ++i) {
    DerivPtr a = random_derivation(rng, ctx, 4);
    DerivPtr b = random_extension(rng, ctx, a->j.rhs, 2);
    DerivPtr c = random_extension(rng, ctx, b->j.rhs, 2);
    CHECK(permeq_decide_bfs(ctx, cut(ctx, cut(ctx, a, b), c), cut(ctx, a, cut(ctx, b, c))));
  }
}

TEST_CASE("eta expansion") {
  Context ctx = free_instance();
  Rng rng(43);
  for (int i = 0; i < 15; ++i) {
    DerivPtr a = random_derivation(rng, ctx, 4);
    const Arrow& h = a->j.base;
    Arrow f = ctx.C().identity(h.dom);
    DerivPtr pushd = mk_ldiv(ctx, f, h, a);
    DerivPtr expanded = mk_ldiv(ctx, f, h, cut(ctx, opcart(ctx, f, a->j.lhs), pushd));
    CHECK(permeq_decide_bfs(ctx, pushd, expanded));
    DerivPtr pulld = mk_rdiv(ctx, a, h, ctx.C().identity(h.cod));
    DerivPtr pexpanded = mk_rdiv(ctx, cut(ctx, pulld, cart(ctx, ctx.C().identity(h.cod), a->j.rhs)),
                                 h, ctx.C().identity(h.cod));
    CHECK(permeq_decide_bfs(ctx, pulld, pexpanded));
  }
}
