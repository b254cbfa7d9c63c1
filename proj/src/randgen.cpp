#include "bifib/randgen.hpp"

#include <algorithm>

namespace bifib {

RandomInstance random_instance(Rng& rng, size_t max_edges) {
  size_t nv = 1 + rng.upto(3);
  std::vector<std::string> verts;
  for (size_t i = 0; i < nv; ++i) verts.push_back("c" + std::to_string(i));
  std::vector<FreeCat::Edge> edges;
  size_t ne = 1 + rng.upto(max_edges);
  for (size_t i = 0; i < ne; ++i)
    edges.push_back(FreeCat::Edge{"e" + std::to_string(i), int(rng.upto(nv)), int(rng.upto(nv))});
  auto c_cat = std::make_shared<FreeCat>(verts, edges);

  size_t nd = 1 + rng.upto(2);
  std::vector<std::string> dverts;
  for (size_t i = 0; i < nd; ++i) dverts.push_back("x" + std::to_string(i));
  std::vector<ObjId> obj_map;
  for (size_t i = 0; i < nd; ++i) obj_map.push_back(ObjId{int(rng.upto(nv))});

  // Candidate D-edges with nonempty image words.
  std::vector<FreeCat::Edge> dedges;
  std::vector<Arrow> edge_map;
  size_t want = rng.upto(3);
  for (size_t attempt = 0; attempt < 8 && dedges.size() < want; ++attempt) {
    size_t src = rng.upto(nd);
    Arrow img = random_word_from(rng, *c_cat, obj_map[src], 2);
    if (img.data.empty()) continue;
    // Pick a D-target whose image matches the word's endpoint.
    std::vector<size_t> fits;
    for (size_t j = 0; j < nd; ++j)
      if (obj_map[j] == img.cod) fits.push_back(j);
    if (fits.empty()) continue;
    size_t dst = fits[rng.upto(fits.size())];
    dedges.push_back(FreeCat::Edge{"a" + std::to_string(dedges.size()), int(src), int(dst)});
    edge_map.push_back(img);
  }
  auto d_cat = std::make_shared<FreeCat>(dverts, dedges);

  auto f = std::make_shared<FunctorDef>();
  f->dom_cat = d_cat;
  f->cod_cat = c_cat;
  f->obj_map = obj_map;
  f->edge_map = edge_map;
  f->validate();
  RandomInstance inst;
  inst.c_cat = c_cat;
  inst.d_cat = d_cat;
  inst.ctx = Context{f, "all", "all"};
  return inst;
}

Arrow random_word_from(Rng& rng, const Backend& c, ObjId a, size_t max_len) {
  size_t len = rng.upto(max_len + 1);
  if (auto* fc = dynamic_cast<const FreeCat*>(&c)) {
    Arrow w = c.identity(a);
    for (size_t i = 0; i < len; ++i) {
      std::vector<int> outs;
      for (size_t e = 0; e < fc->edge_count(); ++e)
        if (fc->edge(e).src == w.cod.v) outs.push_back(int(e));
      if (outs.empty()) break;
      w = c.compose(w, fc->edge_arrow(outs[rng.upto(outs.size())]));
    }
    return w;
  }
  if (auto* mn = dynamic_cast<const MonoidNat*>(&c)) return mn->step(int(len));
  if (auto* po = dynamic_cast<const FinPoset*>(&c)) {
    std::vector<ObjId> above;
    for (ObjId z : po->objects())
      if (po->leq(a, z)) above.push_back(z);
    return po->arrow(a, above[rng.upto(above.size())]);
  }
  return c.identity(a);
}

Arrow random_word_into(Rng& rng, const Backend& c, ObjId b, size_t max_len) {
  size_t len = rng.upto(max_len + 1);
  if (auto* fc = dynamic_cast<const FreeCat*>(&c)) {
    Arrow w = c.identity(b);
    for (size_t i = 0; i < len; ++i) {
      std::vector<int> ins;
      for (size_t e = 0; e < fc->edge_count(); ++e)
        if (fc->edge(e).dst == w.dom.v) ins.push_back(int(e));
      if (ins.empty()) break;
      w = c.compose(fc->edge_arrow(ins[rng.upto(ins.size())]), w);
    }
    return w;
  }
  if (auto* mn = dynamic_cast<const MonoidNat*>(&c)) return mn->step(int(len));
  if (auto* po = dynamic_cast<const FinPoset*>(&c)) {
    std::vector<ObjId> below;
    for (ObjId z : po->objects())
      if (po->leq(z, b)) below.push_back(z);
    return po->arrow(below[rng.upto(below.size())], b);
  }
  return c.identity(b);
}

FormulaPtr random_formula(Rng& rng, const Context& ctx, size_t depth) {
  std::vector<ObjId> dobjs = ctx.D().objects();
  FormulaPtr cur = mk_atom(ctx, dobjs[rng.upto(dobjs.size())]);
  size_t n = rng.upto(depth + 1);
  for (size_t i = 0; i < n; ++i) {
    if (rng.flip()) {
      Arrow f = random_word_from(rng, ctx.C(), cur->ref, 2);
      cur = mk_push(ctx, f, cur);
    } else {
      Arrow g = random_word_into(rng, ctx.C(), cur->ref, 2);
      cur = mk_pull(ctx, g, cur);
    }
  }
  return cur;
}

namespace {

// A random factorization h = f.g; supports the word, additive, and posetal
// payload conventions.
std::pair<Arrow, Arrow> random_split(Rng& rng, const Context& ctx, const Arrow& h) {
  if (auto* fc = dynamic_cast<const FreeCat*>(&ctx.C())) {
    size_t cutpos = rng.upto(h.data.size() + 1);
    ObjId mid = cutpos == 0 ? h.dom : ObjId{fc->edge(h.data[cutpos - 1]).dst};
    Arrow f{h.dom, mid, {h.data.begin(), h.data.begin() + cutpos}};
    Arrow g{mid, h.cod, {h.data.begin() + cutpos, h.data.end()}};
    return {f, g};
  }
  if (auto* mn = dynamic_cast<const MonoidNat*>(&ctx.C())) {
    int j = int(rng.upto(size_t(h.data[0]) + 1));
    return {mn->step(j), mn->step(h.data[0] - j)};
  }
  if (auto* po = dynamic_cast<const FinPoset*>(&ctx.C())) {
    std::vector<ObjId> mids;
    for (ObjId z : po->objects())
      if (po->leq(h.dom, z) && po->leq(z, h.cod)) mids.push_back(z);
    ObjId mid = mids[rng.upto(mids.size())];
    return {po->arrow(h.dom, mid), po->arrow(mid, h.cod)};
  }
  return {ctx.C().identity(h.dom), h};
}

DerivPtr random_axiom(Rng& rng, const Context& ctx) {
  auto* fc = dynamic_cast<const FreeCat*>(&ctx.D());
  std::vector<ObjId> dobjs = ctx.D().objects();
  ObjId x = dobjs[rng.upto(dobjs.size())];
  if (fc && fc->edge_count() > 0) {
    Arrow w = random_word_from(rng, ctx.D(), x, 2);
    return mk_ax(ctx, w);
  }
  return mk_ax(ctx, ctx.D().identity(x));
}
}  // namespace

DerivPtr random_wraps(Rng& rng, const Context& ctx, DerivPtr start, size_t wraps) {
  DerivPtr d = std::move(start);
  for (size_t i = 0; i < wraps; ++i) {
    switch (rng.upto(4)) {
      case 0: {  // right multiplication
        Arrow f = random_word_from(rng, ctx.C(), d->j.rhs->ref, 2);
        d = mk_rmult(ctx, d, f);
        break;
      }
      case 1: {  // left multiplication
        Arrow g = random_word_into(rng, ctx.C(), d->j.lhs->ref, 2);
        d = mk_lmult(ctx, g, d);
        break;
      }
      case 2: {  // left division at a random split of the base
        auto [f, g] = random_split(rng, ctx, d->j.base);
        d = mk_ldiv(ctx, f, g, d);
        break;
      }
      default: {  // right division at a random split
        auto [f, g] = random_split(rng, ctx, d->j.base);
        d = mk_rdiv(ctx, d, f, g);
        break;
      }
    }
  }
  return d;
}

DerivPtr random_derivation(Rng& rng, const Context& ctx, size_t wraps) {
  return random_wraps(rng, ctx, random_axiom(rng, ctx), rng.upto(wraps + 1));
}

DerivPtr random_extension(Rng& rng, const Context& ctx, const FormulaPtr& s, size_t steps) {
  DerivPtr d = identity_derivation(ctx, s);
  for (size_t i = 0; i < steps; ++i) {
    switch (rng.upto(3)) {
      case 0: {
        Arrow f = random_word_from(rng, ctx.C(), d->j.rhs->ref, 2);
        d = mk_rmult(ctx, d, f);
        break;
      }
      case 1: {
        auto [f, g] = random_split(rng, ctx, d->j.base);
        d = mk_rdiv(ctx, d, f, g);
        break;
      }
      default: {
        if (d->j.rhs->is_pull()) {
          d = cut(ctx, d, cart(ctx, d->j.rhs->arrow, d->j.rhs->body));
        } else {
          Arrow f = random_word_from(rng, ctx.C(), d->j.rhs->ref, 2);
          d = mk_rmult(ctx, d, f);
        }
        break;
      }
    }
  }
  return random_permute(rng, ctx, d, 3);
}

DerivPtr random_permute(Rng& rng, const Context& ctx, DerivPtr d, size_t steps) {
  for (size_t i = 0; i < steps; ++i) {
    std::vector<DerivPtr> nbs = permeq_neighbors(ctx, d);
    if (nbs.empty()) break;
    d = nbs[rng.upto(nbs.size())];
  }
  return d;
}

}  // namespace bifib
