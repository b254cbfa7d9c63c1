#include "bifib/derivation.hpp"

#include <cstdlib>
#include <deque>
#include <unordered_set>

namespace bifib {

bool judgment_eq(const Judgment& a, const Judgment& b) {
  return a.base == b.base && formula_eq(a.lhs, b.lhs) && formula_eq(a.rhs, b.rhs);
}

namespace {

size_t node_hash(Deriv::Kind k, const Arrow& a1, const Arrow& a2, const DerivPtr& body) {
  size_t h = hash_combine(size_t(k) * 0x9e37, ArrowHash()(a1));
  h = hash_combine(h, ArrowHash()(a2));
  if (body) h = hash_combine(h, body->hash);
  return h;
}

DerivPtr make_node(Deriv::Kind k, Arrow a1, Arrow a2, DerivPtr body, Judgment j) {
  auto d = std::make_shared<Deriv>();
  d->kind = k;
  d->a1 = std::move(a1);
  d->a2 = std::move(a2);
  d->hash = node_hash(k, d->a1, d->a2, body);
  d->body = std::move(body);
  d->j = std::move(j);
  return d;
}

}  // namespace

DerivPtr mk_ax(const Context& ctx, const Arrow& delta) {
  Arrow f = ctx.p->map(delta);
  Judgment j{mk_atom(ctx, delta.dom), f, mk_atom(ctx, delta.cod)};
  return make_node(Deriv::Kind::Ax, delta, Arrow{}, nullptr, std::move(j));
}

DerivPtr mk_ldiv(const Context& ctx, const Arrow& f, const Arrow& g, DerivPtr body) {
  if (body->j.base != ctx.C().compose(f, g))
    fail(ErrorKind::IllFormed, "ldiv: premise base is not f.g");
  Judgment j{mk_push(ctx, f, body->j.lhs), g, body->j.rhs};
  return make_node(Deriv::Kind::LDiv, f, g, std::move(body), std::move(j));
}

DerivPtr mk_rmult(const Context& ctx, DerivPtr body, const Arrow& f) {
  Judgment j{body->j.lhs, ctx.C().compose(body->j.base, f), mk_push(ctx, f, body->j.rhs)};
  return make_node(Deriv::Kind::RMult, f, Arrow{}, std::move(body), std::move(j));
}

DerivPtr mk_lmult(const Context& ctx, const Arrow& g, DerivPtr body) {
  Judgment j{mk_pull(ctx, g, body->j.lhs), ctx.C().compose(g, body->j.base), body->j.rhs};
  return make_node(Deriv::Kind::LMult, g, Arrow{}, std::move(body), std::move(j));
}

DerivPtr mk_rdiv(const Context& ctx, DerivPtr body, const Arrow& f, const Arrow& g) {
  if (body->j.base != ctx.C().compose(f, g))
    fail(ErrorKind::IllFormed, "rdiv: premise base is not f.g");
  Judgment j{body->j.lhs, f, mk_pull(ctx, g, body->j.rhs)};
  return make_node(Deriv::Kind::RDiv, f, g, std::move(body), std::move(j));
}

bool deriv_eq(const DerivPtr& a, const DerivPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind || a->a1 != b->a1 || a->a2 != b->a2)
    return false;
  if (!a->body) return !b->body;
  return b->body && deriv_eq(a->body, b->body);
}

size_t deriv_size(const DerivPtr& d) { return d->body ? 1 + deriv_size(d->body) : 1; }

const Judgment& judgment_of(const DerivPtr& d) { return d->j; }

void validate_derivation(const Context& ctx, const DerivPtr& d) {
  DerivPtr rebuilt;
  switch (d->kind) {
    case Deriv::Kind::Ax: rebuilt = mk_ax(ctx, d->a1); break;
    case Deriv::Kind::LDiv:
      validate_derivation(ctx, d->body);
      rebuilt = mk_ldiv(ctx, d->a1, d->a2, d->body);
      break;
    case Deriv::Kind::RMult:
      validate_derivation(ctx, d->body);
      rebuilt = mk_rmult(ctx, d->body, d->a1);
      break;
    case Deriv::Kind::LMult:
      validate_derivation(ctx, d->body);
      rebuilt = mk_lmult(ctx, d->a1, d->body);
      break;
    case Deriv::Kind::RDiv:
      validate_derivation(ctx, d->body);
      rebuilt = mk_rdiv(ctx, d->body, d->a1, d->a2);
      break;
  }
  if (!judgment_eq(rebuilt->j, d->j))
    fail(ErrorKind::IllFormed, "stored judgment disagrees with rules");
}

DerivPtr identity_derivation(const Context& ctx, const FormulaPtr& s) {
  switch (s->kind) {
    case Formula::Kind::Atom:
      return mk_ax(ctx, ctx.D().identity(s->atom));
    case Formula::Kind::Push: {
      DerivPtr inner = mk_rmult(ctx, identity_derivation(ctx, s->body), s->arrow);
      return mk_ldiv(ctx, s->arrow, ctx.C().identity(s->ref), inner);
    }
    case Formula::Kind::Pull: {
      DerivPtr inner = mk_lmult(ctx, s->arrow, identity_derivation(ctx, s->body));
      return mk_rdiv(ctx, inner, ctx.C().identity(s->ref), s->arrow);
    }
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

DerivPtr opcart(const Context& ctx, const Arrow& f, const FormulaPtr& s) {
  return mk_rmult(ctx, identity_derivation(ctx, s), f);
}

DerivPtr cart(const Context& ctx, const Arrow& g, const FormulaPtr& t) {
  return mk_lmult(ctx, g, identity_derivation(ctx, t));
}

DerivPtr cut(const Context& ctx, const DerivPtr& a, const DerivPtr& b) {
  if (!formula_eq(a->j.rhs, b->j.lhs))
    fail(ErrorKind::NonComposable, "cut: middle formulas disagree");
  // Commutative cases; when both sides commute, the left rule goes first.
  if (a->kind == Deriv::Kind::LMult)
    return mk_lmult(ctx, a->a1, cut(ctx, a->body, b));
  if (a->kind == Deriv::Kind::LDiv)
    return mk_ldiv(ctx, a->a1, ctx.C().compose(a->a2, b->j.base), cut(ctx, a->body, b));
  if (b->kind == Deriv::Kind::RMult)
    return mk_rmult(ctx, cut(ctx, a, b->body), b->a1);
  if (b->kind == Deriv::Kind::RDiv)
    return mk_rdiv(ctx, cut(ctx, a, b->body), ctx.C().compose(a->j.base, b->a1), b->a2);
  // Principal cases.
  if (a->kind == Deriv::Kind::Ax && b->kind == Deriv::Kind::Ax)
    return mk_ax(ctx, ctx.D().compose(a->a1, b->a1));
  if (a->kind == Deriv::Kind::RMult && b->kind == Deriv::Kind::LDiv)
    return cut(ctx, a->body, b->body);
  if (a->kind == Deriv::Kind::RDiv && b->kind == Deriv::Kind::LMult)
    return cut(ctx, a->body, b->body);
  fail(ErrorKind::IllFormed, "cut: no applicable case");
}

namespace {

// One-step permutations at the root position only.
std::vector<DerivPtr> root_neighbors(const Context& ctx, const DerivPtr& d) {
  const Backend& c = ctx.C();
  std::vector<DerivPtr> out;
  const DerivPtr& inner = d->body;
  switch (d->kind) {
    case Deriv::Kind::RMult: {
      const Arrow& h = d->a1;
      if (!inner) break;
      if (inner->kind == Deriv::Kind::LMult)  // (g_.a).h^ ~ g_.(a.h^)
        out.push_back(mk_lmult(ctx, inner->a1, mk_rmult(ctx, inner->body, h)));
      if (inner->kind == Deriv::Kind::LDiv)  // (f\_g a).h^ ~ f\_{gh}(a.h^)
        out.push_back(mk_ldiv(ctx, inner->a1, c.compose(inner->a2, h),
                              mk_rmult(ctx, inner->body, h)));
      break;
    }
    case Deriv::Kind::LMult: {
      const Arrow& g = d->a1;
      if (inner->kind == Deriv::Kind::RMult)  // g_.(a.h^) ~ (g_.a).h^
        out.push_back(mk_rmult(ctx, mk_lmult(ctx, g, inner->body), inner->a1));
      if (inner->kind == Deriv::Kind::RDiv)  // f_.(a/_g h) ~ (f_.a)/_{fg} h
        out.push_back(mk_rdiv(ctx, mk_lmult(ctx, g, inner->body),
                              c.compose(g, inner->a1), inner->a2));
      break;
    }
    case Deriv::Kind::LDiv: {
      const Arrow& f = d->a1;
      const Arrow& k = d->a2;
      if (inner->kind == Deriv::Kind::RMult) {
        // f\_k(a.h^) ~ (f\_l a).h^ for every l with k = l.h and f.l = base(a).
        const Arrow& h = inner->a1;
        for (const Arrow& l : c.right_divisors(k, h))
          if (c.compose(f, l) == inner->body->j.base)
            out.push_back(mk_rmult(ctx, mk_ldiv(ctx, f, l, inner->body), h));
      }
      if (inner->kind == Deriv::Kind::RDiv)  // f\_g(a/_{fg} h) ~ (f\_{gh} a)/_g h
        out.push_back(mk_rdiv(ctx, mk_ldiv(ctx, f, c.compose(k, inner->a2), inner->body),
                              k, inner->a2));
      break;
    }
    case Deriv::Kind::RDiv: {
      const Arrow& m = d->a1;
      const Arrow& h = d->a2;
      if (inner->kind == Deriv::Kind::LMult) {
        // (f_.a)/_m h ~ f_.(a/_g h) for every g with base(a) = g.h and f.g = m.
        const Arrow& f = inner->a1;
        for (const Arrow& g : c.right_divisors(inner->body->j.base, h))
          if (c.compose(f, g) == m)
            out.push_back(mk_lmult(ctx, f, mk_rdiv(ctx, inner->body, g, h)));
      }
      if (inner->kind == Deriv::Kind::LDiv)  // (f\_{gh} a)/_g h ~ f\_g(a/_{fg} h)
        out.push_back(mk_ldiv(ctx, inner->a1, m,
                              mk_rdiv(ctx, inner->body, c.compose(inner->a1, m), h)));
      break;
    }
    case Deriv::Kind::Ax: break;
  }
  return out;
}

DerivPtr replace_body(const Context& ctx, const DerivPtr& d, DerivPtr nb) {
  switch (d->kind) {
    case Deriv::Kind::LDiv: return mk_ldiv(ctx, d->a1, d->a2, std::move(nb));
    case Deriv::Kind::RMult: return mk_rmult(ctx, std::move(nb), d->a1);
    case Deriv::Kind::LMult: return mk_lmult(ctx, d->a1, std::move(nb));
    case Deriv::Kind::RDiv: return mk_rdiv(ctx, std::move(nb), d->a1, d->a2);
    case Deriv::Kind::Ax: break;
  }
  fail(ErrorKind::IllFormed, "replace_body on axiom");
}

}  // namespace

std::vector<DerivPtr> permeq_neighbors(const Context& ctx, const DerivPtr& d) {
  std::vector<DerivPtr> out = root_neighbors(ctx, d);
  if (d->body)
    for (const DerivPtr& nb : permeq_neighbors(ctx, d->body))
      out.push_back(replace_body(ctx, d, nb));
  return out;
}

size_t default_node_budget() {
  if (const char* env = std::getenv("BIFIB_BUDGET")) {
    long v = std::atol(env);
    if (v > 0) return size_t(v);
  }
  return 100000;
}

namespace {
struct DerivDeepHash {
  size_t operator()(const DerivPtr& d) const { return d->hash; }
};
struct DerivDeepEq {
  bool operator()(const DerivPtr& a, const DerivPtr& b) const { return deriv_eq(a, b); }
};
}  // namespace

bool permeq_decide_bfs(const Context& ctx, const DerivPtr& a, const DerivPtr& b,
                       size_t node_budget) {
  if (!judgment_eq(a->j, b->j)) return false;
  if (deriv_eq(a, b)) return true;
  std::unordered_set<DerivPtr, DerivDeepHash, DerivDeepEq> visited;
  std::deque<DerivPtr> queue;
  visited.insert(a);
  queue.push_back(a);
  while (!queue.empty()) {
    DerivPtr cur = queue.front();
    queue.pop_front();
    for (const DerivPtr& nb : permeq_neighbors(ctx, cur)) {
      if (deriv_eq(nb, b)) return true;
      if (visited.insert(nb).second) {
        if (visited.size() > node_budget)
          fail(ErrorKind::BudgetExceeded, "permutation class exceeded node budget");
        queue.push_back(nb);
      }
    }
  }
  return false;
}

DerivPtr ldiv_seq(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& g,
                  DerivPtr body) {
  DerivPtr cur = std::move(body);
  for (size_t i = 0; i < pi.size(); ++i) {
    Arrow rest = g;
    for (size_t j = pi.size(); j-- > i + 1;) rest = ctx.C().compose(pi[j], rest);
    cur = mk_ldiv(ctx, pi[i], rest, cur);
  }
  return cur;
}

DerivPtr rmult_seq(const Context& ctx, DerivPtr body, const std::vector<Arrow>& pi) {
  DerivPtr cur = std::move(body);
  for (const Arrow& f : pi) cur = mk_rmult(ctx, cur, f);
  return cur;
}

DerivPtr lmult_seq(const Context& ctx, const std::vector<Arrow>& rho, DerivPtr body) {
  DerivPtr cur = std::move(body);
  for (auto it = rho.rbegin(); it != rho.rend(); ++it) cur = mk_lmult(ctx, *it, cur);
  return cur;
}

DerivPtr rdiv_seq(const Context& ctx, DerivPtr body, const Arrow& f,
                  const std::vector<Arrow>& rho) {
  DerivPtr cur = std::move(body);
  for (size_t i = rho.size(); i-- > 0;) {
    Arrow prefix = f;
    for (size_t j = 0; j < i; ++j) prefix = ctx.C().compose(prefix, rho[j]);
    cur = mk_rdiv(ctx, cur, prefix, rho[i]);
  }
  return cur;
}

Strictification strictify(const Context& ctx, const FormulaPtr& s) {
  if (s->is_atom()) {
    DerivPtr id = identity_derivation(ctx, s);
    return {s, id, id};
  }
  bool push = s->is_push();
  std::vector<Arrow> chunk = top_chunk(s, push);
  Strictification innerres = strictify(ctx, chunk_body(s));
  Arrow c = seq_composite(ctx, chunk, chunk.front().dom);
  Strictification res;
  if (push) {
    res.collapsed = mk_push(ctx, c, innerres.collapsed);
    // theta: iterate divisions over the chunk around a single multiplication.
    res.theta = ldiv_seq(ctx, chunk, ctx.C().identity(c.cod),
                         mk_rmult(ctx, innerres.theta, c));
    // theta_inv: a single division around iterated multiplications.
    res.theta_inv = mk_ldiv(ctx, c, ctx.C().identity(c.cod),
                            rmult_seq(ctx, innerres.theta_inv, chunk));
  } else {
    res.collapsed = mk_pull(ctx, c, innerres.collapsed);
    res.theta = rdiv_seq(ctx, lmult_seq(ctx, chunk, innerres.theta),
                         ctx.C().identity(c.dom), {c});
    res.theta_inv = rdiv_seq(ctx, mk_lmult(ctx, c, innerres.theta_inv),
                             ctx.C().identity(c.dom), chunk);
  }
  return res;
}

DerivPtr strictify_derivation(const Context& ctx, const DerivPtr& a) {
  Strictification sl = strictify(ctx, a->j.lhs);
  Strictification sr = strictify(ctx, a->j.rhs);
  return cut(ctx, cut(ctx, sl.theta_inv, a), sr.theta);
}

std::string deriv_to_string(const Context& ctx, const DerivPtr& d) {
  switch (d->kind) {
    case Deriv::Kind::Ax:
      return "(ax " + ctx.D().arrow_name(d->a1) + ")";
    case Deriv::Kind::LDiv:
      return "(ldiv " + ctx.C().arrow_name(d->a1) + " " + ctx.C().arrow_name(d->a2) + " " +
             deriv_to_string(ctx, d->body) + ")";
    case Deriv::Kind::RMult:
      return "(rmult " + deriv_to_string(ctx, d->body) + " " + ctx.C().arrow_name(d->a1) + ")";
    case Deriv::Kind::LMult:
      return "(lmult " + ctx.C().arrow_name(d->a1) + " " + deriv_to_string(ctx, d->body) + ")";
    case Deriv::Kind::RDiv:
      return "(rdiv " + deriv_to_string(ctx, d->body) + " " + ctx.C().arrow_name(d->a1) + " " +
             ctx.C().arrow_name(d->a2) + ")";
  }
  return "";
}

DerivPtr parse_derivation(const Context& ctx, const Sexpr& e) {
  if (e.is_atom) fail(ErrorKind::Parse, "derivation must be a list: " + e.dump());
  const std::string& h = e.head();
  auto arrC = [&](const Sexpr& s) {
    auto a = ctx.C().parse_arrow(s.atom);
    if (!a) fail(ErrorKind::Parse, "cannot parse base arrow: " + s.atom);
    return *a;
  };
  if (h == "ax") {
    auto d = ctx.D().parse_arrow(e.at(1).atom);
    if (!d) fail(ErrorKind::Parse, "cannot parse domain arrow: " + e.at(1).atom);
    return mk_ax(ctx, *d);
  }
  if (h == "ldiv") return mk_ldiv(ctx, arrC(e.at(1)), arrC(e.at(2)), parse_derivation(ctx, e.at(3)));
  if (h == "rmult") return mk_rmult(ctx, parse_derivation(ctx, e.at(1)), arrC(e.at(2)));
  if (h == "lmult") return mk_lmult(ctx, arrC(e.at(1)), parse_derivation(ctx, e.at(2)));
  if (h == "rdiv") return mk_rdiv(ctx, parse_derivation(ctx, e.at(1)), arrC(e.at(2)), arrC(e.at(3)));
  fail(ErrorKind::Parse, "unknown derivation head: " + h);
}

DerivPtr parse_derivation(const Context& ctx, const std::string& text) {
  return parse_derivation(ctx, parse_sexpr(text));
}

}  // namespace bifib
