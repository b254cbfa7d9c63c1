#include "bifib/formula.hpp"

#include <algorithm>

namespace bifib {

namespace {
size_t mix(size_t a, size_t b) { return hash_combine(a, b); }
}  // namespace

FormulaPtr mk_atom(const Context& ctx, ObjId x) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Atom;
  f->atom = x;
  f->ref = ctx.p->obj(x);
  f->hash = mix(0x11, std::hash<int>()(x.v));
  return f;
}

FormulaPtr mk_push(const Context& ctx, const Arrow& a, FormulaPtr s) {
  if (s->ref != a.dom)
    fail(ErrorKind::IllFormed, "push: body refines " + ctx.C().object_name(s->ref) +
                                   " but arrow starts at " + ctx.C().object_name(a.dom));
  if (!ctx.in_P(a))
    fail(ErrorKind::IllFormed, "push arrow not in class " + ctx.clsP + ": " +
                                   ctx.C().arrow_name(a));
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Push;
  f->arrow = a;
  f->body = std::move(s);
  f->ref = a.cod;
  f->hash = mix(mix(0x22, ArrowHash()(a)), f->body->hash);
  return f;
}

FormulaPtr mk_pull(const Context& ctx, const Arrow& a, FormulaPtr t) {
  if (t->ref != a.cod)
    fail(ErrorKind::IllFormed, "pull: body refines " + ctx.C().object_name(t->ref) +
                                   " but arrow ends at " + ctx.C().object_name(a.cod));
  if (!ctx.in_N(a))
    fail(ErrorKind::IllFormed, "pull arrow not in class " + ctx.clsN + ": " +
                                   ctx.C().arrow_name(a));
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Pull;
  f->arrow = a;
  f->body = std::move(t);
  f->ref = a.dom;
  f->hash = mix(mix(0x33, ArrowHash()(a)), f->body->hash);
  return f;
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash || a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Atom: return a->atom == b->atom;
    default: return a->arrow == b->arrow && formula_eq(a->body, b->body);
  }
}

size_t formula_hash(const FormulaPtr& a) { return a->hash; }

bool is_subformula(const FormulaPtr& a, const FormulaPtr& b) {
  if (formula_eq(a, b)) return true;
  if (b->is_atom()) return false;
  return is_subformula(a, b->body);
}

size_t connective_count(const FormulaPtr& s) {
  size_t n = 0;
  for (FormulaPtr cur = s; !cur->is_atom(); cur = cur->body) ++n;
  return n;
}

ObjId atom_of(const FormulaPtr& s) {
  FormulaPtr cur = s;
  while (!cur->is_atom()) cur = cur->body;
  return cur->atom;
}

std::vector<Arrow> top_chunk(const FormulaPtr& s, bool push) {
  std::vector<Arrow> out;
  FormulaPtr cur = s;
  while ((push && cur->is_push()) || (!push && cur->is_pull())) {
    out.push_back(cur->arrow);
    cur = cur->body;
  }
  // Pushes nest with the last composition factor outermost.
  if (push) std::reverse(out.begin(), out.end());
  return out;
}

FormulaPtr chunk_body(const FormulaPtr& s) {
  if (s->is_atom()) return s;
  bool push = s->is_push();
  FormulaPtr cur = s;
  while ((push && cur->is_push()) || (!push && cur->is_pull())) cur = cur->body;
  return cur;
}

FormulaPtr wrap_push(const Context& ctx, const std::vector<Arrow>& pi, FormulaPtr n) {
  FormulaPtr cur = std::move(n);
  for (const Arrow& f : pi) cur = mk_push(ctx, f, cur);
  return cur;
}

FormulaPtr wrap_pull(const Context& ctx, const std::vector<Arrow>& rho, FormulaPtr p) {
  FormulaPtr cur = std::move(p);
  for (auto it = rho.rbegin(); it != rho.rend(); ++it) cur = mk_pull(ctx, *it, cur);
  return cur;
}

Arrow seq_composite(const Context& ctx, const std::vector<Arrow>& seq, ObjId at) {
  Arrow acc = ctx.C().identity(at);
  for (const Arrow& a : seq) acc = ctx.C().compose(acc, a);
  return acc;
}

bool is_strictly_alternating(const FormulaPtr& s) {
  for (FormulaPtr cur = s; !cur->is_atom(); cur = cur->body)
    if (cur->kind == cur->body->kind) return false;
  return true;
}

FormulaPtr collapse_formula(const Context& ctx, const FormulaPtr& s) {
  if (s->is_atom()) return s;
  bool push = s->is_push();
  std::vector<Arrow> chunk = top_chunk(s, push);
  FormulaPtr rest = collapse_formula(ctx, chunk_body(s));
  if (push) {
    Arrow c = seq_composite(ctx, chunk, chunk.front().dom);
    return mk_push(ctx, c, rest);
  }
  Arrow c = seq_composite(ctx, chunk, chunk.front().dom);
  return mk_pull(ctx, c, rest);
}

std::string formula_to_string(const Context& ctx, const FormulaPtr& s) {
  switch (s->kind) {
    case Formula::Kind::Atom:
      return "(atom " + ctx.D().object_name(s->atom) + ")";
    case Formula::Kind::Push:
      return "(push " + ctx.C().arrow_name(s->arrow) + " " + formula_to_string(ctx, s->body) + ")";
    case Formula::Kind::Pull:
      return "(pull " + ctx.C().arrow_name(s->arrow) + " " + formula_to_string(ctx, s->body) + ")";
  }
  return "";
}

FormulaPtr parse_formula(const Context& ctx, const Sexpr& e) {
  if (e.is_atom) fail(ErrorKind::Parse, "formula must be a list: " + e.dump());
  const std::string& h = e.head();
  if (h == "atom") {
    if (e.size() != 2) fail(ErrorKind::Parse, "(atom X) expects one argument");
    auto x = ctx.D().object_by_name(e.at(1).atom);
    if (!x) fail(ErrorKind::Parse, "unknown atom object: " + e.at(1).atom);
    return mk_atom(ctx, *x);
  }
  if (h == "push" || h == "pull") {
    if (e.size() != 3) fail(ErrorKind::Parse, "(" + h + " f S) expects two arguments");
    auto a = ctx.C().parse_arrow(e.at(1).atom);
    if (!a) fail(ErrorKind::Parse, "cannot parse arrow: " + e.at(1).atom);
    FormulaPtr body = parse_formula(ctx, e.at(2));
    return h == "push" ? mk_push(ctx, *a, body) : mk_pull(ctx, *a, body);
  }
  fail(ErrorKind::Parse, "unknown formula head: " + h);
}

FormulaPtr parse_formula(const Context& ctx, const std::string& text) {
  return parse_formula(ctx, parse_sexpr(text));
}

}  // namespace bifib
