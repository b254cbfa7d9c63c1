#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bifib/base.hpp"
#include "bifib/sexpr.hpp"

namespace bifib {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// The bifibrational formula tree Atom(X) | Push(f, S) | Pull(g, T),
// refining an object of C. Well-formedness: Atom(X) refines p(X),
// Push(f, S) needs ref(S) = dom(f), f in P, and refines cod(f);
// Pull(g, T) needs ref(T) = cod(g), g in N, and refines dom(g).
struct Formula {
  enum class Kind { Atom, Push, Pull };
  Kind kind;
  ObjId atom;       // D-object, for Atom
  Arrow arrow;      // for Push/Pull
  FormulaPtr body;  // for Push/Pull
  ObjId ref;        // cached refinement object in C
  size_t hash = 0;

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_push() const { return kind == Kind::Push; }
  bool is_pull() const { return kind == Kind::Pull; }
};

FormulaPtr mk_atom(const Context& ctx, ObjId x);
FormulaPtr mk_push(const Context& ctx, const Arrow& f, FormulaPtr s);
FormulaPtr mk_pull(const Context& ctx, const Arrow& g, FormulaPtr t);

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
size_t formula_hash(const FormulaPtr& a);
// Subformula relation a <= b.
bool is_subformula(const FormulaPtr& a, const FormulaPtr& b);
size_t connective_count(const FormulaPtr& s);
// The D-object at the head of the formula.
ObjId atom_of(const FormulaPtr& s);

// Maximal same-polarity run at the top of the formula, in diagrammatic
// composite order (for pushes this reverses the outside-in nesting order).
// Empty when the formula's head does not match `push`.
std::vector<Arrow> top_chunk(const FormulaPtr& s, bool push);
// The formula under the top chunk.
FormulaPtr chunk_body(const FormulaPtr& s);
// Rebuild Push_pi(n) / Pull_rho(p) from a chunk in composite order.
FormulaPtr wrap_push(const Context& ctx, const std::vector<Arrow>& pi, FormulaPtr n);
FormulaPtr wrap_pull(const Context& ctx, const std::vector<Arrow>& rho, FormulaPtr p);

// Composite of a sequence in diagrammatic order; identity at `at` if empty.
Arrow seq_composite(const Context& ctx, const std::vector<Arrow>& seq, ObjId at);

bool is_strictly_alternating(const FormulaPtr& s);
// Collapse every chunk to its composite arrow.
FormulaPtr collapse_formula(const Context& ctx, const FormulaPtr& s);

std::string formula_to_string(const Context& ctx, const FormulaPtr& s);
FormulaPtr parse_formula(const Context& ctx, const Sexpr& e);
FormulaPtr parse_formula(const Context& ctx, const std::string& text);

}  // namespace bifib
