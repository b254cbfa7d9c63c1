#pragma once

#include <string>
#include <vector>

#include "bifib/derivation.hpp"

namespace bifib {

// A generating double cell of the zigzag double category. The stored pair
// (a, b) reads per kind as:
//   PushL(f, g):  top f.g, bottom g, left f downward, right identity
//   PushR(f', f): top f', bottom f'.f, left identity, right f downward
//   PullL(g, g'): top g', bottom g.g', left g upward, right identity
//   PullR(f, g):  top f.g, bottom f, left identity, right g upward
struct GenCell {
  enum class Kind { PushL, PushR, PullL, PullR };
  Kind kind;
  Arrow a, b;

  friend bool operator==(const GenCell& x, const GenCell& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
  }
};

Arrow cell_top(const Context& ctx, const GenCell& c);
Arrow cell_bottom(const Context& ctx, const GenCell& c);

// A vertical list of generator cells, top (axiom side) first, with the top
// base arrow recorded so empty stacks still carry their boundary.
struct Stack {
  Arrow top;
  std::vector<GenCell> cells;

  friend bool operator==(const Stack& x, const Stack& y) {
    return x.top == y.top && x.cells == y.cells;
  }
};

Arrow stack_bottom(const Context& ctx, const Stack& s);
void validate_stack(const Context& ctx, const Stack& s);

// Left/right boundary zigzags, as formulas over the identity functor on C
// (empty zigzags are the bare object, not an identity step).
FormulaPtr stack_left_boundary(const Context& idc, const Stack& s);
FormulaPtr stack_right_boundary(const Context& idc, const Stack& s);

// The unique decomposition d = <delta> * c_1 * ... * c_n.
std::pair<Arrow, Stack> decompose(const Context& ctx, const DerivPtr& d);
DerivPtr recompose(const Context& ctx, const Arrow& delta, const Stack& s);

// Substitution action of a zigzag proof on a derivation; the zigzag proof
// lives over the identity functor of C and its axiom arrow must equal the
// base of `a`.
FormulaPtr action_formula(const Context& ctx, const FormulaPtr& s, const FormulaPtr& z);
DerivPtr action(const Context& ctx, const DerivPtr& a, const DerivPtr& z);

// Vertical composition: s1 on top of s2.
Stack vcompose(const Context& ctx, const Stack& s1, const Stack& s2);
// Reverses the cell list and reflects each cell (PushL <-> PullL,
// PushR <-> PullR); an involution that swaps the two base boundaries.
Stack dagger(const Context& ctx, const Stack& s);

std::string render_text(const Context& ctx, const Arrow& delta, const Stack& s);
std::string render_svg(const Context& ctx, const Arrow& delta, const Stack& s);

}  // namespace bifib
