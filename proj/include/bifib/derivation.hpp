#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bifib/formula.hpp"

namespace bifib {

struct Deriv;
using DerivPtr = std::shared_ptr<const Deriv>;

struct Judgment {
  FormulaPtr lhs;
  Arrow base;
  FormulaPtr rhs;
};

bool judgment_eq(const Judgment& a, const Judgment& b);

// Proof terms of the sequent calculus:
//   Ax(delta)            <delta>       : X |-_{p(delta)} Y
//   LDiv(f, g, a)        f \_g a       : push_f S |-_g T      (a over f.g)
//   RMult(a, f)          a . f^        : S |-_{h.f} push_f T  (a over h)
//   LMult(g, a)          g_ . a        : pull_g S |-_{g.h} T  (a over h)
//   RDiv(a, f, g)        a /_f g       : S |-_f pull_g T      (a over f.g)
struct Deriv {
  enum class Kind { Ax, LDiv, RMult, LMult, RDiv };
  Kind kind;
  Arrow a1, a2;  // Ax: a1 = delta; LDiv: f, g; RMult: f; LMult: g; RDiv: f, g
  DerivPtr body;
  Judgment j;
  size_t hash = 0;
};

DerivPtr mk_ax(const Context& ctx, const Arrow& delta);
DerivPtr mk_ldiv(const Context& ctx, const Arrow& f, const Arrow& g, DerivPtr body);
DerivPtr mk_rmult(const Context& ctx, DerivPtr body, const Arrow& f);
DerivPtr mk_lmult(const Context& ctx, const Arrow& g, DerivPtr body);
DerivPtr mk_rdiv(const Context& ctx, DerivPtr body, const Arrow& f, const Arrow& g);

bool deriv_eq(const DerivPtr& a, const DerivPtr& b);
size_t deriv_size(const DerivPtr& d);

// The unique judgment a valid term derives; the checked constructors
// compute it eagerly, so this is an accessor plus a full re-validation
// entry point for terms built from parsed input.
const Judgment& judgment_of(const DerivPtr& d);
void validate_derivation(const Context& ctx, const DerivPtr& d);

// Identity proof of S |-_{id} S, by induction on S.
DerivPtr identity_derivation(const Context& ctx, const FormulaPtr& s);
// opcart f S : S |-_f push_f S   /   cart g T : pull_g T |-_g T.
DerivPtr opcart(const Context& ctx, const Arrow& f, const FormulaPtr& s);
DerivPtr cart(const Context& ctx, const Arrow& g, const FormulaPtr& t);

// Admissible cut. When both a commutative-left and a commutative-right
// case apply, the left derivation's rule is commuted first.
DerivPtr cut(const Context& ctx, const DerivPtr& a, const DerivPtr& b);

// All one-step permutations of d (the four generating equations, both
// directions, at every subterm position).
std::vector<DerivPtr> permeq_neighbors(const Context& ctx, const DerivPtr& d);

// BFS decision of permutation equivalence; throws BudgetExceeded when the
// class is not exhausted within the budget and b was not found.
bool permeq_decide_bfs(const Context& ctx, const DerivPtr& a, const DerivPtr& b,
                       size_t node_budget = 100000);

size_t default_node_budget();

struct Strictification {
  FormulaPtr collapsed;
  DerivPtr theta;      // S |-_{id} |S|
  DerivPtr theta_inv;  // |S| |-_{id} S
};
Strictification strictify(const Context& ctx, const FormulaPtr& s);
// theta_S^{-1} . a . theta_T, a derivation on strictly alternating formulas.
DerivPtr strictify_derivation(const Context& ctx, const DerivPtr& a);

// Iterated big-step helpers (sequences in diagrammatic composite order).
DerivPtr ldiv_seq(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& g,
                  DerivPtr body);
DerivPtr rmult_seq(const Context& ctx, DerivPtr body, const std::vector<Arrow>& pi);
DerivPtr lmult_seq(const Context& ctx, const std::vector<Arrow>& rho, DerivPtr body);
DerivPtr rdiv_seq(const Context& ctx, DerivPtr body, const Arrow& f,
                  const std::vector<Arrow>& rho);

std::string deriv_to_string(const Context& ctx, const DerivPtr& d);
DerivPtr parse_derivation(const Context& ctx, const Sexpr& e);
DerivPtr parse_derivation(const Context& ctx, const std::string& text);

}  // namespace bifib
