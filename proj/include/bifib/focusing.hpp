#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bifib/derivation.hpp"

namespace bifib {

// ------------------------------------------------------- weakly focused

struct WeakDeriv;
using WeakPtr = std::shared_ptr<const WeakDeriv>;

// Big-step calculus on formulas in alternating syntax. Every sequence is
// the full same-polarity chunk of the corresponding formula.
struct WeakDeriv {
  enum class Kind { Ax, LDiv, RMult, LMult, RDiv };
  Kind kind;
  Arrow delta_or_f;        // Ax: delta; LDiv/RDiv: the conclusion base f resp. g
  std::vector<Arrow> seq;  // pi / tau / sigma / rho, diagrammatic order
  WeakPtr body;
  Judgment j;
  size_t hash = 0;
};

WeakPtr mk_w_ax(const Context& ctx, const Arrow& delta);
WeakPtr mk_w_ldiv(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& g, WeakPtr body);
WeakPtr mk_w_rmult(const Context& ctx, WeakPtr body, const std::vector<Arrow>& tau);
WeakPtr mk_w_lmult(const Context& ctx, const std::vector<Arrow>& sigma, WeakPtr body);
WeakPtr mk_w_rdiv(const Context& ctx, WeakPtr body, const Arrow& f, const std::vector<Arrow>& rho);

bool weak_eq(const WeakPtr& a, const WeakPtr& b);

// The two interpretations of a weakly focused derivation: iterated
// small steps, and single steps on collapsed formulas.
DerivPtr weak_ceil(const Context& ctx, const WeakPtr& w);
DerivPtr weak_floor(const Context& ctx, const WeakPtr& w);

// The unique weakly focused derivation alpha_w with floor(alpha_w) = d,
// relative to the alternating syntax of the given endpoint formulas
// (collapse(S) and collapse(T) must be the endpoints of d). Defaults to
// reading d's own endpoints as the alternating syntax.
WeakPtr weak_preimage(const Context& ctx, const DerivPtr& d, const FormulaPtr& s,
                      const FormulaPtr& t);
WeakPtr weak_preimage(const Context& ctx, const DerivPtr& d);

// ---------------------------------------------------- strongly multifocused

struct MDeriv;
using MPtr = std::shared_ptr<const MDeriv>;

// Terms of the strongly multifocused calculus. Divisions apply only at the
// matching non-neutral judgments, focus rules only at neutral judgments.
// Empty inversion sequences are never represented as nodes; bipole
// classification supplies them as distinguished empty sequences.
struct MDeriv {
  enum class Kind { Ax, LDiv, BiDiv, RDiv, LMult, BiMult, RMult };
  Kind kind;
  Arrow delta_or_f;  // Ax: delta; LDiv/BiDiv/RDiv: the conclusion base
  std::vector<Arrow> pi, rho;  // pi/sigma and rho/tau per kind
  MPtr body;
  Judgment j;
  size_t hash = 0;
};

MPtr mk_m_ax(const Context& ctx, const Arrow& delta);
MPtr mk_m_ldiv(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& f, MPtr body);
MPtr mk_m_bidiv(const Context& ctx, const std::vector<Arrow>& pi, const Arrow& f, MPtr body,
                const std::vector<Arrow>& rho);
MPtr mk_m_rdiv(const Context& ctx, MPtr body, const Arrow& f, const std::vector<Arrow>& rho);
MPtr mk_m_lmult(const Context& ctx, const std::vector<Arrow>& sigma, MPtr body);
MPtr mk_m_bimult(const Context& ctx, const std::vector<Arrow>& sigma, MPtr body,
                 const std::vector<Arrow>& tau);
MPtr mk_m_rmult(const Context& ctx, MPtr body, const std::vector<Arrow>& tau);

bool multi_eq(const MPtr& a, const MPtr& b);
std::string multi_to_string(const Context& ctx, const MPtr& m);
MPtr parse_multi(const Context& ctx, const Sexpr& e);

// Strengthening: the uniquely determined strongly mono-focused proof of a
// weak derivation, performing bi-inversion eagerly.
MPtr strengthen(const Context& ctx, const WeakPtr& w);

// Sequentialization. foc expands every bi-focus both ways (2^k results),
// inv linearizes bi-inversions of a mono-focused proof into the two
// orderings, and `sequentializations` composes the two.
std::vector<MPtr> foc_sequentialize(const Context& ctx, const MPtr& m);
std::vector<WeakPtr> inv_sequentialize(const Context& ctx, const MPtr& mono);
std::vector<WeakPtr> sequentializations(const Context& ctx, const MPtr& m);
// A fixed representative weak sequentialization.
WeakPtr weak_of_multi(const Context& ctx, const MPtr& m);
// ceil of weak_of_multi: the plain derivation reading.
DerivPtr plain_of_multi(const Context& ctx, const MPtr& m);

// ------------------------------------------------------ bipole structure

struct Bipole {
  enum class Cls { L, R, LR } cls;
  std::vector<Arrow> sigma, tau;  // focus sequences (sigma: L/LR, tau: R/LR)
  std::vector<Arrow> pi, rho;     // inversion sequences, possibly empty
  Arrow mid;                      // intermediate base arrow of the bipole
};

struct BipoleChain {
  bool has_root_inv = false;
  std::vector<Arrow> root_pi, root_rho;
  Arrow root_mid;
  std::vector<Bipole> bips;  // position 0 nearest the root
  Arrow axiom;
};

BipoleChain parse_chain(const Context& ctx, const MPtr& m);
MPtr rebuild_chain(const Context& ctx, const BipoleChain& chain);

// Sum over bipoles of position-from-root times 1 (L/R) or 2 (LR).
size_t weight(const Context& ctx, const MPtr& m);

enum class RewriteRule { SeqRL, SeqLR, ParRL, ParLR, GraL, GraR };

// One rewrite at bipole position `pos` (counted from the root), or nullopt
// when the redex pattern does not match. Throws FPViolation when a par or
// gra rule finds two distinct middle arrows under a declared-FP backend.
std::optional<MPtr> rewrite_step(const Context& ctx, const MPtr& m, RewriteRule rule,
                                 size_t pos);

bool is_maximal(const Context& ctx, const MPtr& m);

struct NormalForm {
  MPtr term;
  size_t steps;
};
// Unique par+gra normal form under the FP condition. strategy 0 scans
// bipoles root-up applying gra before par; strategy 1 scans top-down
// applying par before gra.
NormalForm normalize(const Context& ctx, const MPtr& m, int strategy = 0);

// ------------------------------------------------------- maximal search

struct SearchStats {
  size_t nodes = 0;
  size_t division_queries = 0;
};

// Enumerates, in canonical order and without duplicates, the maximally
// multifocused proofs of S |-_f T from the unlocked state. Requires the
// declared FP property for the context's classes unless require_fp=false.
std::vector<MPtr> max_search(const Context& ctx, const FormulaPtr& s, const Arrow& f,
                             const FormulaPtr& t, bool require_fp = true,
                             SearchStats* stats = nullptr);

// Existence-only variant with memoization shared across queries.
struct EntailmentCache;
std::shared_ptr<EntailmentCache> make_entailment_cache();
bool exists_maximal_proof(const Context& ctx, const FormulaPtr& s, const Arrow& f,
                          const FormulaPtr& t, EntailmentCache* cache);

// --------------------------------------------------- direct multifocused cut

// Cut directly on strongly multifocused derivations (case analysis with
// the opcart/cart composition helpers); agrees with
// strengthen(cut(seq(a), seq(b))) up to sequentialization equivalence.
MPtr mf_cut(const Context& ctx, const MPtr& a, const MPtr& b);

// The full pipeline strictify -> weak_preimage -> strengthen -> normalize.
MPtr canonical_form(const Context& ctx, const DerivPtr& d);

}  // namespace bifib
