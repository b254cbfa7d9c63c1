#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bifib/focusing.hpp"

namespace bifib {

struct HomsetResult {
  std::vector<MPtr> proofs;  // canonical representatives, duplicate-free
  size_t count = 0;
  SearchStats stats;
  bool via_max_search = true;  // false: bounded BFS fallback on non-FP backends
};

// All arrows of Bifib(p)_f(S, T). Uses maximal multifocused search on
// declared-FP backends and falls back to exhaustive enumeration of plain
// derivations quotiented by permutation equivalence otherwise.
HomsetResult homset(const Context& ctx, const FormulaPtr& s, const Arrow& f,
                    const FormulaPtr& t, size_t budget = 0);

// Every plain derivation of S |-_f T (each rule consumes one connective,
// so the enumeration terminates); `budget` bounds the node count.
std::vector<DerivPtr> all_plain_derivations(const Context& ctx, const FormulaPtr& s,
                                            const Arrow& f, const FormulaPtr& t,
                                            size_t budget = 0);
// Partition a complete list of proofs of one judgment into permutation
// classes (connected components of the one-step permutation graph).
std::vector<std::vector<size_t>> permeq_classes(const Context& ctx,
                                                const std::vector<DerivPtr>& proofs);

enum class DecideMode { NF, BFS };

struct EquivClassToken {
  MPtr canonical;
  DecideMode mode;
};

// Decides alpha ~ beta: normal-form comparison on FP backends, BFS over the
// permutation class on locally finite ones.
bool decide_equal(const Context& ctx, const DerivPtr& a, const DerivPtr& b);
DecideMode decide_mode(const Context& ctx);
EquivClassToken equiv_token(const Context& ctx, const DerivPtr& d);
// Tokens are equal exactly when they denote the same arrow.
bool tokens_equal(const Context& ctx, const EquivClassToken& a, const EquivClassToken& b);

// A witnessing pair (S1 |- S2, S2 |- S1) with both cuts equal to
// identities, or nullopt.
std::optional<std::pair<DerivPtr, DerivPtr>> logical_equiv(const Context& ctx,
                                                           const FormulaPtr& s1,
                                                           const FormulaPtr& s2);

struct FiberPoset {
  std::vector<FormulaPtr> elements;   // canonical strictly alternating representatives
  std::vector<FormulaPtr> witnesses;  // a generator-built preimage per element
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;
  std::vector<std::pair<size_t, size_t>> covers;  // Hasse: transitive reduction

  size_t size() const { return elements.size(); }
  size_t interval_count() const;
};

void compute_covers(FiberPoset& p);

struct PosetAnalysis {
  bool is_lattice;
  size_t interval_count;
  std::optional<std::pair<size_t, size_t>> failing_pair;
};
PosetAnalysis poset_analyze(const FiberPoset& p);

// Quotient by a labeling, with the induced (transitively closed) order.
FiberPoset quotient_poset(const FiberPoset& p,
                          const std::function<std::string(size_t)>& label_of);

std::string poset_to_dot(const FiberPoset& p);
std::string poset_to_csv(const FiberPoset& p);
std::string poset_to_json(const FiberPoset& p);

}  // namespace bifib
