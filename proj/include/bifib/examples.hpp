#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bifib/enumeration.hpp"

namespace bifib {

// --------------------------------------------------------------- seeds

struct Seed {
  Context ctx;
  std::string name;
};

// p2 | pomega(k) | bnat | ambisimplex(k)
Seed make_seed(const std::string& name);

// The fiber-0 ordinal formula (pull f push f)^n over p2, and its fiber-1
// companion push f (pull f push f)^n.
FormulaPtr p2_ordinal(const Context& ctx, int n);
FormulaPtr p2_ordinal_primed(const Context& ctx, int n);

// ------------------------------------------------------- cleaved targets

// Targets provide object/morphism types plus the cleavage operations; the
// division operations are total functions returning an optional morphism.
// See interpret() below for the required surface.

struct OrdinalTarget {
  struct Obj {
    int lvl;   // 0: plain ordinal, 1: pointed ordinal
    int size;  // underlying cardinality (including the point at level 1)
    bool operator==(const Obj& o) const { return lvl == o.lvl && size == o.size; }
  };
  struct Mor {
    Obj src, dst;
    std::vector<int> map;  // weakly increasing images
    bool operator==(const Mor& o) const {
      return src == o.src && dst == o.dst && map == o.map;
    }
  };
  const Context& ctx;

  Obj obj_of_atom(ObjId) const { return {0, 0}; }
  Mor mor_of_axiom(const Arrow&) const { return {{0, 0}, {0, 0}, {}}; }
  Obj push_obj(const Arrow& f, Obj o) const;
  Obj pull_obj(const Arrow& g, Obj o) const;
  Mor opcart(const Arrow& f, const Obj& o) const;
  Mor cart(const Arrow& g, const Obj& o) const;
  Mor compose(const Mor& a, const Mor& b) const;
  std::optional<Mor> ldiv(const Arrow& f, const Arrow& g, const Mor& a) const;
  std::optional<Mor> rdiv(const Mor& a, const Arrow& f, const Arrow& g) const;
};

// Rooted plane tree in level/parent form. Level 0 has the single root;
// parent maps are weakly increasing (planarity).
struct PlaneTree {
  std::vector<std::vector<int>> par;  // par[h][i]: parent at level h of vertex i at level h+1

  int height() const { return int(par.size()); }
  int level_size(int h) const {
    if (h == 0) return 1;
    return h <= height() ? int(par[h - 1].size()) : 0;
  }
  int vertex_count() const;
  bool operator==(const PlaneTree& o) const { return par == o.par; }
};

// Tree with its mark at height `lvl` on the leftmost branch (always the
// index-0 vertex of that level).
struct MarkedTree {
  int lvl = 0;
  PlaneTree t;
  bool operator==(const MarkedTree& o) const { return lvl == o.lvl && t == o.t; }
};

// Natural family of monotone maps per level preserving the mark.
struct TreeMor {
  MarkedTree src, dst;
  std::vector<std::vector<int>> maps;  // maps[h]: src level h -> dst level h
  bool operator==(const TreeMor& o) const {
    return src == o.src && dst == o.dst && maps == o.maps;
  }
  bool operator<(const TreeMor& o) const { return maps < o.maps; }
};

bool tree_mor_valid(const TreeMor& m);

struct MarkedTreeTarget {
  using Obj = MarkedTree;
  using Mor = TreeMor;
  const Context& ctx;

  Obj obj_of_atom(ObjId) const { return MarkedTree{}; }
  Mor mor_of_axiom(const Arrow&) const;
  Obj push_obj(const Arrow& f, Obj o) const;
  Obj pull_obj(const Arrow& g, Obj o) const;
  Mor opcart(const Arrow& f, const Obj& o) const;
  Mor cart(const Arrow& g, const Obj& o) const;
  Mor compose(const Mor& a, const Mor& b) const;
  std::optional<Mor> ldiv(const Arrow& f, const Arrow& g, const Mor& a) const;
  std::optional<Mor> rdiv(const Mor& a, const Arrow& f, const Arrow& g) const;
};

// Net displacement of one-dimensional walks: the poset (Z, <=) viewed as a
// discrete bifibration over the monoid of naturals.
struct DisplacementTarget {
  struct Obj {
    int z;
    bool operator==(const Obj& o) const { return z == o.z; }
  };
  struct Mor {
    Obj src, dst;
    bool operator==(const Mor& o) const { return src == o.src && dst == o.dst; }
  };
  const Context& ctx;

  Obj obj_of_atom(ObjId) const { return {0}; }
  Mor mor_of_axiom(const Arrow&) const { return {{0}, {0}}; }
  Obj push_obj(const Arrow& f, Obj o) const { return {o.z + f.data[0]}; }
  Obj pull_obj(const Arrow& g, Obj o) const { return {o.z - g.data[0]}; }
  Mor opcart(const Arrow& f, const Obj& o) const { return {o, {o.z + f.data[0]}}; }
  Mor cart(const Arrow& g, const Obj& o) const { return {{o.z - g.data[0]}, o}; }
  Mor compose(const Mor& a, const Mor& b) const { return {a.src, b.dst}; }
  std::optional<Mor> ldiv(const Arrow& f, const Arrow&, const Mor& a) const {
    Mor m{{a.src.z + f.data[0]}, a.dst};
    if (m.src.z > m.dst.z) return std::nullopt;
    return m;
  }
  std::optional<Mor> rdiv(const Mor& a, const Arrow&, const Arrow& g) const {
    Mor m{a.src, {a.dst.z - g.data[0]}};
    if (m.src.z > m.dst.z) return std::nullopt;
    return m;
  }
};

// Interpretation of formulas and proofs into a cleaved target.
template <class T>
typename T::Obj interpret_formula(const T& target, const FormulaPtr& s) {
  switch (s->kind) {
    case Formula::Kind::Atom: return target.obj_of_atom(s->atom);
    case Formula::Kind::Push: return target.push_obj(s->arrow, interpret_formula(target, s->body));
    case Formula::Kind::Pull: return target.pull_obj(s->arrow, interpret_formula(target, s->body));
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

template <class T>
typename T::Mor interpret(const T& target, const DerivPtr& d) {
  switch (d->kind) {
    case Deriv::Kind::Ax: return target.mor_of_axiom(d->a1);
    case Deriv::Kind::LDiv: {
      auto inner = interpret(target, d->body);
      auto r = target.ldiv(d->a1, d->a2, inner);
      if (!r) fail(ErrorKind::TargetDivisionFailed, "left division undefined in target");
      return *r;
    }
    case Deriv::Kind::RMult: {
      auto inner = interpret(target, d->body);
      return target.compose(inner, target.opcart(d->a1, inner.dst));
    }
    case Deriv::Kind::LMult: {
      auto inner = interpret(target, d->body);
      return target.compose(target.cart(d->a1, inner.src), inner);
    }
    case Deriv::Kind::RDiv: {
      auto inner = interpret(target, d->body);
      auto r = target.rdiv(inner, d->a1, d->a2);
      if (!r) fail(ErrorKind::TargetDivisionFailed, "right division undefined in target");
      return *r;
    }
  }
  fail(ErrorKind::IllFormed, "unreachable");
}

// ------------------------------------------------------------- oracles

// All weakly increasing tuples <m> -> <n>; count is C(m+n-1, m).
std::vector<std::vector<int>> monotone_oracle(int m, int n);

unsigned long long binomial(unsigned n, unsigned k);
unsigned long long catalan(unsigned n);
unsigned long long double_factorial_odd(unsigned n);  // (2n-1)!!

// ------------------------------------------------------------ trees

// Decode a formula over pomega (or over bnat, in walk mode) into a marked
// plane tree; throws NotAWalk when a walk dips below the axis.
MarkedTree tree_of_formula(const Context& ctx, const FormulaPtr& s);
// Inverse encoding with single chain steps; formula refines <lvl>.
FormulaPtr formula_of_tree(const Context& ctx, const MarkedTree& mt);

// Brute-force enumeration of all natural families src -> dst.
std::vector<TreeMor> all_tree_morphisms(const MarkedTree& src, const MarkedTree& dst);

// Layered order-preserving family of a derivation over pomega, read off
// through the marked-tree cleavage.
TreeMor tree_morphism_oracle(const Context& ctx, const DerivPtr& d);

// ------------------------------------------------------------ forests

struct ForestEvent {
  bool binary;  // true: binary node (push along sigma), false: root node (pull along delta)
  int label;    // the ordinal size after the step
  int pos;      // free-edge index the node attaches to
  bool operator==(const ForestEvent& o) const {
    return binary == o.binary && label == o.label && pos == o.pos;
  }
};

struct IncreasingBinaryForest {
  int leaves = 0;
  std::vector<ForestEvent> events;  // innermost (first applied) first
  bool operator==(const IncreasingBinaryForest& o) const {
    return leaves == o.leaves && events == o.events;
  }
};

IncreasingBinaryForest forest_of_formula(const Context& ctx, const FormulaPtr& s);

struct NoncrossingPartition {
  std::vector<std::vector<int>> blocks;  // blocks sorted by minimum, elements ascending
  bool operator==(const NoncrossingPartition& o) const { return blocks == o.blocks; }
  bool operator<(const NoncrossingPartition& o) const { return blocks < o.blocks; }
  std::string to_string() const;
};

NoncrossingPartition noncrossing_of(const IncreasingBinaryForest& f);

// Brute-force noncrossing partitions of {0..n-1} and refinement order.
std::vector<NoncrossingPartition> all_noncrossing_partitions(int n);
bool partition_refines(const NoncrossingPartition& x, const NoncrossingPartition& y);

// --------------------------------------------------- ambisimplicial fiber

// All closed ambisimplicial formulas over <n> refining <k>, built from
// generator steps; count is the odd double factorial for k = 0.
std::vector<FormulaPtr> closed_ambisimplicial(const Context& ctx, int k, int n);

// The poset F_{k,n}: generator formulas modulo reordering (canonically
// collapsed zigzags), ordered by entailment over the identity.
FiberPoset ambisimplicial_fiber_poset(const Context& ctx, int k, int n);

// The Beck-Chevalley quotient: forget creation order by reducing each
// forest to its noncrossing partition; isomorphic to the Kreweras lattice.
FiberPoset bc_quotient(const Context& ctx, const FiberPoset& fiber);

// The Kreweras lattice by brute force, labeled like bc_quotient.
FiberPoset kreweras_oracle(int n);

// JSON codecs for the combinatorial data.
std::string tree_to_json(const MarkedTree& t);
MarkedTree tree_from_json(const std::string& text);
std::string forest_to_json(const IncreasingBinaryForest& f);
std::string partition_to_json(const NoncrossingPartition& p);

}  // namespace bifib
