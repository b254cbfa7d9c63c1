#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bifib/errors.hpp"

namespace bifib {

// Backend-scoped object identifier. Ordering is total and stable across runs.
struct ObjId {
  int v = -1;
  friend bool operator==(ObjId a, ObjId b) { return a.v == b.v; }
  friend bool operator!=(ObjId a, ObjId b) { return a.v != b.v; }
  friend bool operator<(ObjId a, ObjId b) { return a.v < b.v; }
};

// An arrow of a backend category. `data` is the backend-specific payload:
// edge-index words for free categories, image tuples for the simplex
// category, {n} for the additive monoid of naturals, empty for posets.
// Equality is extensional: componentwise on (dom, cod, data).
struct Arrow {
  ObjId dom, cod;
  std::vector<int> data;

  friend bool operator==(const Arrow& a, const Arrow& b) {
    return a.dom == b.dom && a.cod == b.cod && a.data == b.data;
  }
  friend bool operator!=(const Arrow& a, const Arrow& b) { return !(a == b); }
  friend bool operator<(const Arrow& a, const Arrow& b) {
    if (a.data != b.data) return a.data < b.data;
    if (a.dom != b.dom) return a.dom < b.dom;
    return a.cod < b.cod;
  }
};

inline size_t hash_combine(size_t seed, size_t h) {
  return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct ArrowHash {
  size_t operator()(const Arrow& a) const {
    size_t h = hash_combine(std::hash<int>()(a.dom.v), std::hash<int>()(a.cod.v));
    for (int x : a.data) h = hash_combine(h, std::hash<int>()(x));
    return h;
  }
};

// A finitely presented (or truncated infinite) category with decidable
// arrow equality and division queries. Instances are immutable after
// construction; all queries are pure.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string name() const = 0;
  virtual std::vector<ObjId> objects() const = 0;
  virtual std::string object_name(ObjId o) const = 0;
  virtual std::optional<ObjId> object_by_name(const std::string& s) const = 0;

  virtual Arrow identity(ObjId o) const = 0;
  bool is_identity(const Arrow& a) const { return a == identity(a.dom); }

  // Diagrammatic-order composition a then b. Throws NonComposable.
  Arrow compose(const Arrow& a, const Arrow& b) const;

  // All g with a.g = h, duplicate-free, in canonical (lexicographic) order.
  virtual std::vector<Arrow> left_divisors(const Arrow& a, const Arrow& h) const = 0;
  // All g with g.b = h, duplicate-free, canonical order.
  virtual std::vector<Arrow> right_divisors(const Arrow& h, const Arrow& b) const = 0;

  // Arrows A -> B; infinite homsets are truncated at `bound` composition
  // steps of the backend's generators.
  virtual std::vector<Arrow> hom(ObjId a, ObjId b, size_t bound = 6) const = 0;

  virtual std::string arrow_name(const Arrow& a) const = 0;
  virtual std::optional<Arrow> parse_arrow(const std::string& s) const = 0;

  // Arrow classes ("all", "epi", "mono", ...): membership and whether the
  // backend declares the W-factorization-preorder property for the class.
  virtual bool has_class(const std::string& cls) const { return cls == "all"; }
  virtual bool in_class(const std::string& cls, const Arrow&) const { return cls == "all"; }
  virtual bool fp_declared(const std::string& cls) const = 0;
  virtual bool locally_finite() const = 0;
  // Class arrows out of / into an object, up to a size bound; duplicate-free.
  std::vector<Arrow> class_out(const std::string& cls, ObjId a, size_t bound = 6) const;
  std::vector<Arrow> class_in(const std::string& cls, ObjId b, size_t bound = 6) const;

  // All e with f.e = x and e.k = y; precondition f.y = x.k.
  std::vector<Arrow> fillers(const Arrow& f, const Arrow& x, const Arrow& y,
                             const Arrow& k) const;
  // (a,b) <= (c,d) in the factorization order: some e satisfies c = a.e, b = e.d.
  bool le_fact(const Arrow& a, const Arrow& b, const Arrow& c, const Arrow& d) const;

 protected:
  virtual Arrow compose_impl(const Arrow& a, const Arrow& b) const = 0;
};

// Free category on a finite directed graph. Arrows are generator words.
class FreeCat : public Backend {
 public:
  struct Edge {
    std::string name;
    int src, dst;
  };

  FreeCat(std::vector<std::string> vertices, std::vector<Edge> edges);

  static std::shared_ptr<FreeCat> from_presentation(const std::string& text);

  std::string name() const override { return "free"; }
  std::vector<ObjId> objects() const override;
  std::string object_name(ObjId o) const override;
  std::optional<ObjId> object_by_name(const std::string& s) const override;
  Arrow identity(ObjId o) const override;
  std::vector<Arrow> left_divisors(const Arrow& a, const Arrow& h) const override;
  std::vector<Arrow> right_divisors(const Arrow& h, const Arrow& b) const override;
  std::vector<Arrow> hom(ObjId a, ObjId b, size_t bound) const override;
  std::string arrow_name(const Arrow& a) const override;
  std::optional<Arrow> parse_arrow(const std::string& s) const override;
  bool fp_declared(const std::string& cls) const override { return cls == "all"; }
  bool locally_finite() const override { return false; }

  Arrow edge_arrow(int idx) const;
  size_t edge_count() const { return edges_.size(); }
  const Edge& edge(int idx) const { return edges_[idx]; }

 protected:
  Arrow compose_impl(const Arrow& a, const Arrow& b) const override;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, int> vertex_by_name_;
  std::map<std::string, int> edge_by_name_;
};

// Finite poset: at most one arrow per ordered pair.
class FinPoset : public Backend {
 public:
  FinPoset(std::vector<std::string> elements, std::vector<std::pair<int, int>> rels);

  static std::shared_ptr<FinPoset> chain(int n);  // elements 0..n, i <= i+1
  static std::shared_ptr<FinPoset> from_presentation(const std::string& text);

  std::string name() const override { return "poset"; }
  std::vector<ObjId> objects() const override;
  std::string object_name(ObjId o) const override;
  std::optional<ObjId> object_by_name(const std::string& s) const override;
  Arrow identity(ObjId o) const override;
  std::vector<Arrow> left_divisors(const Arrow& a, const Arrow& h) const override;
  std::vector<Arrow> right_divisors(const Arrow& h, const Arrow& b) const override;
  std::vector<Arrow> hom(ObjId a, ObjId b, size_t bound) const override;
  std::string arrow_name(const Arrow& a) const override;
  std::optional<Arrow> parse_arrow(const std::string& s) const override;
  bool fp_declared(const std::string& cls) const override { return cls == "all"; }
  bool locally_finite() const override { return true; }

  bool leq(ObjId a, ObjId b) const { return leq_[a.v][b.v]; }
  Arrow arrow(ObjId a, ObjId b) const;

 protected:
  Arrow compose_impl(const Arrow& a, const Arrow& b) const override;

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<bool>> leq_;
};

// Truncation of the (augmented) simplex category: objects are the finite
// ordinals <0>..<max_n>, arrows are monotone functions encoded
// extensionally as image tuples. Generators sigma_i^n, delta_i^n are
// derived constructors.
class SimplexCat : public Backend {
 public:
  explicit SimplexCat(int max_n);

  std::string name() const override { return "simplex"; }
  std::vector<ObjId> objects() const override;
  std::string object_name(ObjId o) const override;
  std::optional<ObjId> object_by_name(const std::string& s) const override;
  Arrow identity(ObjId o) const override;
  std::vector<Arrow> left_divisors(const Arrow& a, const Arrow& h) const override;
  std::vector<Arrow> right_divisors(const Arrow& h, const Arrow& b) const override;
  std::vector<Arrow> hom(ObjId a, ObjId b, size_t bound) const override;
  std::string arrow_name(const Arrow& a) const override;
  std::optional<Arrow> parse_arrow(const std::string& s) const override;

  bool has_class(const std::string& cls) const override {
    return cls == "all" || cls == "epi" || cls == "mono";
  }
  bool in_class(const std::string& cls, const Arrow& a) const override;
  bool fp_declared(const std::string& cls) const override {
    return cls == "epi" || cls == "mono";
  }
  bool locally_finite() const override { return true; }

  int max_n() const { return max_n_; }
  // sigma_i^n : <n+1> -> <n>, the surjection collapsing i, i+1 (0 <= i < n).
  Arrow sigma(int i, int n) const;
  // delta_i^n : <n> -> <n+1>, the injection avoiding i (0 <= i <= n).
  Arrow delta(int i, int n) const;

 protected:
  Arrow compose_impl(const Arrow& a, const Arrow& b) const override;

 private:
  int max_n_;
  struct PairHash {
    size_t operator()(const std::pair<Arrow, Arrow>& p) const {
      return hash_combine(ArrowHash()(p.first), ArrowHash()(p.second));
    }
  };
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::pair<Arrow, Arrow>, std::vector<Arrow>, PairHash> ldiv_cache_;
  mutable std::unordered_map<std::pair<Arrow, Arrow>, std::vector<Arrow>, PairHash> rdiv_cache_;
};

// The monoid (N, +, 0) as a one-object category.
class MonoidNat : public Backend {
 public:
  MonoidNat() = default;
  std::string name() const override { return "monoid-nat"; }
  std::vector<ObjId> objects() const override { return {ObjId{0}}; }
  std::string object_name(ObjId) const override { return "*"; }
  std::optional<ObjId> object_by_name(const std::string& s) const override;
  Arrow identity(ObjId o) const override { return Arrow{o, o, {0}}; }
  std::vector<Arrow> left_divisors(const Arrow& a, const Arrow& h) const override;
  std::vector<Arrow> right_divisors(const Arrow& h, const Arrow& b) const override;
  std::vector<Arrow> hom(ObjId a, ObjId b, size_t bound) const override;
  std::string arrow_name(const Arrow& a) const override;
  std::optional<Arrow> parse_arrow(const std::string& s) const override;
  bool fp_declared(const std::string& cls) const override { return cls == "all"; }
  bool locally_finite() const override { return false; }

  Arrow step(int n) const { return Arrow{ObjId{0}, ObjId{0}, {n}}; }

 protected:
  Arrow compose_impl(const Arrow& a, const Arrow& b) const override;
};

// Objects 0..max_n with identity arrows only.
class DiscreteNat : public Backend {
 public:
  explicit DiscreteNat(int max_n) : max_n_(max_n) {}
  std::string name() const override { return "discrete-nat"; }
  std::vector<ObjId> objects() const override;
  std::string object_name(ObjId o) const override { return std::to_string(o.v); }
  std::optional<ObjId> object_by_name(const std::string& s) const override;
  Arrow identity(ObjId o) const override { return Arrow{o, o, {}}; }
  std::vector<Arrow> left_divisors(const Arrow& a, const Arrow& h) const override;
  std::vector<Arrow> right_divisors(const Arrow& h, const Arrow& b) const override;
  std::vector<Arrow> hom(ObjId a, ObjId b, size_t bound) const override;
  std::string arrow_name(const Arrow&) const override;
  std::optional<Arrow> parse_arrow(const std::string& s) const override;
  bool fp_declared(const std::string& cls) const override { return cls == "all"; }
  bool locally_finite() const override { return true; }

  int max_n() const { return max_n_; }

 protected:
  Arrow compose_impl(const Arrow& a, const Arrow& b) const override;

 private:
  int max_n_;
};

// `simplex 5`, `omega 6`, `free <graphfile>`, `poset <relfile>`,
// `monoid-nat`, `discrete-nat 5`. Files are resolved relative to cwd.
std::shared_ptr<Backend> backend_from_spec(const std::string& spec);

// The functor p : D -> C. Domain backends are either trivial (DiscreteNat,
// identity-only), free categories (per-generator images), or the same
// backend as the codomain (identity functor, used for zigzag contexts).
struct FunctorDef {
  std::shared_ptr<const Backend> dom_cat;
  std::shared_ptr<const Backend> cod_cat;
  bool is_identity_functor = false;
  std::vector<ObjId> obj_map;    // indexed by domain object id
  std::vector<Arrow> edge_map;   // for FreeCat domains: image of each edge

  ObjId obj(ObjId x) const;
  Arrow map(const Arrow& d) const;
  // All D-arrows X -> Y lying over f. `budget` bounds the search when the
  // domain is free; throws BudgetExceeded when the bound is hit.
  std::vector<Arrow> fiber_arrows(ObjId x, ObjId y, const Arrow& f,
                                  size_t budget = 4096) const;
  void validate() const;  // dom/cod, identities, composition on generators
};

std::shared_ptr<const FunctorDef> identity_functor(std::shared_ptr<const Backend> c);
std::shared_ptr<const FunctorDef> functor_from_file(const std::string& path);

// Everything downstream of the base module runs against a Context: the
// functor plus the arrow classes P (pushforwards) and N (pullbacks).
struct Context {
  std::shared_ptr<const FunctorDef> p;
  std::string clsP = "all";
  std::string clsN = "all";

  const Backend& C() const { return *p->cod_cat; }
  const Backend& D() const { return *p->dom_cat; }
  bool fp() const { return C().fp_declared(clsP) && C().fp_declared(clsN); }
  bool in_P(const Arrow& a) const { return C().in_class(clsP, a); }
  bool in_N(const Arrow& a) const { return C().in_class(clsN, a); }
};

}  // namespace bifib
