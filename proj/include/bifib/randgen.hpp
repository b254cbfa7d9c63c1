#pragma once

#include <random>

#include "bifib/derivation.hpp"

namespace bifib {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  size_t upto(size_t n) {  // uniform in [0, n)
    return std::uniform_int_distribution<size_t>(0, n - 1)(eng);
  }
  bool flip() { return upto(2) == 0; }
};

// A random functor between free categories: C with <= 3 vertices and
// <= 3 edges, D mapping edges to nonempty C-words (so relative homsets
// stay finite).
struct RandomInstance {
  std::shared_ptr<FreeCat> c_cat, d_cat;
  Context ctx;
};

RandomInstance random_instance(Rng& rng, size_t max_edges = 3);

// A random word out of / into an object, length <= max_len (possibly 0).
Arrow random_word_from(Rng& rng, const Backend& c, ObjId a, size_t max_len);
Arrow random_word_into(Rng& rng, const Backend& c, ObjId b, size_t max_len);

FormulaPtr random_formula(Rng& rng, const Context& ctx, size_t depth);

// A random derivation grown outward from a random axiom by `wraps`
// applications of the four rules.
DerivPtr random_derivation(Rng& rng, const Context& ctx, size_t wraps);
DerivPtr random_wraps(Rng& rng, const Context& ctx, DerivPtr start, size_t wraps);

// A random proof with the prescribed left formula (identity extended on
// the right, then scrambled through the permutation graph).
DerivPtr random_extension(Rng& rng, const Context& ctx, const FormulaPtr& s, size_t steps);

// A random walk in the one-step permutation graph.
DerivPtr random_permute(Rng& rng, const Context& ctx, DerivPtr d, size_t steps);

}  // namespace bifib
