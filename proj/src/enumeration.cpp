#include "bifib/enumeration.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace bifib {

namespace {

void enumerate_proofs(const Context& ctx, const FormulaPtr& s, const Arrow& f,
                      const FormulaPtr& t, size_t& nodes, size_t budget,
                      const std::function<void(const DerivPtr&)>& emit) {
  if (budget && ++nodes > budget)
    fail(ErrorKind::BudgetExceeded, "proof enumeration exceeded budget");
  if (s->is_push()) {
    // LDiv consumes the outer push; the premise base is forced.
    enumerate_proofs(ctx, s->body, ctx.C().compose(s->arrow, f), t, nodes, budget,
                     [&](const DerivPtr& sub) { emit(mk_ldiv(ctx, s->arrow, f, sub)); });
  }
  if (s->is_pull()) {
    for (const Arrow& h : ctx.C().left_divisors(s->arrow, f))
      enumerate_proofs(ctx, s->body, h, t, nodes, budget,
                       [&](const DerivPtr& sub) { emit(mk_lmult(ctx, s->arrow, sub)); });
  }
  if (t->is_push()) {
    for (const Arrow& h : ctx.C().right_divisors(f, t->arrow))
      enumerate_proofs(ctx, s, h, t->body, nodes, budget,
                       [&](const DerivPtr& sub) { emit(mk_rmult(ctx, sub, t->arrow)); });
  }
  if (t->is_pull()) {
    enumerate_proofs(ctx, s, ctx.C().compose(f, t->arrow), t->body, nodes, budget,
                     [&](const DerivPtr& sub) { emit(mk_rdiv(ctx, sub, f, t->arrow)); });
  }
  if (s->is_atom() && t->is_atom())
    for (const Arrow& delta : ctx.p->fiber_arrows(s->atom, t->atom, f))
      emit(mk_ax(ctx, delta));
}

struct DerivDeepHash {
  size_t operator()(const DerivPtr& d) const { return d->hash; }
};
struct DerivDeepEq {
  bool operator()(const DerivPtr& a, const DerivPtr& b) const { return deriv_eq(a, b); }
};

}  // namespace

std::vector<DerivPtr> all_plain_derivations(const Context& ctx, const FormulaPtr& s,
                                            const Arrow& f, const FormulaPtr& t,
                                            size_t budget) {
  if (!budget) budget = default_node_budget();
  std::vector<DerivPtr> out;
  size_t nodes = 0;
  enumerate_proofs(ctx, s, f, t, nodes, budget, [&](const DerivPtr& d) { out.push_back(d); });
  return out;
}

std::vector<std::vector<size_t>> permeq_classes(const Context& ctx,
                                                const std::vector<DerivPtr>& proofs) {
  std::unordered_map<DerivPtr, size_t, DerivDeepHash, DerivDeepEq> index;
  for (size_t i = 0; i < proofs.size(); ++i) index.emplace(proofs[i], i);
  std::vector<bool> seen(proofs.size(), false);
  std::vector<std::vector<size_t>> classes;
  for (size_t i = 0; i < proofs.size(); ++i) {
    if (seen[i]) continue;
    std::vector<size_t> cls;
    std::deque<size_t> queue{i};
    seen[i] = true;
    while (!queue.empty()) {
      size_t cur = queue.front();
      queue.pop_front();
      cls.push_back(cur);
      for (const DerivPtr& nb : permeq_neighbors(ctx, proofs[cur])) {
        auto it = index.find(nb);
        if (it == index.end())
          fail(ErrorKind::IllFormed, "permutation neighbor escaped the complete enumeration");
        if (!seen[it->second]) {
          seen[it->second] = true;
          queue.push_back(it->second);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

HomsetResult homset(const Context& ctx, const FormulaPtr& s, const Arrow& f,
                    const FormulaPtr& t, size_t budget) {
  HomsetResult res;
  if (ctx.fp()) {
    res.proofs = max_search(ctx, s, f, t, true, &res.stats);
    res.count = res.proofs.size();
    res.via_max_search = true;
    return res;
  }
  if (!ctx.C().locally_finite())
    fail(ErrorKind::NotFP, "homset: backend declares neither FP nor local finiteness");
  std::vector<DerivPtr> proofs = all_plain_derivations(ctx, s, f, t, budget);
  std::vector<std::vector<size_t>> classes = permeq_classes(ctx, proofs);
  for (const auto& cls : classes) {
    DerivPtr rep = proofs[cls.front()];
    res.proofs.push_back(strengthen(ctx, weak_preimage(ctx, strictify_derivation(ctx, rep),
                                                       rep->j.lhs, rep->j.rhs)));
  }
  res.count = res.proofs.size();
  res.via_max_search = false;
  return res;
}

DecideMode decide_mode(const Context& ctx) {
  if (ctx.fp()) return DecideMode::NF;
  if (ctx.C().locally_finite()) return DecideMode::BFS;
  fail(ErrorKind::UndecidableConfiguration,
       "backend declares neither the FP property nor local finiteness");
}

bool decide_equal(const Context& ctx, const DerivPtr& a, const DerivPtr& b) {
  if (!judgment_eq(a->j, b->j)) return false;
  if (decide_mode(ctx) == DecideMode::NF)
    return multi_eq(canonical_form(ctx, a), canonical_form(ctx, b));
  return permeq_decide_bfs(ctx, a, b, default_node_budget());
}

EquivClassToken equiv_token(const Context& ctx, const DerivPtr& d) {
  DecideMode mode = decide_mode(ctx);
  if (mode == DecideMode::NF) return {canonical_form(ctx, d), mode};
  // On locally finite backends the token still carries a multifocused
  // representative; equality of tokens is decided through decide_equal.
  return {strengthen(ctx, weak_preimage(ctx, strictify_derivation(ctx, d), d->j.lhs, d->j.rhs)),
          mode};
}

bool tokens_equal(const Context& ctx, const EquivClassToken& a, const EquivClassToken& b) {
  if (a.mode == DecideMode::NF && b.mode == DecideMode::NF)
    return multi_eq(a.canonical, b.canonical);
  return decide_equal(ctx, plain_of_multi(ctx, a.canonical),
                      plain_of_multi(ctx, b.canonical));
}

std::optional<std::pair<DerivPtr, DerivPtr>> logical_equiv(const Context& ctx,
                                                           const FormulaPtr& s1,
                                                           const FormulaPtr& s2) {
  if (s1->ref != s2->ref)
    fail(ErrorKind::IllFormed, "logical_equiv: formulas refine different objects");
  Arrow id = ctx.C().identity(s1->ref);
  HomsetResult fwd = homset(ctx, s1, id, s2);
  if (fwd.count == 0) return std::nullopt;
  HomsetResult bwd = homset(ctx, s2, id, s1);
  if (bwd.count == 0) return std::nullopt;
  DerivPtr id1 = identity_derivation(ctx, s1);
  DerivPtr id2 = identity_derivation(ctx, s2);
  for (const MPtr& am : fwd.proofs) {
    DerivPtr a = plain_of_multi(ctx, am);
    for (const MPtr& bm : bwd.proofs) {
      DerivPtr b = plain_of_multi(ctx, bm);
      if (decide_equal(ctx, cut(ctx, a, b), id1) && decide_equal(ctx, cut(ctx, b, a), id2))
        return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

size_t FiberPoset::interval_count() const {
  size_t n = 0;
  for (const auto& row : leq)
    for (bool b : row) n += b;
  return n;
}

void compute_covers(FiberPoset& p) {
  p.covers.clear();
  size_t n = p.size();
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (a == b || !p.leq[a][b]) continue;
      bool direct = true;
      for (size_t c = 0; c < n && direct; ++c)
        if (c != a && c != b && p.leq[a][c] && p.leq[c][b]) direct = false;
      if (direct) p.covers.push_back({a, b});
    }
  std::sort(p.covers.begin(), p.covers.end());
}

PosetAnalysis poset_analyze(const FiberPoset& p) {
  size_t n = p.size();
  auto bound = [&](size_t x, size_t y, bool lower) -> std::optional<size_t> {
    std::vector<size_t> cands;
    for (size_t z = 0; z < n; ++z) {
      bool ok = lower ? (p.leq[z][x] && p.leq[z][y]) : (p.leq[x][z] && p.leq[y][z]);
      if (ok) cands.push_back(z);
    }
    for (size_t z : cands) {
      bool extreme = true;
      for (size_t w : cands)
        if (lower ? !p.leq[w][z] : !p.leq[z][w]) extreme = false;
      if (extreme) return z;
    }
    return std::nullopt;
  };
  PosetAnalysis res{true, p.interval_count(), std::nullopt};
  for (size_t x = 0; x < n && res.is_lattice; ++x)
    for (size_t y = x + 1; y < n; ++y)
      if (!bound(x, y, true) || !bound(x, y, false)) {
        res.is_lattice = false;
        res.failing_pair = std::make_pair(x, y);
        break;
      }
  return res;
}

FiberPoset quotient_poset(const FiberPoset& p,
                          const std::function<std::string(size_t)>& label_of) {
  FiberPoset q;
  std::map<std::string, size_t> index;
  std::vector<size_t> cls(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    std::string lbl = label_of(i);
    auto it = index.find(lbl);
    if (it == index.end()) {
      it = index.emplace(lbl, q.elements.size()).first;
      q.elements.push_back(p.elements[i]);
      q.witnesses.push_back(p.witnesses.empty() ? p.elements[i] : p.witnesses[i]);
      q.labels.push_back(lbl);
    }
    cls[i] = it->second;
  }
  size_t n = q.elements.size();
  q.leq.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) q.leq[i][i] = true;
  for (size_t a = 0; a < p.size(); ++a)
    for (size_t b = 0; b < p.size(); ++b)
      if (p.leq[a][b]) q.leq[cls[a]][cls[b]] = true;
  for (size_t k = 0; k < n; ++k)  // transitive closure of the induced relation
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (q.leq[i][k] && q.leq[k][j]) q.leq[i][j] = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && q.leq[i][j] && q.leq[j][i])
        fail(ErrorKind::IllFormed, "quotient order is not antisymmetric");
  compute_covers(q);
  return q;
}

std::string poset_to_dot(const FiberPoset& p) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (size_t i = 0; i < p.size(); ++i)
    out << "  n" << i << " [label=\"" << p.labels[i] << "\"];\n";
  for (auto [a, b] : p.covers) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string poset_to_csv(const FiberPoset& p) {
  std::ostringstream out;
  out << "element";
  for (size_t i = 0; i < p.size(); ++i) out << ',' << p.labels[i];
  out << '\n';
  for (size_t i = 0; i < p.size(); ++i) {
    out << p.labels[i];
    for (size_t j = 0; j < p.size(); ++j) out << ',' << (p.leq[i][j] ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

std::string poset_to_json(const FiberPoset& p) {
  nlohmann::json j;
  j["elements"] = p.labels;
  std::vector<std::vector<size_t>> covers;
  for (auto [a, b] : p.covers) covers.push_back({a, b});
  j["covers"] = covers;
  j["intervals"] = p.interval_count();
  return j.dump(2) + "\n";
}

}  // namespace bifib
