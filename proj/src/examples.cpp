#include "bifib/examples.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bifib {

// --------------------------------------------------------------- seeds

namespace {
std::pair<std::string, int> parse_seed_name(const std::string& name) {
  auto open = name.find('(');
  if (open == std::string::npos) {
    auto colon = name.find(':');
    if (colon == std::string::npos) return {name, -1};
    return {name.substr(0, colon), std::stoi(name.substr(colon + 1))};
  }
  auto close = name.find(')');
  return {name.substr(0, open), std::stoi(name.substr(open + 1, close - open - 1))};
}
}  // namespace

Seed make_seed(const std::string& name) {
  auto [kind, level] = parse_seed_name(name);
  Seed seed;
  seed.name = name;
  auto f = std::make_shared<FunctorDef>();
  if (kind == "p2") {
    f->dom_cat = std::make_shared<DiscreteNat>(0);
    f->cod_cat = FinPoset::chain(1);
    f->obj_map = {ObjId{0}};
  } else if (kind == "pomega") {
    if (level < 0) fail(ErrorKind::Parse, "pomega needs a truncation level");
    f->dom_cat = std::make_shared<DiscreteNat>(0);
    f->cod_cat = FinPoset::chain(level);
    f->obj_map = {ObjId{0}};
  } else if (kind == "bnat") {
    f->dom_cat = std::make_shared<DiscreteNat>(0);
    f->cod_cat = std::make_shared<MonoidNat>();
    f->obj_map = {ObjId{0}};
  } else if (kind == "ambisimplex") {
    if (level < 0) fail(ErrorKind::Parse, "ambisimplex needs a truncation level");
    // One level of headroom so the generators at the top object exist.
    f->dom_cat = std::make_shared<DiscreteNat>(level + 1);
    f->cod_cat = std::make_shared<SimplexCat>(level + 1);
    for (int i = 0; i <= level + 1; ++i) f->obj_map.push_back(ObjId{i});
    seed.ctx = Context{f, "epi", "mono"};
    return seed;
  } else {
    fail(ErrorKind::Parse, "unknown seed: " + name);
  }
  seed.ctx = Context{f, "all", "all"};
  return seed;
}

FormulaPtr p2_ordinal(const Context& ctx, int n) {
  Arrow f = *ctx.C().parse_arrow("f0");
  FormulaPtr cur = mk_atom(ctx, ObjId{0});
  for (int i = 0; i < n; ++i) cur = mk_pull(ctx, f, mk_push(ctx, f, cur));
  return cur;
}

FormulaPtr p2_ordinal_primed(const Context& ctx, int n) {
  return mk_push(ctx, *ctx.C().parse_arrow("f0"), p2_ordinal(ctx, n));
}

// -------------------------------------------------------- ordinal target

namespace {
bool chain_is_id(const Arrow& a) { return a.dom == a.cod; }
}  // namespace

OrdinalTarget::Obj OrdinalTarget::push_obj(const Arrow& f, Obj o) const {
  if (chain_is_id(f)) return o;
  if (o.lvl != 0) fail(ErrorKind::IllFormed, "ordinal target: push from level 1");
  return {1, o.size + 1};
}

OrdinalTarget::Obj OrdinalTarget::pull_obj(const Arrow& g, Obj o) const {
  if (chain_is_id(g)) return o;
  if (o.lvl != 1 || o.size < 1) fail(ErrorKind::IllFormed, "ordinal target: pull from level 0");
  return {0, o.size};
}

OrdinalTarget::Mor OrdinalTarget::opcart(const Arrow& f, const Obj& o) const {
  Mor m{o, push_obj(f, o), {}};
  for (int i = 0; i < o.size; ++i) m.map.push_back(chain_is_id(f) ? i : i + 1);
  return m;
}

OrdinalTarget::Mor OrdinalTarget::cart(const Arrow& g, const Obj& o) const {
  Mor m{pull_obj(g, o), o, {}};
  for (int i = 0; i < m.src.size; ++i) m.map.push_back(i);
  return m;
}

OrdinalTarget::Mor OrdinalTarget::compose(const Mor& a, const Mor& b) const {
  if (!(a.dst == b.src)) fail(ErrorKind::NonComposable, "ordinal target: compose");
  Mor m{a.src, b.dst, {}};
  for (int x : a.map) m.map.push_back(b.map.at(x));
  return m;
}

std::optional<OrdinalTarget::Mor> OrdinalTarget::ldiv(const Arrow& f, const Arrow&,
                                                      const Mor& a) const {
  if (chain_is_id(f)) return a;
  if (a.src.lvl != 0 || a.dst.lvl != 1) return std::nullopt;
  Mor m{push_obj(f, a.src), a.dst, {0}};
  for (int x : a.map) m.map.push_back(x);
  for (size_t i = 1; i < m.map.size(); ++i)
    if (m.map[i] < m.map[i - 1]) return std::nullopt;
  return m;
}

std::optional<OrdinalTarget::Mor> OrdinalTarget::rdiv(const Mor& a, const Arrow&,
                                                      const Arrow& g) const {
  if (chain_is_id(g)) return a;
  if (a.dst.lvl != 1) return std::nullopt;
  Mor m{a.src, pull_obj(g, a.dst), a.map};
  return m;
}

// ----------------------------------------------------------- plane trees

int PlaneTree::vertex_count() const {
  int n = 1;
  for (const auto& lvl : par) n += int(lvl.size());
  return n;
}

namespace {

bool tree_valid(const MarkedTree& mt) {
  const PlaneTree& t = mt.t;
  for (int h = 1; h <= t.height(); ++h) {
    int up = t.level_size(h - 1);
    int prev = 0;
    for (int p : t.par[h - 1]) {
      if (p < prev || p >= up) return false;
      prev = p;
    }
  }
  if (mt.lvl > t.height()) return false;
  for (int h = 1; h <= mt.lvl; ++h)
    if (t.par[h - 1].empty() || t.par[h - 1][0] != 0) return false;
  return true;
}

// Grow a fresh marked leaf as the left child of the mark.
void grow_leftmost(MarkedTree& mt) {
  int h = mt.lvl + 1;
  if (h > mt.t.height()) mt.t.par.push_back({});
  auto& lvl = mt.t.par[h - 1];
  lvl.insert(lvl.begin(), 0);
  if (h < mt.t.height())
    for (int& p : mt.t.par[h]) ++p;  // children below shift their parent index
  mt.lvl = h;
}

void mark_down(MarkedTree& mt) {
  if (mt.lvl == 0) fail(ErrorKind::NotAWalk, "walk dips below the axis");
  --mt.lvl;
}

int arrow_steps_up(const Context& ctx, const Arrow& a) {
  // Chain posets: cod - dom; the naturals monoid: the payload.
  if (dynamic_cast<const MonoidNat*>(&ctx.C())) return a.data[0];
  return a.cod.v - a.dom.v;
}

}  // namespace

bool tree_mor_valid(const TreeMor& m) {
  int hs = m.src.t.height();
  if (int(m.maps.size()) < hs + 1) return false;
  for (int h = 0; h <= hs; ++h) {
    int sn = m.src.t.level_size(h), tn = m.dst.t.level_size(h);
    if (int(m.maps[h].size()) != sn) return false;
    int prev = 0;
    for (int v : m.maps[h]) {
      if (v < prev || v >= tn) return false;
      prev = v;
    }
    if (h > 0)
      for (int i = 0; i < sn; ++i)
        if (m.maps[h - 1][m.src.t.par[h - 1][i]] != m.dst.t.par[h - 1][m.maps[h][i]])
          return false;
  }
  if (m.src.lvl > m.dst.lvl) return false;
  if (m.maps[m.src.lvl].empty() || m.maps[m.src.lvl][0] != 0) return false;
  return true;
}

MarkedTreeTarget::Mor MarkedTreeTarget::mor_of_axiom(const Arrow&) const {
  MarkedTree o{};
  return Mor{o, o, {{0}}};
}

MarkedTreeTarget::Obj MarkedTreeTarget::push_obj(const Arrow& f, Obj o) const {
  for (int i = 0; i < arrow_steps_up(ctx, f); ++i) grow_leftmost(o);
  return o;
}

MarkedTreeTarget::Obj MarkedTreeTarget::pull_obj(const Arrow& g, Obj o) const {
  for (int i = 0; i < arrow_steps_up(ctx, g); ++i) mark_down(o);
  return o;
}

MarkedTreeTarget::Mor MarkedTreeTarget::opcart(const Arrow& f, const Obj& o) const {
  Mor m;
  m.src = o;
  m.dst = o;
  for (int h = 0; h <= o.t.height(); ++h) {
    std::vector<int> idmap(o.t.level_size(h));
    for (size_t i = 0; i < idmap.size(); ++i) idmap[i] = int(i);
    m.maps.push_back(std::move(idmap));
  }
  for (int step = 0; step < arrow_steps_up(ctx, f); ++step) {
    int h = m.dst.lvl + 1;
    grow_leftmost(m.dst);
    if (h >= int(m.maps.size())) m.maps.push_back({});
    for (int& v : m.maps[h]) ++v;  // existing vertices at the grown level shift right
  }
  return m;
}

MarkedTreeTarget::Mor MarkedTreeTarget::cart(const Arrow& g, const Obj& o) const {
  Mor m;
  m.src = pull_obj(g, o);
  m.dst = o;
  for (int h = 0; h <= o.t.height(); ++h) {
    std::vector<int> idmap(o.t.level_size(h));
    for (size_t i = 0; i < idmap.size(); ++i) idmap[i] = int(i);
    m.maps.push_back(std::move(idmap));
  }
  return m;
}

MarkedTreeTarget::Mor MarkedTreeTarget::compose(const Mor& a, const Mor& b) const {
  if (!(a.dst == b.src)) fail(ErrorKind::NonComposable, "tree target: compose");
  Mor m;
  m.src = a.src;
  m.dst = b.dst;
  for (int h = 0; h <= a.src.t.height(); ++h) {
    std::vector<int> row;
    for (int v : a.maps[h]) row.push_back(b.maps.at(h).at(v));
    m.maps.push_back(std::move(row));
  }
  return m;
}

std::optional<MarkedTreeTarget::Mor> MarkedTreeTarget::ldiv(const Arrow& f, const Arrow&,
                                                            const Mor& a) const {
  Mor m;
  m.src = push_obj(f, a.src);
  m.dst = a.dst;
  int lo = a.src.lvl, hi = m.src.lvl;
  for (int h = 0; h <= m.src.t.height(); ++h) {
    std::vector<int> row;
    if (h > lo && h <= hi) row.push_back(0);  // the new chain maps to the leftmost branch
    int base = (h > lo && h <= hi) ? 1 : 0;
    (void)base;
    for (int v : (h <= a.src.t.height() ? a.maps[h] : std::vector<int>{})) row.push_back(v);
    m.maps.push_back(std::move(row));
  }
  if (!tree_mor_valid(m)) return std::nullopt;
  return m;
}

std::optional<MarkedTreeTarget::Mor> MarkedTreeTarget::rdiv(const Mor& a, const Arrow&,
                                                            const Arrow& g) const {
  Mor m = a;
  m.dst = pull_obj(g, a.dst);
  if (!tree_mor_valid(m)) return std::nullopt;
  return m;
}

// ------------------------------------------------------------- oracles

std::vector<std::vector<int>> monotone_oracle(int m, int n) {
  if (m > 8 || n > 8) fail(ErrorKind::IllFormed, "monotone_oracle supports sizes <= 8");
  std::vector<std::vector<int>> out;
  if (m == 0) {
    out.push_back({});
    return out;
  }
  if (n == 0) return out;
  std::vector<int> t(m, 0);
  while (true) {
    out.push_back(t);
    int i = m - 1;
    while (i >= 0 && t[i] == n - 1) --i;
    if (i < 0) break;
    int v = t[i] + 1;
    for (int j = i; j < m; ++j) t[j] = v;
  }
  return out;
}

unsigned long long binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  unsigned long long r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

unsigned long long catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

unsigned long long double_factorial_odd(unsigned n) {
  unsigned long long r = 1;
  for (unsigned i = 1; i <= n; ++i) r *= 2 * i - 1;
  return r;
}

// --------------------------------------------------------------- trees

MarkedTree tree_of_formula(const Context& ctx, const FormulaPtr& s) {
  if (s->is_atom()) return MarkedTree{};
  MarkedTree mt = tree_of_formula(ctx, s->body);
  int steps = arrow_steps_up(ctx, s->arrow);
  if (s->is_push())
    for (int i = 0; i < steps; ++i) grow_leftmost(mt);
  else
    for (int i = 0; i < steps; ++i) mark_down(mt);
  return mt;
}

FormulaPtr formula_of_tree(const Context& ctx, const MarkedTree& mt) {
  if (!tree_valid(mt)) fail(ErrorKind::IllFormed, "not a valid marked tree");
  // Undo walk steps outermost-first: a childless mark was just grown
  // (outer connective is a push), otherwise the mark moved down (pull).
  MarkedTree cur = mt;
  std::vector<std::pair<bool, int>> steps;  // (is_push, lower level), outermost first
  while (cur.t.height() > 0 || cur.lvl > 0) {
    int k = cur.lvl;
    bool has_child =
        k + 1 <= cur.t.height() && !cur.t.par[k].empty() && cur.t.par[k][0] == 0;
    if (!has_child) {
      if (k == 0) fail(ErrorKind::IllFormed, "unmarked residue while unwinding tree");
      steps.push_back({true, k - 1});
      // delete vertex 0 at level k
      auto& lvl = cur.t.par[k - 1];
      lvl.erase(lvl.begin());
      if (k < cur.t.height())
        for (int& p : cur.t.par[k]) --p;
      while (!cur.t.par.empty() && cur.t.par.back().empty()) cur.t.par.pop_back();
      cur.lvl = k - 1;
    } else {
      steps.push_back({false, k});
      cur.lvl = k + 1;
    }
  }
  FormulaPtr out = mk_atom(ctx, ObjId{0});
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    auto [is_push, low] = *it;
    Arrow step = *ctx.C().parse_arrow("f" + std::to_string(low));
    out = is_push ? mk_push(ctx, step, out) : mk_pull(ctx, step, out);
  }
  return out;
}

std::vector<TreeMor> all_tree_morphisms(const MarkedTree& src, const MarkedTree& dst) {
  std::vector<TreeMor> out;
  if (src.lvl > dst.lvl) return out;
  int hs = src.t.height();
  if (src.t.height() > dst.t.height()) return out;
  TreeMor work;
  work.src = src;
  work.dst = dst;
  work.maps.assign(hs + 1, {});
  work.maps[0] = {0};
  std::function<void(int)> go = [&](int h) {
    if (h > hs) {
      if (tree_mor_valid(work)) out.push_back(work);
      return;
    }
    int sn = src.t.level_size(h), tn = dst.t.level_size(h);
    std::vector<int> row(sn, 0);
    std::function<void(int, int)> fill = [&](int i, int minv) {
      if (i == sn) {
        work.maps[h] = row;
        go(h + 1);
        return;
      }
      for (int v = minv; v < tn; ++v) {
        // naturality against the level above
        if (work.maps[h - 1][src.t.par[h - 1][i]] != dst.t.par[h - 1][v]) continue;
        row[i] = v;
        fill(i + 1, v);
      }
    };
    if (sn == 0) {
      work.maps[h] = {};
      go(h + 1);
    } else if (tn == 0) {
      return;
    } else {
      fill(0, 0);
    }
  };
  go(1);
  std::sort(out.begin(), out.end());
  return out;
}

TreeMor tree_morphism_oracle(const Context& ctx, const DerivPtr& d) {
  MarkedTreeTarget target{ctx};
  return interpret(target, d);
}

// -------------------------------------------------------------- forests

namespace {
// Identify a simplex generator arrow: (is_sigma, i, n).
std::tuple<bool, int, int> classify_generator(const Context& ctx, const Arrow& a) {
  auto* sc = dynamic_cast<const SimplexCat*>(&ctx.C());
  if (!sc) fail(ErrorKind::IllFormed, "forests need the simplex backend");
  if (a.dom.v == a.cod.v + 1) {
    int n = a.cod.v;
    for (int i = 0; i < n; ++i)
      if (a == sc->sigma(i, n)) return {true, i, n};
  }
  if (a.cod.v == a.dom.v + 1) {
    int n = a.dom.v;
    for (int i = 0; i <= n; ++i)
      if (a == sc->delta(i, n)) return {false, i, n};
  }
  fail(ErrorKind::IllFormed, "arrow is not a simplex generator: " + ctx.C().arrow_name(a));
}
}  // namespace

IncreasingBinaryForest forest_of_formula(const Context& ctx, const FormulaPtr& s) {
  IncreasingBinaryForest forest;
  forest.leaves = atom_of(s).v;
  std::vector<ForestEvent> outer_first;
  for (FormulaPtr cur = s; !cur->is_atom(); cur = cur->body) {
    auto [is_sigma, i, n] = classify_generator(ctx, cur->arrow);
    if (cur->is_push() != is_sigma)
      fail(ErrorKind::IllFormed, "push along delta or pull along sigma");
    outer_first.push_back(ForestEvent{is_sigma, n, i});
  }
  forest.events.assign(outer_first.rbegin(), outer_first.rend());
  return forest;
}

NoncrossingPartition noncrossing_of(const IncreasingBinaryForest& f) {
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < f.leaves; ++i) edges.push_back({i});
  NoncrossingPartition part;
  for (const ForestEvent& e : f.events) {
    if (e.pos < 0 || e.pos >= int(edges.size()) - (e.binary ? 1 : 0))
      fail(ErrorKind::IllFormed, "forest event position out of range");
    if (e.binary) {
      edges[e.pos].insert(edges[e.pos].end(), edges[e.pos + 1].begin(), edges[e.pos + 1].end());
      edges.erase(edges.begin() + e.pos + 1);
    } else {
      part.blocks.push_back(edges[e.pos]);
      edges.erase(edges.begin() + e.pos);
    }
  }
  if (!edges.empty()) fail(ErrorKind::IllFormed, "forest does not terminate every edge");
  for (auto& b : part.blocks) std::sort(b.begin(), b.end());
  std::sort(part.blocks.begin(), part.blocks.end());
  return part;
}

std::string NoncrossingPartition::to_string() const {
  std::ostringstream out;
  out << '{';
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (b) out << '|';
    for (size_t i = 0; i < blocks[b].size(); ++i) {
      if (i) out << ' ';
      out << blocks[b][i];
    }
  }
  out << '}';
  return out.str();
}

std::vector<NoncrossingPartition> all_noncrossing_partitions(int n) {
  // Enumerate set partitions via restricted growth strings, keep noncrossing.
  std::vector<NoncrossingPartition> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> go = [&](int i, int maxb) {
    if (i == n) {
      int nb = maxb + 1;
      NoncrossingPartition p;
      p.blocks.assign(n == 0 ? 0 : nb, {});
      for (int x = 0; x < n; ++x) p.blocks[rgs[x]].push_back(x);
      // crossing: a < b < c < d with {a,c} and {b,d} in distinct blocks
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c)
            for (int d = c + 1; d < n; ++d)
              if (rgs[a] == rgs[c] && rgs[b] == rgs[d] && rgs[a] != rgs[b]) return;
      std::sort(p.blocks.begin(), p.blocks.end());
      out.push_back(std::move(p));
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      rgs[i] = b;
      go(i + 1, std::max(maxb, b));
    }
  };
  if (n == 0) {
    out.push_back(NoncrossingPartition{});
    return out;
  }
  go(0, -1);
  std::sort(out.begin(), out.end());
  return out;
}

bool partition_refines(const NoncrossingPartition& x, const NoncrossingPartition& y) {
  for (const auto& bx : x.blocks) {
    bool inside = false;
    for (const auto& by : y.blocks) {
      if (std::includes(by.begin(), by.end(), bx.begin(), bx.end())) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

// ---------------------------------------------------- ambisimplicial fiber

std::vector<FormulaPtr> closed_ambisimplicial(const Context& ctx, int k, int n) {
  auto* sc = dynamic_cast<const SimplexCat*>(&ctx.C());
  if (!sc) fail(ErrorKind::IllFormed, "ambisimplicial formulas need the simplex backend");
  if (n > sc->max_n()) fail(ErrorKind::IllFormed, "truncation level too small");
  std::vector<FormulaPtr> out;
  std::function<void(FormulaPtr, int)> go = [&](FormulaPtr cur, int c) {
    if (c == k) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i <= c - 1; ++i)  // pull along delta_i^{c-1}
      go(mk_pull(ctx, sc->delta(i, c - 1), cur), c - 1);
    for (int i = 0; i + 1 <= c - 1; ++i)  // push along sigma_i^{c-1}
      go(mk_push(ctx, sc->sigma(i, c - 1), cur), c - 1);
  };
  if (n >= k) go(mk_atom(ctx, ObjId{n}), n);
  return out;
}

FiberPoset ambisimplicial_fiber_poset(const Context& ctx, int k, int n) {
  FiberPoset poset;
  std::map<std::string, size_t> index;
  for (const FormulaPtr& s : closed_ambisimplicial(ctx, k, n)) {
    FormulaPtr rep = collapse_formula(ctx, s);
    std::string key = formula_to_string(ctx, rep);
    if (index.emplace(key, poset.elements.size()).second) {
      poset.elements.push_back(rep);
      poset.witnesses.push_back(s);
      poset.labels.push_back(key);
    }
  }
  size_t m = poset.size();
  poset.leq.assign(m, std::vector<bool>(m, false));
  auto cache = make_entailment_cache();
  Arrow id = ctx.C().identity(ObjId{k});
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      poset.leq[a][b] =
          a == b || exists_maximal_proof(ctx, poset.elements[a], id, poset.elements[b],
                                         cache.get());
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      if (a != b && poset.leq[a][b] && poset.leq[b][a])
        fail(ErrorKind::IllFormed, "ambisimplicial fiber is not antisymmetric");
  compute_covers(poset);
  return poset;
}

FiberPoset bc_quotient(const Context& ctx, const FiberPoset& fiber) {
  return quotient_poset(fiber, [&](size_t i) {
    return noncrossing_of(forest_of_formula(ctx, fiber.witnesses[i])).to_string();
  });
}

std::string tree_to_json(const MarkedTree& t) {
  nlohmann::json j;
  j["mark_level"] = t.lvl;
  j["parents"] = t.t.par;
  return j.dump();
}

MarkedTree tree_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  MarkedTree t;
  t.lvl = j.at("mark_level").get<int>();
  t.t.par = j.at("parents").get<std::vector<std::vector<int>>>();
  return t;
}

std::string forest_to_json(const IncreasingBinaryForest& f) {
  nlohmann::json j;
  j["leaves"] = f.leaves;
  nlohmann::json events = nlohmann::json::array();
  for (const ForestEvent& e : f.events)
    events.push_back({{"kind", e.binary ? "binary" : "root"},
                      {"label", e.label},
                      {"pos", e.pos}});
  j["events"] = events;
  return j.dump();
}

std::string partition_to_json(const NoncrossingPartition& p) {
  nlohmann::json j;
  j["blocks"] = p.blocks;
  return j.dump();
}

FiberPoset kreweras_oracle(int n) {
  FiberPoset poset;
  std::vector<NoncrossingPartition> parts = all_noncrossing_partitions(n);
  for (const auto& p : parts) poset.labels.push_back(p.to_string());
  poset.elements.assign(parts.size(), nullptr);
  poset.witnesses.assign(parts.size(), nullptr);
  poset.leq.assign(parts.size(), std::vector<bool>(parts.size(), false));
  for (size_t a = 0; a < parts.size(); ++a)
    for (size_t b = 0; b < parts.size(); ++b)
      poset.leq[a][b] = partition_refines(parts[a], parts[b]);
  compute_covers(poset);
  return poset;
}

}  // namespace bifib
