#include "bifib/base.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bifib {

Arrow Backend::compose(const Arrow& a, const Arrow& b) const {
  if (a.cod != b.dom)
    fail(ErrorKind::NonComposable,
         "cod(" + arrow_name(a) + ") != dom(" + arrow_name(b) + ")");
  return compose_impl(a, b);
}

std::vector<Arrow> Backend::fillers(const Arrow& f, const Arrow& x, const Arrow& y,
                                    const Arrow& k) const {
  if (f.dom != x.dom || f.cod != y.dom || x.cod != k.dom || y.cod != k.cod ||
      compose(f, y) != compose(x, k))
    fail(ErrorKind::SquareNotCommuting, "fillers: f.y != x.k");
  std::vector<Arrow> out;
  for (const Arrow& e : left_divisors(f, x))
    if (compose(e, k) == y) out.push_back(e);
  return out;
}

bool Backend::le_fact(const Arrow& a, const Arrow& b, const Arrow& c, const Arrow& d) const {
  return !fillers(a, c, b, d).empty();
}

std::vector<Arrow> Backend::class_out(const std::string& cls, ObjId a, size_t bound) const {
  std::vector<Arrow> out;
  for (ObjId b : objects())
    for (const Arrow& f : hom(a, b, bound))
      if (in_class(cls, f)) out.push_back(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Arrow> Backend::class_in(const std::string& cls, ObjId b, size_t bound) const {
  std::vector<Arrow> out;
  for (ObjId a : objects())
    for (const Arrow& f : hom(a, b, bound))
      if (in_class(cls, f)) out.push_back(f);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------- FreeCat

FreeCat::FreeCat(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (size_t i = 0; i < vertices_.size(); ++i) vertex_by_name_[vertices_[i]] = int(i);
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.src < 0 || e.src >= int(vertices_.size()) || e.dst < 0 ||
        e.dst >= int(vertices_.size()))
      fail(ErrorKind::IllFormed, "bad edge endpoints in free category");
    edge_by_name_[e.name] = int(i);
  }
}

std::vector<ObjId> FreeCat::objects() const {
  std::vector<ObjId> out;
  for (size_t i = 0; i < vertices_.size(); ++i) out.push_back(ObjId{int(i)});
  return out;
}

std::string FreeCat::object_name(ObjId o) const { return vertices_.at(o.v); }

std::optional<ObjId> FreeCat::object_by_name(const std::string& s) const {
  auto it = vertex_by_name_.find(s);
  if (it == vertex_by_name_.end()) return std::nullopt;
  return ObjId{it->second};
}

Arrow FreeCat::identity(ObjId o) const { return Arrow{o, o, {}}; }

Arrow FreeCat::edge_arrow(int idx) const {
  const Edge& e = edges_.at(idx);
  return Arrow{ObjId{e.src}, ObjId{e.dst}, {idx}};
}

Arrow FreeCat::compose_impl(const Arrow& a, const Arrow& b) const {
  Arrow r{a.dom, b.cod, a.data};
  r.data.insert(r.data.end(), b.data.begin(), b.data.end());
  return r;
}

std::vector<Arrow> FreeCat::left_divisors(const Arrow& a, const Arrow& h) const {
  if (a.dom != h.dom) fail(ErrorKind::NonComposable, "left_divisors: dom mismatch");
  if (a.data.size() > h.data.size() ||
      !std::equal(a.data.begin(), a.data.end(), h.data.begin()))
    return {};
  Arrow g{a.cod, h.cod, {h.data.begin() + a.data.size(), h.data.end()}};
  return {g};
}

std::vector<Arrow> FreeCat::right_divisors(const Arrow& h, const Arrow& b) const {
  if (b.cod != h.cod) fail(ErrorKind::NonComposable, "right_divisors: cod mismatch");
  if (b.data.size() > h.data.size() ||
      !std::equal(b.data.rbegin(), b.data.rend(), h.data.rbegin()))
    return {};
  Arrow g{h.dom, b.dom, {h.data.begin(), h.data.end() - b.data.size()}};
  return {g};
}

std::vector<Arrow> FreeCat::hom(ObjId a, ObjId b, size_t bound) const {
  std::vector<Arrow> out;
  // BFS over words by length.
  std::vector<Arrow> frontier = {identity(a)};
  for (size_t len = 0; len <= bound; ++len) {
    for (const Arrow& w : frontier)
      if (w.cod == b) out.push_back(w);
    if (len == bound) break;
    std::vector<Arrow> next;
    for (const Arrow& w : frontier)
      for (size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].src == w.cod.v) next.push_back(compose_impl(w, edge_arrow(int(i))));
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string FreeCat::arrow_name(const Arrow& a) const {
  if (a.data.empty()) return "id:" + object_name(a.dom);
  std::string s;
  for (size_t i = 0; i < a.data.size(); ++i) {
    if (i) s += '.';
    s += edges_.at(a.data[i]).name;
  }
  return s;
}

std::optional<Arrow> FreeCat::parse_arrow(const std::string& s) const {
  if (s.rfind("id:", 0) == 0) {
    auto o = object_by_name(s.substr(3));
    if (!o) return std::nullopt;
    return identity(*o);
  }
  std::vector<int> word;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, '.')) {
    auto it = edge_by_name_.find(part);
    if (it == edge_by_name_.end()) return std::nullopt;
    word.push_back(it->second);
  }
  if (word.empty()) return std::nullopt;
  for (size_t i = 0; i + 1 < word.size(); ++i)
    if (edges_[word[i]].dst != edges_[word[i + 1]].src) return std::nullopt;
  return Arrow{ObjId{edges_[word.front()].src}, ObjId{edges_[word.back()].dst}, word};
}

std::shared_ptr<FreeCat> FreeCat::from_presentation(const std::string& text) {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::map<std::string, int> vidx;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "objects:") {
      std::string v;
      while (ls >> v) {
        vidx[v] = int(vertices.size());
        vertices.push_back(v);
      }
    } else if (kw == "arrow") {
      std::string name, src, arrowsym, dst;
      ls >> name >> src >> arrowsym >> dst;
      if (!name.empty() && name.back() == ':') name.pop_back();
      if (arrowsym != "->") fail(ErrorKind::Parse, "expected '->' in arrow line");
      if (!vidx.count(src) || !vidx.count(dst))
        fail(ErrorKind::Parse, "unknown vertex in arrow line: " + line);
      edges.push_back(Edge{name, vidx[src], vidx[dst]});
    } else {
      fail(ErrorKind::Parse, "unrecognized presentation line: " + line);
    }
  }
  return std::make_shared<FreeCat>(std::move(vertices), std::move(edges));
}

// ---------------------------------------------------------------- FinPoset

FinPoset::FinPoset(std::vector<std::string> elements, std::vector<std::pair<int, int>> rels)
    : elements_(std::move(elements)) {
  size_t n = elements_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (auto [a, b] : rels) leq_[a][b] = true;
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (leq_[i][k] && leq_[k][j]) leq_[i][j] = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && leq_[i][j] && leq_[j][i])
        fail(ErrorKind::IllFormed, "poset relation is not antisymmetric");
}

std::shared_ptr<FinPoset> FinPoset::chain(int n) {
  std::vector<std::string> elems;
  std::vector<std::pair<int, int>> rels;
  for (int i = 0; i <= n; ++i) elems.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) rels.push_back({i, i + 1});
  return std::make_shared<FinPoset>(std::move(elems), std::move(rels));
}

std::vector<ObjId> FinPoset::objects() const {
  std::vector<ObjId> out;
  for (size_t i = 0; i < elements_.size(); ++i) out.push_back(ObjId{int(i)});
  return out;
}

std::string FinPoset::object_name(ObjId o) const { return elements_.at(o.v); }

std::optional<ObjId> FinPoset::object_by_name(const std::string& s) const {
  for (size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == s) return ObjId{int(i)};
  return std::nullopt;
}

Arrow FinPoset::identity(ObjId o) const { return Arrow{o, o, {}}; }

Arrow FinPoset::arrow(ObjId a, ObjId b) const {
  if (!leq(a, b)) fail(ErrorKind::IllFormed, "no poset arrow " + object_name(a) + " -> " + object_name(b));
  return Arrow{a, b, {}};
}

Arrow FinPoset::compose_impl(const Arrow& a, const Arrow& b) const {
  return Arrow{a.dom, b.cod, {}};
}

std::vector<Arrow> FinPoset::left_divisors(const Arrow& a, const Arrow& h) const {
  if (a.dom != h.dom) fail(ErrorKind::NonComposable, "left_divisors: dom mismatch");
  if (leq(a.cod, h.cod)) return {Arrow{a.cod, h.cod, {}}};
  return {};
}

std::vector<Arrow> FinPoset::right_divisors(const Arrow& h, const Arrow& b) const {
  if (b.cod != h.cod) fail(ErrorKind::NonComposable, "right_divisors: cod mismatch");
  if (leq(h.dom, b.dom)) return {Arrow{h.dom, b.dom, {}}};
  return {};
}

std::vector<Arrow> FinPoset::hom(ObjId a, ObjId b, size_t) const {
  if (leq(a, b)) return {Arrow{a, b, {}}};
  return {};
}

std::string FinPoset::arrow_name(const Arrow& a) const {
  if (a.dom == a.cod) return "id:" + object_name(a.dom);
  // Chain posets name their covering steps f0, f1, ...
  if (object_name(a.dom) == std::to_string(a.dom.v) && a.cod.v == a.dom.v + 1)
    return "f" + std::to_string(a.dom.v);
  return object_name(a.dom) + "->" + object_name(a.cod);
}

std::optional<Arrow> FinPoset::parse_arrow(const std::string& s) const {
  if (s.rfind("id:", 0) == 0) {
    auto o = object_by_name(s.substr(3));
    if (!o) return std::nullopt;
    return identity(*o);
  }
  if (s == "f") {  // the single step of the interval category
    if (elements_.size() == 2 && leq(ObjId{0}, ObjId{1})) return Arrow{ObjId{0}, ObjId{1}, {}};
    return std::nullopt;
  }
  if (s.size() > 1 && s[0] == 'f' && std::isdigit(static_cast<unsigned char>(s[1]))) {
    int i = std::stoi(s.substr(1));
    if (i >= 0 && i + 1 < int(elements_.size()) && leq(ObjId{i}, ObjId{i + 1}))
      return Arrow{ObjId{i}, ObjId{i + 1}, {}};
  }
  auto pos = s.find("->");
  if (pos == std::string::npos) return std::nullopt;
  auto a = object_by_name(s.substr(0, pos)), b = object_by_name(s.substr(pos + 2));
  if (!a || !b || !leq(*a, *b)) return std::nullopt;
  return Arrow{*a, *b, {}};
}

std::shared_ptr<FinPoset> FinPoset::from_presentation(const std::string& text) {
  std::vector<std::string> elems;
  std::vector<std::pair<int, int>> rels;
  std::map<std::string, int> idx;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "objects:") {
      std::string v;
      while (ls >> v) {
        idx[v] = int(elems.size());
        elems.push_back(v);
      }
    } else if (kw == "rel:") {
      std::string a, le, b;
      ls >> a >> le >> b;
      if (le != "<=") fail(ErrorKind::Parse, "expected '<=' in rel line");
      if (!idx.count(a) || !idx.count(b)) fail(ErrorKind::Parse, "unknown element: " + line);
      rels.push_back({idx[a], idx[b]});
    } else {
      fail(ErrorKind::Parse, "unrecognized poset line: " + line);
    }
  }
  return std::make_shared<FinPoset>(std::move(elems), std::move(rels));
}

// -------------------------------------------------------------- SimplexCat

SimplexCat::SimplexCat(int max_n) : max_n_(max_n) {
  if (max_n < 0) fail(ErrorKind::IllFormed, "simplex truncation must be >= 0");
}

std::vector<ObjId> SimplexCat::objects() const {
  std::vector<ObjId> out;
  for (int i = 0; i <= max_n_; ++i) out.push_back(ObjId{i});
  return out;
}

std::string SimplexCat::object_name(ObjId o) const { return std::to_string(o.v); }

std::optional<ObjId> SimplexCat::object_by_name(const std::string& s) const {
  for (int i = 0; i <= max_n_; ++i)
    if (s == std::to_string(i)) return ObjId{i};
  return std::nullopt;
}

Arrow SimplexCat::identity(ObjId o) const {
  Arrow a{o, o, {}};
  for (int i = 0; i < o.v; ++i) a.data.push_back(i);
  return a;
}

Arrow SimplexCat::compose_impl(const Arrow& a, const Arrow& b) const {
  Arrow r{a.dom, b.cod, {}};
  r.data.reserve(a.data.size());
  for (int x : a.data) r.data.push_back(b.data.at(x));
  return r;
}

std::vector<Arrow> SimplexCat::hom(ObjId a, ObjId b, size_t) const {
  // All weakly increasing tuples of length |a| with values in [0, |b|).
  std::vector<Arrow> out;
  if (a.v == 0) {
    out.push_back(Arrow{a, b, {}});
    return out;
  }
  if (b.v == 0) return out;
  std::vector<int> t(a.v, 0);
  while (true) {
    out.push_back(Arrow{a, b, t});
    int i = a.v - 1;
    while (i >= 0 && t[i] == b.v - 1) --i;
    if (i < 0) break;
    int v = t[i] + 1;
    for (int j = i; j < a.v; ++j) t[j] = v;
  }
  return out;
}

std::vector<Arrow> SimplexCat::left_divisors(const Arrow& a, const Arrow& h) const {
  if (a.dom != h.dom) fail(ErrorKind::NonComposable, "left_divisors: dom mismatch");
  auto key = std::make_pair(a, h);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = ldiv_cache_.find(key);
    if (it != ldiv_cache_.end()) return it->second;
  }
  std::vector<Arrow> out;
  for (const Arrow& g : hom(a.cod, h.cod, 0))
    if (compose_impl(a, g) == h) out.push_back(g);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  ldiv_cache_.emplace(std::move(key), out);
  return out;
}

std::vector<Arrow> SimplexCat::right_divisors(const Arrow& h, const Arrow& b) const {
  if (b.cod != h.cod) fail(ErrorKind::NonComposable, "right_divisors: cod mismatch");
  auto key = std::make_pair(h, b);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = rdiv_cache_.find(key);
    if (it != rdiv_cache_.end()) return it->second;
  }
  std::vector<Arrow> out;
  for (const Arrow& g : hom(h.dom, b.dom, 0))
    if (compose_impl(g, b) == h) out.push_back(g);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  rdiv_cache_.emplace(std::move(key), out);
  return out;
}

bool SimplexCat::in_class(const std::string& cls, const Arrow& a) const {
  if (cls == "all") return true;
  if (cls == "epi") {  // surjective
    std::vector<bool> hit(a.cod.v, false);
    for (int x : a.data) hit[x] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }
  if (cls == "mono") {  // injective
    for (size_t i = 1; i < a.data.size(); ++i)
      if (a.data[i] == a.data[i - 1]) return false;
    return true;
  }
  return false;
}

Arrow SimplexCat::sigma(int i, int n) const {
  if (n + 1 > max_n_ || i < 0 || i >= n)
    fail(ErrorKind::IllFormed, "sigma index out of range");
  Arrow a{ObjId{n + 1}, ObjId{n}, {}};
  for (int x = 0; x <= n; ++x) a.data.push_back(x <= i ? x : x - 1);
  return a;
}

Arrow SimplexCat::delta(int i, int n) const {
  if (n + 1 > max_n_ || i < 0 || i > n)
    fail(ErrorKind::IllFormed, "delta index out of range");
  Arrow a{ObjId{n}, ObjId{n + 1}, {}};
  for (int x = 0; x < n; ++x) a.data.push_back(x < i ? x : x + 1);
  return a;
}

std::string SimplexCat::arrow_name(const Arrow& a) const {
  if (a == identity(a.dom)) return "id^" + std::to_string(a.dom.v);
  if (a.dom.v == a.cod.v + 1) {
    for (int i = 0; i < a.cod.v; ++i)
      if (a == sigma(i, a.cod.v)) return "s" + std::to_string(i) + "^" + std::to_string(a.cod.v);
  }
  if (a.cod.v == a.dom.v + 1) {
    for (int i = 0; i <= a.dom.v; ++i)
      if (a == delta(i, a.dom.v)) return "d" + std::to_string(i) + "^" + std::to_string(a.dom.v);
  }
  std::string s = "[";
  for (size_t i = 0; i < a.data.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(a.data[i]);
  }
  s += "]:" + std::to_string(a.dom.v) + "->" + std::to_string(a.cod.v);
  return s;
}

std::optional<Arrow> SimplexCat::parse_arrow(const std::string& s) const {
  try {
    if (s.rfind("id^", 0) == 0) return identity(ObjId{std::stoi(s.substr(3))});
    if ((s[0] == 's' || s[0] == 'd') && s.find('^') != std::string::npos) {
      auto caret = s.find('^');
      int i = std::stoi(s.substr(1, caret - 1));
      int n = std::stoi(s.substr(caret + 1));
      return s[0] == 's' ? sigma(i, n) : delta(i, n);
    }
    if (s[0] == '[') {
      auto close = s.find(']');
      auto colon = s.find(':', close);
      auto arrowp = s.find("->", colon);
      if (close == std::string::npos || colon == std::string::npos ||
          arrowp == std::string::npos)
        return std::nullopt;
      std::istringstream body(s.substr(1, close - 1));
      std::vector<int> data;
      int x;
      while (body >> x) data.push_back(x);
      int m = std::stoi(s.substr(colon + 1, arrowp - colon - 1));
      int n = std::stoi(s.substr(arrowp + 2));
      if (m > max_n_ || n > max_n_ || int(data.size()) != m) return std::nullopt;
      for (size_t i = 1; i < data.size(); ++i)
        if (data[i] < data[i - 1]) return std::nullopt;
      for (int v : data)
        if (v < 0 || v >= n) return std::nullopt;
      return Arrow{ObjId{m}, ObjId{n}, data};
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

// -------------------------------------------------------------- MonoidNat

std::optional<ObjId> MonoidNat::object_by_name(const std::string& s) const {
  if (s == "*" || s == "0") return ObjId{0};
  return std::nullopt;
}

Arrow MonoidNat::compose_impl(const Arrow& a, const Arrow& b) const {
  return Arrow{a.dom, b.cod, {a.data[0] + b.data[0]}};
}

std::vector<Arrow> MonoidNat::left_divisors(const Arrow& a, const Arrow& h) const {
  if (h.data[0] >= a.data[0]) return {step(h.data[0] - a.data[0])};
  return {};
}

std::vector<Arrow> MonoidNat::right_divisors(const Arrow& h, const Arrow& b) const {
  if (h.data[0] >= b.data[0]) return {step(h.data[0] - b.data[0])};
  return {};
}

std::vector<Arrow> MonoidNat::hom(ObjId, ObjId, size_t bound) const {
  std::vector<Arrow> out;
  for (size_t n = 0; n <= bound; ++n) out.push_back(step(int(n)));
  return out;
}

std::string MonoidNat::arrow_name(const Arrow& a) const { return std::to_string(a.data[0]); }

std::optional<Arrow> MonoidNat::parse_arrow(const std::string& s) const {
  if (s == "f") return step(1);
  if (s.rfind("id", 0) == 0) return step(0);
  try {
    size_t pos = 0;
    int n = std::stoi(s, &pos);
    if (pos == s.size() && n >= 0) return step(n);
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

// ------------------------------------------------------------ DiscreteNat

std::vector<ObjId> DiscreteNat::objects() const {
  std::vector<ObjId> out;
  for (int i = 0; i <= max_n_; ++i) out.push_back(ObjId{i});
  return out;
}

std::optional<ObjId> DiscreteNat::object_by_name(const std::string& s) const {
  if (s == "*" && max_n_ == 0) return ObjId{0};
  try {
    size_t pos = 0;
    int n = std::stoi(s, &pos);
    if (pos == s.size() && n >= 0 && n <= max_n_) return ObjId{n};
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

Arrow DiscreteNat::compose_impl(const Arrow& a, const Arrow& b) const {
  return Arrow{a.dom, b.cod, {}};
}

std::vector<Arrow> DiscreteNat::left_divisors(const Arrow& a, const Arrow& h) const {
  if (a.cod == h.cod) return {identity(a.cod)};
  return {};
}

std::vector<Arrow> DiscreteNat::right_divisors(const Arrow& h, const Arrow& b) const {
  if (h.dom == b.dom) return {identity(h.dom)};
  return {};
}

std::vector<Arrow> DiscreteNat::hom(ObjId a, ObjId b, size_t) const {
  if (a == b) return {identity(a)};
  return {};
}

std::string DiscreteNat::arrow_name(const Arrow& a) const {
  return "id:" + object_name(a.dom);
}

std::optional<Arrow> DiscreteNat::parse_arrow(const std::string& s) const {
  if (s.rfind("id:", 0) == 0) {
    auto o = object_by_name(s.substr(3));
    if (o) return identity(*o);
  }
  return std::nullopt;
}

// ------------------------------------------------------------- factories

namespace {
std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

std::shared_ptr<Backend> backend_from_spec(const std::string& spec) {
  std::istringstream in(spec);
  std::string kind;
  in >> kind;
  if (kind == "simplex") {
    int n;
    in >> n;
    return std::make_shared<SimplexCat>(n);
  }
  if (kind == "omega") {
    int n;
    in >> n;
    return FinPoset::chain(n);
  }
  if (kind == "interval") return FinPoset::chain(1);
  if (kind == "free") {
    std::string path;
    in >> path;
    return FreeCat::from_presentation(read_file(path));
  }
  if (kind == "poset") {
    std::string path;
    in >> path;
    return FinPoset::from_presentation(read_file(path));
  }
  if (kind == "monoid-nat") return std::make_shared<MonoidNat>();
  if (kind == "discrete-nat") {
    int n;
    in >> n;
    return std::make_shared<DiscreteNat>(n);
  }
  fail(ErrorKind::Parse, "unknown backend spec: " + spec);
}

// -------------------------------------------------------------- FunctorDef

ObjId FunctorDef::obj(ObjId x) const {
  if (is_identity_functor) return x;
  return obj_map.at(x.v);
}

Arrow FunctorDef::map(const Arrow& d) const {
  if (is_identity_functor) return d;
  if (auto* fc = dynamic_cast<const FreeCat*>(dom_cat.get())) {
    (void)fc;
    Arrow out = cod_cat->identity(obj(d.dom));
    for (int e : d.data) out = cod_cat->compose(out, edge_map.at(e));
    return out;
  }
  // Identity-only domains.
  if (d.dom == d.cod && dom_cat->is_identity(d)) return cod_cat->identity(obj(d.dom));
  fail(ErrorKind::IllFormed, "functor cannot map arrow of this domain backend");
}

std::vector<Arrow> FunctorDef::fiber_arrows(ObjId x, ObjId y, const Arrow& f,
                                            size_t budget) const {
  if (obj(x) != f.dom || obj(y) != f.cod) return {};
  if (is_identity_functor) return {f};
  auto* fc = dynamic_cast<const FreeCat*>(dom_cat.get());
  if (!fc) {
    // Identity-only domains: the only candidate is id_x.
    if (x == y && cod_cat->is_identity(f)) return {dom_cat->identity(x)};
    return {};
  }
  // DFS over domain words whose images compose to exactly f.
  std::vector<Arrow> out;
  size_t steps = 0;
  std::function<void(Arrow, Arrow)> go = [&](Arrow word, Arrow image) {
    if (++steps > budget)
      fail(ErrorKind::BudgetExceeded, "fiber_arrows search exceeded budget");
    if (word.cod == y && image == f) out.push_back(word);
    for (size_t e = 0; e < fc->edge_count(); ++e) {
      if (fc->edge(e).src != word.cod.v) continue;
      const Arrow& img = edge_map.at(e);
      Arrow next = cod_cat->compose(image, img);
      // Prune: the image so far must stay a left divisor of f.
      if (cod_cat->left_divisors(next, f).empty()) continue;
      go(fc->compose(word, fc->edge_arrow(int(e))), next);
    }
  };
  go(dom_cat->identity(x), cod_cat->identity(f.dom));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void FunctorDef::validate() const {
  if (is_identity_functor) return;
  for (ObjId x : dom_cat->objects()) {
    ObjId a = obj(x);
    if (cod_cat->object_name(a).empty()) fail(ErrorKind::IllFormed, "bad object image");
    if (map(dom_cat->identity(x)) != cod_cat->identity(a))
      fail(ErrorKind::IllFormed, "functor does not preserve identity");
  }
  if (auto* fc = dynamic_cast<const FreeCat*>(dom_cat.get())) {
    for (size_t e = 0; e < fc->edge_count(); ++e) {
      const Arrow& img = edge_map.at(e);
      if (img.dom != obj(ObjId{fc->edge(e).src}) || img.cod != obj(ObjId{fc->edge(e).dst}))
        fail(ErrorKind::IllFormed, "edge image endpoints disagree with object images");
    }
  }
}

std::shared_ptr<const FunctorDef> identity_functor(std::shared_ptr<const Backend> c) {
  auto f = std::make_shared<FunctorDef>();
  f->dom_cat = c;
  f->cod_cat = c;
  f->is_identity_functor = true;
  return f;
}

std::shared_ptr<const FunctorDef> functor_from_file(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  auto f = std::make_shared<FunctorDef>();
  std::vector<std::pair<std::string, std::string>> obj_lines, arr_lines;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "dom:") {
      std::string rest;
      std::getline(ls, rest);
      f->dom_cat = backend_from_spec(rest);
    } else if (kw == "cod:") {
      std::string rest;
      std::getline(ls, rest);
      f->cod_cat = backend_from_spec(rest);
    } else if (kw == "obj" || kw == "arr") {
      std::string a, arrow, b;
      ls >> a >> arrow >> b;
      if (arrow != "->") fail(ErrorKind::Parse, "expected '->' in functor line");
      (kw == "obj" ? obj_lines : arr_lines).push_back({a, b});
    } else {
      fail(ErrorKind::Parse, "unrecognized functor line: " + line);
    }
  }
  if (!f->dom_cat || !f->cod_cat) fail(ErrorKind::Parse, "functor file needs dom: and cod:");
  f->obj_map.assign(f->dom_cat->objects().size(), ObjId{-1});
  for (auto& [x, a] : obj_lines) {
    auto xo = f->dom_cat->object_by_name(x);
    auto ao = f->cod_cat->object_by_name(a);
    if (!xo || !ao) fail(ErrorKind::Parse, "unknown object in functor file: " + x + " -> " + a);
    f->obj_map[xo->v] = *ao;
  }
  for (ObjId x : f->dom_cat->objects())
    if (f->obj_map[x.v].v < 0)
      fail(ErrorKind::Parse, "functor file misses object image for " +
                                 f->dom_cat->object_name(x));
  if (auto* fc = dynamic_cast<const FreeCat*>(f->dom_cat.get())) {
    f->edge_map.assign(fc->edge_count(), Arrow{});
    std::vector<bool> seen(fc->edge_count(), false);
    for (auto& [d, img] : arr_lines) {
      auto de = fc->parse_arrow(d);
      if (!de || de->data.size() != 1) fail(ErrorKind::Parse, "arr lines must name a generator");
      auto ia = f->cod_cat->parse_arrow(img);
      if (!ia) fail(ErrorKind::Parse, "cannot parse arrow image: " + img);
      f->edge_map[de->data[0]] = *ia;
      seen[de->data[0]] = true;
    }
    for (size_t e = 0; e < fc->edge_count(); ++e)
      if (!seen[e]) fail(ErrorKind::Parse, "functor file misses image for edge " + fc->edge(e).name);
  } else if (!arr_lines.empty()) {
    fail(ErrorKind::Parse, "arr lines are only meaningful for free domains");
  }
  f->validate();
  return f;
}

}  // namespace bifib
