#include "upsilon/families.hpp"

namespace upsilon {

namespace {

VertexId vid(std::size_t i) { return static_cast<VertexId>(i); }

void need(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

PartialGraph named(const std::vector<std::pair<std::string, bool>>& vertices,
                   const std::vector<std::pair<std::string, std::string>>& edges) {
  PartialGraph g;
  std::map<std::string, VertexId> ids;
  for (const auto& [name, bd] : vertices) ids[name] = g.add_vertex(bd, name);
  for (const auto& [a, b] : edges) g.add_edge(ids.at(a), ids.at(b));
  return g;
}

VertexId by_name(const PartialGraph& g, const std::string& name) {
  for (VertexId v : g.vertices())
    if (g.name(v) == name) return v;
  throw PreconditionError("no vertex named " + name);
}

// Vertex map sending each source name to the target name given by `rename`.
template <class F>
Morphism by_names(const PartialGraph& s, const PartialGraph& t, F rename) {
  std::map<VertexId, VertexId> vm;
  for (VertexId v : s.vertices()) vm[v] = by_name(t, rename(s.name(v)));
  return morphism_from_vertex_map(s, t, vm);
}

std::string strip_letter(const std::string& s) { return s.substr(0, 1); }

}  // namespace

PartialGraph complete_graph(std::size_t n, const std::set<VertexId>& boundary) {
  PartialGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(boundary.count(vid(i)) > 0);
  for (VertexId b : boundary) need(g.has_vertex(b), "boundary vertex out of range");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(vid(i), vid(j));
  return g;
}

PartialGraph complete_bipartite(std::size_t m, std::size_t n) {
  PartialGraph g;
  for (std::size_t i = 0; i < m + n; ++i) g.add_vertex(i < m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g.add_edge(vid(i), vid(m + j));
  return g;
}

PartialGraph cycle(std::size_t n, const std::set<VertexId>& boundary) {
  need(n >= 1, "cycle needs n >= 1");
  PartialGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(boundary.count(vid(i)) > 0);
  for (VertexId b : boundary) need(g.has_vertex(b), "boundary vertex out of range");
  for (std::size_t i = 0; i < n; ++i) g.add_edge(vid(i), vid((i + 1) % n));
  return g;
}

PartialGraph cube(std::size_t n) {
  need(n <= 16, "cube dimension too large");
  PartialGraph g;
  const std::size_t nv = std::size_t{1} << n;
  for (std::size_t v = 0; v < nv; ++v) g.add_vertex(false);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t u = v ^ (std::size_t{1} << i);
      if (v < u) g.add_edge(vid(v), vid(u));
    }
  return g;
}

std::set<VertexId> cube_facet(std::size_t n) {
  std::set<VertexId> s;
  for (std::size_t v = 0; v < (std::size_t{1} << n); v += 2) s.insert(vid(v));
  return s;
}

EmbeddedPartialGraph wheel(std::size_t n, bool hub_boundary) {
  need(n >= 3, "wheel needs n >= 3");
  EmbeddedPartialGraph eg;
  PartialGraph& g = eg.graph;
  g.add_vertex(hub_boundary, "0");
  for (std::size_t k = 1; k <= n; ++k) g.add_vertex(false);
  for (std::size_t k = 1; k <= n; ++k) g.add_edge(0, vid(k));
  for (std::size_t k = 1; k <= n; ++k) g.add_edge(vid(k), vid(k % n + 1));
  for (std::size_t k = 1; k <= n; ++k) eg.rotation[0].push_back(dart_of(vid(k - 1)));
  for (std::size_t k = 1; k <= n; ++k) {
    EdgeKey to_next = vid(n + k - 1), spoke = vid(k - 1), from_prev = vid(n + (k + n - 2) % n);
    eg.rotation[vid(k)] = {dart_of(to_next), dart_of(spoke, true), dart_of(from_prev, true)};
  }
  if (hub_boundary) eg.boundary_order = {0};
  return eg;
}

VertexId clf_vertex(std::size_t m, std::size_t j, std::size_t k) { return vid(k * m + j % m); }

PartialGraph clf(std::size_t m, std::size_t n) {
  need(m >= 2 && n >= 1, "CLF needs m >= 2 and n >= 1");
  PartialGraph g;
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t j = 0; j < m; ++j)
      g.add_vertex_with_id(clf_vertex(m, j, k), k == 0, "(" + std::to_string(j) + "," + std::to_string(k) + ")");
  EdgeKey key = 0;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 1; k <= n; ++k) g.add_edge_with_key(key++, clf_vertex(m, j, k), clf_vertex(m, j + 1, n - k + 1));
    for (std::size_t k = 0; k <= n; ++k) g.add_edge_with_key(key++, clf_vertex(m, j, k), clf_vertex(m, j + 1, n - k));
  }
  return g;
}

VertexId clf_prime_vertex(std::size_t m, std::size_t n, std::size_t x, std::size_t y) {
  if (y > n + 1 || (x + y) % 2 != 0 || x >= 2 * m) throw PreconditionError("not a vertex of CLF'");
  return vid(y * m + x / 2);
}

PartialGraph clf_prime(std::size_t m, std::size_t n) {
  need(m >= 1 && n >= 1, "CLF' needs m >= 1 and n >= 1");
  PartialGraph g;
  for (std::size_t y = 0; y <= n + 1; ++y)
    for (std::size_t x = y % 2; x < 2 * m; x += 2)
      g.add_vertex_with_id(clf_prime_vertex(m, n, x, y), y == 0 || y == n + 1,
                           "(" + std::to_string(x) + "," + std::to_string(y) + ")");
  for (std::size_t y = 0; y <= n + 1; ++y)
    for (std::size_t x = y % 2; x < 2 * m; x += 2) {
      std::size_t x1 = (x + 1) % (2 * m);
      if (y + 1 <= n + 1) g.add_edge(clf_prime_vertex(m, n, x, y), clf_prime_vertex(m, n, x1, y + 1));
      if (y >= 1) g.add_edge(clf_prime_vertex(m, n, x, y), clf_prime_vertex(m, n, x1, y - 1));
    }
  return g;
}

Morphism clf_to_clf_prime(std::size_t m, std::size_t n) {
  PartialGraph s = clf(2 * m, n), t = clf_prime(m, 2 * n);
  std::map<VertexId, VertexId> vm;
  for (std::size_t j = 0; j < 2 * m; ++j)
    for (std::size_t k = 0; k <= n; ++k)
      vm[clf_vertex(2 * m, j, k)] = clf_prime_vertex(m, 2 * n, j, j % 2 == 0 ? 2 * k : 2 * (n - k) + 1);
  // Both graphs list each edge from its left column, which separates parallel edges when m = 1.
  Morphism f;
  f.source = s;
  f.target = t;
  f.vertex_map = vm;
  for (EdgeKey e : s.edge_keys()) {
    auto [a, b] = s.endpoints(e);
    std::optional<Dart> image;
    for (Dart d : t.out_darts(vm.at(a)))
      if (d % 2 == 0 && t.head(d) == vm.at(b)) image = d;
    if (!image) throw PreconditionError("internal: CLF edge has no image");
    f.map_edge(e, *image);
  }
  validate_morphism(f);
  return f;
}

Morphism clf_rotation_quotient(std::size_t k, std::size_t m, std::size_t n) {
  need(k >= 1, "rotation quotient needs k >= 1");
  Morphism f;
  f.source = clf(k * m, n);
  f.target = clf(m, n);
  for (std::size_t j = 0; j < k * m; ++j)
    for (std::size_t r = 0; r <= n; ++r) f.vertex_map[clf_vertex(k * m, j, r)] = clf_vertex(m, j % m, r);
  // Edge slot s of column j goes to slot s of column j mod m.
  const std::size_t per = 2 * n + 1;
  for (EdgeKey e : f.source.edge_keys()) {
    std::size_t j = static_cast<std::size_t>(e) / per, slot = static_cast<std::size_t>(e) % per;
    f.map_edge(e, dart_of(vid((j % m) * per + slot)));
  }
  validate_morphism(f);
  return f;
}

Morphism morphism_from_vertex_map(const PartialGraph& source, const PartialGraph& target,
                                  const std::map<VertexId, VertexId>& vertex_map) {
  Morphism f;
  f.source = source;
  f.target = target;
  f.vertex_map = vertex_map;
  for (EdgeKey k : source.edge_keys()) {
    auto [a, b] = source.endpoints(k);
    VertexId fa = vertex_map.at(a), fb = vertex_map.at(b);
    if (fa == fb) {
      f.collapse_edge(k);
      continue;
    }
    std::optional<Dart> image;
    for (Dart d : target.out_darts(fa)) {
      if (target.head(d) != fb) continue;
      if (image) throw PreconditionError("edge image is ambiguous (parallel target edges)");
      image = d;
    }
    if (!image) throw PreconditionError("no target edge between the images of edge " + std::to_string(k));
    f.map_edge(k, *image);
  }
  validate_morphism(f);
  return f;
}

namespace samples {

PartialGraph worked_example() {
  return named({{"v", false}, {"w", false}, {"z", true}, {"x", false}, {"y", false}},
               {{"z", "x"}, {"x", "y"}, {"z", "y"}, {"x", "v"}, {"v", "y"}, {"y", "w"}, {"w", "z"}, {"v", "w"}});
}

std::set<VertexId> worked_example_s() { return {3, 4}; }

PartialGraph flower_example() {
  return named({{"1", true}, {"2", true}, {"3", true}, {"4", true}, {"A", false}, {"B", false}, {"C", false}, {"D", false}},
               {{"A", "1"}, {"1", "B"}, {"B", "2"}, {"2", "C"}, {"C", "3"}, {"3", "D"}, {"D", "4"}, {"4", "A"},
                {"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "A"}});
}

Morphism star_fold() {
  PartialGraph s = named({{"c", false}, {"1a", true}, {"2a", true}, {"3a", true}, {"1b", true}, {"2b", true}, {"3b", true}},
                         {{"c", "1a"}, {"c", "2a"}, {"c", "3a"}, {"c", "1b"}, {"c", "2b"}, {"c", "3b"}});
  PartialGraph t = named({{"c", false}, {"1", true}, {"2", true}, {"3", true}}, {{"c", "1"}, {"c", "2"}, {"c", "3"}});
  return by_names(s, t, [](const std::string& x) { return x == "c" ? x : strip_letter(x); });
}

Morphism ladder_projection() {
  PartialGraph s = named({{"1A", true}, {"2A", false}, {"3A", true}, {"1B", true}, {"2B", false}, {"3B", true}},
                         {{"1A", "2A"}, {"2A", "3A"}, {"1B", "2B"}, {"2B", "3B"}, {"1A", "1B"}, {"2A", "2B"}, {"3A", "3B"}});
  PartialGraph t = named({{"1", true}, {"2", false}, {"3", true}}, {{"1", "2"}, {"2", "3"}});
  return by_names(s, t, strip_letter);
}

Morphism modified_projection() {
  PartialGraph s = named({{"1", true}, {"2A", false}, {"2B", false}, {"3", true}},
                         {{"1", "2A"}, {"2A", "3"}, {"1", "2B"}, {"2B", "3"}, {"2A", "2B"}});
  PartialGraph t = named({{"1", true}, {"2", false}, {"3", true}}, {{"1", "2"}, {"2", "3"}});
  return by_names(s, t, strip_letter);
}

PartialGraph spike_graph() {
  return named({{"0", true}, {"1", false}, {"2", true}, {"3", false}, {"4", false}},
               {{"0", "1"}, {"1", "2"}, {"2", "4"}, {"4", "3"}, {"3", "1"}});
}

PartialGraph spike_contracted() {
  PartialGraph g = spike_graph();
  g.remove_edge(0);
  g.remove_vertex(0);
  g.set_boundary(1, true);
  return g;
}

Morphism pullback_example() {
  PartialGraph s = named({{"1A", false}, {"2A", true}, {"3A", true}, {"1B", true}, {"2B", true}, {"3B", true}, {"1C", true}, {"2C", true}},
                         {{"1A", "2A"}, {"2A", "3A"}, {"1B", "2B"}, {"2B", "3B"}, {"1A", "1B"}, {"1B", "1C"},
                          {"2A", "2B"}, {"2B", "2C"}, {"3A", "3B"}});
  PartialGraph t = named({{"1", false}, {"2", true}, {"3", true}}, {{"1", "2"}, {"2", "3"}});
  return by_names(s, t, strip_letter);
}

PartialGraph layerable_extension_example() {
  return named({{"00", false}, {"01", true}, {"10", true}, {"21", true}, {"11", false}},
               {{"01", "00"}, {"00", "10"}, {"01", "11"}, {"11", "21"}, {"10", "11"}});
}

PartialGraph standard_form_example() {
  return named({{"1", false}, {"2", false}, {"3", true}, {"4", true}, {"5", true}},
               {{"1", "2"}, {"2", "3"}, {"2", "5"}, {"1", "5"}, {"1", "4"}, {"3", "5"}, {"4", "5"}, {"3", "4"}});
}

Morphism reducibility_cover() {
  PartialGraph t = named({{"1", true}, {"2", false}, {"3", false}, {"4", true}, {"5", false}, {"6", false}, {"7", true}},
                         {{"1", "2"}, {"2", "3"}, {"3", "1"}, {"3", "4"}, {"4", "5"}, {"5", "6"}, {"6", "7"}, {"7", "5"}});
  std::vector<std::pair<std::string, bool>> vs;
  for (int v = 1; v <= 7; ++v)
    for (char c : {'A', 'B'}) vs.emplace_back(std::to_string(v) + c, v == 1 || v == 4 || v == 7);
  PartialGraph s = named(vs, {{"3A", "1A"}, {"1A", "2B"}, {"2B", "3B"}, {"3B", "1B"}, {"1B", "2A"}, {"2A", "3A"},
                              {"3A", "4A"}, {"4A", "5A"}, {"3B", "4B"}, {"4B", "5B"}, {"5A", "7A"}, {"7A", "6B"},
                              {"6B", "5B"}, {"5B", "7B"}, {"7B", "6A"}, {"6A", "5A"}});
  return by_names(s, t, strip_letter);
}

}  // namespace samples

std::vector<std::string> family_names() {
  return {"complete",          "complete-bipartite", "cycle",          "cube",
          "wheel",             "clf",                "clf-prime",      "worked-example",
          "flower-example",    "standard-form-example", "layerable-extension-example",
          "spike-graph",       "reducibility-cover"};
}

FamilyInstance make_family(const std::string& name, const std::vector<long>& p) {
  auto arg = [&](std::size_t i, long lo, const char* what) {
    if (i >= p.size()) throw PreconditionError("family " + name + " needs parameter " + what);
    if (p[i] < lo) throw PreconditionError("family " + name + ": " + what + " must be at least " + std::to_string(lo));
    return static_cast<std::size_t>(p[i]);
  };
  auto opt = [&](std::size_t i, long dflt) { return i < p.size() ? p[i] : dflt; };
  auto first = [](std::size_t b) {
    std::set<VertexId> s;
    for (std::size_t i = 0; i < b; ++i) s.insert(vid(i));
    return s;
  };
  std::size_t max_params = 0;
  FamilyInstance r;
  if (name == "complete") {
    std::size_t n = arg(0, 1, "n");
    r.graph = complete_graph(n, first(std::min<std::size_t>(n, static_cast<std::size_t>(std::max(0L, opt(1, 0))))));
    max_params = 2;
  } else if (name == "complete-bipartite") {
    r.graph = complete_bipartite(arg(0, 0, "m"), arg(1, 0, "n"));
    max_params = 2;
  } else if (name == "cycle") {
    std::size_t n = arg(0, 1, "n");
    r.graph = cycle(n, first(std::min<std::size_t>(n, static_cast<std::size_t>(std::max(0L, opt(1, 0))))));
    max_params = 2;
  } else if (name == "cube") {
    r.graph = cube(arg(0, 0, "n"));
    max_params = 1;
  } else if (name == "wheel") {
    r.embedding = wheel(arg(0, 3, "n"), opt(1, 0) != 0);
    r.graph = r.embedding->graph;
    max_params = 2;
  } else if (name == "clf") {
    r.graph = clf(arg(0, 2, "m"), arg(1, 1, "n"));
    max_params = 2;
  } else if (name == "clf-prime") {
    r.graph = clf_prime(arg(0, 1, "m"), arg(1, 1, "n"));
    max_params = 2;
  } else if (name == "worked-example") {
    r.graph = samples::worked_example();
  } else if (name == "flower-example") {
    r.graph = samples::flower_example();
  } else if (name == "standard-form-example") {
    r.graph = samples::standard_form_example();
  } else if (name == "layerable-extension-example") {
    r.graph = samples::layerable_extension_example();
  } else if (name == "spike-graph") {
    r.graph = samples::spike_graph();
  } else if (name == "reducibility-cover") {
    r.graph = samples::reducibility_cover().source;
  } else {
    throw PreconditionError("unknown family " + name);
  }
  if (p.size() > max_params) throw PreconditionError("too many parameters for family " + name);
  return r;
}

}  // namespace upsilon
