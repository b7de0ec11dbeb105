#pragma once

#include <numeric>
#include <optional>
#include <queue>

#include "relhom/structure.hpp"

namespace relhom {

// One directed edge (a_j, a_{j+1}) per consecutive pair per tuple, loops when
// the entries coincide.
inline Multigraph directed_shadow(const Structure& a) {
  Multigraph g;
  g.directed = true;
  g.nodes = a.vertices;
  for (const auto& rel : a.relations)
    for (const auto& t : rel)
      for (size_t j = 0; j + 1 < t.size(); ++j) g.add_edge(t[j], t[j + 1]);
  return g;
}

// Symmetrisation of the directed shadow; multiplicities preserved.
inline Multigraph shadow(const Structure& a) {
  Multigraph g;
  g.directed = false;
  g.nodes = a.vertices;
  for (const auto& rel : a.relations)
    for (const auto& t : rel)
      for (size_t j = 0; j + 1 < t.size(); ++j) g.add_edge(t[j], t[j + 1]);
  return g;
}

// Bipartite multigraph between bs A and Block(A); one edge per occurrence of a
// vertex in a tuple, so a repeated vertex yields parallel edges.
inline Multigraph incidence_graph(const Structure& a) {
  Multigraph g;
  g.directed = false;
  g.nodes = a.vertices;
  for (size_t i = 0; i < a.relations.size(); ++i)
    for (const auto& t : a.relations[i]) {
      std::string block = "(" + std::to_string(i) + ",(";
      for (size_t j = 0; j < t.size(); ++j) block += (j ? "," : "") + a.vertices[t[j]];
      block += "))";
      int bnode = g.node_count();
      g.nodes.push_back(block);
      for (int v : t) g.add_edge(v, bnode);
    }
  return g;
}

namespace detail {

// Connected components of a multigraph, ignoring edge direction.
inline std::vector<int> graph_components(const Multigraph& g) {
  std::vector<std::vector<int>> adj(g.node_count());
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(g.node_count(), -1);
  int c = 0;
  for (int s = 0; s < g.node_count(); ++s) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = c;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = c;
          q.push(v);
        }
    }
    ++c;
  }
  return comp;
}

inline bool graph_connected(const Multigraph& g) {
  auto comp = graph_components(g);
  return comp.empty() || *std::max_element(comp.begin(), comp.end()) == 0;
}

// A multigraph is a tree when it is connected and acyclic; any loop or
// parallel edge counts as a cycle.
inline bool graph_is_tree(const Multigraph& g) {
  if (!graph_connected(g)) return false;
  if (g.edges.size() + 1 != static_cast<size_t>(g.node_count())) return false;
  for (auto [u, v] : g.edges)
    if (u == v) return false;
  auto dedup = g.edges;
  std::sort(dedup.begin(), dedup.end());
  return std::adjacent_find(dedup.begin(), dedup.end()) == dedup.end();
}

inline bool graph_is_forest(const Multigraph& g) {
  for (auto [u, v] : g.edges)
    if (u == v) return false;
  auto dedup = g.edges;
  std::sort(dedup.begin(), dedup.end());
  if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end()) return false;
  auto comp = graph_components(g);
  int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  return g.edges.size() + ncomp == static_cast<size_t>(g.node_count());
}

// Directed cycle test on the directed shadow (Kahn).
inline bool graph_has_directed_cycle(const Multigraph& g) {
  std::vector<int> indeg(g.node_count(), 0);
  std::vector<std::vector<int>> out(g.node_count());
  for (auto [u, v] : g.edges) {
    out[u].push_back(v);
    ++indeg[v];
  }
  std::queue<int> q;
  for (int v = 0; v < g.node_count(); ++v)
    if (indeg[v] == 0) q.push(v);
  int removed = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    ++removed;
    for (int v : out[u])
      if (--indeg[v] == 0) q.push(v);
  }
  return removed != g.node_count();
}

}  // namespace detail

// Per-vertex integer vectors indexed by (i, j), i in I, 1 <= j < delta_i.
using HeightLabel = std::vector<std::vector<int>>;

// Height labelling: along every kind-i tuple, coordinate (i,j) increases by
// one from position j to j+1 and all other coordinates stay equal. Anchored so
// the lowest-index vertex of each component gets the zero vector; absent when
// the constraints are contradictory.
inline std::optional<HeightLabel> height_labelling(const Structure& a) {
  const int n = a.vertex_count();
  const int w = a.sig.label_width();
  std::vector<int> coord_base(a.sig.arities.size(), 0);
  for (size_t i = 1; i < a.sig.arities.size(); ++i)
    coord_base[i] = coord_base[i - 1] + a.sig.arities[i - 1] - 1;

  // Difference constraints label[t[j+1]] - label[t[j]] = unit(i,j) as an
  // adjacency list over shadow edges.
  struct Arc {
    int to;
    int coord;
    int sign;
  };
  std::vector<std::vector<Arc>> adj(n);
  for (size_t i = 0; i < a.relations.size(); ++i)
    for (const auto& t : a.relations[i])
      for (size_t j = 0; j + 1 < t.size(); ++j) {
        int c = coord_base[i] + static_cast<int>(j);
        adj[t[j]].push_back({t[j + 1], c, +1});
        adj[t[j + 1]].push_back({t[j], c, -1});
      }

  HeightLabel label(n);
  std::vector<char> done(n, 0);
  for (int s = 0; s < n; ++s) {
    if (done[s]) continue;
    label[s].assign(w, 0);
    done[s] = 1;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& arc : adj[u]) {
        std::vector<int> want = label[u];
        want[arc.coord] += arc.sign;
        if (!done[arc.to]) {
          label[arc.to] = std::move(want);
          done[arc.to] = 1;
          q.push(arc.to);
        } else if (label[arc.to] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return label;
}

struct ClassifyFlags {
  bool connected = false;
  bool tree = false;
  bool forest = false;
  bool path = false;
  bool acyclic = false;
  bool balanced = false;
};

// connected <=> Sh(A) connected; tree/forest via the shadow; path additionally
// requires every edge to intersect at most two other edges and every vertex to
// lie in at most two edges; acyclic <=> no directed cycle in DSh(A); balanced
// <=> a height labelling exists.
inline ClassifyFlags classify(const Structure& a) {
  ClassifyFlags f;
  Multigraph sh = shadow(a);
  f.connected = detail::graph_connected(sh);
  f.tree = detail::graph_is_tree(sh);
  f.forest = detail::graph_is_forest(sh);
  f.acyclic = !detail::graph_has_directed_cycle(directed_shadow(a));
  f.balanced = height_labelling(a).has_value();

  if (f.tree) {
    // Edge list over all kinds, as vertex sets.
    std::vector<std::vector<int>> edges;
    for (const auto& rel : a.relations)
      for (const auto& t : rel) {
        auto s = t;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        edges.push_back(std::move(s));
      }
    std::vector<int> vertex_deg(a.vertex_count(), 0);
    for (const auto& e : edges)
      for (int v : e) ++vertex_deg[v];
    bool ok = std::all_of(vertex_deg.begin(), vertex_deg.end(), [](int d) { return d <= 2; });
    for (size_t p = 0; p < edges.size() && ok; ++p) {
      int touching = 0;
      for (size_t q = 0; q < edges.size(); ++q) {
        if (p == q) continue;
        bool meet = false;
        for (int v : edges[p])
          if (std::binary_search(edges[q].begin(), edges[q].end(), v)) {
            meet = true;
            break;
          }
        if (meet) ++touching;
      }
      ok = touching <= 2;
    }
    f.path = ok;
  }
  return f;
}

// The unique decomposition into maximal connected substructures, ordered by
// smallest contained vertex index.
inline std::vector<Structure> components(const Structure& a) {
  auto comp = detail::graph_components(shadow(a));
  int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> member(ncomp);
  for (int v = 0; v < a.vertex_count(); ++v) member[comp[v]].push_back(v);
  std::vector<Structure> out;
  out.reserve(ncomp);
  for (const auto& keep : member) out.push_back(a.induced(keep));
  return out;
}

}  // namespace relhom
