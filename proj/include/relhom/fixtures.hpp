#pragma once

#include "relhom/algebra.hpp"
#include "relhom/structure.hpp"

namespace relhom {

inline const TypeSignature& digraph_type() {
  static TypeSignature sig{2};
  return sig;
}

// Directed path with k edges on vertices 0..k.
inline Structure path_fixture(int k) {
  if (k < 0) throw input_error("path length must be nonnegative");
  std::vector<std::string> verts(k + 1);
  for (int i = 0; i <= k; ++i) verts[i] = std::to_string(i);
  Relation r;
  for (int i = 0; i < k; ++i) r.push_back({i, i + 1});
  return Structure::make(digraph_type(), std::move(verts), {std::move(r)}, "P" + std::to_string(k));
}

// Transitive tournament on k vertices.
inline Structure tournament_fixture(int k) {
  if (k < 1) throw input_error("tournament needs at least one vertex");
  std::vector<std::string> verts(k);
  for (int i = 0; i < k; ++i) verts[i] = std::to_string(i);
  Relation r;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) r.push_back({i, j});
  return Structure::make(digraph_type(), std::move(verts), {std::move(r)}, "T" + std::to_string(k));
}

// Komarek path P_{m,n}: chains a_0->...->a_m and b_0->...->b_n joined by the
// edge (b_0, a_m).
inline Structure komarek_path(int m, int n) {
  if (m < 1 || n < 1) throw input_error("komarek path needs positive parameters");
  std::vector<std::string> verts;
  for (int j = 0; j <= m; ++j) verts.push_back("a" + std::to_string(j));
  for (int j = 0; j <= n; ++j) verts.push_back("b" + std::to_string(j));
  auto a = [&](int j) { return j; };
  auto b = [&](int j) { return m + 1 + j; };
  Relation r;
  for (int j = 0; j < m; ++j) r.push_back({a(j), a(j + 1)});
  for (int j = 0; j < n; ++j) r.push_back({b(j), b(j + 1)});
  r.push_back({b(0), a(m)});
  return Structure::make(digraph_type(), std::move(verts), {std::move(r)},
                         "P" + std::to_string(m) + "_" + std::to_string(n));
}

// Komarek dual D_{m,n}: vertices (i,j) with i,j >= 0 and i+j <= m+n-2, edges
// ((i,j),(i',j')) when i < i', j > j', and i < m or j < n.
inline Structure komarek_dual(int m, int n) {
  if (m < 1 || n < 1) throw input_error("komarek dual needs positive parameters");
  const int cap = m + n - 2;
  std::vector<std::pair<int, int>> pts;
  for (int i = 0; i + 0 <= cap; ++i)
    for (int j = 0; i + j <= cap; ++j) pts.emplace_back(i, j);
  std::vector<std::string> verts;
  verts.reserve(pts.size());
  for (auto [i, j] : pts) verts.push_back(std::to_string(i) + "_" + std::to_string(j));
  auto idx = [&](int i, int j) {
    for (size_t k = 0; k < pts.size(); ++k)
      if (pts[k] == std::make_pair(i, j)) return static_cast<int>(k);
    return -1;
  };
  Relation r;
  for (auto [i, j] : pts)
    for (auto [i2, j2] : pts)
      if (i < i2 && j > j2 && (i < m || j < n)) r.push_back({idx(i, j), idx(i2, j2)});
  return Structure::make(digraph_type(), std::move(verts), {std::move(r)},
                         "D" + std::to_string(m) + "_" + std::to_string(n));
}

// Complete graph K_k as a symmetric loopless digraph.
inline Structure complete_fixture(int k) {
  if (k < 1) throw input_error("complete graph needs at least one vertex");
  std::vector<std::string> verts(k);
  for (int i = 0; i < k; ++i) verts[i] = std::to_string(i);
  Relation r;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) r.push_back({i, j});
  return Structure::make(digraph_type(), std::move(verts), {std::move(r)}, "K" + std::to_string(k));
}

enum class FixtureKind { path, tournament, komarek_path, komarek_dual, complete, bottom, top };

inline Structure gen_fixture(FixtureKind kind, const std::vector<int>& params,
                             const TypeSignature& sig = digraph_type()) {
  switch (kind) {
    case FixtureKind::path:
      if (params.size() != 1) throw input_error("path takes one parameter");
      return path_fixture(params[0]);
    case FixtureKind::tournament:
      if (params.size() != 1) throw input_error("tournament takes one parameter");
      return tournament_fixture(params[0]);
    case FixtureKind::komarek_path:
      if (params.size() != 2) throw input_error("komarek-path takes two parameters");
      return komarek_path(params[0], params[1]);
    case FixtureKind::komarek_dual:
      if (params.size() != 2) throw input_error("komarek-dual takes two parameters");
      return komarek_dual(params[0], params[1]);
    case FixtureKind::complete:
      if (params.size() != 1) throw input_error("complete takes one parameter");
      return complete_fixture(params[0]);
    case FixtureKind::bottom:
      return bottom_structure(sig);
    case FixtureKind::top:
      return top_structure(sig);
  }
  throw input_error("unknown fixture kind");
}

// Oriented path from an orientation pattern: 'f' steps forward, 'b' backward.
// Handy for building zigzag cores in tests and demos.
inline Structure zigzag_path(const std::string& pattern) {
  const int k = static_cast<int>(pattern.size());
  std::vector<std::string> verts(k + 1);
  for (int i = 0; i <= k; ++i) verts[i] = std::to_string(i);
  Relation r;
  for (int i = 0; i < k; ++i) {
    if (pattern[i] == 'f')
      r.push_back({i, i + 1});
    else if (pattern[i] == 'b')
      r.push_back({i + 1, i});
    else
      throw input_error("zigzag pattern must be 'f'/'b'");
  }
  return Structure::make(digraph_type(), std::move(verts), {std::move(r)}, "Z" + pattern);
}

}  // namespace relhom
