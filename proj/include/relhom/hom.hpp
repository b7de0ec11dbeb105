#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>

#include "relhom/shadow.hpp"
#include "relhom/structure.hpp"

namespace relhom {

// A vertex map witnessing a homomorphism; map[v] is the target index of
// source vertex v.
struct Hom {
  std::vector<int> map;
};

inline void require_same_signature(const Structure& a, const Structure& b) {
  if (!(a.sig == b.sig)) throw input_error("type signatures do not match");
}

// Checks the defining implication: every tuple of A lands in the same
// relation of B.
inline bool is_homomorphism(const Structure& a, const Structure& b, const std::vector<int>& f) {
  if (f.size() != static_cast<size_t>(a.vertex_count())) return false;
  for (int v : f)
    if (v < 0 || v >= b.vertex_count()) return false;
  Tuple img;
  for (size_t i = 0; i < a.relations.size(); ++i)
    for (const auto& t : a.relations[i]) {
      img.clear();
      for (int v : t) img.push_back(f[v]);
      if (!b.has_tuple(static_cast<int>(i), img)) return false;
    }
  return true;
}

namespace detail {

// Backtracking search for homomorphisms A -> B.
//
// Two modes share the tuple bookkeeping. The static mode assigns vertices of
// A in a fixed order (decreasing incidence degree, ties by index) and visits
// complete assignments lexicographically, so the first hit is the canonical
// witness; find_hom and count_homs use it. The dynamic mode keeps candidate
// domains per vertex, forward-checks them through incident tuples, and always
// branches on the most constrained vertex; existence tests and the core
// engine use it because refutations on sparse structures are exponentially
// slow in the static order. Both modes are deterministic.
class HomSearch {
 public:
  HomSearch(const Structure& a, const Structure& b, int forbidden_target = -1)
      : a_(a), b_(b), forbidden_(forbidden_target) {
    const int n = a.vertex_count();
    std::vector<int> deg(n, 0);
    tuples_of_.assign(n, {});
    for (size_t i = 0; i < a.relations.size(); ++i)
      for (const auto& t : a.relations[i]) {
        all_tuples_.push_back({static_cast<int>(i), &t});
        for (int v : t) ++deg[v];
      }
    for (size_t k = 0; k < all_tuples_.size(); ++k) {
      auto seen = std::vector<char>(n, 0);
      for (int v : *all_tuples_[k].tuple)
        if (!seen[v]) {
          seen[v] = 1;
          tuples_of_[v].push_back(static_cast<int>(k));
        }
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int x, int y) { return deg[x] > deg[y]; });
    rank_.assign(n, 0);
    for (int k = 0; k < n; ++k) rank_[order_[k]] = k;
  }

  // Stops at the first complete assignment; returns it. Lexicographically
  // least in the static search order.
  std::optional<std::vector<int>> find() {
    assignment_.assign(a_.vertex_count(), -1);
    std::optional<std::vector<int>> found;
    dfs(0, [&](const std::vector<int>& f) {
      found = f;
      return false;  // stop
    });
    return found;
  }

  // Counts all homomorphisms.
  unsigned long long count() {
    assignment_.assign(a_.vertex_count(), -1);
    unsigned long long c = 0;
    dfs(0, [&](const std::vector<int>&) {
      ++c;
      return true;  // keep going
    });
    return c;
  }

  // Existence with forward checking and dynamic variable order; returns some
  // witness, deterministic but not the lexicographic-least one.
  std::optional<std::vector<int>> find_any() {
    const int n = a_.vertex_count();
    assignment_.assign(n, -1);
    domains_.assign(n, {});
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < b_.vertex_count(); ++w)
        if (w != forbidden_) domains_[v].push_back(w);
    for (const auto& d : domains_)
      if (d.empty()) return std::nullopt;
    if (!dfs_dynamic(n)) return std::nullopt;
    return assignment_;
  }

  bool exists() { return find_any().has_value(); }

 private:
  bool dfs(int depth, const std::function<bool(const std::vector<int>&)>& on_solution) {
    if (depth == a_.vertex_count()) return on_solution(assignment_);
    int v = order_[depth];
    for (int w = 0; w < b_.vertex_count(); ++w) {
      if (w == forbidden_) continue;
      assignment_[v] = w;
      if (consistent(v))
        if (!dfs(depth + 1, on_solution)) {
          assignment_[v] = -1;
          return false;
        }
      assignment_[v] = -1;
    }
    return true;
  }

  // Every tuple incident to v must still extend to a tuple of B.
  bool consistent(int v) const {
    Tuple img;
    for (int k : tuples_of_[v]) {
      const auto& [rel, tp] = all_tuples_[k];
      const auto& t = *tp;
      bool complete = true;
      for (int u : t)
        if (assignment_[u] < 0) {
          complete = false;
          break;
        }
      if (complete) {
        img.clear();
        for (int u : t) img.push_back(assignment_[u]);
        if (!b_.has_tuple(rel, img)) return false;
      } else {
        bool extendable = false;
        for (const auto& cand : b_.relations[rel]) {
          bool ok = true;
          for (size_t j = 0; j < t.size(); ++j)
            if (assignment_[t[j]] >= 0 && assignment_[t[j]] != cand[j]) {
              ok = false;
              break;
            }
          if (ok) {
            extendable = true;
            break;
          }
        }
        if (!extendable) return false;
      }
    }
    return true;
  }

  bool dfs_dynamic(int unassigned) {
    if (unassigned == 0) return true;
    int v = -1;
    size_t best = SIZE_MAX;
    for (int u = 0; u < a_.vertex_count(); ++u)
      if (assignment_[u] < 0 && domains_[u].size() < best) {
        best = domains_[u].size();
        v = u;
      }
    const std::vector<int> values = domains_[v];
    for (int w : values) {
      assignment_[v] = w;
      std::vector<std::pair<int, std::vector<int>>> saved;
      if (filter_neighbors(v, saved)) {
        if (dfs_dynamic(unassigned - 1)) return true;
      }
      for (auto& [u, dom] : saved) domains_[u] = std::move(dom);
      assignment_[v] = -1;
    }
    return false;
  }

  // Re-derive the domains of unassigned vertices sharing a tuple with v from
  // the tuples of B compatible with the current partial assignment. Repeated
  // unassigned vertices inside one tuple must take equal values.
  bool filter_neighbors(int v, std::vector<std::pair<int, std::vector<int>>>& saved) {
    for (int k : tuples_of_[v]) {
      const auto& [rel, tp] = all_tuples_[k];
      const auto& t = *tp;
      const int d = static_cast<int>(t.size());
      std::vector<int> vars;  // distinct unassigned vertices in t
      for (int u : t)
        if (assignment_[u] < 0 && std::find(vars.begin(), vars.end(), u) == vars.end())
          vars.push_back(u);
      if (vars.empty()) {
        Tuple img(d);
        for (int j = 0; j < d; ++j) img[j] = assignment_[t[j]];
        if (!b_.has_tuple(rel, img)) return false;
        continue;
      }
      std::vector<std::set<int>> allowed(vars.size());
      for (const auto& cand : b_.relations[rel]) {
        bool ok = true;
        for (int j = 0; j < d && ok; ++j) {
          if (assignment_[t[j]] >= 0) {
            if (cand[j] != assignment_[t[j]]) ok = false;
          } else {
            // Equal variables need equal values; forbidden target excluded.
            if (cand[j] == forbidden_) ok = false;
            for (int j2 = j + 1; j2 < d && ok; ++j2)
              if (t[j2] == t[j] && cand[j2] != cand[j]) ok = false;
          }
        }
        if (!ok) continue;
        for (size_t x = 0; x < vars.size(); ++x)
          for (int j = 0; j < d; ++j)
            if (t[j] == vars[x]) {
              allowed[x].insert(cand[j]);
              break;
            }
      }
      for (size_t x = 0; x < vars.size(); ++x) {
        int u = vars[x];
        std::vector<int> next;
        for (int w : domains_[u])
          if (allowed[x].count(w)) next.push_back(w);
        if (next.size() != domains_[u].size()) {
          saved.emplace_back(u, std::move(domains_[u]));
          domains_[u] = std::move(next);
          if (domains_[u].empty()) return false;
        }
      }
    }
    return true;
  }

  struct TupleRef {
    int rel;
    const Tuple* tuple;
  };
  const Structure& a_;
  const Structure& b_;
  int forbidden_;
  std::vector<TupleRef> all_tuples_;
  std::vector<std::vector<int>> tuples_of_;
  std::vector<int> order_;
  std::vector<int> rank_;
  std::vector<int> assignment_;
  std::vector<std::vector<int>> domains_;
};

}  // namespace detail

inline bool hom_exists(const Structure& a, const Structure& b) {
  require_same_signature(a, b);
  return detail::HomSearch(a, b).exists();
}

// The lexicographically least witness in the search order, or absent.
inline std::optional<Hom> find_hom(const Structure& a, const Structure& b) {
  require_same_signature(a, b);
  auto f = detail::HomSearch(a, b).find();
  if (!f) return std::nullopt;
  return Hom{*f};
}

inline unsigned long long count_homs(const Structure& a, const Structure& b) {
  require_same_signature(a, b);
  double bound = std::pow(static_cast<double>(b.vertex_count()), a.vertex_count());
  if (bound > static_cast<double>(limits().count_ceiling))
    throw guard_error("guard: count-ceiling");
  return detail::HomSearch(a, b).count();
}

inline bool hom_equivalent(const Structure& a, const Structure& b) {
  return hom_exists(a, b) && hom_exists(b, a);
}

inline bool incomparable(const Structure& a, const Structure& b) {
  return !hom_exists(a, b) && !hom_exists(b, a);
}

// ---------------------------------------------------------------------------
// Canonical forms and isomorphism
// ---------------------------------------------------------------------------

namespace detail {

// Name-independent serialization of A relabeled by perm (perm[k] = old index
// of the vertex that becomes k).
inline std::string relabel_key(const Structure& a, const std::vector<int>& perm) {
  const int n = a.vertex_count();
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[perm[k]] = k;
  std::string key;
  key += std::to_string(n);
  key += ';';
  for (const auto& rel : a.relations) {
    std::vector<Tuple> img;
    img.reserve(rel.size());
    for (const auto& t : rel) {
      Tuple m;
      m.reserve(t.size());
      for (int v : t) m.push_back(pos[v]);
      img.push_back(std::move(m));
    }
    std::sort(img.begin(), img.end());
    for (const auto& t : img) {
      for (int v : t) {
        key += static_cast<char>('0' + v / 10);
        key += static_cast<char>('0' + v % 10);
      }
      key += '|';
    }
    key += ';';
  }
  return key;
}

inline std::pair<std::string, std::vector<int>> canonical_form_with_perm(const Structure& a) {
  const int n = a.vertex_count();
  if (n > limits().canon_max_vertices) throw guard_error("guard: canonical-form-size");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best = relabel_key(a, perm);
  std::vector<int> best_perm = perm;
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::string key = relabel_key(a, perm);
    if (key < best) {
      best = std::move(key);
      best_perm = perm;
    }
  }
  return {best, best_perm};
}

}  // namespace detail

// Equal canonical forms <=> isomorphic. Minimum serialization over all vertex
// permutations; guarded for large base sets.
inline std::string canonical_form(const Structure& a) {
  return detail::canonical_form_with_perm(a).first;
}

// Isomorphism = bijective homomorphism whose inverse is a homomorphism. For
// relational structures this needs equal relation sizes plus a bijective
// homomorphism; decided through canonical forms, with the witness read off
// the two canonical permutations.
inline std::optional<Hom> iso(const Structure& a, const Structure& b) {
  require_same_signature(a, b);
  if (a.vertex_count() != b.vertex_count()) return std::nullopt;
  for (size_t i = 0; i < a.relations.size(); ++i)
    if (a.relations[i].size() != b.relations[i].size()) return std::nullopt;
  auto [ka, pa] = detail::canonical_form_with_perm(a);
  auto [kb, pb] = detail::canonical_form_with_perm(b);
  if (ka != kb) return std::nullopt;
  const int n = a.vertex_count();
  std::vector<int> pos_a(n);
  for (int k = 0; k < n; ++k) pos_a[pa[k]] = k;
  std::vector<int> f(n);
  for (int v = 0; v < n; ++v) f[v] = pb[pos_a[v]];
  return Hom{f};
}

inline bool isomorphic(const Structure& a, const Structure& b) {
  return iso(a, b).has_value();
}

// ---------------------------------------------------------------------------
// Cores
// ---------------------------------------------------------------------------

// True iff every endomorphism is surjective: we look for an endomorphism
// avoiding each vertex in turn.
inline bool is_core(const Structure& a) {
  for (int w = 0; w < a.vertex_count(); ++w)
    if (detail::HomSearch(a, a, w).exists()) return false;
  return true;
}

struct CoreResult {
  Structure core;              // induced substructure of the input
  std::vector<int> retraction; // input vertex -> input vertex, fixes the core
};

namespace detail {

inline std::vector<int> compose(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> h(f.size());
  for (size_t v = 0; v < f.size(); ++v) h[v] = g[f[v]];
  return h;
}

inline bool is_retraction_map(const std::vector<int>& f) {
  for (size_t v = 0; v < f.size(); ++v)
    if (f[f[v]] != f[v]) return false;
  return true;
}

// Iterate an endomorphism until some power fixes its image pointwise; such a
// power exists because the functional graph stabilizes on its cyclic part.
inline std::vector<int> iterate_to_retraction(std::vector<int> f) {
  std::vector<int> g = f;
  while (!is_retraction_map(g)) g = compose(g, f);
  return g;
}

}  // namespace detail

// Smallest retract via iterated non-surjective endomorphisms; single-vertex
// fold passes run first since products and duals collapse mostly through
// them. The composite retraction of the input onto the core is returned.
inline CoreResult core(const Structure& a) {
  const int n0 = a.vertex_count();
  std::vector<int> retraction(n0);
  std::iota(retraction.begin(), retraction.end(), 0);
  std::vector<int> alive(n0);
  std::iota(alive.begin(), alive.end(), 0);
  Structure cur = a;

  auto apply = [&](const std::vector<int>& r) {
    // r is a retraction of cur; shrink to its image and compose.
    std::vector<int> keep;
    for (int v = 0; v < cur.vertex_count(); ++v)
      if (r[v] == v) keep.push_back(v);
    std::vector<int> old_to_cur(n0, -1);
    for (size_t k = 0; k < alive.size(); ++k) old_to_cur[alive[k]] = static_cast<int>(k);
    for (int v = 0; v < n0; ++v) retraction[v] = alive[r[old_to_cur[retraction[v]]]];
    std::vector<int> new_alive;
    new_alive.reserve(keep.size());
    for (int v : keep) new_alive.push_back(alive[v]);
    cur = cur.induced(keep);
    alive = std::move(new_alive);
  };

  for (;;) {
    // Cheap pass: single-vertex folds u -> v (identity elsewhere) are
    // retractions outright, and only tuples incident to u need checking.
    bool folded = true;
    while (folded) {
      folded = false;
      const int n = cur.vertex_count();
      std::vector<std::vector<std::pair<int, const Tuple*>>> inc(n);
      for (size_t i = 0; i < cur.relations.size(); ++i)
        for (const auto& t : cur.relations[i]) {
          std::vector<char> seen(n, 0);
          for (int v : t)
            if (!seen[v]) {
              seen[v] = 1;
              inc[v].push_back({static_cast<int>(i), &t});
            }
        }
      for (int u = 0; u < n && !folded; ++u)
        for (int v = 0; v < n && !folded; ++v) {
          if (u == v) continue;
          bool ok = true;
          Tuple img;
          for (const auto& [rel, tp] : inc[u]) {
            img = *tp;
            for (int& x : img)
              if (x == u) x = v;
            if (!cur.has_tuple(rel, img)) {
              ok = false;
              break;
            }
          }
          if (ok) {
            std::vector<int> f(n);
            std::iota(f.begin(), f.end(), 0);
            f[u] = v;
            apply(f);
            folded = true;
          }
        }
    }
    // Full search for any non-surjective endomorphism.
    std::optional<std::vector<int>> endo;
    for (int w = 0; w < cur.vertex_count() && !endo; ++w)
      endo = detail::HomSearch(cur, cur, w).find_any();
    if (!endo) break;
    apply(detail::iterate_to_retraction(*endo));
  }
  return CoreResult{cur, retraction};
}

}  // namespace relhom
