#pragma once

#include <map>
#include <set>

#include "relhom/algebra.hpp"
#include "relhom/hom.hpp"
#include "relhom/structure.hpp"

namespace relhom {

namespace detail {

// Labeled count of structures on exactly v vertices: prod_i 2^(v^delta_i).
// Returns -1 on overflow past the ceiling.
inline long long labeled_count(const TypeSignature& sig, int v, long long ceiling) {
  long double total = 1.0L;
  for (int d : sig.arities) {
    long double tuples = std::pow(static_cast<long double>(v), d);
    if (tuples > 62) return -1;
    total *= std::pow(2.0L, tuples);
    if (total > static_cast<long double>(ceiling) * 2) return -1;
  }
  if (total > static_cast<long double>(ceiling) * 2) return -1;
  return static_cast<long long>(total);
}

inline std::vector<Tuple> tuple_universe(int v, int arity) {
  std::vector<Tuple> out;
  Tuple t(arity, 0);
  for (;;) {
    out.push_back(t);
    int j = arity;
    while (j > 0) {
      --j;
      if (++t[j] < v) break;
      t[j] = 0;
      if (j == 0) return out;
    }
  }
}

}  // namespace detail

// Streams every structure with 1..n vertices of the given type; the callback
// returns false to stop early. With up_to_iso each isomorphism class appears
// exactly once, ordered by vertex count then canonical form. Refuses when the
// labeled count exceeds the enumeration ceiling.
inline void enumerate_structures(const TypeSignature& sig, int n, bool up_to_iso,
                                 const std::function<bool(const Structure&)>& fn) {
  sig.validate();
  if (n < 1) throw input_error("enumeration bound must be at least 1");
  long long grand = 0;
  for (int v = 1; v <= n; ++v) {
    long long c = detail::labeled_count(sig, v, limits().enum_ceiling);
    if (c < 0 || (grand += c) > limits().enum_ceiling)
      throw guard_error("guard: enumeration-ceiling");
  }

  for (int v = 1; v <= n; ++v) {
    std::vector<std::string> verts(v);
    for (int k = 0; k < v; ++k) verts[k] = std::to_string(k);
    std::vector<std::vector<Tuple>> universe;
    for (int d : sig.arities) universe.push_back(detail::tuple_universe(v, d));

    // Odometer over subsets of each relation's tuple universe.
    std::vector<unsigned long long> mask(sig.arities.size(), 0);
    std::map<std::string, Structure> reps;  // canonical form -> representative
    for (;;) {
      std::vector<Relation> rels(sig.arities.size());
      for (size_t i = 0; i < mask.size(); ++i)
        for (size_t b = 0; b < universe[i].size(); ++b)
          if (mask[i] >> b & 1ULL) rels[i].push_back(universe[i][b]);
      Structure a = Structure::make(sig, verts, std::move(rels));
      if (up_to_iso) {
        std::string key = canonical_form(a);
        if (!reps.count(key)) reps.emplace(std::move(key), std::move(a));
      } else {
        if (!fn(a)) return;
      }

      size_t i = mask.size();
      bool done = false;
      while (i > 0) {
        --i;
        if (++mask[i] < (1ULL << universe[i].size())) break;
        mask[i] = 0;
        if (i == 0) done = true;
      }
      if (done) break;
    }
    if (up_to_iso)
      for (const auto& [key, a] : reps)
        if (!fn(a)) return;
  }
}

// Convenience: collect the full stream.
inline std::vector<Structure> all_structures(const TypeSignature& sig, int n, bool up_to_iso) {
  std::vector<Structure> out;
  enumerate_structures(sig, n, up_to_iso, [&](const Structure& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Tree generation
// ---------------------------------------------------------------------------

// All trees with at most max_edges edges up to isomorphism, grown by
// repeatedly hanging a fresh edge (one shared vertex, the rest new) on a
// smaller tree; every tree arises this way because its incidence graph has a
// leaf block. With distinct_kinds, each relation index is used at most once.
inline std::vector<Structure> all_trees(const TypeSignature& sig, int max_edges,
                                        bool distinct_kinds = false) {
  sig.validate();
  if (distinct_kinds) max_edges = std::min(max_edges, sig.relation_count());
  std::map<std::string, Structure> seen;
  Structure bot = Structure::make(sig, {"0"}, std::vector<Relation>(sig.arities.size()));
  seen.emplace(canonical_form(bot), bot);
  std::vector<Structure> frontier{bot};
  std::vector<Structure> out{bot};

  for (int e = 1; e <= max_edges; ++e) {
    std::vector<Structure> next;
    for (const auto& t : frontier) {
      std::vector<int> kinds_used(sig.relation_count(), 0);
      for (int i = 0; i < sig.relation_count(); ++i)
        kinds_used[i] = static_cast<int>(t.relations[i].size());
      for (int i = 0; i < sig.relation_count(); ++i) {
        if (distinct_kinds && kinds_used[i] > 0) continue;
        const int d = sig.arities[i];
        for (int pos = 0; pos < d; ++pos)
          for (int v = 0; v < t.vertex_count(); ++v) {
            auto verts = t.vertices;
            Tuple tup(d);
            int fresh = t.vertex_count();
            for (int j = 0; j < d; ++j) {
              if (j == pos) {
                tup[j] = v;
              } else {
                tup[j] = fresh;
                verts.push_back("n" + std::to_string(fresh));
                ++fresh;
              }
            }
            auto rels = t.relations;
            rels[i].push_back(tup);
            Structure grown = Structure::make(sig, std::move(verts), std::move(rels));
            std::string key = canonical_form(grown);
            if (seen.count(key)) continue;
            seen.emplace(std::move(key), grown);
            next.push_back(grown);
            out.push_back(std::move(grown));
          }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Structure& a, const Structure& b) {
    if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
    return canonical_form(a) < canonical_form(b);
  });
  return out;
}

// Sum of all trees with at most one edge of each kind, one per isomorphism
// class, summands in ascending canonical order.
inline Structure d_star(const TypeSignature& sig) {
  auto trees = all_trees(sig, sig.relation_count(), /*distinct_kinds=*/true);
  std::vector<Structure> parts;
  parts.reserve(trees.size());
  for (auto& t : trees) parts.push_back(std::move(t));
  return sum(parts).sum;
}

// A core path is forbidden when two edges of the same kind carry different
// height-label sequences. Inputs that are not core paths report
// core_path=false and are never forbidden.
struct ForbiddenPathResult {
  bool forbidden = false;
  bool core_path = false;
};

inline ForbiddenPathResult is_forbidden_path(const Structure& p) {
  ForbiddenPathResult r;
  if (!classify(p).path) return r;
  if (!is_core(p)) return r;
  r.core_path = true;
  auto label = height_labelling(p);
  if (!label) return r;  // paths always have one; defensive
  for (size_t i = 0; i < p.relations.size(); ++i) {
    // A path is connected, so the labelling is unique up to one global
    // constant, which cancels when comparing two raw sequences.
    std::vector<std::vector<std::vector<int>>> seqs;
    for (const auto& t : p.relations[i]) {
      std::vector<std::vector<int>> seq;
      seq.reserve(t.size());
      for (int v : t) seq.push_back((*label)[v]);
      seqs.push_back(std::move(seq));
    }
    for (size_t x = 0; x < seqs.size(); ++x)
      for (size_t y = x + 1; y < seqs.size(); ++y)
        if (seqs[x] != seqs[y]) {
          r.forbidden = true;
          return r;
        }
  }
  return r;
}

}  // namespace relhom
