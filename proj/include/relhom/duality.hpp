#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>

#include "relhom/algebra.hpp"
#include "relhom/enumerate.hpp"
#include "relhom/fixtures.hpp"
#include "relhom/hom.hpp"

namespace relhom {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

struct BlockIndex {
  // Blocks (i, tuple) in deterministic order and, per vertex, the list of
  // incident block ids.
  std::vector<std::pair<int, Tuple>> blocks;
  std::vector<std::vector<int>> incident;

  explicit BlockIndex(const Structure& f) {
    incident.assign(f.vertex_count(), {});
    for (size_t i = 0; i < f.relations.size(); ++i)
      for (const auto& t : f.relations[i]) {
        int id = static_cast<int>(blocks.size());
        blocks.emplace_back(static_cast<int>(i), t);
        std::vector<char> seen(f.vertex_count(), 0);
        for (int v : t)
          if (!seen[v]) {
            seen[v] = 1;
            incident[v].push_back(id);
          }
      }
  }

  int block_id(int rel, const Tuple& t) const {
    for (size_t k = 0; k < blocks.size(); ++k)
      if (blocks[k].first == rel && blocks[k].second == t) return static_cast<int>(k);
    return -1;
  }
};

inline void require_core_tree(const Structure& f, const char* what) {
  if (!classify(f).tree) throw input_error(std::string(what) + ": input is not a tree");
  if (!is_core(f)) throw input_error(std::string(what) + ": input is not a core");
  if (f.vertex_count() < 2)
    throw input_error(std::string(what) + ": single-vertex tree has no dual");
}

}  // namespace detail

// Bear dual: vertices are all selections of one incident block per vertex of
// F; a tuple of selections is a kind-i edge when every kind-i edge of F has a
// position whose selection differs from that edge. Returned raw (not cored).
inline Structure bear_dual(const Structure& f) {
  detail::require_core_tree(f, "bear_dual");
  detail::BlockIndex bi(f);
  const int n = f.vertex_count();

  long long total = 1;
  for (int v = 0; v < n; ++v) {
    total *= static_cast<long long>(bi.incident[v].size());
    if (total > limits().exponential_ceiling) throw guard_error("guard: dual-size-ceiling");
  }
  // |bs D_b(F)| <= n^n for trees.
  if (BigInt(total) > boost::multiprecision::pow(BigInt(n), n))
    throw std::logic_error("bear dual exceeded the n^n bound");

  std::vector<long long> stride(n, 1);
  for (int v = n - 1; v > 0; --v) stride[v - 1] = stride[v] * bi.incident[v].size();
  auto choice = [&](long long w, int v) {
    return bi.incident[v][(w / stride[v]) % bi.incident[v].size()];
  };

  std::vector<std::string> verts(total);
  for (long long w = 0; w < total; ++w) verts[w] = "f" + std::to_string(w);

  std::vector<Relation> rels(f.sig.arities.size());
  for (size_t i = 0; i < rels.size(); ++i) {
    const int d = f.sig.arities[i];
    std::vector<long long> pick(d, 0);
    for (;;) {
      bool edge = true;
      for (const auto& t : f.relations[i]) {
        int block = bi.block_id(static_cast<int>(i), t);
        bool escaped = false;
        for (int j = 0; j < d; ++j)
          if (choice(pick[j], t[j]) != block) {
            escaped = true;
            break;
          }
        if (!escaped) {
          edge = false;
          break;
        }
      }
      if (edge) rels[i].push_back(Tuple(pick.begin(), pick.end()));
      int j = d;
      bool done = false;
      while (j > 0) {
        --j;
        if (++pick[j] < total) break;
        pick[j] = 0;
        if (j == 0) done = true;
      }
      if (done) break;
    }
  }
  return Structure::make(f.sig, std::move(verts), std::move(rels), "Db_" + f.name);
}

// ---------------------------------------------------------------------------
// Mosquito construction (digraphs)
// ---------------------------------------------------------------------------

namespace detail {

// mu(x) = (d, u): longest directed path ending in / starting at x. Valid on
// acyclic digraphs, where every directed walk is a path.
inline std::vector<std::pair<int, int>> longest_path_ends(const Structure& a) {
  const int n = a.vertex_count();
  std::vector<std::vector<int>> out(n), in(n);
  std::vector<int> indeg(n, 0), outdeg(n, 0);
  for (const auto& t : a.relations[0]) {
    out[t[0]].push_back(t[1]);
    in[t[1]].push_back(t[0]);
    ++indeg[t[1]];
    ++outdeg[t[0]];
  }
  std::vector<int> order;
  {
    std::vector<int> deg = indeg;
    std::vector<int> q;
    for (int v = 0; v < n; ++v)
      if (!deg[v]) q.push_back(v);
    for (size_t h = 0; h < q.size(); ++h) {
      int u = q[h];
      order.push_back(u);
      for (int v : out[u])
        if (--deg[v] == 0) q.push_back(v);
    }
    if (static_cast<int>(order.size()) != n) throw input_error("structure is not acyclic");
  }
  std::vector<int> d(n, 0), u(n, 0);
  for (int v : order)
    for (int w : out[v]) d[w] = std::max(d[w], d[v] + 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (int w : out[*it]) u[*it] = std::max(u[*it], u[w] + 1);
  std::vector<std::pair<int, int>> mu(n);
  for (int v = 0; v < n; ++v) mu[v] = {d[v], u[v]};
  return mu;
}

// Height p(F) = min{r : F -> P_r}; for a tree this is the spread of its
// height labelling.
inline int tree_height(const Structure& f) {
  auto lab = height_labelling(f);
  if (!lab) throw input_error("tree_height: structure is not balanced");
  int lo = (*lab)[0][0], hi = (*lab)[0][0];
  for (const auto& l : *lab) {
    lo = std::min(lo, l[0]);
    hi = std::max(hi, l[0]);
  }
  return hi - lo;
}

inline bool is_directed_path(const Structure& a) {
  if (!(a.sig == digraph_type())) return false;
  return isomorphic(a, path_fixture(static_cast<int>(a.edge_count())))
         && a.vertex_count() == static_cast<int>(a.edge_count()) + 1;
}

}  // namespace detail

// Mosquito dual of an oriented tree. The input is cored first; directed paths
// P_k go to the transitive tournament T_k, everything else through the triple
// construction (p, q, phi) with phi choosing a neighbour for every vertex of
// Phi(p, q). Returned raw.
inline Structure mosquito_dual(const Structure& f_in) {
  if (!(f_in.sig == digraph_type())) throw input_error("mosquito_dual: type must be (2)");
  Structure f = core(f_in).core;
  if (!classify(f).tree) throw input_error("mosquito_dual: core is not a tree");
  if (f.vertex_count() < 2)
    throw input_error("mosquito_dual: single-vertex tree has no dual");
  if (detail::is_directed_path(f)) return tournament_fixture(static_cast<int>(f.edge_count()));

  const int n = f.vertex_count();
  auto mu = detail::longest_path_ends(f);
  const int height = detail::tree_height(f);

  std::vector<std::vector<int>> nbr(n);
  for (const auto& t : f.relations[0]) {
    nbr[t[0]].push_back(t[1]);
    nbr[t[1]].push_back(t[0]);
  }
  for (auto& v : nbr) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  struct MVertex {
    int p, q;
    std::vector<int> dom;  // Phi(p,q), sorted vertex ids
    std::vector<int> phi;  // chosen neighbour per dom position
  };
  std::vector<MVertex> mverts;
  for (int p = 0; p < height; ++p)
    for (int q = 0; p + q < height; ++q) {
      std::vector<int> dom;
      for (int v = 0; v < n; ++v)
        if (mu[v].first <= p && mu[v].second <= q) dom.push_back(v);
      // Odometer over neighbour choices; an empty domain yields one function.
      std::vector<int> pick(dom.size(), 0);
      for (;;) {
        MVertex mv{p, q, dom, {}};
        mv.phi.reserve(dom.size());
        for (size_t k = 0; k < dom.size(); ++k) mv.phi.push_back(nbr[dom[k]][pick[k]]);
        mverts.push_back(std::move(mv));
        size_t k = dom.size();
        bool done = dom.empty();
        while (k > 0) {
          --k;
          if (++pick[k] < static_cast<int>(nbr[dom[k]].size())) break;
          pick[k] = 0;
          if (k == 0) done = true;
        }
        if (done) break;
      }
    }

  const int m = static_cast<int>(mverts.size());
  std::vector<std::string> verts(m);
  for (int w = 0; w < m; ++w)
    verts[w] = "m" + std::to_string(mverts[w].p) + "_" + std::to_string(mverts[w].q) + "_" +
               std::to_string(w);
  auto phi_at = [&](const MVertex& mv, int v) -> int {
    auto it = std::lower_bound(mv.dom.begin(), mv.dom.end(), v);
    if (it == mv.dom.end() || *it != v) return -1;
    return mv.phi[it - mv.dom.begin()];
  };

  Relation edges;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const auto& u = mverts[x];
      const auto& v = mverts[y];
      if (!(u.p < v.p && u.q > v.q)) continue;
      bool blocked = false;
      for (const auto& t : f.relations[0])
        if (phi_at(u, t[0]) == t[1] && phi_at(v, t[1]) == t[0]) {
          blocked = true;
          break;
        }
      if (!blocked) edges.push_back({x, y});
    }
  return Structure::make(digraph_type(), std::move(verts), {std::move(edges)}, "Dm_" + f.name);
}

// ---------------------------------------------------------------------------
// Animal construction
// ---------------------------------------------------------------------------

using QElem = std::vector<int>;

// A positional-function family: a poset Q, a position function on acyclic
// structures, a representing-structure builder for finite downsets with its
// Omega/Psi maps, and the suitability bound S(F). The two built-in families
// below recover the bear and mosquito constructions.
struct PositionalFamily {
  std::string name;
  std::function<bool(const QElem&, const QElem&)> leq;
  std::function<std::vector<QElem>(const Structure&)> mu;
  std::function<std::vector<QElem>(const Structure&)> suitability_downset;  // S(F)
  std::function<Structure(const TypeSignature&, const std::vector<QElem>&)> theta;
  std::function<QElem(const std::vector<QElem>&, int)> omega;   // Theta vertex -> Q
  std::function<int(const std::vector<QElem>&, const QElem&)> psi;  // Q -> Theta vertex
};

inline PositionalFamily bear_family() {
  PositionalFamily fam;
  fam.name = "bear";
  fam.leq = [](const QElem&, const QElem&) { return true; };
  fam.mu = [](const Structure& a) { return std::vector<QElem>(a.vertex_count()); };
  fam.suitability_downset = [](const Structure&) { return std::vector<QElem>{QElem{}}; };
  fam.theta = [](const TypeSignature& sig, const std::vector<QElem>&) {
    return top_structure(sig);
  };
  fam.omega = [](const std::vector<QElem>&, int) { return QElem{}; };
  fam.psi = [](const std::vector<QElem>&, const QElem&) { return 0; };
  return fam;
}

inline PositionalFamily mosquito_family() {
  PositionalFamily fam;
  fam.name = "mosquito";
  fam.leq = [](const QElem& a, const QElem& b) { return a[0] <= b[0] && a[1] <= b[1]; };
  fam.mu = [](const Structure& a) {
    if (!(a.sig == digraph_type()))
      throw input_error("mosquito family is defined for type (2) only");
    auto ends = detail::longest_path_ends(a);
    std::vector<QElem> out(ends.size());
    for (size_t v = 0; v < ends.size(); ++v) out[v] = {ends[v].first, ends[v].second};
    return out;
  };
  fam.suitability_downset = [](const Structure& f) {
    if (!(f.sig == digraph_type()))
      throw input_error("mosquito family is defined for type (2) only");
    int h = detail::tree_height(f);
    std::vector<QElem> s;
    for (int p = 0; p < h; ++p)
      for (int q = 0; p + q < h; ++q) s.push_back({p, q});
    return s;
  };
  fam.theta = [](const TypeSignature& sig, const std::vector<QElem>& s) {
    if (!(sig == digraph_type()))
      throw input_error("mosquito family is defined for type (2) only");
    std::vector<std::string> verts(s.size());
    for (size_t k = 0; k < s.size(); ++k)
      verts[k] = "t" + std::to_string(s[k][0]) + "_" + std::to_string(s[k][1]);
    Relation edges;
    for (size_t x = 0; x < s.size(); ++x)
      for (size_t y = 0; y < s.size(); ++y)
        if (s[x][0] < s[y][0] && s[x][1] > s[y][1])
          edges.push_back({static_cast<int>(x), static_cast<int>(y)});
    return Structure::make(sig, std::move(verts), {std::move(edges)});
  };
  fam.omega = [](const std::vector<QElem>& s, int v) { return s[v]; };
  fam.psi = [](const std::vector<QElem>& s, const QElem& e) {
    for (size_t k = 0; k < s.size(); ++k)
      if (s[k] == e) return static_cast<int>(k);
    throw input_error("psi: element outside the downset");
  };
  return fam;
}

// Animal dual of a core tree F with respect to a suitable family: vertices
// are pairs (theta, phi) with phi selecting an incident block for every
// vertex of Phi(theta); edges need a Theta edge plus the usual escape from
// every edge of F. Returned raw.
inline Structure animal_dual(const Structure& f_in, const PositionalFamily& fam) {
  Structure f = core(f_in).core;
  detail::require_core_tree(f, "animal_dual");
  const int n = f.vertex_count();
  auto s = fam.suitability_downset(f);
  if (s.empty()) throw input_error("animal_dual: family unsuitable for this tree");
  Structure theta = fam.theta(f.sig, s);
  auto mu_f = fam.mu(f);
  detail::BlockIndex bi(f);

  struct AVertex {
    int theta;
    std::vector<int> dom;  // Phi(theta)
    std::vector<int> phi;  // block per dom position
  };
  std::vector<AVertex> averts;
  for (int tv = 0; tv < theta.vertex_count(); ++tv) {
    QElem bound = fam.omega(s, tv);
    std::vector<int> dom;
    for (int v = 0; v < n; ++v)
      if (fam.leq(mu_f[v], bound)) dom.push_back(v);
    std::vector<int> pick(dom.size(), 0);
    for (;;) {
      AVertex av{tv, dom, {}};
      av.phi.reserve(dom.size());
      for (size_t k = 0; k < dom.size(); ++k) av.phi.push_back(bi.incident[dom[k]][pick[k]]);
      averts.push_back(std::move(av));
      size_t k = dom.size();
      bool done = dom.empty();
      while (k > 0) {
        --k;
        if (++pick[k] < static_cast<int>(bi.incident[dom[k]].size())) break;
        pick[k] = 0;
        if (k == 0) done = true;
      }
      if (done) break;
    }
    if (static_cast<long long>(averts.size()) > limits().exponential_ceiling)
      throw guard_error("guard: dual-size-ceiling");
  }

  const int m = static_cast<int>(averts.size());
  std::vector<std::string> verts(m);
  for (int w = 0; w < m; ++w)
    verts[w] = "a" + std::to_string(averts[w].theta) + "_" + std::to_string(w);
  auto phi_at = [&](const AVertex& av, int v) -> int {
    auto it = std::lower_bound(av.dom.begin(), av.dom.end(), v);
    if (it == av.dom.end() || *it != v) return -1;
    return av.phi[it - av.dom.begin()];
  };

  std::vector<Relation> rels(f.sig.arities.size());
  for (size_t i = 0; i < rels.size(); ++i) {
    const int d = f.sig.arities[i];
    std::vector<int> pick(d, 0);
    Tuple timg(d);
    for (;;) {
      for (int j = 0; j < d; ++j) timg[j] = averts[pick[j]].theta;
      if (theta.has_tuple(static_cast<int>(i), timg)) {
        bool blocked = false;
        for (const auto& e : f.relations[i]) {
          int block = bi.block_id(static_cast<int>(i), e);
          bool all_hit = true;
          for (int j = 0; j < d; ++j)
            if (phi_at(averts[pick[j]], e[j]) != block) {
              all_hit = false;
              break;
            }
          if (all_hit) {
            blocked = true;
            break;
          }
        }
        if (!blocked) rels[i].push_back(Tuple(pick.begin(), pick.end()));
      }
      int j = d;
      bool done = false;
      while (j > 0) {
        --j;
        if (++pick[j] < m) break;
        pick[j] = 0;
        if (j == 0) done = true;
      }
      if (done) break;
    }
  }
  return Structure::make(f.sig, std::move(verts), std::move(rels), "Da_" + f.name);
}

// The canonical dual D(F) of a tree: core of the bear dual of the core.
inline Structure tree_dual(const Structure& f_in) {
  Structure f = core(f_in).core;
  if (!classify(f).tree) throw input_error("tree_dual: core is not a tree");
  if (f.vertex_count() < 2)
    throw input_error("tree_dual: single-vertex tree has no dual");
  Structure d = core(bear_dual(f)).core;
  d.name = "D_" + (f_in.name.empty() ? std::string("tree") : f_in.name);
  return d;
}

// Exact duality-pair decision via uniqueness of duals: core(F) must be a
// multi-vertex tree and core(D) must be isomorphic to its canonical dual.
inline bool verify_duality_pair(const Structure& f, const Structure& d) {
  require_same_signature(f, d);
  Structure c = core(f).core;
  if (!classify(c).tree || c.vertex_count() < 2) return false;
  return isomorphic(core(d).core, core(bear_dual(c)).core);
}

// Bounded oracle: checks F -> A <=> A !-> D over every structure with at most
// n vertices, one per isomorphism class.
inline bool brute_duality_check(const Structure& f, const Structure& d, int n) {
  require_same_signature(f, d);
  bool ok = true;
  enumerate_structures(f.sig, n, /*up_to_iso=*/true, [&](const Structure& a) {
    if (hom_exists(f, a) != !hom_exists(a, d)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Transversal construction
// ---------------------------------------------------------------------------

struct QuasitransversalPoset {
  std::vector<Structure> components;       // F_c, iso-deduplicated, sorted
  std::vector<std::vector<int>> sets;      // quasitransversals as index sets
  std::vector<std::vector<char>> leq;      // sets[x] <= sets[y]
  std::vector<std::vector<char>> comp_hom; // hom between components
};

namespace detail {

inline void require_incomparable_cores(const std::vector<Structure>& fset, const char* what) {
  for (const auto& f : fset)
    if (!is_core(f)) throw input_error(std::string(what) + ": input is not a core");
  for (size_t x = 0; x < fset.size(); ++x)
    for (size_t y = x + 1; y < fset.size(); ++y)
      if (hom_exists(fset[x], fset[y]) || hom_exists(fset[y], fset[x]))
        throw input_error(std::string(what) + ": inputs are not pairwise incomparable");
}

}  // namespace detail

// All subsets of the component set satisfying (T1) pairwise incomparability
// and (T2) support of every forest, with the order M <= M' iff every C' in M'
// has some C in M with C -> C'.
inline QuasitransversalPoset quasitransversals(const std::vector<Structure>& fset) {
  if (fset.empty()) throw input_error("quasitransversals: empty forest set");
  detail::require_incomparable_cores(fset, "quasitransversals");

  QuasitransversalPoset out;
  for (const auto& f : fset)
    for (auto& c : components(f)) {
      bool dup = false;
      for (const auto& have : out.components)
        if (isomorphic(have, c)) {
          dup = true;
          break;
        }
      if (!dup) out.components.push_back(std::move(c));
    }
  std::sort(out.components.begin(), out.components.end(),
            [](const Structure& a, const Structure& b) {
              if (a.vertex_count() != b.vertex_count()) return a.vertex_count() < b.vertex_count();
              return canonical_form(a) < canonical_form(b);
            });

  const int nc = static_cast<int>(out.components.size());
  out.comp_hom.assign(nc, std::vector<char>(nc, 0));
  for (int x = 0; x < nc; ++x)
    for (int y = 0; y < nc; ++y)
      out.comp_hom[x][y] = hom_exists(out.components[x], out.components[y]);

  std::vector<std::vector<char>> supports(nc, std::vector<char>(fset.size(), 0));
  for (int x = 0; x < nc; ++x)
    for (size_t j = 0; j < fset.size(); ++j)
      supports[x][j] = hom_exists(out.components[x], fset[j]);

  for (unsigned mask = 1; mask < (1u << nc); ++mask) {
    std::vector<int> members;
    for (int x = 0; x < nc; ++x)
      if (mask >> x & 1) members.push_back(x);
    bool t1 = true;
    for (size_t a = 0; a < members.size() && t1; ++a)
      for (size_t b = a + 1; b < members.size() && t1; ++b)
        if (out.comp_hom[members[a]][members[b]] || out.comp_hom[members[b]][members[a]])
          t1 = false;
    if (!t1) continue;
    bool t2 = true;
    for (size_t j = 0; j < fset.size() && t2; ++j) {
      bool found = false;
      for (int x : members)
        if (supports[x][j]) {
          found = true;
          break;
        }
      t2 = found;
    }
    if (t2) out.sets.push_back(std::move(members));
  }

  const int ns = static_cast<int>(out.sets.size());
  out.leq.assign(ns, std::vector<char>(ns, 0));
  for (int x = 0; x < ns; ++x)
    for (int y = 0; y < ns; ++y) {
      bool le = true;
      for (int cy : out.sets[y]) {
        bool found = false;
        for (int cx : out.sets[x])
          if (out.comp_hom[cx][cy]) {
            found = true;
            break;
          }
        if (!found) {
          le = false;
          break;
        }
      }
      out.leq[x][y] = le;
    }
  // The order is antisymmetric on quasitransversals.
  for (int x = 0; x < ns; ++x)
    for (int y = 0; y < ns; ++y)
      if (x != y && out.leq[x][y] && out.leq[y][x])
        throw std::logic_error("quasitransversal order failed antisymmetry");
  return out;
}

// Maximal quasitransversals.
inline std::vector<std::vector<int>> transversal_sets(const QuasitransversalPoset& qt) {
  std::vector<std::vector<int>> out;
  const int ns = static_cast<int>(qt.sets.size());
  for (int x = 0; x < ns; ++x) {
    bool maximal = true;
    for (int y = 0; y < ns && maximal; ++y)
      if (x != y && qt.leq[x][y]) maximal = false;
    if (maximal) out.push_back(qt.sets[x]);
  }
  return out;
}

struct Transversal {
  std::vector<Structure> members;
};

inline std::vector<Transversal> transversals(const std::vector<Structure>& fset) {
  auto qt = quasitransversals(fset);
  std::vector<Transversal> out;
  for (const auto& set : transversal_sets(qt)) {
    Transversal t;
    for (int c : set) t.members.push_back(qt.components[c]);
    out.push_back(std::move(t));
  }
  return out;
}

struct FiniteDuality {
  std::vector<Structure> forbidden;            // the input forests
  std::vector<Structure> components;           // F_c
  std::vector<std::vector<int>> transversals;  // index sets into components
  std::vector<Structure> per_tree_duals;       // D(C) per component, cored
  std::vector<Structure> duals;                // cored, deduplicated
};

namespace detail {

inline bool structure_order(const Structure& a, const Structure& b) {
  if (a.vertex_count() != b.vertex_count()) return a.vertex_count() < b.vertex_count();
  return serialize_structure(a) < serialize_structure(b);
}

}  // namespace detail

// The transversal construction: D(F) = { core(prod_{C in M} D(C)) : M a
// transversal }. Requires nonempty, pairwise-incomparable core forests with
// every component a multi-vertex tree.
inline FiniteDuality dual_set(const std::vector<Structure>& fset) {
  if (fset.empty()) throw input_error("dual_set: empty forest set");
  for (const auto& f : fset)
    if (!classify(f).forest) throw input_error("dual_set: input is not a forest");
  auto qt = quasitransversals(fset);
  for (const auto& c : qt.components)
    if (c.vertex_count() < 2)
      throw input_error("dual_set: component not dualizable (single vertex)");

  FiniteDuality out;
  out.forbidden = fset;
  out.components = qt.components;
  out.transversals = transversal_sets(qt);
  for (const auto& c : out.components) out.per_tree_duals.push_back(tree_dual(c));

  std::vector<Structure> raw;
  for (const auto& m : out.transversals) {
    // Core after every binary product; the core of a product with another
    // factor has the same core as the full product.
    Structure d = out.per_tree_duals[m[0]];
    for (size_t k = 1; k < m.size(); ++k) d = core(product2(d, out.per_tree_duals[m[k]])).core;
    d.name = "D";
    raw.push_back(std::move(d));
  }

  // Order agreement: D(M) -> D(M') exactly when M <= M'; transversals are
  // pairwise maximal, so their duals must be pairwise incomparable.
  for (size_t x = 0; x < raw.size(); ++x)
    for (size_t y = 0; y < raw.size(); ++y) {
      if (x == y) continue;
      if (hom_exists(raw[x], raw[y]))
        throw std::logic_error("transversal duals failed the order-agreement check");
    }

  std::sort(raw.begin(), raw.end(), detail::structure_order);
  for (auto& d : raw) {
    bool dup = false;
    for (const auto& have : out.duals)
      if (isomorphic(have, d)) {
        dup = true;
        break;
      }
    if (!dup) out.duals.push_back(std::move(d));
  }
  for (size_t k = 0; k < out.duals.size(); ++k)
    out.duals[k].name = "D" + std::to_string(k);
  return out;
}

// Bounded oracle for finite dualities: some F maps into A iff A maps into no
// D, over all A with at most n vertices up to isomorphism.
inline bool brute_finite_duality_check(const std::vector<Structure>& fs,
                                       const std::vector<Structure>& ds, int n) {
  if (fs.empty()) throw input_error("brute_finite_duality_check: empty forbidden set");
  const auto& sig = fs[0].sig;
  bool ok = true;
  enumerate_structures(sig, n, /*up_to_iso=*/true, [&](const Structure& a) {
    bool some_f = false;
    for (const auto& f : fs)
      if (hom_exists(f, a)) {
        some_f = true;
        break;
      }
    bool no_d = true;
    for (const auto& d : ds)
      if (hom_exists(a, d)) {
        no_d = false;
        break;
      }
    if (some_f != no_d) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Counting bounds
// ---------------------------------------------------------------------------

// Recursive upper bounds on the number of rooted core trees of depth <= d and
// their edge count: t_0 = 1, m_0 = 0, t_d = 2^(s*r*t_{d-1}^{r-1}),
// m_d = s*r*t_{d-1}^{r-1} * (1 + (r-1)*t_{d-1}*m_{d-1}).
inline std::pair<BigInt, BigInt> tree_bounds(const TypeSignature& sig, int d) {
  sig.validate();
  if (d < 0) throw input_error("tree_bounds: d must be nonnegative");
  const int s = sig.relation_count();
  const int r = sig.max_arity();
  BigInt t = 1, m = 0;
  for (int k = 1; k <= d; ++k) {
    BigInt base = BigInt(s) * r * boost::multiprecision::pow(t, r - 1);
    if (base > BigInt(1) << 26) throw guard_error("guard: bound-exponent-ceiling");
    BigInt m_next = base * (1 + BigInt(r - 1) * t * m);
    t = BigInt(1) << base.convert_to<unsigned>();
    m = m_next;
  }
  return {t, m};
}

// ---------------------------------------------------------------------------
// Bounded right-hand-side decision
// ---------------------------------------------------------------------------

struct RhsDecision {
  std::optional<std::vector<Structure>> forests;  // found forest set
  std::vector<std::vector<int>> obstruction_sets; // F_D per input, component ids
  std::vector<Structure> obstruction_components;  // shared component pool
  // Absence at a finite bound never proves non-duality.
  int edge_bound = 0;
};

// Bounded variant of the right-hand-side decision: obstruction trees are
// enumerated up to the caller's edge bound instead of the astronomically
// large theoretical bound, minimized under the homomorphism order, and a
// forest family over those components is searched whose transversal duals
// reproduce the input set.
inline RhsDecision rhs_duality_decide_bounded(const std::vector<Structure>& dset,
                                              int edge_bound) {
  if (dset.empty()) throw input_error("rhs decision: empty input");
  const auto& sig = dset[0].sig;
  for (const auto& d : dset) {
    require_same_signature(dset[0], d);
    if (!is_core(d)) throw input_error("rhs decision: input is not a core");
  }
  RhsDecision out;
  out.edge_bound = edge_bound;

  std::vector<Structure> trees;
  for (auto& t : all_trees(sig, edge_bound))
    if (t.vertex_count() >= 2 && is_core(t)) trees.push_back(std::move(t));

  // Minimal obstruction trees per input dual.
  std::vector<std::vector<int>> fd(dset.size());
  for (size_t k = 0; k < dset.size(); ++k) {
    std::vector<int> obs;
    for (size_t x = 0; x < trees.size(); ++x)
      if (!hom_exists(trees[x], dset[k])) obs.push_back(static_cast<int>(x));
    if (obs.empty()) return out;  // no tree obstruction within the bound
    std::vector<int> minimal;
    for (int x : obs) {
      bool min = true;
      for (int y : obs)
        if (y != x && hom_exists(trees[y], trees[x]) && !hom_exists(trees[x], trees[y])) {
          min = false;
          break;
        }
      if (min) minimal.push_back(x);
    }
    fd[k] = std::move(minimal);
  }

  // Component pool = union of the F_D, deduplicated by isomorphism.
  std::vector<int> pool;  // indices into trees
  std::vector<std::vector<int>> fd_pooled(dset.size());
  for (size_t k = 0; k < dset.size(); ++k)
    for (int x : fd[k]) {
      int id = -1;
      for (size_t p = 0; p < pool.size(); ++p)
        if (pool[p] == x || isomorphic(trees[pool[p]], trees[x])) {
          id = static_cast<int>(p);
          break;
        }
      if (id < 0) {
        id = static_cast<int>(pool.size());
        pool.push_back(x);
      }
      fd_pooled[k].push_back(id);
    }
  for (auto& s : fd_pooled) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  out.obstruction_sets = fd_pooled;
  for (int p : pool) out.obstruction_components.push_back(trees[p]);

  // Each input must be the dual of its own obstruction transversal.
  for (size_t k = 0; k < dset.size(); ++k) {
    Structure dk = tree_dual(trees[pool[fd_pooled[k][0]]]);
    for (size_t j = 1; j < fd_pooled[k].size(); ++j)
      dk = core(product2(dk, tree_dual(trees[pool[fd_pooled[k][j]]]))).core;
    if (!isomorphic(dk, core(dset[k]).core)) return out;
  }

  // Search forest families over the pool whose transversal sets are exactly
  // {F_D}. Forests are antichain subsets of the pool; families are antichains
  // of forests, capped at 4 forests.
  const int np = static_cast<int>(pool.size());
  std::vector<std::vector<char>> hom_pool(np, std::vector<char>(np, 0));
  for (int x = 0; x < np; ++x)
    for (int y = 0; y < np; ++y)
      hom_pool[x][y] = hom_exists(trees[pool[x]], trees[pool[y]]);

  std::vector<std::vector<int>> forests;  // antichain subsets
  for (unsigned mask = 1; mask < (1u << np); ++mask) {
    std::vector<int> mem;
    for (int x = 0; x < np; ++x)
      if (mask >> x & 1) mem.push_back(x);
    bool anti = true;
    for (size_t a = 0; a < mem.size() && anti; ++a)
      for (size_t b = a + 1; b < mem.size() && anti; ++b)
        if (hom_pool[mem[a]][mem[b]] || hom_pool[mem[b]][mem[a]]) anti = false;
    if (anti) forests.push_back(std::move(mem));
  }
  // forest x maps into forest y iff every component of x maps into some
  // component of y.
  auto forest_hom = [&](const std::vector<int>& x, const std::vector<int>& y) {
    for (int cx : x) {
      bool found = false;
      for (int cy : y)
        if (hom_pool[cx][cy]) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };

  std::vector<std::vector<int>> want = fd_pooled;
  std::sort(want.begin(), want.end());

  const int nf = static_cast<int>(forests.size());
  const int max_family = 4;
  std::vector<int> chosen;
  std::function<bool(int)> search = [&](int from) -> bool {
    if (!chosen.empty()) {
      // Build the family and test its transversal sets against `want`.
      std::vector<Structure> family;
      for (int fi : chosen) {
        std::vector<Structure> parts;
        for (int c : forests[fi]) parts.push_back(trees[pool[c]]);
        family.push_back(parts.size() == 1 ? parts[0] : sum(parts).sum);
      }
      bool viable = true;
      std::vector<std::vector<int>> got;
      try {
        auto qt = quasitransversals(family);
        // Map qt components back to pool ids.
        std::vector<int> to_pool(qt.components.size(), -1);
        for (size_t c = 0; c < qt.components.size(); ++c)
          for (int p = 0; p < np; ++p)
            if (isomorphic(qt.components[c], trees[pool[p]])) {
              to_pool[c] = p;
              break;
            }
        for (const auto& set : transversal_sets(qt)) {
          std::vector<int> mapped;
          for (int c : set) mapped.push_back(to_pool[c]);
          std::sort(mapped.begin(), mapped.end());
          got.push_back(std::move(mapped));
        }
        std::sort(got.begin(), got.end());
      } catch (const input_error&) {
        viable = false;
      }
      if (viable && got == want) {
        out.forests = std::move(family);
        return true;
      }
    }
    if (static_cast<int>(chosen.size()) == max_family) return false;
    for (int fi = from; fi < nf; ++fi) {
      bool anti = true;
      for (int prev : chosen)
        if (forest_hom(forests[prev], forests[fi]) || forest_hom(forests[fi], forests[prev]))
          anti = false;
      if (!anti) continue;
      chosen.push_back(fi);
      if (search(fi + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  search(0);
  return out;
}

// ---------------------------------------------------------------------------
// Gaps
// ---------------------------------------------------------------------------

// For a duality pair (F, D) and F x D <= A <= D, the pair (A, A + F) is a gap.
inline std::pair<Structure, Structure> gap_from_duality(const Structure& f, const Structure& d,
                                                        const Structure& a) {
  if (!verify_duality_pair(f, d)) throw input_error("gap_from_duality: not a duality pair");
  Structure fd = product2(f, d);
  if (!hom_exists(fd, a) || !hom_exists(a, d))
    throw input_error("gap_from_duality: A must satisfy F x D <= A <= D");
  return {a, sum2(a, f)};
}

// One-sided bounded verification: nothing with at most n vertices sits
// strictly between low and high. A true gap passes at every n.
inline bool bounded_gap_check(const Structure& low, const Structure& high, int n) {
  require_same_signature(low, high);
  bool ok = true;
  enumerate_structures(low.sig, n, /*up_to_iso=*/false, [&](const Structure& x) {
    if (hom_exists(low, x) && hom_exists(x, high) && !hom_exists(x, low) &&
        !hom_exists(high, x)) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

}  // namespace relhom
