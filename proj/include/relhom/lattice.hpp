#pragma once

#include <map>
#include <optional>
#include <set>

#include "relhom/structure.hpp"

namespace relhom {

// An explicit finite lattice: elements plus the full order relation, built
// from a cover relation. Construction verifies that every pair has a meet and
// a join and rejects plain posets.
class FiniteLattice {
 public:
  static FiniteLattice from_covers(std::vector<std::string> elements,
                                   const std::vector<std::pair<int, int>>& covers) {
    FiniteLattice l;
    l.names_ = std::move(elements);
    const int n = l.size();
    if (n == 0) throw input_error("lattice must be nonempty");
    l.leq_.assign(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v) l.leq_[v][v] = 1;
    std::vector<std::vector<int>> up(n);
    for (auto [a, b] : covers) {
      if (a < 0 || a >= n || b < 0 || b >= n) throw input_error("cover index out of range");
      up[a].push_back(b);
    }
    // Transitive closure; a cycle makes some pair mutually comparable.
    for (int s = 0; s < n; ++s) {
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : up[u])
          if (!l.leq_[s][w]) {
            l.leq_[s][w] = 1;
            stack.push_back(w);
          }
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && l.leq_[a][b] && l.leq_[b][a])
          throw input_error("cover relation has a cycle through '" + l.names_[a] + "'");
    l.build_tables();
    return l;
  }

  // Build directly from a full order relation (must be reflexive, transitive,
  // antisymmetric; verified).
  static FiniteLattice from_order(std::vector<std::string> elements,
                                  std::vector<std::vector<char>> leq) {
    FiniteLattice l;
    l.names_ = std::move(elements);
    l.leq_ = std::move(leq);
    const int n = l.size();
    if (n == 0) throw input_error("lattice must be nonempty");
    for (int a = 0; a < n; ++a) {
      if (!l.leq_[a][a]) throw input_error("order is not reflexive");
      for (int b = 0; b < n; ++b) {
        if (a != b && l.leq_[a][b] && l.leq_[b][a]) throw input_error("order is not antisymmetric");
        for (int c = 0; c < n; ++c)
          if (l.leq_[a][b] && l.leq_[b][c] && !l.leq_[a][c])
            throw input_error("order is not transitive");
      }
    }
    l.build_tables();
    return l;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  bool leq(int a, int b) const { return leq_[a][b]; }
  int meet(int a, int b) const { return meet_[a][b]; }
  int join(int a, int b) const { return join_[a][b]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  int index_of(const std::string& nm) const {
    for (int x = 0; x < size(); ++x)
      if (names_[x] == nm) return x;
    throw input_error("unknown lattice element '" + nm + "'");
  }

  // Cover pairs of the order, i.e. the gaps.
  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b) {
        if (a == b || !leq_[a][b]) continue;
        bool strict_between = false;
        for (int r = 0; r < size() && !strict_between; ++r)
          if (r != a && r != b && leq_[a][r] && leq_[r][b]) strict_between = true;
        if (!strict_between) out.emplace_back(a, b);
      }
    return out;
  }

 private:
  void build_tables() {
    const int n = size();
    meet_.assign(n, std::vector<int>(n, -1));
    join_.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int m = -1, j = -1;
        for (int x = 0; x < n; ++x) {
          if (leq_[x][a] && leq_[x][b] && (m < 0 || leq_[m][x])) m = x;
          if (leq_[a][x] && leq_[b][x] && (j < 0 || leq_[x][j])) j = x;
        }
        // The greedy pick above is only valid if it dominates all bounds.
        if (m >= 0)
          for (int x = 0; x < n; ++x)
            if (leq_[x][a] && leq_[x][b] && !leq_[x][m]) m = -2;
        if (j >= 0)
          for (int x = 0; x < n; ++x)
            if (leq_[a][x] && leq_[b][x] && !leq_[j][x]) j = -2;
        if (m < 0 || j < 0)
          throw input_error("not a lattice: elements '" + names_[a] + "' and '" + names_[b] +
                            "' lack a " + (m < 0 ? "meet" : "join"));
        meet_[a][b] = m;
        join_[a][b] = j;
      }
    bottom_ = 0;
    top_ = 0;
    for (int x = 0; x < n; ++x) {
      bottom_ = meet_[bottom_][x];
      top_ = join_[top_][x];
    }
  }

  std::vector<std::string> names_;
  std::vector<std::vector<char>> leq_;
  std::vector<std::vector<int>> meet_, join_;
  int bottom_ = 0, top_ = 0;
};

// Lattice file format: `elements: a b c` then `cover a < b` lines.
inline FiniteLattice parse_lattice(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<std::string> elements;
  std::vector<std::pair<int, int>> covers;
  bool have_elements = false;
  auto index_of = [&](const std::string& nm, int ln) {
    for (size_t k = 0; k < elements.size(); ++k)
      if (elements[k] == nm) return static_cast<int>(k);
    throw parse_error("unknown element '" + nm + "'", ln);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::strip(line);
    if (line.empty()) continue;
    if (line.rfind("elements:", 0) == 0) {
      if (have_elements) throw parse_error("duplicate elements line", lineno);
      elements = detail::split_ws(line.substr(9));
      if (elements.empty()) throw parse_error("empty element list", lineno);
      have_elements = true;
    } else if (line.rfind("cover", 0) == 0) {
      if (!have_elements) throw parse_error("cover before elements", lineno);
      auto toks = detail::split_ws(line.substr(5));
      if (toks.size() != 3 || toks[1] != "<") throw parse_error("expected 'cover a < b'", lineno);
      covers.emplace_back(index_of(toks[0], lineno), index_of(toks[2], lineno));
    } else {
      throw parse_error("unrecognized line '" + line + "'", lineno);
    }
  }
  if (!have_elements) throw parse_error("missing elements line");
  return FiniteLattice::from_covers(std::move(elements), covers);
}

inline FiniteLattice parse_lattice(const std::string& text) {
  std::istringstream in(text);
  return parse_lattice(in);
}

inline std::string serialize_lattice(const FiniteLattice& l) {
  std::ostringstream out;
  out << "elements:";
  for (const auto& nm : l.names()) out << " " << nm;
  out << "\n";
  for (auto [a, b] : l.covers()) out << "cover " << l.name(a) << " < " << l.name(b) << "\n";
  return out.str();
}

// Distributivity x ^ (y v z) = (x ^ y) v (x ^ z), with a witness triple on
// failure.
struct DistributivityReport {
  bool distributive = true;
  int x = -1, y = -1, z = -1;
};

inline DistributivityReport is_distributive(const FiniteLattice& l) {
  for (int x = 0; x < l.size(); ++x)
    for (int y = 0; y < l.size(); ++y)
      for (int z = 0; z < l.size(); ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)))
          return {false, x, y, z};
  return {};
}

// h(p, r) = max { x : x ^ p <= r } when every pair has such a maximum.
// x <= h(p,r) <=> x ^ p <= r is then automatic.
struct HeytingTable {
  std::vector<std::vector<int>> implies;  // [p][r]
};

inline std::optional<HeytingTable> heyting_table(const FiniteLattice& l) {
  HeytingTable t;
  t.implies.assign(l.size(), std::vector<int>(l.size(), -1));
  for (int p = 0; p < l.size(); ++p)
    for (int r = 0; r < l.size(); ++r) {
      int candidate = -1;
      for (int x = 0; x < l.size(); ++x)
        if (l.leq(l.meet(x, p), r)) candidate = candidate < 0 ? x : l.join(candidate, x);
      if (candidate < 0 || !l.leq(l.meet(candidate, p), r)) return std::nullopt;
      t.implies[p][r] = candidate;
    }
  return t;
}

// a is connected when a = b v c forces a = b or a = c.
inline bool lattice_connected(const FiniteLattice& l, int a) {
  for (int b = 0; b < l.size(); ++b)
    for (int c = 0; c < l.size(); ++c)
      if (l.join(b, c) == a && b != a && c != a) return false;
  return true;
}

inline std::vector<int> connected_elements(const FiniteLattice& l) {
  std::vector<int> out;
  for (int a = 0; a < l.size(); ++a)
    if (lattice_connected(l, a)) out.push_back(a);
  return out;
}

// Canonical decomposition: the maximal connected elements below x. Reported
// as failed when their join is not x.
struct Decomposition {
  std::vector<int> parts;
  bool join_is_x = false;
};

inline Decomposition connected_decomposition(const FiniteLattice& l, int x) {
  std::vector<int> below;
  for (int c : connected_elements(l))
    if (l.leq(c, x)) below.push_back(c);
  Decomposition d;
  for (int c : below) {
    bool maximal = true;
    for (int c2 : below)
      if (c2 != c && l.leq(c, c2)) {
        maximal = false;
        break;
      }
    if (maximal) d.parts.push_back(c);
  }
  int j = -1;
  for (int c : d.parts) j = j < 0 ? c : l.join(j, c);
  d.join_is_x = (j == x);
  return d;
}

// Downset and upset generated by a subset.
inline std::vector<int> downset_of(const FiniteLattice& l, const std::vector<int>& s) {
  std::vector<int> out;
  for (int x = 0; x < l.size(); ++x)
    for (int m : s)
      if (l.leq(x, m)) {
        out.push_back(x);
        break;
      }
  return out;
}

inline std::vector<int> upset_of(const FiniteLattice& l, const std::vector<int>& s) {
  std::vector<int> out;
  for (int x = 0; x < l.size(); ++x)
    for (int m : s)
      if (l.leq(m, x)) {
        out.push_back(x);
        break;
      }
  return out;
}

// Duality pairs (f, d): f <= x exactly when x is not below d.
inline std::vector<std::pair<int, int>> lattice_duality_pairs(const FiniteLattice& l) {
  std::vector<std::pair<int, int>> out;
  for (int f = 0; f < l.size(); ++f)
    for (int d = 0; d < l.size(); ++d) {
      bool ok = true;
      for (int x = 0; x < l.size() && ok; ++x)
        if (l.leq(f, x) != !l.leq(x, d)) ok = false;
      if (ok) out.emplace_back(f, d);
    }
  return out;
}

// Gaps are the cover pairs.
inline std::vector<std::pair<int, int>> lattice_gaps(const FiniteLattice& l) {
  return l.covers();
}

// ---------------------------------------------------------------------------
// Lattice transversal construction
// ---------------------------------------------------------------------------

struct LatticeDualityResult {
  std::vector<std::vector<int>> quasitransversals;
  std::vector<std::vector<int>> transversals;
  std::vector<int> duals;        // one per transversal, deduplicated
  bool sweep_ok = false;         // finite-duality definition verified
  int sweep_witness = -1;        // x violating the sweep, if any
};

// Transversal construction over a chosen decomposition of each element of F.
// Every component must be a primal (have a dual); the result is checked
// against the finite-duality definition by an exhaustive sweep.
inline LatticeDualityResult lattice_transversal_dual(
    const FiniteLattice& l, const std::vector<int>& f,
    const std::vector<std::vector<int>>& decompositions) {
  if (f.empty()) throw input_error("lattice transversal: empty F");
  if (decompositions.size() != f.size())
    throw input_error("lattice transversal: one decomposition per element required");
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = i + 1; j < f.size(); ++j)
      if (l.leq(f[i], f[j]) || l.leq(f[j], f[i]))
        throw input_error("lattice transversal: F is not an antichain");

  auto pairs = lattice_duality_pairs(l);
  auto dual_of = [&](int c) {
    for (auto [p, d] : pairs)
      if (p == c) return d;
    return -1;
  };

  std::vector<int> fc;
  for (size_t i = 0; i < f.size(); ++i) {
    int join = -1;
    for (int c : decompositions[i]) {
      if (!lattice_connected(l, c))
        throw input_error("lattice transversal: component '" + l.name(c) + "' is not connected");
      join = join < 0 ? c : l.join(join, c);
      if (std::find(fc.begin(), fc.end(), c) == fc.end()) fc.push_back(c);
    }
    if (join != f[i])
      throw input_error("lattice transversal: decomposition does not join to its element");
  }
  for (int c : fc)
    if (dual_of(c) < 0)
      throw input_error("lattice transversal: component '" + l.name(c) + "' is not a primal");

  LatticeDualityResult res;
  const int nc = static_cast<int>(fc.size());
  for (unsigned mask = 1; mask < (1u << nc); ++mask) {
    std::vector<int> mem;
    for (int k = 0; k < nc; ++k)
      if (mask >> k & 1) mem.push_back(fc[k]);
    bool t1 = true;
    for (size_t a = 0; a < mem.size() && t1; ++a)
      for (size_t b = a + 1; b < mem.size() && t1; ++b)
        if (l.leq(mem[a], mem[b]) || l.leq(mem[b], mem[a])) t1 = false;
    if (!t1) continue;
    bool t2 = true;
    for (int fe : f) {
      bool found = false;
      for (int c : mem)
        if (l.leq(c, fe)) {
          found = true;
          break;
        }
      if (!found) {
        t2 = false;
        break;
      }
    }
    if (t2) res.quasitransversals.push_back(std::move(mem));
  }

  auto qleq = [&](const std::vector<int>& m1, const std::vector<int>& m2) {
    for (int c2 : m2) {
      bool found = false;
      for (int c1 : m1)
        if (l.leq(c1, c2)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  // Antisymmetry of the quasitransversal order.
  for (size_t x = 0; x < res.quasitransversals.size(); ++x)
    for (size_t y = x + 1; y < res.quasitransversals.size(); ++y)
      if (qleq(res.quasitransversals[x], res.quasitransversals[y]) &&
          qleq(res.quasitransversals[y], res.quasitransversals[x]))
        throw std::logic_error("lattice quasitransversal order failed antisymmetry");

  for (const auto& m : res.quasitransversals) {
    bool maximal = true;
    for (const auto& m2 : res.quasitransversals)
      if (&m != &m2 && qleq(m, m2)) {
        maximal = false;
        break;
      }
    if (maximal) res.transversals.push_back(m);
  }

  for (const auto& m : res.transversals) {
    int d = -1;
    for (int c : m) {
      int dc = dual_of(c);
      d = d < 0 ? dc : l.meet(d, dc);
    }
    if (std::find(res.duals.begin(), res.duals.end(), d) == res.duals.end())
      res.duals.push_back(d);
  }
  std::sort(res.duals.begin(), res.duals.end());

  // Exhaustive sweep of the finite-duality definition.
  res.sweep_ok = true;
  for (size_t x = 0; x < res.duals.size(); ++x)
    for (size_t y = x + 1; y < res.duals.size(); ++y)
      if (l.leq(res.duals[x], res.duals[y]) || l.leq(res.duals[y], res.duals[x]))
        res.sweep_ok = false;
  for (int x = 0; x < l.size() && res.sweep_ok; ++x) {
    bool some_f = false;
    for (int fe : f)
      if (l.leq(fe, x)) {
        some_f = true;
        break;
      }
    bool no_d = true;
    for (int d : res.duals)
      if (l.leq(x, d)) {
        no_d = false;
        break;
      }
    if (some_f != no_d) {
      res.sweep_ok = false;
      res.sweep_witness = x;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Lattice generators for sweeps
// ---------------------------------------------------------------------------

// All partial orders on {0..n-1} as leq matrices (reflexive, antisymmetric,
// transitive), enumerated over DAG edge subsets via their transitive closure.
inline std::vector<std::vector<std::vector<char>>> all_posets(int n) {
  if (n < 0 || n > 5) throw input_error("all_posets: supported for 0 <= n <= 5");
  std::vector<std::vector<std::vector<char>>> out;
  std::set<std::vector<char>> seen;
  std::vector<std::pair<int, int>> arcs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) arcs.emplace_back(a, b);
  const int na = static_cast<int>(arcs.size());
  for (long long mask = 0; mask < (1LL << na); ++mask) {
    std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v) leq[v][v] = 1;
    for (int k = 0; k < na; ++k)
      if (mask >> k & 1) leq[arcs[k].first][arcs[k].second] = 1;
    // Transitive closure.
    for (int m = 0; m < n; ++m)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (leq[a][m] && leq[m][b]) leq[a][b] = 1;
    bool anti = true;
    for (int a = 0; a < n && anti; ++a)
      for (int b = a + 1; b < n && anti; ++b)
        if (leq[a][b] && leq[b][a]) anti = false;
    if (!anti) continue;
    std::vector<char> flat;
    for (const auto& row : leq) flat.insert(flat.end(), row.begin(), row.end());
    if (seen.insert(flat).second) out.push_back(std::move(leq));
  }
  return out;
}

// The lattice of downsets of a poset, ordered by inclusion; always
// distributive, hence a Heyting algebra.
inline FiniteLattice downset_lattice(const std::vector<std::vector<char>>& poset_leq) {
  const int n = static_cast<int>(poset_leq.size());
  std::vector<unsigned> downsets;
  for (unsigned s = 0; s < (1u << n); ++s) {
    bool closed = true;
    for (int q = 0; q < n && closed; ++q)
      if (s >> q & 1)
        for (int p = 0; p < n; ++p)
          if (poset_leq[p][q] && !(s >> p & 1)) {
            closed = false;
            break;
          }
    if (closed) downsets.push_back(s);
  }
  std::vector<std::string> names;
  names.reserve(downsets.size());
  for (unsigned s : downsets) {
    std::string nm = "d";
    for (int p = 0; p < n; ++p)
      if (s >> p & 1) nm += std::to_string(p);
    names.push_back(std::move(nm));
  }
  const int m = static_cast<int>(downsets.size());
  std::vector<std::vector<char>> leq(m, std::vector<char>(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) leq[a][b] = (downsets[a] & ~downsets[b]) == 0;
  return FiniteLattice::from_order(std::move(names), std::move(leq));
}

// The two standard non-distributive five-element fixtures.
inline FiniteLattice m3_lattice() {
  return parse_lattice(
      "elements: bot a b c top\ncover bot < a\ncover bot < b\ncover bot < c\n"
      "cover a < top\ncover b < top\ncover c < top\n");
}

inline FiniteLattice n5_lattice() {
  return parse_lattice(
      "elements: bot a b c top\ncover bot < a\ncover a < b\ncover bot < c\n"
      "cover b < top\ncover c < top\n");
}

}  // namespace relhom
