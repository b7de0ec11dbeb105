#pragma once

#include <array>

#include "relhom/duality.hpp"

namespace relhom {

// Pairwise incomparability under the homomorphism order.
inline bool is_antichain(const std::vector<Structure>& q) {
  for (size_t x = 0; x < q.size(); ++x)
    for (size_t y = x + 1; y < q.size(); ++y)
      if (hom_exists(q[x], q[y]) || hom_exists(q[y], q[x])) return false;
  return true;
}

// Bounded necessary condition for maximality: every structure with at most n
// vertices is comparable with some element. Failure refutes; success at a
// finite bound does not prove.
inline bool brute_maximality_check(const std::vector<Structure>& q, int n) {
  if (q.empty()) throw input_error("brute_maximality_check: empty antichain");
  bool ok = true;
  enumerate_structures(q[0].sig, n, /*up_to_iso=*/true, [&](const Structure& a) {
    for (const auto& e : q)
      if (hom_exists(a, e) || hom_exists(e, a)) return true;
    ok = false;
    return false;
  });
  return ok;
}

enum class MacAnswer { yes, no, unknown };

struct MacVerdict {
  MacAnswer is_mac = MacAnswer::no;
  std::vector<Structure> forest_part;  // F
  std::vector<Structure> dual_part;    // Q \ F
  std::vector<std::string> certificate;  // reason trail
};

// Decides whether Q is a finite maximal antichain by matching it against the
// shape F union {D in D(F) : D !-> F for all F}. Exact for at most two
// relations; for three or more a shape mismatch only yields `unknown` since
// maximality may hold anyway.
inline MacVerdict mac_decide(const std::vector<Structure>& q) {
  if (q.empty()) throw input_error("mac_decide: empty input");
  const auto& sig = q[0].sig;
  for (const auto& e : q) require_same_signature(q[0], e);

  MacVerdict v;
  for (const auto& e : q)
    if (!is_core(e)) {
      v.certificate.push_back("element '" + e.name + "' is not a core");
      return v;
    }
  if (!is_antichain(q)) {
    v.certificate.push_back("input is not an antichain");
    return v;
  }

  // { bottom } is comparable with everything; it matches the degenerate
  // duality ({bottom}, {}) that the transversal construction cannot build.
  if (q.size() == 1 && q[0].vertex_count() == 1 && q[0].edge_count() == 0) {
    v.is_mac = MacAnswer::yes;
    v.forest_part = q;
    v.certificate.push_back("single-vertex edgeless element: below everything");
    return v;
  }

  std::vector<Structure> forests, rest;
  for (const auto& e : q)
    (classify(e).forest ? forests : rest).push_back(e);

  std::vector<Structure> expected;  // duals that stay in the antichain
  if (forests.empty()) {
    // The empty forest family has the single empty transversal, whose dual is
    // the empty product, i.e. top.
    expected.push_back(top_structure(sig));
    v.certificate.push_back("no forest elements; dual side of the empty family is top");
  } else {
    FiniteDuality fd;
    try {
      fd = dual_set(forests);
    } catch (const input_error& err) {
      v.certificate.push_back(std::string("dual construction failed: ") + err.what());
      return v;
    }
    for (const auto& d : fd.duals) {
      bool maps_to_forest = false;
      for (const auto& f : forests)
        if (hom_exists(d, f)) {
          maps_to_forest = true;
          break;
        }
      if (!maps_to_forest) expected.push_back(d);
    }
    v.certificate.push_back("duals of transversals: " + std::to_string(fd.duals.size()) +
                            ", surviving the filter: " + std::to_string(expected.size()));
  }

  bool match = rest.size() == expected.size();
  if (match) {
    std::vector<char> used(expected.size(), 0);
    for (const auto& r : rest) {
      bool found = false;
      for (size_t k = 0; k < expected.size(); ++k)
        if (!used[k] && isomorphic(r, expected[k])) {
          used[k] = 1;
          found = true;
          break;
        }
      if (!found) {
        match = false;
        break;
      }
    }
  }

  if (match) {
    v.is_mac = MacAnswer::yes;
    v.forest_part = forests;
    v.dual_part = rest;
    v.certificate.push_back("non-forest part equals the filtered transversal duals");
  } else if (sig.relation_count() <= 2) {
    v.is_mac = MacAnswer::no;
    v.certificate.push_back("non-forest part differs from the filtered transversal duals");
  } else {
    v.is_mac = MacAnswer::unknown;
    v.certificate.push_back("not duality-shaped; maximality unknown for more than two relations");
  }
  return v;
}

// The splitting realized through the duality shape: forests generate upward,
// the rest downward.
inline std::pair<std::vector<Structure>, std::vector<Structure>> mac_split(
    const std::vector<Structure>& q) {
  MacVerdict v = mac_decide(q);
  if (v.is_mac != MacAnswer::yes) throw input_error("mac_split: not a recognized MAC");
  return {v.forest_part, v.dual_part};
}

// ---------------------------------------------------------------------------
// Generalized CSP
// ---------------------------------------------------------------------------

struct GcspResult {
  bool admits = false;               // G -> some D in D(Fset)
  std::optional<Hom> obstruction;    // witness F -> G when negative
  int obstruction_index = -1;
};

// Duality-backed GCSP: G maps into some dual iff no forbidden forest maps
// into G. The certificate is the found homomorphism on the negative side.
inline GcspResult gcsp_via_forbidden(const Structure& g, const std::vector<Structure>& fset) {
  if (fset.empty()) throw input_error("gcsp: empty forbidden set");
  for (const auto& f : fset) {
    require_same_signature(g, f);
    if (!classify(f).forest) throw input_error("gcsp: forbidden set member is not a forest");
    for (const auto& c : components(f))
      if (c.vertex_count() < 2) throw input_error("gcsp: component not dualizable");
  }
  GcspResult r;
  for (size_t k = 0; k < fset.size(); ++k)
    if (auto h = find_hom(fset[k], g)) {
      r.admits = false;
      r.obstruction = h;
      r.obstruction_index = static_cast<int>(k);
      return r;
    }
  r.admits = true;
  return r;
}

// Direct GCSP: disjunction of homomorphism tests against the duals.
inline bool gcsp_direct(const Structure& g, const std::vector<Structure>& dset) {
  if (dset.empty()) throw input_error("gcsp: empty template set");
  for (const auto& d : dset) require_same_signature(g, d);
  for (const auto& d : dset)
    if (hom_exists(g, d)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// 3-SAT encoding
// ---------------------------------------------------------------------------

struct CnfFormula {
  int variable_count = 0;
  std::vector<std::array<int, 3>> clauses;  // signed 1-based literals
};

// DIMACS cnf restricted to exactly three literals per clause.
inline CnfFormula parse_dimacs_3cnf(std::istream& in) {
  CnfFormula f;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip(line);
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      auto toks = detail::split_ws(line);
      if (toks.size() != 4 || toks[1] != "cnf") throw parse_error("bad DIMACS header", lineno);
      f.variable_count = std::stoi(toks[2]);
      have_header = true;
      continue;
    }
    if (!have_header) throw parse_error("clause before DIMACS header", lineno);
    for (const auto& tok : detail::split_ws(line)) {
      int lit;
      try {
        lit = std::stoi(tok);
      } catch (...) {
        throw parse_error("bad literal '" + tok + "'", lineno);
      }
      if (lit == 0) {
        if (pending.size() != 3)
          throw parse_error("clause must have exactly three literals", lineno);
        f.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
      } else {
        if (std::abs(lit) > f.variable_count) throw parse_error("literal out of range", lineno);
        pending.push_back(lit);
      }
    }
  }
  if (!pending.empty()) throw parse_error("unterminated clause");
  if (!have_header) throw parse_error("missing DIMACS header");
  return f;
}

// The type-(3,3,3,3) encoding: H lives on {0,1} with R_i missing exactly the
// one falsifying assignment of a clause with i negations; G_phi has one
// triple per clause, negated variables first.
inline std::pair<Structure, Structure> encode_3sat(const CnfFormula& f) {
  TypeSignature sig{3, 3, 3, 3};
  for (const auto& cl : f.clauses)
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > f.variable_count)
        throw input_error("encode_3sat: malformed clause");

  std::vector<Relation> hrels(4);
  const std::array<Tuple, 4> missing = {Tuple{0, 0, 0}, Tuple{1, 0, 0}, Tuple{1, 1, 0},
                                        Tuple{1, 1, 1}};
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          Tuple t{a, b, c};
          if (t != missing[i]) hrels[i].push_back(std::move(t));
        }
  Structure h = Structure::make(sig, {"0", "1"}, std::move(hrels), "H");

  int nv = std::max(1, f.variable_count);
  std::vector<std::string> verts(nv);
  for (int k = 0; k < nv; ++k) verts[k] = "x" + std::to_string(k + 1);
  std::vector<Relation> grels(4);
  for (const auto& cl : f.clauses) {
    Tuple t;
    int negs = 0;
    for (int lit : cl)
      if (lit < 0) {
        t.push_back(-lit - 1);
        ++negs;
      }
    for (int lit : cl)
      if (lit > 0) t.push_back(lit - 1);
    grels[negs].push_back(std::move(t));
  }
  Structure g = Structure::make(sig, std::move(verts), std::move(grels), "G_phi");
  return {g, h};
}

// K_k as a symmetric loopless template; a homomorphism into it is a proper
// k-colouring.
inline Structure k_colouring_template(int k) { return complete_fixture(k); }

// ---------------------------------------------------------------------------
// Cutting points
// ---------------------------------------------------------------------------

struct CuttingPointReport {
  bool product_interval_trivial = false;  // [T x D, T] = endpoints only
  bool sum_interval_trivial = false;      // [D, T + D] = endpoints only
  std::optional<Structure> witness;
};

// Bounded verification that T x D and T + D cut the order: nothing with at
// most n vertices sits strictly inside either interval.
inline CuttingPointReport cutting_point_bounded_check(const Structure& t, int n) {
  Structure d = tree_dual(t);
  Structure td = product2(t, d);
  Structure spd = sum2(t, d);
  CuttingPointReport rep;
  rep.product_interval_trivial = true;
  rep.sum_interval_trivial = true;
  enumerate_structures(t.sig, n, /*up_to_iso=*/true, [&](const Structure& x) {
    if (hom_exists(td, x) && hom_exists(x, t)) {
      bool is_low = hom_exists(x, td);
      bool is_high = hom_exists(t, x);
      if (!is_low && !is_high) {
        rep.product_interval_trivial = false;
        rep.witness = x;
        return false;
      }
    }
    if (hom_exists(d, x) && hom_exists(x, spd)) {
      bool is_low = hom_exists(x, d);
      bool is_high = hom_exists(spd, x);
      if (!is_low && !is_high) {
        rep.sum_interval_trivial = false;
        rep.witness = x;
        return false;
      }
    }
    return true;
  });
  return rep;
}

}  // namespace relhom
