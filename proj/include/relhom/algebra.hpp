#pragma once

#include "relhom/hom.hpp"
#include "relhom/structure.hpp"

namespace relhom {

// Bottom: one vertex, every relation empty. Top: one vertex, every relation
// holds the single constant tuple.
inline Structure bottom_structure(const TypeSignature& sig) {
  sig.validate();
  return Structure::make(sig, {"0"}, std::vector<Relation>(sig.arities.size()));
}

inline Structure top_structure(const TypeSignature& sig) {
  sig.validate();
  std::vector<Relation> rels;
  for (int d : sig.arities) rels.push_back({Tuple(d, 0)});
  return Structure::make(sig, {"0"}, std::move(rels));
}

inline std::pair<Structure, Structure> constants(const TypeSignature& sig) {
  return {bottom_structure(sig), top_structure(sig)};
}

struct SumResult {
  Structure sum;
  std::vector<Hom> injections;  // part j -> sum
};

// Disjoint union; vertex (j, x) is named "<j>:<x>".
inline SumResult sum(const std::vector<Structure>& parts) {
  if (parts.empty()) throw input_error("sum of an empty list");
  const auto& sig = parts[0].sig;
  for (const auto& p : parts) require_same_signature(parts[0], p);

  std::vector<std::string> verts;
  std::vector<Hom> inj(parts.size());
  for (size_t j = 0; j < parts.size(); ++j) {
    inj[j].map.resize(parts[j].vertex_count());
    for (int v = 0; v < parts[j].vertex_count(); ++v) {
      inj[j].map[v] = static_cast<int>(verts.size());
      verts.push_back(std::to_string(j) + ":" + parts[j].vertices[v]);
    }
  }
  std::vector<Relation> rels(sig.arities.size());
  for (size_t j = 0; j < parts.size(); ++j)
    for (size_t i = 0; i < rels.size(); ++i)
      for (const auto& t : parts[j].relations[i]) {
        Tuple img;
        img.reserve(t.size());
        for (int v : t) img.push_back(inj[j].map[v]);
        rels[i].push_back(std::move(img));
      }
  SumResult r{Structure::make(sig, std::move(verts), std::move(rels)), std::move(inj)};
  for (size_t j = 0; j < parts.size(); ++j)
    if (!is_homomorphism(parts[j], r.sum, r.injections[j].map))
      throw std::logic_error("sum injection failed verification");
  return r;
}

inline Structure sum2(const Structure& a, const Structure& b) { return sum({a, b}).sum; }

struct ProductResult {
  Structure product;
  std::vector<Hom> projections;  // product -> part j
};

// Cartesian product: a tuple is an edge exactly when each projection is an
// edge of the factor. Vertex order is row-major over the declared factor
// orders; vertex (x, y, ...) is named "x*y*...".
inline ProductResult product(const std::vector<Structure>& parts) {
  if (parts.empty()) throw input_error("product of an empty list");
  const auto& sig = parts[0].sig;
  for (const auto& p : parts) require_same_signature(parts[0], p);

  long long total = 1;
  for (const auto& p : parts) {
    total *= p.vertex_count();
    if (total > limits().product_ceiling) throw guard_error("guard: product-ceiling");
  }
  const size_t m = parts.size();
  const int n = static_cast<int>(total);

  // Row-major enumeration of index tuples; last factor varies fastest.
  std::vector<int> stride(m, 1);
  for (size_t j = m - 1; j > 0; --j) stride[j - 1] = stride[j] * parts[j].vertex_count();
  std::vector<std::string> verts(n);
  std::vector<Hom> proj(m);
  for (size_t j = 0; j < m; ++j) proj[j].map.resize(n);
  for (int w = 0; w < n; ++w) {
    std::string nm;
    for (size_t j = 0; j < m; ++j) {
      int xj = (w / stride[j]) % parts[j].vertex_count();
      proj[j].map[w] = xj;
      nm += (j ? "*" : "") + parts[j].vertices[xj];
    }
    verts[w] = std::move(nm);
  }

  std::vector<Relation> rels(sig.arities.size());
  for (size_t i = 0; i < rels.size(); ++i) {
    const int d = sig.arities[i];
    // Iterate over one tuple choice per factor; each combination yields one
    // product tuple.
    std::vector<size_t> pick(m, 0);
    bool any = true;
    for (const auto& p : parts)
      if (p.relations[i].empty()) any = false;
    while (any) {
      Tuple t(d, 0);
      for (int pos = 0; pos < d; ++pos) {
        int w = 0;
        for (size_t j = 0; j < m; ++j) w += stride[j] * parts[j].relations[i][pick[j]][pos];
        t[pos] = w;
      }
      rels[i].push_back(std::move(t));
      size_t j = m;
      while (j > 0) {
        --j;
        if (++pick[j] < parts[j].relations[i].size()) break;
        pick[j] = 0;
        if (j == 0) any = false;
      }
    }
  }
  ProductResult r{Structure::make(sig, std::move(verts), std::move(rels)), std::move(proj)};
  for (size_t j = 0; j < m; ++j)
    if (!is_homomorphism(r.product, parts[j], r.projections[j].map))
      throw std::logic_error("product projection failed verification");
  return r;
}

inline Structure product2(const Structure& a, const Structure& b) {
  return product({a, b}).product;
}

// Exponential structure C^B: vertices are all maps bs B -> bs C (as tuples
// over the declared order of bs B, row-major); (f_1,...,f_d) is an edge when
// every edge (b_1,...,b_d) of B gives an edge (f_1(b_1),...,f_d(b_d)) of C.
inline Structure exponential(const Structure& c, const Structure& b) {
  require_same_signature(c, b);
  const int nb = b.vertex_count(), nc = c.vertex_count();
  long long total = 1;
  for (int k = 0; k < nb; ++k) {
    total *= nc;
    if (total > limits().exponential_ceiling) throw guard_error("guard: exponential-ceiling");
  }
  const int n = static_cast<int>(total);

  // Function with index w maps B-vertex k to digit k of w base nc, row-major
  // (first B-vertex varies slowest).
  std::vector<long long> stride(nb, 1);
  for (int k = nb - 1; k > 0; --k) stride[k - 1] = stride[k] * nc;
  auto value = [&](int w, int k) { return static_cast<int>((w / stride[k]) % nc); };

  std::vector<std::string> verts(n);
  for (int w = 0; w < n; ++w) {
    std::string nm = "f";
    for (int k = 0; k < nb; ++k) nm += "|" + c.vertices[value(w, k)];
    verts[w] = std::move(nm);
  }

  std::vector<Relation> rels(c.sig.arities.size());
  for (size_t i = 0; i < rels.size(); ++i) {
    const int d = c.sig.arities[i];
    std::vector<int> pick(d, 0);
    Tuple img(d, 0);
    for (;;) {
      bool ok = true;
      for (const auto& e : b.relations[i]) {
        for (int j = 0; j < d; ++j) img[j] = value(pick[j], e[j]);
        if (!c.has_tuple(static_cast<int>(i), img)) {
          ok = false;
          break;
        }
      }
      if (ok) rels[i].push_back(Tuple(pick.begin(), pick.end()));
      int j = d;
      while (j > 0) {
        --j;
        if (++pick[j] < n) break;
        pick[j] = 0;
        if (j == 0) goto next_relation;
      }
    }
  next_relation:;
  }
  return Structure::make(c.sig, std::move(verts), std::move(rels));
}

// eval : C^B x B -> C as a vertex map of product2(exponential(c,b), b).
inline Hom eval_hom(const Structure& c, const Structure& b, const Structure& cb,
                    const Structure& cb_times_b) {
  const int nb = b.vertex_count(), nc = c.vertex_count();
  std::vector<long long> stride(nb, 1);
  for (int k = nb - 1; k > 0; --k) stride[k - 1] = stride[k] * nc;
  Hom h;
  h.map.resize(cb_times_b.vertex_count());
  for (int w = 0; w < cb_times_b.vertex_count(); ++w) {
    int f = w / nb;
    int x = w % nb;
    h.map[w] = static_cast<int>((f / stride[x]) % nc);
  }
  (void)cb;
  return h;
}

}  // namespace relhom
