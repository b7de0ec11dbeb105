#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relhom {

// Thrown on malformed input files. `line` is 1-based, 0 = unknown.
struct parse_error : std::runtime_error {
  int line = 0;
  parse_error(const std::string& msg, int ln = 0)
      : std::runtime_error(ln ? "parse: line " + std::to_string(ln) + ": " + msg
                               : "parse: " + msg),
        line(ln) {}
};

// Thrown when a precondition on operation inputs is violated.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a computation would exceed a configured resource ceiling.
struct guard_error : std::runtime_error {
  explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configurable resource ceilings. The CLI seeds these from environment
// variables; library defaults are generous enough for desk-scale work.
struct Limits {
  long long enum_ceiling = 100'000'000;   // max labeled structures per enumeration
  long long product_ceiling = 100'000;    // max vertices of a product
  long long exponential_ceiling = 100'000;  // max vertices of an exponential
  int canon_max_vertices = 9;             // canonical_form permutation guard
  long long count_ceiling = 1'000'000'000'000LL;  // count_homs overflow guard
};

inline Limits& limits() {
  static Limits l;
  return l;
}

// The type Delta = (delta_i : i in I). Unary relations are rejected.
struct TypeSignature {
  std::vector<int> arities;

  TypeSignature() = default;
  TypeSignature(std::initializer_list<int> a) : arities(a) {}
  explicit TypeSignature(std::vector<int> a) : arities(std::move(a)) {}

  bool operator==(const TypeSignature&) const = default;

  int relation_count() const { return static_cast<int>(arities.size()); }
  int max_arity() const {
    int r = 0;
    for (int a : arities) r = std::max(r, a);
    return r;
  }
  // Number of height-label coordinates: sum(delta_i - 1).
  int label_width() const {
    int w = 0;
    for (int a : arities) w += a - 1;
    return w;
  }

  void validate() const {
    if (arities.empty()) throw input_error("type must have at least one relation");
    for (int a : arities)
      if (a < 2) throw input_error("relation arity must be at least 2, got " + std::to_string(a));
  }
};

using Tuple = std::vector<int>;          // vertex indices
using Relation = std::vector<Tuple>;     // kept sorted, no duplicates

namespace detail {
inline bool valid_vertex_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')' || c == '#')
      return false;
  return true;
}
}  // namespace detail

// A finite relational structure: base set plus one delta_i-ary relation per
// index. Vertices are opaque names; all algorithms work on their index in the
// declared order. Instances are treated as immutable after construction.
struct Structure {
  TypeSignature sig;
  std::string name;  // optional, ignored by comparisons
  std::vector<std::string> vertices;
  std::vector<Relation> relations;

  static Structure make(TypeSignature sig, std::vector<std::string> verts,
                        std::vector<Relation> rels, std::string name = "") {
    sig.validate();
    if (verts.empty()) throw input_error("base set must be nonempty");
    for (const auto& v : verts)
      if (!detail::valid_vertex_name(v)) throw input_error("bad vertex name '" + v + "'");
    {
      auto sorted = verts;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw input_error("duplicate vertex name");
    }
    if (rels.size() != sig.arities.size())
      throw input_error("relation count does not match type");
    const int n = static_cast<int>(verts.size());
    for (size_t i = 0; i < rels.size(); ++i) {
      for (auto& t : rels[i]) {
        if (static_cast<int>(t.size()) != sig.arities[i])
          throw input_error("arity mismatch in relation " + std::to_string(i));
        for (int v : t)
          if (v < 0 || v >= n) throw input_error("tuple entry out of range");
      }
      std::sort(rels[i].begin(), rels[i].end());
      rels[i].erase(std::unique(rels[i].begin(), rels[i].end()), rels[i].end());
    }
    Structure a;
    a.sig = std::move(sig);
    a.name = std::move(name);
    a.vertices = std::move(verts);
    a.relations = std::move(rels);
    return a;
  }

  int vertex_count() const { return static_cast<int>(vertices.size()); }

  int vertex_index(const std::string& v) const {
    for (size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == v) return static_cast<int>(i);
    return -1;
  }

  long long edge_count() const {
    long long m = 0;
    for (const auto& r : relations) m += static_cast<long long>(r.size());
    return m;
  }

  bool has_tuple(int rel, const Tuple& t) const {
    const auto& r = relations[rel];
    return std::binary_search(r.begin(), r.end(), t);
  }

  // Substructure induced by the given vertex indices (kept in the given order).
  Structure induced(const std::vector<int>& keep) const {
    std::vector<int> pos(vertices.size(), -1);
    std::vector<std::string> verts;
    verts.reserve(keep.size());
    for (size_t k = 0; k < keep.size(); ++k) {
      pos[keep[k]] = static_cast<int>(k);
      verts.push_back(vertices[keep[k]]);
    }
    std::vector<Relation> rels(relations.size());
    for (size_t i = 0; i < relations.size(); ++i) {
      for (const auto& t : relations[i]) {
        Tuple img;
        img.reserve(t.size());
        bool inside = true;
        for (int v : t) {
          if (pos[v] < 0) {
            inside = false;
            break;
          }
          img.push_back(pos[v]);
        }
        if (inside) rels[i].push_back(std::move(img));
      }
    }
    return make(sig, std::move(verts), std::move(rels), name);
  }

  // Same structure with vertex names replaced (used by constructions).
  Structure renamed(std::vector<std::string> new_names, std::string new_name = "") const {
    return make(sig, std::move(new_names), relations, std::move(new_name));
  }

  friend bool operator==(const Structure& a, const Structure& b) {
    return a.sig == b.sig && a.vertices == b.vertices && a.relations == b.relations;
  }
};

// An undirected or directed multigraph over named nodes; parallel edges and
// loops are kept. Undirected edges are stored with endpoints normalized.
struct Multigraph {
  bool directed = false;
  std::vector<std::string> nodes;
  std::vector<std::pair<int, int>> edges;

  void add_edge(int a, int b) {
    if (!directed && a > b) std::swap(a, b);
    edges.emplace_back(a, b);
  }
  int node_count() const { return static_cast<int>(nodes.size()); }
};

// `node <id>` lines then `edge <id> <id>` lines; repeated lines encode
// multiplicity.
inline std::string dump_multigraph(const Multigraph& g) {
  std::ostringstream out;
  for (const auto& n : g.nodes) out << "node " << n << "\n";
  auto edges = g.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) out << "edge " << g.nodes[a] << " " << g.nodes[b] << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Structure file format (UTF-8, line oriented, `#` starts a comment):
//   type: d0 d1 ...
//   structure <name>          (optional)
//   vertices: id1 id2 ...
//   rel <i>: (a,b,...) (c,d,...) ...
// A missing `rel i:` line means relation i is empty.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline Structure parse_structure(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool have_type = false, have_verts = false;
  TypeSignature sig;
  std::string name;
  std::vector<std::string> verts;
  std::vector<Relation> rels;
  std::vector<int> vertex_of;  // lazy name lookup
  auto index_of = [&](const std::string& v, int ln) {
    for (size_t i = 0; i < verts.size(); ++i)
      if (verts[i] == v) return static_cast<int>(i);
    throw parse_error("undeclared vertex '" + v + "'", ln);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::strip(line);
    if (line.empty()) continue;

    if (line.rfind("type:", 0) == 0) {
      if (have_type) throw parse_error("duplicate type line", lineno);
      for (const auto& tok : detail::split_ws(line.substr(5))) {
        try {
          sig.arities.push_back(std::stoi(tok));
        } catch (...) {
          throw parse_error("bad arity '" + tok + "'", lineno);
        }
      }
      if (sig.arities.empty()) throw parse_error("empty type", lineno);
      for (int a : sig.arities)
        if (a < 2) throw parse_error("arity must be at least 2", lineno);
      rels.assign(sig.arities.size(), {});
      have_type = true;
    } else if (line.rfind("structure", 0) == 0) {
      name = detail::strip(line.substr(9));
    } else if (line.rfind("vertices:", 0) == 0) {
      if (!have_type) throw parse_error("vertices before type", lineno);
      if (have_verts) throw parse_error("duplicate vertices line", lineno);
      verts = detail::split_ws(line.substr(9));
      if (verts.empty()) throw parse_error("empty vertex list", lineno);
      have_verts = true;
    } else if (line.rfind("rel", 0) == 0) {
      if (!have_verts) throw parse_error("rel before vertices", lineno);
      size_t colon = line.find(':');
      if (colon == std::string::npos) throw parse_error("missing ':' after rel", lineno);
      int idx;
      try {
        idx = std::stoi(detail::strip(line.substr(3, colon - 3)));
      } catch (...) {
        throw parse_error("bad relation index", lineno);
      }
      if (idx < 0 || idx >= sig.relation_count())
        throw parse_error("relation index out of range", lineno);
      std::string rest = line.substr(colon + 1);
      size_t p = 0;
      while (p < rest.size()) {
        if (std::isspace(static_cast<unsigned char>(rest[p]))) {
          ++p;
          continue;
        }
        if (rest[p] != '(') throw parse_error("expected '('", lineno);
        size_t close = rest.find(')', p);
        if (close == std::string::npos) throw parse_error("unterminated tuple", lineno);
        std::string body = rest.substr(p + 1, close - p - 1);
        Tuple t;
        std::istringstream tb(body);
        std::string item;
        while (std::getline(tb, item, ',')) {
          item = detail::strip(item);
          if (item.empty()) throw parse_error("empty tuple entry", lineno);
          t.push_back(index_of(item, lineno));
        }
        if (static_cast<int>(t.size()) != sig.arities[idx])
          throw parse_error("arity mismatch: tuple of length " + std::to_string(t.size()) +
                                " in relation of arity " + std::to_string(sig.arities[idx]),
                            lineno);
        rels[idx].push_back(std::move(t));
        p = close + 1;
      }
    } else {
      throw parse_error("unrecognized line '" + line + "'", lineno);
    }
  }
  if (!have_type) throw parse_error("missing type line");
  if (!have_verts) throw parse_error("missing vertices line");
  return Structure::make(std::move(sig), std::move(verts), std::move(rels), std::move(name));
}

inline Structure parse_structure(const std::string& text) {
  std::istringstream in(text);
  return parse_structure(in);
}

// Deterministic text form; tuples come out in lexicographic order of vertex
// indices, empty relations are omitted. parse(serialize(A)) == A.
inline std::string serialize_structure(const Structure& a) {
  std::ostringstream out;
  out << "type:";
  for (int d : a.sig.arities) out << " " << d;
  out << "\n";
  if (!a.name.empty()) out << "structure " << a.name << "\n";
  out << "vertices:";
  for (const auto& v : a.vertices) out << " " << v;
  out << "\n";
  for (size_t i = 0; i < a.relations.size(); ++i) {
    if (a.relations[i].empty()) continue;
    out << "rel " << i << ":";
    for (const auto& t : a.relations[i]) {
      out << " (";
      for (size_t j = 0; j < t.size(); ++j) out << (j ? "," : "") << a.vertices[t[j]];
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

// A partition of a structure's vertex set into disjoint nonempty blocks.
struct VertexPartition {
  std::vector<std::vector<int>> blocks;

  void validate(const Structure& a) const {
    std::vector<int> seen(a.vertex_count(), 0);
    for (const auto& b : blocks) {
      if (b.empty()) throw input_error("partition block is empty");
      for (int v : b) {
        if (v < 0 || v >= a.vertex_count()) throw input_error("partition element out of range");
        if (seen[v]++) throw input_error("partition blocks are not disjoint");
      }
    }
    for (int c : seen)
      if (!c) throw input_error("partition does not cover the vertex set");
  }
};

// Factor structure A/~ : blocks become vertices, a tuple of blocks is an edge
// when some choice of representatives is an edge of A.
inline Structure factor(const Structure& a, const VertexPartition& p) {
  p.validate(a);
  std::vector<int> block_of(a.vertex_count(), -1);
  for (size_t b = 0; b < p.blocks.size(); ++b)
    for (int v : p.blocks[b]) block_of[v] = static_cast<int>(b);
  std::vector<std::string> names;
  names.reserve(p.blocks.size());
  for (const auto& b : p.blocks) {
    auto members = b;
    std::sort(members.begin(), members.end());
    std::string nm;
    for (size_t k = 0; k < members.size(); ++k)
      nm += (k ? "+" : "") + a.vertices[members[k]];
    names.push_back(std::move(nm));
  }
  std::vector<Relation> rels(a.relations.size());
  for (size_t i = 0; i < a.relations.size(); ++i)
    for (const auto& t : a.relations[i]) {
      Tuple img;
      img.reserve(t.size());
      for (int v : t) img.push_back(block_of[v]);
      rels[i].push_back(std::move(img));
    }
  return Structure::make(a.sig, std::move(names), std::move(rels));
}

}  // namespace relhom
