#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curvex/errors.hpp"

namespace curvex {

// Unordered vertex pair, stored with the smaller index first.
using Edge = std::array<int, 2>;

// Cyclic orientation class of a vertex triple, stored with the least
// vertex first: (a,b,c) ~ (b,c,a) ~ (c,a,b); (a,c,b) is the reverse.
using Triangle = std::array<int, 3>;

inline Edge make_edge(int u, int v) {
  if (u == v) fail(errc::invalid_complex, "edge endpoints coincide");
  return u < v ? Edge{u, v} : Edge{v, u};
}

inline Triangle oriented_triangle(int a, int b, int c) {
  if (a == b || b == c || a == c)
    fail(errc::invalid_complex, "triangle vertices not distinct");
  // rotate the least vertex to the front, preserving the cyclic order
  if (b < a && b < c) return Triangle{b, c, a};
  if (c < a && c < b) return Triangle{c, a, b};
  return Triangle{a, b, c};
}

inline Triangle reversed_triangle(const Triangle& t) {
  return oriented_triangle(t[0], t[2], t[1]);
}

inline std::array<int, 3> sorted_triple(const Triangle& t) {
  std::array<int, 3> s = t;
  std::sort(s.begin(), s.end());
  return s;
}

// Finite combinatorial 2-complex: labeled vertices, an edge list that
// permits parallel edges, and oriented triangles.  With an empty triangle
// list this is just a (multi)graph.
struct Complex2 {
  std::vector<std::string> vertices;  // pairwise distinct labels
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;
  std::map<std::string, std::string> metadata;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }

  // Distinct endpoint pairs, ignoring multiplicity.
  std::set<Edge> edge_pairs() const {
    return std::set<Edge>(edges.begin(), edges.end());
  }

  // Neighbor index lists (each neighbor once, parallel edges collapsed).
  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::set<int>> nb(vertices.size());
    for (const Edge& e : edges) {
      nb[e[0]].insert(e[1]);
      nb[e[1]].insert(e[0]);
    }
    std::vector<std::vector<int>> out(vertices.size());
    for (std::size_t v = 0; v < nb.size(); ++v)
      out[v].assign(nb[v].begin(), nb[v].end());
    return out;
  }

  void validate() const {
    const int n = vertex_count();
    std::unordered_set<std::string> seen;
    for (const std::string& label : vertices)
      if (!seen.insert(label).second)
        fail(errc::invalid_complex, "duplicate vertex label '" + label + "'");
    for (const Edge& e : edges) {
      if (e[0] < 0 || e[1] >= n || e[0] >= e[1])
        fail(errc::invalid_complex, "edge out of range or not normalized");
    }
    const std::set<Edge> pairs = edge_pairs();
    for (const Triangle& t : triangles) {
      for (int i = 0; i < 3; ++i)
        if (t[i] < 0 || t[i] >= n)
          fail(errc::invalid_complex, "triangle vertex out of range");
      if (t != oriented_triangle(t[0], t[1], t[2]))
        fail(errc::invalid_complex, "triangle not in canonical rotation");
      // structural closure: the three boundary pairs must be edges
      for (int i = 0; i < 3; ++i)
        if (pairs.find(make_edge(t[i], t[(i + 1) % 3])) == pairs.end())
          fail(errc::invalid_complex, "triangle boundary pair missing from edge list");
    }
  }
};

// Bijection on the vertex indices of a fixed Complex2.
class VertexPermutation {
public:
  VertexPermutation() = default;

  explicit VertexPermutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    std::vector<char> hit(n, 0);
    for (int v : images_) {
      if (v < 0 || v >= n || hit[v])
        fail(errc::invalid_argument, "vertex map is not a bijection");
      hit[v] = 1;
    }
  }

  static VertexPermutation identity(int n) {
    std::vector<int> im(n);
    for (int i = 0; i < n; ++i) im[i] = i;
    return VertexPermutation(std::move(im));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int v) const { return images_[v]; }
  const std::vector<int>& images() const { return images_; }

  VertexPermutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
    return VertexPermutation(std::move(inv));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != static_cast<int>(i)) return false;
    return true;
  }

  friend bool operator==(const VertexPermutation& a, const VertexPermutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator<(const VertexPermutation& a, const VertexPermutation& b) {
    return a.images_ < b.images_;
  }

private:
  std::vector<int> images_;
};

// (p * q)(v) = p(q(v))
inline VertexPermutation operator*(const VertexPermutation& p, const VertexPermutation& q) {
  std::vector<int> im(q.size());
  for (int v = 0; v < q.size(); ++v) im[v] = p(q(v));
  return VertexPermutation(std::move(im));
}

// ---- serialization ----

inline nlohmann::json complex_to_json(const Complex2& c) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (int i = 0; i < c.vertex_count(); ++i)
    j["vertices"].push_back({{"id", i}, {"label", c.vertices[i]}});
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : c.edges) j["edges"].push_back({e[0], e[1]});
  j["triangles"] = nlohmann::json::array();
  for (const Triangle& t : c.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
  j["metadata"] = c.metadata;
  return j;
}

inline Complex2 complex_from_json(const nlohmann::json& j) {
  Complex2 c;
  if (!j.is_object() || !j.contains("vertices"))
    fail(errc::invalid_argument, "not a complex document");
  const auto& vs = j.at("vertices");
  c.vertices.resize(vs.size());
  std::vector<char> seen(vs.size(), 0);
  for (const auto& v : vs) {
    const int id = v.at("id").get<int>();
    if (id < 0 || id >= static_cast<int>(vs.size()) || seen[id])
      fail(errc::invalid_argument, "vertex ids must be 0..n-1 and distinct");
    seen[id] = 1;
    c.vertices[id] = v.at("label").get<std::string>();
  }
  if (j.contains("edges"))
    for (const auto& e : j.at("edges"))
      c.edges.push_back(make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
  if (j.contains("triangles"))
    for (const auto& t : j.at("triangles"))
      c.triangles.push_back(
          oriented_triangle(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()));
  if (j.contains("metadata"))
    for (auto it = j.at("metadata").begin(); it != j.at("metadata").end(); ++it)
      c.metadata[it.key()] = it.value().get<std::string>();
  c.validate();
  return c;
}

inline std::string complex_to_json_text(const Complex2& c) {
  return complex_to_json(c).dump(2) + "\n";
}

// DOT export is lossy: edges only, triangle count as a comment.
inline std::string complex_to_dot(const Complex2& c) {
  std::string out = "graph complex {\n";
  out += "  // triangles: " + std::to_string(c.triangle_count()) + "\n";
  for (int i = 0; i < c.vertex_count(); ++i) {
    std::string label;
    for (char ch : c.vertices[i]) {
      if (ch == '"' || ch == '\\') label += '\\';
      label += ch;
    }
    out += "  v" + std::to_string(i) + " [label=\"" + label + "\"];\n";
  }
  for (const Edge& e : c.edges)
    out += "  v" + std::to_string(e[0]) + " -- v" + std::to_string(e[1]) + ";\n";
  out += "}\n";
  return out;
}

namespace meta {
inline constexpr const char* kKind = "kind";
inline constexpr const char* kConstruction = "construction";
inline constexpr const char* kFibers = "fibers";
inline constexpr const char* kFactorSizes = "factor_sizes";
inline constexpr const char* kEdgeCoordinates = "edge_coordinates";
inline constexpr const char* kCollapsedEdges = "collapsed_edges";
inline constexpr const char* kCollapsedTriangles = "collapsed_triangles";
inline constexpr const char* kCover = "cover";

inline constexpr const char* kKindPants = "pants";
inline constexpr const char* kKindStar = "star";
inline constexpr const char* kKindPoint = "point";
inline constexpr const char* kKindProductPants = "product-pants";
inline constexpr const char* kKindProductStar = "product-star";
}  // namespace meta

// Fiber metadata: a list of vertex-index lists naming the maximal Farey
// pieces (axis fibers) of a complex built by this library.
inline void set_fiber_metadata(Complex2& c, const std::vector<std::vector<int>>& fibers) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& f : fibers) j.push_back(f);
  c.metadata[meta::kFibers] = j.dump();
}

inline std::vector<std::vector<int>> fiber_metadata(const Complex2& c) {
  auto it = c.metadata.find(meta::kFibers);
  if (it == c.metadata.end())
    fail(errc::missing_fiber_metadata, "complex carries no fiber metadata");
  std::vector<std::vector<int>> fibers;
  for (const auto& f : nlohmann::json::parse(it->second))
    fibers.push_back(f.get<std::vector<int>>());
  return fibers;
}

}  // namespace curvex
