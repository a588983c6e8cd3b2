#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvex/automorphism.hpp"
#include "curvex/complex2.hpp"

namespace curvex {

// Nerve of a cover of the vertex set: one vertex per cover set, an edge for
// every pair of sets with nonempty intersection.  Metadata records the sets.
inline Complex2 nerve(const Complex2& c, const std::vector<std::vector<int>>& cover) {
  std::vector<std::set<int>> sets;
  sets.reserve(cover.size());
  std::set<int> covered;
  for (const auto& raw : cover) {
    if (raw.empty()) fail(errc::empty_cover_set, "cover contains an empty set");
    std::set<int> s(raw.begin(), raw.end());
    for (int v : s) {
      if (v < 0 || v >= c.vertex_count())
        fail(errc::invalid_argument, "cover names a vertex outside the complex");
      covered.insert(v);
    }
    sets.push_back(std::move(s));
  }
  if (static_cast<int>(covered.size()) != c.vertex_count())
    fail(errc::invalid_argument, "cover does not exhaust the vertex set");

  Complex2 out;
  for (std::size_t i = 0; i < sets.size(); ++i) out.vertices.push_back("C" + std::to_string(i));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const auto& small = sets[i].size() <= sets[j].size() ? sets[i] : sets[j];
      const auto& large = sets[i].size() <= sets[j].size() ? sets[j] : sets[i];
      const bool meet = std::any_of(small.begin(), small.end(),
                                    [&](int v) { return large.count(v) > 0; });
      if (meet) out.edges.push_back(make_edge(static_cast<int>(i), static_cast<int>(j)));
    }
  nlohmann::json record = nlohmann::json::array();
  for (const auto& s : sets) record.push_back(std::vector<int>(s.begin(), s.end()));
  out.metadata[meta::kCover] = record.dump();
  out.metadata[meta::kConstruction] = "nerve";
  return out;
}

namespace detail {

// Union-find.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);  // keep the least index as representative
    parent[b] = a;
  }
};

// Induced action of an automorphism on cell indices.  Parallel cells (same
// geometric support) are matched positionally within their class, which is
// exact whenever cells are simple and deterministic always.
template <typename Cell, typename Support>
std::vector<int> induced_cell_action(const std::vector<Cell>& cells,
                                     const std::vector<Support>& supports,
                                     const std::vector<Support>& image_supports) {
  std::map<Support, std::vector<int>> by_support;
  for (std::size_t i = 0; i < cells.size(); ++i) by_support[supports[i]].push_back(i);
  std::map<Support, int> cursor;
  std::vector<int> action(cells.size(), -1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Support& img = image_supports[i];
    auto it = by_support.find(img);
    if (it == by_support.end())
      fail(errc::not_an_automorphism, "cell image is not a cell of the complex");
    const int pos = cursor[img]++;
    if (pos >= static_cast<int>(it->second.size()))
      fail(errc::not_an_automorphism, "cell multiplicities are not preserved");
    action[i] = it->second[pos];
  }
  return action;
}

}  // namespace detail

// Quotient of the complex by the group generated by the given
// automorphisms.  Vertices become orbits labeled by their least member;
// edge orbits whose endpoints merge are dropped (and counted in metadata),
// and triangle orbits survive only with three distinct orbit vertices.
inline Complex2 quotient_by_action(const Complex2& c,
                                   const std::vector<VertexPermutation>& gens) {
  const int n = c.vertex_count();
  for (const VertexPermutation& g : gens)
    if (!is_automorphism(c, g, true))
      fail(errc::not_an_automorphism, "quotient generator is not an automorphism");

  detail::Dsu vertex_orbits(n);
  for (const VertexPermutation& g : gens)
    for (int v = 0; v < n; ++v) vertex_orbits.unite(v, g(v));

  // orbit ids in order of least member
  std::vector<int> rep_of(n);
  std::map<int, int> orbit_id;
  for (int v = 0; v < n; ++v) rep_of[v] = vertex_orbits.find(v);
  for (int v = 0; v < n; ++v)
    if (rep_of[v] == v) {
      const int id = static_cast<int>(orbit_id.size());
      orbit_id.emplace(v, id);
    }
  auto orbit_of = [&](int v) { return orbit_id.at(rep_of[v]); };

  Complex2 out;
  out.vertices.reserve(orbit_id.size());
  for (const auto& [rep, id] : orbit_id) out.vertices.push_back(c.vertices[rep]);

  // edge orbits
  detail::Dsu edge_orbits(c.edge_count());
  {
    std::vector<Edge> supports = c.edges;
    for (const VertexPermutation& g : gens) {
      std::vector<Edge> images(c.edge_count());
      for (int i = 0; i < c.edge_count(); ++i)
        images[i] = make_edge(g(c.edges[i][0]), g(c.edges[i][1]));
      const std::vector<int> action =
          detail::induced_cell_action(c.edges, supports, images);
      for (int i = 0; i < c.edge_count(); ++i) edge_orbits.unite(i, action[i]);
    }
  }
  int collapsed_edges = 0;
  for (int i = 0; i < c.edge_count(); ++i) {
    if (edge_orbits.find(i) != i) continue;
    const int a = orbit_of(c.edges[i][0]);
    const int b = orbit_of(c.edges[i][1]);
    if (a == b) {
      ++collapsed_edges;
      continue;
    }
    out.edges.push_back(make_edge(a, b));
  }

  // triangle orbits (cells matched through their vertex sets)
  detail::Dsu tri_orbits(c.triangle_count());
  {
    std::vector<std::array<int, 3>> supports(c.triangle_count());
    for (int i = 0; i < c.triangle_count(); ++i) supports[i] = sorted_triple(c.triangles[i]);
    for (const VertexPermutation& g : gens) {
      std::vector<std::array<int, 3>> images(c.triangle_count());
      for (int i = 0; i < c.triangle_count(); ++i) {
        const Triangle& t = c.triangles[i];
        images[i] = sorted_triple(Triangle{g(t[0]), g(t[1]), g(t[2])});
        std::sort(images[i].begin(), images[i].end());
      }
      const std::vector<int> action =
          detail::induced_cell_action(c.triangles, supports, images);
      for (int i = 0; i < c.triangle_count(); ++i) tri_orbits.unite(i, action[i]);
    }
  }
  int collapsed_triangles = 0;
  for (int i = 0; i < c.triangle_count(); ++i) {
    if (tri_orbits.find(i) != i) continue;
    const Triangle& t = c.triangles[i];
    const int a = orbit_of(t[0]), b = orbit_of(t[1]), cc = orbit_of(t[2]);
    if (a == b || b == cc || a == cc) {
      ++collapsed_triangles;
      continue;
    }
    out.triangles.push_back(oriented_triangle(a, b, cc));
  }

  out.metadata = c.metadata;
  out.metadata[meta::kCollapsedEdges] = std::to_string(collapsed_edges);
  out.metadata[meta::kCollapsedTriangles] = std::to_string(collapsed_triangles);
  out.metadata[meta::kConstruction] =
      "quotient(" + (c.metadata.count(meta::kConstruction)
                         ? c.metadata.at(meta::kConstruction)
                         : std::string("?")) +
      ")";
  // fiber metadata survives only in the spanning single-fiber case
  bool spanning_single_fiber = false;
  if (c.metadata.count(meta::kFibers)) {
    const auto fibers = fiber_metadata(c);
    spanning_single_fiber =
        fibers.size() == 1 && static_cast<int>(fibers[0].size()) == c.vertex_count();
  }
  if (spanning_single_fiber) {
    std::vector<int> all(out.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    set_fiber_metadata(out, {all});
  } else {
    out.metadata.erase(meta::kFibers);
  }
  return out;
}

}  // namespace curvex
