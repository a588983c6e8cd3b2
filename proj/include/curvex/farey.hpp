#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvex/complex2.hpp"
#include "curvex/slope.hpp"

namespace curvex {

inline constexpr int kDefaultDepthLimit = 20;

// One-vertex complex standing in for a pair of pants.
inline Complex2 point_complex(const std::string& label = "*") {
  Complex2 c;
  c.vertices.push_back(label);
  c.metadata[meta::kKind] = meta::kKindPoint;
  c.metadata[meta::kConstruction] = "point";
  set_fiber_metadata(c, {});
  return c;
}

// Complete graph on the given labels, with all 3-subsets as triangles.
inline Complex2 complete_complex(const std::vector<std::string>& labels) {
  Complex2 c;
  c.vertices = labels;
  const int n = c.vertex_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.edges.push_back(make_edge(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) c.triangles.push_back(oriented_triangle(i, j, k));
  c.metadata[meta::kKind] = meta::kKindStar;
  c.metadata[meta::kConstruction] = "complete(" + std::to_string(n) + ")";
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  set_fiber_metadata(c, {all});
  return c;
}

// Ball of the Farey tessellation around the base edge {1/0, 0/1}: the two
// base triangles (mediant 1/1 and its mirror -1/1), then `depth` rounds in
// which every boundary edge grows its missing Farey neighbor.
inline Complex2 farey_ball(int depth, int depth_limit = kDefaultDepthLimit) {
  if (depth < 0 || depth > depth_limit)
    fail(errc::depth_limit, "depth " + std::to_string(depth) + " exceeds limit " +
                                std::to_string(depth_limit));

  Complex2 c;
  std::vector<Slope> slopes;
  std::map<Slope, int> index_of;
  auto add_vertex = [&](const Slope& s) {
    auto [it, fresh] = index_of.emplace(s, static_cast<int>(slopes.size()));
    if (fresh) {
      slopes.push_back(s);
      c.vertices.push_back(s.str());
    }
    return it->second;
  };

  const int vinf = add_vertex(Slope{1, 0});
  const int v0 = add_vertex(Slope{0, 1});
  const int v1 = add_vertex(Slope{1, 1});
  const int vm1 = add_vertex(Slope{-1, 1});

  c.edges.push_back(make_edge(vinf, v0));
  c.edges.push_back(make_edge(vinf, v1));
  c.edges.push_back(make_edge(v0, v1));
  c.edges.push_back(make_edge(vinf, vm1));
  c.edges.push_back(make_edge(v0, vm1));
  // consistent disc orientation, matching the rotation orientation of the
  // level quotients: the triangle through inf, 0, 1 runs in that cyclic
  // order, and the mirror triangle induces the opposite direction on the
  // shared base edge
  c.triangles.push_back(oriented_triangle(vinf, v0, v1));
  c.triangles.push_back(oriented_triangle(vinf, vm1, v0));

  // boundary record: (u, v, third) with the triangle direction u -> v
  struct BoundaryEdge {
    int u, v, third;
  };
  std::vector<BoundaryEdge> boundary = {
      {v0, v1, vinf}, {v1, vinf, v0}, {vinf, vm1, v0}, {vm1, v0, vinf}};

  for (int round = 0; round < depth; ++round) {
    std::vector<BoundaryEdge> next;
    next.reserve(boundary.size() * 2);
    for (const BoundaryEdge& be : boundary) {
      const Slope s = slopes[be.u];
      const Slope t = slopes[be.v];
      const Slope w = slopes[be.third];
      // the two Farey neighbors of an edge are s+t and s-t up to sign;
      // the new vertex is the one that is not already inside
      const Slope sum = Slope::canonical(s.p + t.p, s.q + t.q);
      const Slope diff = Slope::canonical(s.p - t.p, s.q - t.q);
      const Slope fresh = (sum == w) ? diff : sum;
      const int m = add_vertex(fresh);
      c.edges.push_back(make_edge(be.u, m));
      c.edges.push_back(make_edge(m, be.v));
      // existing triangle runs u -> v, so the new one runs v -> u; its free
      // sides carry the outward directions u -> m and m -> v
      c.triangles.push_back(oriented_triangle(be.v, be.u, m));
      next.push_back({be.u, m, be.v});
      next.push_back({m, be.v, be.u});
    }
    boundary = std::move(next);
  }

  c.metadata[meta::kKind] = meta::kKindPants;
  c.metadata[meta::kConstruction] = "farey_ball(depth=" + std::to_string(depth) + ")";
  std::vector<int> all(c.vertex_count());
  for (int i = 0; i < c.vertex_count(); ++i) all[i] = i;
  set_fiber_metadata(c, {all});
  return c;
}

// Slopes of a Farey ball, recovered from its labels.
inline std::vector<Slope> ball_slopes(const Complex2& c) {
  std::vector<Slope> out;
  out.reserve(c.vertices.size());
  for (const std::string& label : c.vertices) out.push_back(Slope::parse(label));
  return out;
}

// Replace every maximal Farey piece (named by the fiber metadata) with the
// complete graph on its vertices; triangles become the 3-cliques of each
// piece.  Idempotent.
inline Complex2 complete_closure(const Complex2& c) {
  const std::vector<std::vector<int>> fibers = fiber_metadata(c);
  Complex2 out;
  out.vertices = c.vertices;
  for (const auto& fiber : fibers) {
    for (std::size_t i = 0; i < fiber.size(); ++i)
      for (std::size_t j = i + 1; j < fiber.size(); ++j)
        out.edges.push_back(make_edge(fiber[i], fiber[j]));
    for (std::size_t i = 0; i < fiber.size(); ++i)
      for (std::size_t j = i + 1; j < fiber.size(); ++j)
        for (std::size_t k = j + 1; k < fiber.size(); ++k)
          out.triangles.push_back(oriented_triangle(fiber[i], fiber[j], fiber[k]));
  }
  out.metadata = c.metadata;
  auto kind = out.metadata.find(meta::kKind);
  if (kind != out.metadata.end()) {
    if (kind->second == meta::kKindPants) kind->second = meta::kKindStar;
    if (kind->second == meta::kKindProductPants) kind->second = meta::kKindProductStar;
  }
  out.metadata[meta::kConstruction] =
      "complete_closure(" + (c.metadata.count(meta::kConstruction)
                                 ? c.metadata.at(meta::kConstruction)
                                 : std::string("?")) +
      ")";
  return out;
}

}  // namespace curvex
