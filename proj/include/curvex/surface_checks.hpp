#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "curvex/complex2.hpp"

namespace curvex {

inline int euler_characteristic(const Complex2& c) {
  return c.vertex_count() - c.edge_count() + c.triangle_count();
}

struct SurfaceCheck {
  bool edges_in_two_triangles = false;
  bool coherently_oriented = false;
  bool links_are_cycles = false;
  bool connected = false;

  bool closed_oriented_surface() const {
    return edges_in_two_triangles && coherently_oriented && links_are_cycles && connected;
  }
};

// Closed oriented surface test for a triangulated complex: every edge lies
// in exactly two triangles with opposite induced directions, and every
// vertex link is a single cycle.
inline SurfaceCheck check_closed_surface(const Complex2& c) {
  SurfaceCheck out;
  std::map<Edge, int> edge_mult;
  for (const Edge& e : c.edges) ++edge_mult[e];
  std::map<Edge, int> tri_boundary;
  std::map<std::pair<int, int>, int> directed;
  for (const Triangle& t : c.triangles)
    for (int i = 0; i < 3; ++i) {
      const int u = t[i], v = t[(i + 1) % 3];
      ++tri_boundary[make_edge(u, v)];
      ++directed[{u, v}];
    }

  out.edges_in_two_triangles = true;
  for (const auto& [pair, mult] : edge_mult)
    if (tri_boundary[pair] != 2 * mult) out.edges_in_two_triangles = false;
  for (const auto& [pair, count] : tri_boundary)
    if (!edge_mult.count(pair)) out.edges_in_two_triangles = false;

  out.coherently_oriented = true;
  for (const auto& [arc, count] : directed) {
    const auto rev = directed.find({arc.second, arc.first});
    if (rev == directed.end() || rev->second != count) out.coherently_oriented = false;
  }

  // vertex links: one edge per incident triangle (the opposite pair);
  // a single cycle means all degrees are 2, edge count equals vertex count,
  // and the link is connected
  out.links_are_cycles = true;
  const int n = c.vertex_count();
  std::vector<std::vector<Edge>> link(n);
  for (const Triangle& t : c.triangles)
    for (int i = 0; i < 3; ++i)
      link[t[i]].push_back(make_edge(t[(i + 1) % 3], t[(i + 2) % 3]));
  for (int v = 0; v < n; ++v) {
    std::map<int, int> degree;
    for (const Edge& e : link[v]) {
      ++degree[e[0]];
      ++degree[e[1]];
    }
    if (degree.empty() || link[v].size() != degree.size()) {
      out.links_are_cycles = false;
      continue;
    }
    for (const auto& [w, d] : degree)
      if (d != 2) out.links_are_cycles = false;
    // connectivity of the link multigraph
    std::map<int, std::vector<int>> adj;
    for (const Edge& e : link[v]) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    std::set<int> seen;
    std::vector<int> stack{degree.begin()->first};
    seen.insert(stack.back());
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (seen.insert(w).second) stack.push_back(w);
    }
    if (seen.size() != degree.size()) out.links_are_cycles = false;
  }

  // connectivity of the complex itself
  std::set<int> seen;
  if (n > 0) {
    std::vector<int> stack{0};
    seen.insert(0);
    std::vector<std::vector<int>> adj = c.adjacency();
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (seen.insert(w).second) stack.push_back(w);
    }
  }
  out.connected = static_cast<int>(seen.size()) == n;
  return out;
}

// Genus of a closed oriented connected surface from its Euler characteristic.
inline int surface_genus(const Complex2& c) { return (2 - euler_characteristic(c)) / 2; }

}  // namespace curvex
