#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "curvex/automorphism.hpp"
#include "curvex/complex2.hpp"
#include "curvex/deadline.hpp"
#include "curvex/graph_ops.hpp"
#include "curvex/product.hpp"

namespace curvex {

inline constexpr int kDefaultNeighborGuard = 24;
inline constexpr int kMaxNeighborGuard = 64;
inline constexpr int kDefaultMemberFactorLimit = 5;
inline constexpr int kDefaultMemberFactorVertexLimit = 30;

namespace detail {

// Exact maximum independent set on <= 64 vertices, branch and bound on the
// highest-degree candidate.
inline int mis_size(const std::vector<std::uint64_t>& adj, std::uint64_t mask) {
  if (mask == 0) return 0;
  int pivot = -1, best = -1;
  for (std::uint64_t m = mask; m;) {
    const int v = __builtin_ctzll(m);
    m &= m - 1;
    const int deg = __builtin_popcountll(adj[v] & mask);
    if (deg > best) {
      best = deg;
      pivot = v;
    }
  }
  if (best == 0) return __builtin_popcountll(mask);  // already independent
  const std::uint64_t bit = 1ull << pivot;
  const int with_pivot = 1 + mis_size(adj, mask & ~(adj[pivot] | bit));
  const int without_pivot = mis_size(adj, mask & ~bit);
  return std::max(with_pivot, without_pivot);
}

// MIS over an explicit vertex list with an adjacency oracle.
template <typename Adjacent>
int mis_of_list(const std::vector<int>& verts, Adjacent adjacent) {
  const int k = static_cast<int>(verts.size());
  std::vector<std::uint64_t> adj(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (adjacent(verts[i], verts[j])) {
        adj[i] |= 1ull << j;
        adj[j] |= 1ull << i;
      }
  const std::uint64_t mask = k == 64 ? ~0ull : (1ull << k) - 1;
  return mis_size(adj, mask);
}

// Per-vertex triangle-closure fibers for a whole complex, one pass over the
// triangle list.
inline std::vector<std::vector<std::vector<int>>> all_fibers(const Complex2& c) {
  const int n = c.vertex_count();
  std::vector<std::set<int>> nbset(n);
  for (const Edge& e : c.edges) {
    nbset[e[0]].insert(e[1]);
    nbset[e[1]].insert(e[0]);
  }
  std::vector<std::vector<std::array<int, 2>>> tri_pairs(n);
  for (const Triangle& t : c.triangles)
    for (int i = 0; i < 3; ++i) tri_pairs[t[i]].push_back({t[(i + 1) % 3], t[(i + 2) % 3]});

  std::vector<std::vector<std::vector<int>>> fibers_at(n);
  for (int v = 0; v < n; ++v) {
    const std::vector<int> nb(nbset[v].begin(), nbset[v].end());
    std::map<int, int> pos;
    for (std::size_t i = 0; i < nb.size(); ++i) pos[nb[i]] = static_cast<int>(i);
    Dsu classes(static_cast<int>(nb.size()));
    for (const auto& [a, b] : tri_pairs[v]) {
      const auto pa = pos.find(a), pb = pos.find(b);
      if (pa != pos.end() && pb != pos.end()) classes.unite(pa->second, pb->second);
    }
    std::map<int, std::vector<int>> grouped;
    for (std::size_t i = 0; i < nb.size(); ++i)
      grouped[classes.find(static_cast<int>(i))].push_back(nb[i]);
    for (auto& [rep, members] : grouped) {
      members.push_back(v);
      std::sort(members.begin(), members.end());
      fibers_at[v].push_back(std::move(members));
    }
    std::sort(fibers_at[v].begin(), fibers_at[v].end());
  }
  return fibers_at;
}

}  // namespace detail

// Maximum number of pairwise non-adjacent neighbors of v: the local
// dimension detector.  Exact; guarded by the neighborhood size.
inline int local_dimension(const Complex2& c, int v, int neighbor_guard = kDefaultNeighborGuard) {
  if (v < 0 || v >= c.vertex_count()) fail(errc::invalid_argument, "vertex out of range");
  if (neighbor_guard > kMaxNeighborGuard) neighbor_guard = kMaxNeighborGuard;
  std::set<int> nbset;
  std::set<Edge> pairs;
  for (const Edge& e : c.edges) {
    if (e[0] == v) nbset.insert(e[1]);
    if (e[1] == v) nbset.insert(e[0]);
    pairs.insert(e);
  }
  const std::vector<int> nb(nbset.begin(), nbset.end());
  if (static_cast<int>(nb.size()) > neighbor_guard)
    fail(errc::neighborhood_too_large, "vertex has " + std::to_string(nb.size()) +
                                           " neighbors, guard is " +
                                           std::to_string(neighbor_guard));
  return detail::mis_of_list(
      nb, [&](int a, int b) { return pairs.count(make_edge(a, b)) > 0; });
}

// Triangle-closure classes of the edges at v: repeatedly absorb edges that
// complete a triangle with an absorbed edge.  Each completed class, plus v,
// is one maximal fiber.
inline std::vector<std::vector<int>> fibers_through(const Complex2& c, int v) {
  if (v < 0 || v >= c.vertex_count()) fail(errc::invalid_argument, "vertex out of range");
  return detail::all_fibers(c)[v];
}

// Same, batched for every vertex at once.
inline std::vector<std::vector<std::vector<int>>> fibers_by_vertex(const Complex2& c) {
  return detail::all_fibers(c);
}

// Axis-aligned sub-product of a star product: the vertices agreeing with a
// partial tuple, with the detected dimension and the fixed coordinates.
struct SubgraphMember {
  std::vector<int> vertices;  // sorted flat indices
  PartialTuple fixed;         // over non-point coordinates only
  int dimension = 0;          // free non-point coordinates
};

struct SubgraphFamily {
  std::vector<SubgraphMember> members;
  // inclusion order generators: for each member, the members reached by
  // releasing exactly one fixed coordinate
  std::vector<std::vector<int>> released;
};

// All vertex subsets of a star-flavor product whose induced subgraph is an
// axis-aligned sub-product: fibers are detected by triangle closure and
// cross-checked against the coordinates, members come from the intersection
// closure of the coordinate hyperplanes, and every member is certified
// maximal in its isomorphy class by the neighbor-independence argument.
inline SubgraphFamily maximal_subsurface_subgraphs(
    const ProductComplex& p, int factor_limit = kDefaultMemberFactorLimit,
    int factor_vertex_limit = kDefaultMemberFactorVertexLimit, const Deadline& deadline = {}) {
  if (p.kind != ProductKind::star)
    fail(errc::mixed_flavor, "subsurface detection expects a star-flavor product");
  if (p.factor_count() > factor_limit)
    fail(errc::size_limit, "too many factors for subsurface detection");
  for (int s : p.factor_sizes)
    if (s > factor_vertex_limit)
      fail(errc::size_limit, "factor too large for subsurface detection");

  const Complex2& c = p.flattened;
  const int n = c.vertex_count();

  std::vector<std::set<int>> adjacency(n);
  for (const Edge& e : c.edges) {
    adjacency[e[0]].insert(e[1]);
    adjacency[e[1]].insert(e[0]);
  }

  // graph-theoretic fiber detection, cross-checked against the coordinates
  const auto fibers_at = detail::all_fibers(c);
  {
    std::set<std::vector<int>> detected, declared;
    for (const auto& per_vertex : fibers_at)
      for (const auto& f : per_vertex) detected.insert(f);
    for (auto f : fiber_metadata(c)) {
      std::sort(f.begin(), f.end());
      declared.insert(std::move(f));
    }
    if (detected != declared)
      fail(errc::invalid_complex, "triangle-closure fibers disagree with the coordinates");
  }

  std::vector<int> live_coords;
  for (int i = 0; i < p.factor_count(); ++i)
    if (p.factor_sizes[i] >= 2) live_coords.push_back(i);

  // intersection closure of the coordinate hyperplanes, seeded by the whole
  // vertex set
  std::map<PartialTuple, SubgraphMember> members;
  {
    SubgraphMember whole;
    whole.vertices.resize(n);
    for (int v = 0; v < n; ++v) whole.vertices[v] = v;
    whole.dimension = static_cast<int>(live_coords.size());
    members.emplace(PartialTuple{}, std::move(whole));
    std::vector<PartialTuple> frontier{PartialTuple{}};
    while (!frontier.empty()) {
      deadline.check();
      std::vector<PartialTuple> next;
      for (const PartialTuple& sigma : frontier)
        for (int coord : live_coords) {
          if (sigma.count(coord)) continue;
          for (int value = 0; value < p.factor_sizes[coord]; ++value) {
            PartialTuple merged = sigma;
            merged[coord] = value;
            if (members.count(merged)) continue;
            SubgraphMember m;
            m.fixed = merged;
            m.dimension = static_cast<int>(live_coords.size() - merged.size());
            for (int v : members.at(sigma).vertices)
              if (p.tuple_of(v)[coord] == value) m.vertices.push_back(v);
            members.emplace(merged, std::move(m));
            next.push_back(std::move(merged));
          }
        }
      frontier = std::move(next);
    }
  }

  SubgraphFamily family;
  family.members.reserve(members.size());
  std::map<PartialTuple, int> index_of;
  for (auto& [sigma, m] : members) {
    index_of.emplace(sigma, static_cast<int>(family.members.size()));
    family.members.push_back(std::move(m));
  }
  family.released.resize(family.members.size());
  for (const auto& [sigma, idx] : index_of)
    for (const auto& [coord, value] : sigma) {
      PartialTuple released = sigma;
      released.erase(coord);
      family.released[idx].push_back(index_of.at(released));
    }

  // recognizer: the recorded dimension must be visible inside the member at
  // its least vertex (independent neighbors inside the member)
  for (const SubgraphMember& m : family.members) {
    deadline.check();
    std::vector<char> inside(n, 0);
    for (int v : m.vertices) inside[v] = 1;
    const int v0 = m.vertices.front();
    std::vector<int> nb;
    for (int w : adjacency[v0])
      if (inside[w]) nb.push_back(w);
    int dim;
    if (static_cast<int>(nb.size()) <= kMaxNeighborGuard) {
      dim = detail::mis_of_list(
          nb, [&](int a, int b) { return adjacency[a].count(b) > 0; });
    } else {
      dim = 0;  // fiber count stands in for the independence count
      for (const auto& fiber : fibers_at[v0]) {
        bool contained = true;
        for (int u : fiber)
          if (!inside[u]) {
            contained = false;
            break;
          }
        if (contained) ++dim;
      }
    }
    if (dim != m.dimension)
      fail(errc::invalid_complex, "member fails its dimension recognizer");
  }

  // maximality certificate (the neighbor-independence argument): no external
  // vertex adjacent to the member can join it without raising the
  // independence count at the attachment vertex past the dimension
  for (const SubgraphMember& m : family.members) {
    deadline.check();
    if (static_cast<int>(m.vertices.size()) == n) continue;
    std::vector<char> inside(n, 0);
    for (int v : m.vertices) inside[v] = 1;
    std::set<int> boundary;
    for (int v : m.vertices)
      for (int w : adjacency[v])
        if (!inside[w]) boundary.insert(w);
    for (int w : boundary) {
      int v = -1;
      for (int u : adjacency[w])
        if (inside[u]) {
          v = u;
          break;
        }
      std::vector<int> independent;
      for (const auto& fiber : fibers_at[v]) {
        bool contained = true;
        for (int u : fiber)
          if (!inside[u]) {
            contained = false;
            break;
          }
        if (!contained) continue;
        int pick = -1;
        for (int u : fiber)
          if (u != v && !adjacency[w].count(u)) {
            pick = u;
            break;
          }
        if (pick < 0) fail(errc::invalid_complex, "maximality certificate failed");
        independent.push_back(pick);
      }
      if (static_cast<int>(independent.size()) != m.dimension)
        fail(errc::invalid_complex, "maximality certificate failed");
      for (std::size_t i = 0; i < independent.size(); ++i)
        for (std::size_t j = i + 1; j < independent.size(); ++j)
          if (adjacency[independent[i]].count(independent[j]))
            fail(errc::invalid_complex, "maximality certificate failed");
    }
  }

  return family;
}

// The curve complex reconstructed from the family: a member fixing k+1
// coordinates is a k-simplex; its faces release one fixed coordinate.
inline SimplicialComplex reconstruct_curve_complex(
    const ProductComplex& p, int factor_limit = kDefaultMemberFactorLimit,
    int factor_vertex_limit = kDefaultMemberFactorVertexLimit, const Deadline& deadline = {}) {
  const SubgraphFamily family =
      maximal_subsurface_subgraphs(p, factor_limit, factor_vertex_limit, deadline);
  SimplicialComplex sc;
  std::map<PartialTuple, int> vertex_of;
  int max_fixed = 0;
  for (const SubgraphMember& m : family.members) {
    max_fixed = std::max(max_fixed, static_cast<int>(m.fixed.size()));
    if (m.fixed.size() == 1) {
      const auto [coord, value] = *m.fixed.begin();
      vertex_of.emplace(m.fixed, static_cast<int>(sc.vertex_labels.size()));
      sc.vertex_labels.push_back("c" + std::to_string(coord) + "=" +
                                 p.factors[coord].vertices[value]);
    }
  }
  sc.simplices_by_dim.assign(std::max(0, max_fixed), {});
  for (const SubgraphMember& m : family.members) {
    if (m.fixed.empty()) continue;
    std::vector<int> simplex;
    for (const auto& [coord, value] : m.fixed)
      simplex.push_back(vertex_of.at(PartialTuple{{coord, value}}));
    std::sort(simplex.begin(), simplex.end());
    sc.simplices_by_dim[m.fixed.size() - 1].push_back(std::move(simplex));
  }
  for (auto& lst : sc.simplices_by_dim) std::sort(lst.begin(), lst.end());
  return sc;
}

// Lemma-style automorphism inclusion report: every automorphism of the
// pants-flavor complex must preserve the star-flavor complex on the same
// vertices.
struct AutInclusionReport {
  std::uint64_t aut_cp_order = 0;
  std::uint64_t aut_cs_order = 0;
  bool inclusion = false;
  std::uint64_t index = 0;

  nlohmann::json to_json() const {
    return {{"aut_cp_order", aut_cp_order},
            {"aut_cs_order", aut_cs_order},
            {"inclusion", inclusion},
            {"index", index}};
  }
};

inline AutInclusionReport check_aut_inclusion(const Complex2& cp, const Complex2& cs,
                                              int vertex_limit = kDefaultVertexLimit,
                                              const Deadline& deadline = {}) {
  if (cp.vertices != cs.vertices)
    fail(errc::vertex_set_mismatch, "complexes do not share a vertex set");
  const AutGroup aut_cp = automorphism_group(cp, false, vertex_limit, deadline);
  const AutGroup aut_cs = automorphism_group(cs, false, vertex_limit, deadline);
  AutInclusionReport report;
  report.aut_cp_order = aut_cp.order;
  report.aut_cs_order = aut_cs.order;
  report.inclusion = true;
  for (const VertexPermutation& g : aut_cp.generators)
    if (!is_automorphism(cs, g, false)) {
      report.inclusion = false;
      break;
    }
  report.index = report.inclusion && aut_cp.order > 0 ? aut_cs.order / aut_cp.order : 0;
  return report;
}

}  // namespace curvex
