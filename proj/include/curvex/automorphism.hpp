#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curvex/complex2.hpp"
#include "curvex/deadline.hpp"

namespace curvex {

inline constexpr int kDefaultVertexLimit = 10000;
inline constexpr std::uint64_t kDefaultEnumerationLimit = 1000000;

// Automorphism group of a Complex2's edge structure (and triangle
// structure, when requested): canonical generators plus the exact order.
struct AutGroup {
  std::vector<VertexPermutation> generators;
  std::uint64_t order = 1;
  int orientation_preserving_index = 1;  // 1 or 2
};

namespace detail {

// Preprocessed view: multiplicity adjacency plus triangle incidence with
// orientation forgotten (triangles as sets).
struct StructView {
  int n = 0;
  std::vector<std::vector<std::pair<int, int>>> adj;      // sorted (neighbor, multiplicity)
  std::vector<std::vector<std::array<int, 2>>> tris_at;   // per vertex: the other two, sorted
  bool respect_triangles = false;

  static StructView build(const Complex2& c, bool respect_triangles) {
    StructView v;
    v.n = c.vertex_count();
    v.respect_triangles = respect_triangles;
    std::vector<std::map<int, int>> nb(v.n);
    for (const Edge& e : c.edges) {
      ++nb[e[0]][e[1]];
      ++nb[e[1]][e[0]];
    }
    v.adj.resize(v.n);
    for (int i = 0; i < v.n; ++i) v.adj[i].assign(nb[i].begin(), nb[i].end());
    if (respect_triangles) {
      v.tris_at.resize(v.n);
      for (const Triangle& t : c.triangles)
        for (int i = 0; i < 3; ++i) {
          int a = t[(i + 1) % 3], b = t[(i + 2) % 3];
          if (b < a) std::swap(a, b);
          v.tris_at[t[i]].push_back({a, b});
        }
      for (auto& lst : v.tris_at) std::sort(lst.begin(), lst.end());
    }
    return v;
  }
};

// Equitable refinement over a shared key space, so color ids are directly
// comparable between the two sides.  Keys are exact, no hashing.
struct JointRefiner {
  const StructView& A;
  const StructView& B;

  using Profile = std::vector<std::tuple<int, int, int>>;  // (color or colorpair, mult, count)
  using Key = std::tuple<int, Profile, Profile>;

  Key key_of(const StructView& g, const std::vector<int>& colors, int v) const {
    std::map<std::pair<int, int>, int> nb;
    for (const auto& [w, m] : g.adj[v]) ++nb[{colors[w], m}];
    Profile nbp;
    nbp.reserve(nb.size());
    for (const auto& [k, cnt] : nb) nbp.emplace_back(k.first, k.second, cnt);
    Profile trp;
    if (g.respect_triangles) {
      std::map<std::pair<int, int>, int> tr;
      for (const auto& ot : g.tris_at[v]) {
        int ca = colors[ot[0]], cb = colors[ot[1]];
        if (cb < ca) std::swap(ca, cb);
        ++tr[{ca, cb}];
      }
      trp.reserve(tr.size());
      for (const auto& [k, cnt] : tr) trp.emplace_back(k.first, k.second, cnt);
    }
    return Key(colors[v], std::move(nbp), std::move(trp));
  }

  // Refine both colorings to a joint fixpoint.  Returns false when class
  // sizes cannot be matched between the sides.
  bool refine(std::vector<int>& colorsA, std::vector<int>& colorsB) const {
    for (;;) {
      std::vector<Key> keysA(A.n), keysB(B.n);
      for (int v = 0; v < A.n; ++v) keysA[v] = key_of(A, colorsA, v);
      for (int v = 0; v < B.n; ++v) keysB[v] = key_of(B, colorsB, v);
      std::map<Key, int> ids;
      for (const Key& k : keysA) ids.emplace(k, 0);
      for (const Key& k : keysB) ids.emplace(k, 0);
      int next = 0;
      for (auto& [k, id] : ids) id = next++;
      std::vector<int> newA(A.n), newB(B.n);
      std::vector<int> countA(next, 0), countB(next, 0);
      for (int v = 0; v < A.n; ++v) ++countA[newA[v] = ids[keysA[v]]];
      for (int v = 0; v < B.n; ++v) ++countB[newB[v] = ids[keysB[v]]];
      if (countA != countB) return false;
      const std::size_t before = std::set<int>(colorsA.begin(), colorsA.end()).size();
      const std::size_t after = std::set<int>(newA.begin(), newA.end()).size();
      colorsA = std::move(newA);
      colorsB = std::move(newB);
      if (after == before) return true;
    }
  }
};

// Full structural check of a candidate bijection a -> b.
inline bool is_full_isomorphism(const Complex2& a, const Complex2& b,
                                const std::vector<int>& map, bool check_triangles) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  std::multiset<Edge> be(b.edges.begin(), b.edges.end()), ae;
  for (const Edge& e : a.edges) ae.insert(make_edge(map[e[0]], map[e[1]]));
  if (ae != be) return false;
  if (check_triangles) {
    if (a.triangle_count() != b.triangle_count()) return false;
    std::multiset<std::array<int, 3>> bt, at;
    for (const Triangle& t : b.triangles) bt.insert(sorted_triple(t));
    for (const Triangle& t : a.triangles)
      at.insert(sorted_triple(oriented_triangle(map[t[0]], map[t[1]], map[t[2]])));
    if (at != bt) return false;
  }
  return true;
}

struct IsoSearch {
  const Complex2& a;
  const Complex2& b;
  const StructView& va;
  const StructView& vb;
  bool check_triangles;
  const Deadline& deadline;

  std::optional<std::vector<int>> run(std::vector<std::pair<int, int>>& prescribed) const {
    deadline.check();
    const int n = va.n;
    std::vector<int> ca(n, 0), cb(n, 0);
    int tag = 1;
    for (const auto& [x, y] : prescribed) {
      ca[x] = tag;
      cb[y] = tag;
      ++tag;
    }
    const JointRefiner refiner{va, vb};
    if (!refiner.refine(ca, cb)) return std::nullopt;

    std::map<int, std::vector<int>> clsA, clsB;
    for (int v = 0; v < n; ++v) clsA[ca[v]].push_back(v);
    for (int v = 0; v < n; ++v) clsB[cb[v]].push_back(v);
    int branch_color = -1;
    for (const auto& [color, vs] : clsA) {
      if (vs.size() != clsB[color].size()) return std::nullopt;
      if (vs.size() > 1 && branch_color < 0) branch_color = color;
    }
    if (branch_color < 0) {
      std::vector<int> map(n);
      for (const auto& [color, vs] : clsA) map[vs[0]] = clsB[color][0];
      if (is_full_isomorphism(a, b, map, check_triangles)) return map;
      return std::nullopt;
    }
    const int x = clsA[branch_color][0];
    for (int y : clsB[branch_color]) {
      prescribed.emplace_back(x, y);
      auto res = run(prescribed);
      prescribed.pop_back();
      if (res) return res;
    }
    return std::nullopt;
  }
};

inline std::optional<std::vector<int>> search_iso(const Complex2& a, const Complex2& b,
                                                  const StructView& va, const StructView& vb,
                                                  std::vector<std::pair<int, int>> prescribed,
                                                  bool check_triangles,
                                                  const Deadline& deadline) {
  if (va.n != vb.n) return std::nullopt;
  const IsoSearch search{a, b, va, vb, check_triangles, deadline};
  return search.run(prescribed);
}

}  // namespace detail

// Structure-preserving bijection between two complexes (labels ignored,
// triangle orientation ignored), or absent when none exists; deterministic.
inline std::optional<VertexPermutation> graph_isomorphic(const Complex2& a, const Complex2& b,
                                                         const Deadline& deadline = {}) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() ||
      a.triangle_count() != b.triangle_count())
    return std::nullopt;
  const bool with_triangles = !a.triangles.empty() || !b.triangles.empty();
  const detail::StructView va = detail::StructView::build(a, with_triangles);
  const detail::StructView vb = detail::StructView::build(b, with_triangles);
  auto found = detail::search_iso(a, b, va, vb, {}, with_triangles, deadline);
  if (!found) return std::nullopt;
  return VertexPermutation(std::move(*found));
}

// True when p maps edges to edges (with multiplicity) and triangles to
// triangles as sets.
inline bool is_automorphism(const Complex2& c, const VertexPermutation& p,
                            bool check_triangles = true) {
  if (p.size() != c.vertex_count()) return false;
  return detail::is_full_isomorphism(c, c, p.images(), check_triangles);
}

// Orientation test for an automorphism respecting triangles as sets: true
// when the oriented triangle multiset is preserved, false when it is
// exactly reversed; anything else is a structured mixed-orientation error.
inline bool is_orientation_preserving(const Complex2& c, const VertexPermutation& p) {
  if (!is_automorphism(c, p, true))
    fail(errc::not_an_automorphism, "permutation is not an automorphism of the complex");
  std::multiset<Triangle> original, image, reversed;
  for (const Triangle& t : c.triangles) {
    original.insert(t);
    image.insert(oriented_triangle(p(t[0]), p(t[1]), p(t[2])));
    reversed.insert(reversed_triangle(t));
  }
  if (image == original) return true;
  if (image == reversed) return false;
  fail(errc::mixed_orientation,
       "automorphism preserves some triangle orientations and reverses others");
}

// Exact automorphism group via refinement + backtracking over an
// orbit-stabilizer chain; generator list is canonical for a fixed input
// ordering and the order is the product of the chain's orbit sizes.
inline AutGroup automorphism_group(const Complex2& c, bool respect_triangles,
                                   int vertex_limit = kDefaultVertexLimit,
                                   const Deadline& deadline = {}) {
  const int n = c.vertex_count();
  if (n > vertex_limit)
    fail(errc::size_limit, "vertex count " + std::to_string(n) + " exceeds limit " +
                               std::to_string(vertex_limit));
  AutGroup out;
  if (n == 0) return out;

  const detail::StructView view = detail::StructView::build(c, respect_triangles);
  const detail::JointRefiner refiner{view, view};

  // When triangles are ignored the search target is the bare edge structure.
  Complex2 plain;
  const Complex2* target = &c;
  if (!respect_triangles) {
    plain.vertices = c.vertices;
    plain.edges = c.edges;
    target = &plain;
  }

  std::vector<std::pair<int, int>> fixed;
  std::uint64_t order = 1;

  for (;;) {
    deadline.check();
    std::vector<int> ca(n, 0), cb(n, 0);
    int tag = 1;
    for (const auto& [x, y] : fixed) {
      ca[x] = tag;
      cb[y] = tag;
      ++tag;
    }
    refiner.refine(ca, cb);
    std::map<int, std::vector<int>> cls;
    for (int v = 0; v < n; ++v) cls[ca[v]].push_back(v);
    int b = -1;
    const std::vector<int>* cell = nullptr;
    for (const auto& [color, vs] : cls)
      if (vs.size() > 1 && (b < 0 || vs[0] < b)) {
        b = vs[0];
        cell = &vs;
      }
    if (b < 0) break;  // partition discrete: chain complete

    std::vector<char> in_orbit(n, 0);
    in_orbit[b] = 1;
    std::uint64_t orbit_size = 1;
    std::vector<VertexPermutation> level_gens;

    auto close_orbit = [&]() {
      std::vector<int> frontier;
      for (int v = 0; v < n; ++v)
        if (in_orbit[v]) frontier.push_back(v);
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier)
          for (const VertexPermutation& g : level_gens)
            for (const int w : {g(v), g.inverse()(v)})
              if (!in_orbit[w]) {
                in_orbit[w] = 1;
                ++orbit_size;
                next.push_back(w);
              }
        frontier = std::move(next);
      }
    };

    for (int u : *cell) {
      if (u == b || in_orbit[u]) continue;
      auto pres = fixed;
      pres.emplace_back(b, u);
      auto found =
          detail::search_iso(*target, *target, view, view, pres, respect_triangles, deadline);
      if (found) {
        VertexPermutation g(std::move(*found));
        level_gens.push_back(g);
        out.generators.push_back(std::move(g));
        close_orbit();
      }
    }
    order *= orbit_size;
    fixed.emplace_back(b, b);
  }

  out.order = order;

  // Orientation split from generator signs: each generator is pure
  // (all-preserving or all-reversing), so the sign is multiplicative over
  // the generated group and the index is 1 or 2.
  out.orientation_preserving_index = 1;
  if (respect_triangles && !c.triangles.empty()) {
    for (const VertexPermutation& g : out.generators)
      if (!is_orientation_preserving(c, g)) {
        out.orientation_preserving_index = 2;
        break;
      }
  }
  return out;
}

// Closure enumeration of the group generated by `gens`; guarded.
inline std::vector<VertexPermutation> enumerate_group(
    const std::vector<VertexPermutation>& gens, int n,
    std::uint64_t limit = kDefaultEnumerationLimit) {
  std::set<std::vector<int>> seen;
  std::vector<VertexPermutation> members{VertexPermutation::identity(n)};
  seen.insert(members[0].images());
  std::vector<VertexPermutation> frontier = members;
  while (!frontier.empty()) {
    std::vector<VertexPermutation> next;
    for (const VertexPermutation& x : frontier)
      for (const VertexPermutation& g : gens) {
        VertexPermutation y = g * x;
        if (seen.insert(y.images()).second) {
          members.push_back(y);
          next.push_back(std::move(y));
          if (members.size() > limit) fail(errc::size_limit, "group enumeration exceeds limit");
        }
      }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return members;
}

// Greedy minimal generating subset of an enumerated subgroup (identity for
// the trivial group gives an empty list).
inline std::vector<VertexPermutation> generating_subset(
    const std::vector<VertexPermutation>& members, int n) {
  std::vector<VertexPermutation> gens;
  std::size_t generated = 1;
  for (const VertexPermutation& m : members) {
    if (m.is_identity()) continue;
    if (generated == members.size()) break;
    std::vector<VertexPermutation> trial = gens;
    trial.push_back(m);
    const std::size_t size = enumerate_group(trial, n, members.size() + 1).size();
    if (size > generated) {
      gens = std::move(trial);
      generated = size;
    }
  }
  return gens;
}

}  // namespace curvex
