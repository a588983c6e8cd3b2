#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curvex/automorphism.hpp"
#include "curvex/complex2.hpp"
#include "curvex/farey.hpp"
#include "curvex/level.hpp"
#include "curvex/product.hpp"
#include "curvex/surface.hpp"

namespace curvex {

// Truncated inverse system: one finite quotient stage per level, with
// simplicial surjections along divisibility.
struct Tower {
  SurfaceSpec surface;
  std::vector<int> levels;  // ascending
  std::map<int, ProductComplex> stages;
  std::map<std::pair<int, int>, std::vector<int>> projections;  // (big, small) -> vertex map

  const Complex2& stage(int level) const { return stages.at(level).flattened; }

  // The unique maximal level under divisibility, or an error.
  int top_level() const {
    std::vector<int> maximal;
    for (int m : levels) {
      bool dominated = false;
      for (int other : levels)
        if (other != m && other % m == 0) dominated = true;
      if (!dominated) maximal.push_back(m);
    }
    if (maximal.size() != 1)
      fail(errc::no_unique_top, "tower has " + std::to_string(maximal.size()) +
                                    " maximal levels");
    return maximal.front();
  }
};

namespace detail {

// Per-level stage: one Farey quotient per dimension-1 component, one point
// per pants component.
inline ProductComplex tower_stage(const SurfaceSpec& surface, int m, int modulus_limit) {
  std::vector<Complex2> factors;
  for (SurfaceType t : surface.components) {
    const int d = modular_dimension(t);
    if (d == 0)
      factors.push_back(point_complex("pants"));
    else if (d == 1)
      factors.push_back(farey_level(m, modulus_limit));
    else
      fail(errc::invalid_argument,
           "component " + type_str(t) + " has modular dimension " + std::to_string(d) +
               "; no curve engine exists beyond dimension 1");
  }
  if (factors.empty()) fail(errc::invalid_argument, "empty surface");
  return product_pants(std::move(factors));
}

inline void validate_projection(const Complex2& big, const Complex2& small,
                                const std::vector<int>& map) {
  const std::set<Edge> small_pairs = small.edge_pairs();
  std::set<Edge> hit_pairs;
  for (const Edge& e : big.edges) {
    if (map[e[0]] == map[e[1]])
      fail(errc::projection_mismatch, "projection collapses an edge");
    const Edge img = make_edge(map[e[0]], map[e[1]]);
    if (!small_pairs.count(img))
      fail(errc::projection_mismatch, "edge image is not an edge downstairs");
    hit_pairs.insert(img);
  }
  if (hit_pairs != small_pairs)
    fail(errc::projection_mismatch, "projection is not onto the edges downstairs");

  std::set<std::array<int, 3>> small_tris, hit_tris;
  for (const Triangle& t : small.triangles) small_tris.insert(sorted_triple(t));
  for (const Triangle& t : big.triangles) {
    const std::array<int, 3> img = sorted_triple(Triangle{map[t[0]], map[t[1]], map[t[2]]});
    if (img[0] == img[1] || img[1] == img[2])
      fail(errc::projection_mismatch, "projection collapses a triangle");
    if (!small_tris.count(img))
      fail(errc::projection_mismatch, "triangle image is not a triangle downstairs");
    hit_tris.insert(img);
  }
  if (hit_tris != small_tris)
    fail(errc::projection_mismatch, "projection is not onto the triangles downstairs");

  std::set<int> image(map.begin(), map.end());
  if (static_cast<int>(image.size()) != small.vertex_count())
    fail(errc::projection_mismatch, "projection is not onto the vertices downstairs");
}

}  // namespace detail

inline Tower build_tower(const SurfaceSpec& surface, std::vector<int> levels,
                         int modulus_limit = kDefaultModulusLimit) {
  if (levels.empty()) fail(errc::invalid_argument, "tower needs at least one level");
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  Tower tower;
  tower.surface = surface;
  tower.levels = levels;
  for (int m : levels) tower.stages.emplace(m, detail::tower_stage(surface, m, modulus_limit));

  // per-factor projection maps, assembled componentwise over tuples
  for (int big : levels)
    for (int small : levels) {
      if (small >= big || big % small != 0) continue;
      const ProductComplex& pb = tower.stages.at(big);
      const ProductComplex& ps = tower.stages.at(small);
      std::vector<std::vector<int>> factor_maps;
      for (int i = 0; i < pb.factor_count(); ++i) {
        if (pb.factor_sizes[i] == 1)
          factor_maps.push_back({0});
        else
          factor_maps.push_back(project_level(big, small, modulus_limit).vertex_map);
      }
      std::vector<int> map(pb.flattened.vertex_count());
      for (int v = 0; v < pb.flattened.vertex_count(); ++v) {
        std::vector<int> tuple = pb.tuple_of(v);
        for (int i = 0; i < pb.factor_count(); ++i) tuple[i] = factor_maps[i][tuple[i]];
        map[v] = ps.flat_index(tuple);
      }
      detail::validate_projection(pb.flattened, ps.flattened, map);
      tower.projections.emplace(std::make_pair(big, small), std::move(map));
    }

  // composition law: pi(a,c) = pi(b,c) o pi(a,b) whenever c | b | a
  for (int a : levels)
    for (int b : levels)
      for (int c : levels) {
        if (!(c < b && b < a && a % b == 0 && b % c == 0)) continue;
        const auto& ab = tower.projections.at({a, b});
        const auto& bc = tower.projections.at({b, c});
        const auto& ac = tower.projections.at({a, c});
        for (std::size_t v = 0; v < ab.size(); ++v)
          if (ac[v] != bc[ab[v]])
            fail(errc::projection_mismatch, "projection composition law fails");
      }
  return tower;
}

// Automorphisms of the top stage that descend along every projection (they
// permute projection fibers); returned as a verified subgroup of the full
// stage group.
inline AutGroup compatible_automorphisms(const Tower& tower,
                                         std::uint64_t enum_limit = kDefaultEnumerationLimit,
                                         int vertex_limit = kDefaultVertexLimit,
                                         const Deadline& deadline = {}) {
  const int top = tower.top_level();
  const Complex2& stage = tower.stage(top);
  const AutGroup full = automorphism_group(stage, true, vertex_limit, deadline);
  const std::vector<VertexPermutation> everyone =
      enumerate_group(full.generators, stage.vertex_count(), enum_limit);

  std::vector<std::pair<int, const std::vector<int>*>> downs;
  for (const auto& [key, map] : tower.projections)
    if (key.first == top) downs.emplace_back(key.second, &map);

  auto descends = [&](const VertexPermutation& g) {
    for (const auto& [small, mapp] : downs) {
      const std::vector<int>& map = *mapp;
      const Complex2& below = tower.stage(small);
      std::vector<int> induced(below.vertex_count(), -1);
      for (int v = 0; v < stage.vertex_count(); ++v) {
        const int cls = map[v];
        const int img = map[g(v)];
        if (induced[cls] < 0)
          induced[cls] = img;
        else if (induced[cls] != img)
          return false;  // does not permute the fibers of this projection
      }
      std::vector<char> hit(below.vertex_count(), 0);
      for (int img : induced) {
        if (img < 0 || hit[img]) return false;
        hit[img] = 1;
      }
      VertexPermutation h(std::move(induced));
      if (!is_automorphism(below, h, true)) return false;
    }
    return true;
  };

  std::vector<VertexPermutation> kept;
  for (const VertexPermutation& g : everyone) {
    deadline.check();
    if (descends(g)) kept.push_back(g);
  }

  AutGroup out;
  out.order = kept.size();
  out.generators = generating_subset(kept, stage.vertex_count());
  out.orientation_preserving_index = 1;
  if (!stage.triangles.empty())
    for (const VertexPermutation& g : out.generators)
      if (!is_orientation_preserving(stage, g)) {
        out.orientation_preserving_index = 2;
        break;
      }
  return out;
}

// Image of PSL2(Z/m) inside the automorphism group of its own level
// quotient: faithfulness, orientation, and the index inside the
// orientation-preserving subgroup, all computed rather than assumed.
struct Psl2ImageReport {
  int m = 0;
  std::uint64_t group_order = 0;
  std::uint64_t image_order = 0;
  bool faithful = false;
  bool inside_plus = false;
  std::uint64_t aut_order = 0;
  int aut_plus_index = 1;
  std::uint64_t aut_plus_order = 0;
  std::uint64_t index_in_plus = 0;

  nlohmann::json to_json() const {
    return {{"m", m},
            {"group_order", group_order},
            {"image_order", image_order},
            {"faithful", faithful},
            {"inside_plus", inside_plus},
            {"aut_order", aut_order},
            {"aut_plus_index", aut_plus_index},
            {"aut_plus_order", aut_plus_order},
            {"index_in_plus", index_in_plus}};
  }
};

inline Psl2ImageReport psl2_image_in_aut(int m, int modulus_limit = kDefaultModulusLimit,
                                         int vertex_limit = kDefaultVertexLimit,
                                         const Deadline& deadline = {}) {
  const CosetGeometry geo = CosetGeometry::build(m, modulus_limit);
  const Complex2 stage = farey_level(m, modulus_limit);
  const std::vector<VertexPermutation> action = psl2_vertex_action(geo, stage);

  Psl2ImageReport report;
  report.m = m;
  report.group_order = geo.group.order();
  std::set<std::vector<int>> image;
  report.inside_plus = true;
  for (const VertexPermutation& g : action) {
    image.insert(g.images());
    if (!is_orientation_preserving(stage, g)) report.inside_plus = false;
  }
  report.image_order = image.size();
  report.faithful = report.image_order == report.group_order;

  const AutGroup aut = automorphism_group(stage, true, vertex_limit, deadline);
  report.aut_order = aut.order;
  report.aut_plus_index = aut.orientation_preserving_index;
  report.aut_plus_order = aut.order / aut.orientation_preserving_index;
  report.index_in_plus =
      report.inside_plus && report.image_order ? report.aut_plus_order / report.image_order : 0;
  return report;
}

inline nlohmann::json tower_report(const Tower& tower,
                                   std::uint64_t enum_limit = kDefaultEnumerationLimit,
                                   int vertex_limit = kDefaultVertexLimit,
                                   int modulus_limit = kDefaultModulusLimit) {
  nlohmann::json j;
  j["surface"] = tower.surface.str();
  j["levels"] = tower.levels;
  nlohmann::json sizes = nlohmann::json::object();
  for (const auto& [m, stage] : tower.stages)
    sizes[std::to_string(m)] = {{"vertices", stage.flattened.vertex_count()},
                                {"edges", stage.flattened.edge_count()},
                                {"triangles", stage.flattened.triangle_count()}};
  j["stage_sizes"] = sizes;
  nlohmann::json projections = nlohmann::json::array();
  for (const auto& [key, map] : tower.projections)
    projections.push_back({{"from", key.first}, {"to", key.second}});
  j["projections"] = projections;
  const AutGroup compat = compatible_automorphisms(tower, enum_limit, vertex_limit);
  j["compatible_order"] = compat.order;
  j["compatible_orientation_index"] = compat.orientation_preserving_index;
  j["psl2_image"] = psl2_image_in_aut(tower.top_level(), modulus_limit, vertex_limit).to_json();
  return j;
}

}  // namespace curvex
