#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "curvex/complex2.hpp"
#include "curvex/farey.hpp"
#include "curvex/psl2mod.hpp"
#include "curvex/slope.hpp"

namespace curvex {

// Cusp class: a primitive vector (p,q) over Z/m taken modulo +-1.
struct CuspClass {
  int p = 1, q = 0;

  static CuspClass canonical(int m, long long p, long long q) {
    const int pp = static_cast<int>(((p % m) + m) % m);
    const int qq = static_cast<int>(((q % m) + m) % m);
    const int np = (m - pp) % m;
    const int nq = (m - qq) % m;
    if (std::pair(np, nq) < std::pair(pp, qq)) return CuspClass{np, nq};
    return CuspClass{pp, qq};
  }

  std::string label(int m) const {
    return "(" + std::to_string(p) + ":" + std::to_string(q) + ") mod " + std::to_string(m);
  }

  friend auto operator<=>(const CuspClass&, const CuspClass&) = default;
};

// Coset geometry of the level-m Farey quotient: vertices, edges and
// triangles are the cosets of <T>, <S> and <R>; cells meet when the cosets
// intersect.
struct CosetGeometry {
  int m = 0;
  Psl2Group group;
  std::vector<std::vector<int>> vertex_cosets;
  std::vector<std::vector<int>> edge_cosets;
  std::vector<std::vector<int>> triangle_cosets;
  std::vector<int> vertex_coset_of;    // element -> vertex coset id
  std::vector<int> edge_coset_of;      // element -> edge coset id
  std::vector<int> triangle_coset_of;  // element -> triangle coset id

  static CosetGeometry build(int m, int modulus_limit = kDefaultModulusLimit) {
    CosetGeometry geo;
    geo.m = m;
    geo.group = Psl2Group::enumerate(m, modulus_limit);
    geo.vertex_cosets = left_cosets(geo.group, geo.group.cyclic_subgroup(geo.group.t_elem()),
                                    geo.vertex_coset_of);
    geo.edge_cosets = left_cosets(geo.group, geo.group.cyclic_subgroup(geo.group.s_elem()),
                                  geo.edge_coset_of);
    geo.triangle_cosets = left_cosets(geo.group, geo.group.cyclic_subgroup(geo.group.r_elem()),
                                      geo.triangle_coset_of);
    return geo;
  }

  static std::vector<std::vector<int>> left_cosets(const Psl2Group& g,
                                                   const std::vector<int>& subgroup,
                                                   std::vector<int>& coset_of) {
    std::vector<std::vector<int>> cosets;
    coset_of.assign(g.order(), -1);
    for (int x = 0; x < g.order(); ++x) {
      if (coset_of[x] >= 0) continue;
      const int id = static_cast<int>(cosets.size());
      std::vector<int> coset;
      for (int h : subgroup) {
        const int y = g.mul(x, h);
        coset_of[y] = id;
        coset.push_back(y);
      }
      std::sort(coset.begin(), coset.end());
      cosets.push_back(std::move(coset));
    }
    return cosets;
  }

  // Cusp of a group element: its first column up to sign.
  CuspClass cusp_of(int elem) const {
    const Psl2ModM& e = group.element(elem);
    return CuspClass::canonical(m, e[0], e[2]);
  }
};

// All cusp classes of level m, in lexicographic label order.
inline std::vector<CuspClass> cusp_classes(const CosetGeometry& geo) {
  std::set<CuspClass> found;
  for (int x = 0; x < geo.group.order(); ++x) found.insert(geo.cusp_of(x));
  return std::vector<CuspClass>(found.begin(), found.end());
}

// The combinatorial triangulated modular curve at level m: the coset
// geometry flattened to a Complex2 with cusp labels; triangles carry the
// R-rotation orientation (g*inf, g*0, g*1).
inline Complex2 farey_level(int m, int modulus_limit = kDefaultModulusLimit) {
  const CosetGeometry geo = CosetGeometry::build(m, modulus_limit);
  const Psl2Group& g = geo.group;

  Complex2 c;
  const std::vector<CuspClass> cusps = cusp_classes(geo);
  std::map<CuspClass, int> vertex_of;
  for (const CuspClass& cc : cusps) {
    vertex_of.emplace(cc, c.vertex_count());
    c.vertices.push_back(cc.label(m));
  }

  auto cusp_vertex = [&](long long p, long long q) {
    return vertex_of.at(CuspClass::canonical(m, p, q));
  };

  // edge coset of g joins the cusps of the two columns of g
  for (const std::vector<int>& coset : geo.edge_cosets) {
    const Psl2ModM& e = g.element(coset.front());
    c.edges.push_back(make_edge(cusp_vertex(e[0], e[2]), cusp_vertex(e[1], e[3])));
  }
  // triangle coset of g has vertices g*inf, g*0, g*1: the columns and their sum
  for (const std::vector<int>& coset : geo.triangle_cosets) {
    const Psl2ModM& e = g.element(coset.front());
    c.triangles.push_back(oriented_triangle(cusp_vertex(e[0], e[2]), cusp_vertex(e[1], e[3]),
                                            cusp_vertex(e[0] + e[1], e[2] + e[3])));
  }

  c.metadata[meta::kKind] = meta::kKindPants;
  c.metadata[meta::kConstruction] = "farey_level(m=" + std::to_string(m) + ")";
  std::vector<int> all(c.vertex_count());
  for (int i = 0; i < c.vertex_count(); ++i) all[i] = i;
  set_fiber_metadata(c, {all});
  return c;
}

// The level-m completed graph: complete graph on the level-m cusp set.
// No triangles stored; a single fiber spanning everything.
inline Complex2 gstar_level(int m, int modulus_limit = kDefaultModulusLimit) {
  const Complex2 base = farey_level(m, modulus_limit);
  Complex2 c;
  c.vertices = base.vertices;
  const int n = c.vertex_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.edges.push_back(make_edge(i, j));
  c.metadata[meta::kKind] = meta::kKindStar;
  c.metadata[meta::kConstruction] = "gstar_level(m=" + std::to_string(m) + ")";
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  set_fiber_metadata(c, {all});
  return c;
}

inline CuspClass parse_cusp_label(const std::string& label) {
  // "(p:q) mod m"
  const std::size_t colon = label.find(':');
  const std::size_t close = label.find(')');
  if (label.empty() || label[0] != '(' || colon == std::string::npos || close == std::string::npos)
    fail(errc::invalid_argument, "bad cusp label '" + label + "'");
  CuspClass cc;
  cc.p = std::stoi(label.substr(1, colon - 1));
  cc.q = std::stoi(label.substr(colon + 1, close - colon - 1));
  return cc;
}

// Entrywise reduction of cusp labels: the simplicial surjection between
// level complexes when m_small | m_big.
struct LevelProjection {
  int m_from = 0, m_to = 0;
  std::vector<int> vertex_map;  // index in farey_level(m_from) -> index in farey_level(m_to)
};

inline LevelProjection project_level(int m_big, int m_small,
                                     int modulus_limit = kDefaultModulusLimit) {
  if (m_small < 2 || m_big % m_small != 0)
    fail(errc::divisibility, std::to_string(m_small) + " does not divide " +
                                 std::to_string(m_big));
  const Complex2 big = farey_level(m_big, modulus_limit);
  const Complex2 small = farey_level(m_small, modulus_limit);
  std::map<CuspClass, int> small_index;
  for (int i = 0; i < small.vertex_count(); ++i)
    small_index.emplace(parse_cusp_label(small.vertices[i]), i);
  LevelProjection proj{m_big, m_small, {}};
  proj.vertex_map.reserve(big.vertices.size());
  for (const std::string& label : big.vertices) {
    const CuspClass cc = parse_cusp_label(label);
    proj.vertex_map.push_back(small_index.at(CuspClass::canonical(m_small, cc.p, cc.q)));
  }
  return proj;
}

// Cross-check of the coset construction against the orbit picture: project
// a Farey ball to cusp classes and compare the induced cells with
// farey_level(m).  Instability (a ball too shallow to have swept out every
// orbit) is reported, not thrown.
struct BallCheckReport {
  int m = 0;
  int depth = 0;
  bool vertices_match = false;
  bool edges_match = false;
  bool triangles_match = false;
  bool stabilized = false;
  int ball_vertices = 0;

  bool match() const { return vertices_match && edges_match && triangles_match; }

  nlohmann::json to_json() const {
    return {{"m", m},
            {"depth", depth},
            {"vertices_match", vertices_match},
            {"edges_match", edges_match},
            {"triangles_match", triangles_match},
            {"match", match()},
            {"stabilized", stabilized},
            {"ball_vertices", ball_vertices}};
  }
};

namespace detail {

struct ProjectedBall {
  std::set<CuspClass> vertices;
  std::set<std::pair<CuspClass, CuspClass>> edges;  // ordered pairs, min first
  std::set<std::array<CuspClass, 3>> triangles;     // oriented, least-first rotation
};

inline ProjectedBall project_ball(const Complex2& ball, int m) {
  const std::vector<Slope> slopes = ball_slopes(ball);
  std::vector<CuspClass> cusp(slopes.size());
  for (std::size_t i = 0; i < slopes.size(); ++i)
    cusp[i] = CuspClass::canonical(m, slopes[i].p, slopes[i].q);
  ProjectedBall out;
  for (const CuspClass& cc : cusp) out.vertices.insert(cc);
  for (const Edge& e : ball.edges) {
    CuspClass a = cusp[e[0]], b = cusp[e[1]];
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    out.edges.insert({a, b});
  }
  for (const Triangle& t : ball.triangles) {
    std::array<CuspClass, 3> img{cusp[t[0]], cusp[t[1]], cusp[t[2]]};
    if (img[0] == img[1] || img[1] == img[2] || img[0] == img[2]) continue;
    // rotate least cusp first, preserving orientation
    int least = 0;
    for (int i = 1; i < 3; ++i)
      if (img[i] < img[least]) least = i;
    std::array<CuspClass, 3> rot{img[least], img[(least + 1) % 3], img[(least + 2) % 3]};
    out.triangles.insert(rot);
  }
  return out;
}

}  // namespace detail

inline BallCheckReport verify_against_ball(int m, int depth,
                                           int modulus_limit = kDefaultModulusLimit,
                                           int depth_limit = kDefaultDepthLimit) {
  const Complex2 level = farey_level(m, modulus_limit);
  const Complex2 ball = farey_ball(depth, depth_limit);
  const detail::ProjectedBall proj = detail::project_ball(ball, m);

  detail::ProjectedBall expect;
  for (const std::string& label : level.vertices) {
    const CuspClass cc = parse_cusp_label(label);
    expect.vertices.insert(cc);
  }
  for (const Edge& e : level.edges) {
    CuspClass a = parse_cusp_label(level.vertices[e[0]]);
    CuspClass b = parse_cusp_label(level.vertices[e[1]]);
    if (b < a) std::swap(a, b);
    expect.edges.insert({a, b});
  }
  for (const Triangle& t : level.triangles) {
    std::array<CuspClass, 3> img{parse_cusp_label(level.vertices[t[0]]),
                                 parse_cusp_label(level.vertices[t[1]]),
                                 parse_cusp_label(level.vertices[t[2]])};
    int least = 0;
    for (int i = 1; i < 3; ++i)
      if (img[i] < img[least]) least = i;
    expect.triangles.insert({img[least], img[(least + 1) % 3], img[(least + 2) % 3]});
  }

  BallCheckReport report;
  report.m = m;
  report.depth = depth;
  report.ball_vertices = ball.vertex_count();
  report.vertices_match = proj.vertices == expect.vertices;
  report.edges_match = proj.edges == expect.edges;
  report.triangles_match = proj.triangles == expect.triangles;
  if (depth == 0) {
    report.stabilized = false;
  } else {
    const detail::ProjectedBall prev =
        detail::project_ball(farey_ball(depth - 1, depth_limit), m);
    report.stabilized = prev.edges == proj.edges;
  }
  return report;
}

// The left PSL2(Z/m) action on vertex cosets, as permutations of
// farey_level(m)'s vertex list.
inline std::vector<VertexPermutation> psl2_vertex_action(const CosetGeometry& geo,
                                                         const Complex2& stage) {
  std::map<CuspClass, int> vertex_of;
  for (int i = 0; i < stage.vertex_count(); ++i)
    vertex_of.emplace(parse_cusp_label(stage.vertices[i]), i);
  std::vector<VertexPermutation> out;
  out.reserve(geo.group.order());
  const int n = stage.vertex_count();
  // cusp -> representative column vector
  std::vector<CuspClass> cusp(n);
  for (const auto& [cc, idx] : vertex_of) cusp[idx] = cc;
  for (int e = 0; e < geo.group.order(); ++e) {
    const Psl2ModM& mat = geo.group.element(e);
    std::vector<int> im(n);
    for (int v = 0; v < n; ++v) {
      const long long p = static_cast<long long>(mat[0]) * cusp[v].p + mat[1] * cusp[v].q;
      const long long q = static_cast<long long>(mat[2]) * cusp[v].p + mat[3] * cusp[v].q;
      im[v] = vertex_of.at(CuspClass::canonical(geo.m, p, q));
    }
    out.emplace_back(std::move(im));
  }
  return out;
}

}  // namespace curvex
