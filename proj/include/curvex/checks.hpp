#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "curvex/curvex.hpp"

namespace curvex {

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace checks_detail {

inline Complex2 tetrahedron() {
  Complex2 c;
  c.vertices = {"t0", "t1", "t2", "t3"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) c.edges.push_back(make_edge(i, j));
  c.triangles = {oriented_triangle(1, 2, 3), oriented_triangle(0, 3, 2),
                 oriented_triangle(0, 1, 3), oriented_triangle(0, 2, 1)};
  return c;
}

inline Complex2 octahedron() {
  Complex2 c;
  c.vertices = {"x+", "x-", "y+", "y-", "z+", "z-"};
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (!(j == i + 1 && i % 2 == 0)) c.edges.push_back(make_edge(i, j));
  for (int sx = 0; sx < 2; ++sx)
    for (int sy = 0; sy < 2; ++sy)
      for (int sz = 0; sz < 2; ++sz)
        c.triangles.push_back(((sx + sy + sz) % 2 == 0)
                                  ? oriented_triangle(sx, 2 + sy, 4 + sz)
                                  : oriented_triangle(sx, 4 + sz, 2 + sy));
  return c;
}

inline Complex2 icosahedron() {
  Complex2 c;
  c.vertices = {"N", "u0", "u1", "u2", "u3", "u4", "l0", "l1", "l2", "l3", "l4", "S"};
  auto u = [](int i) { return 1 + ((i % 5) + 5) % 5; };
  auto l = [](int i) { return 6 + ((i % 5) + 5) % 5; };
  for (int i = 0; i < 5; ++i) {
    c.edges.push_back(make_edge(0, u(i)));
    c.edges.push_back(make_edge(u(i), u(i + 1)));
    c.edges.push_back(make_edge(l(i), l(i + 1)));
    c.edges.push_back(make_edge(u(i), l(i)));
    c.edges.push_back(make_edge(u(i + 1), l(i)));
    c.edges.push_back(make_edge(11, l(i)));
  }
  for (int i = 0; i < 5; ++i) {
    c.triangles.push_back(oriented_triangle(0, u(i), u(i + 1)));
    c.triangles.push_back(oriented_triangle(u(i + 1), u(i), l(i)));
    c.triangles.push_back(oriented_triangle(u(i + 1), l(i), l(i + 1)));
    c.triangles.push_back(oriented_triangle(11, l(i + 1), l(i)));
  }
  return c;
}

}  // namespace checks_detail

// The default invariant suite behind `verify`: middle-size instances of the
// count formulas, surface checks, action and product laws.
inline std::vector<CheckRow> run_default_suite(int vertex_limit = kDefaultVertexLimit) {
  std::vector<CheckRow> rows;
  auto push = [&](const std::string& name, bool pass, const std::string& detail = "") {
    rows.push_back({name, pass, detail});
  };

  {
    bool ok = true;
    std::string detail;
    for (int m = 2; m <= 8; ++m) {
      const Psl2Group g = Psl2Group::enumerate(m);
      const Complex2 c = farey_level(m);
      if (c.vertex_count() != g.order() / m || c.edge_count() != g.order() / 2 ||
          c.triangle_count() != g.order() / 3) {
        ok = false;
        detail = "m=" + std::to_string(m);
      }
    }
    push("level-quotient-counts[2..8]", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    const std::map<int, int> chi = {{2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 0}, {7, -4}};
    for (int m = 2; m <= 8; ++m) {
      const Complex2 c = farey_level(m);
      if (!check_closed_surface(c).closed_oriented_surface()) ok = false;
      const auto it = chi.find(m);
      if (it != chi.end() && euler_characteristic(c) != it->second) ok = false;
      if (!ok && detail.empty()) detail = "m=" + std::to_string(m);
    }
    push("level-surface-checks[2..8]", ok, detail);
  }

  push("named-solids",
       graph_isomorphic(farey_level(3), checks_detail::tetrahedron()).has_value() &&
           graph_isomorphic(farey_level(4), checks_detail::octahedron()).has_value() &&
           graph_isomorphic(farey_level(5), checks_detail::icosahedron()).has_value());

  {
    bool ok = true;
    for (const auto& [m, depth] : std::vector<std::pair<int, int>>{{2, 8}, {3, 10}, {4, 10}}) {
      const BallCheckReport r = verify_against_ball(m, depth);
      if (!r.match() || !r.stabilized) ok = false;
    }
    push("ball-oracle-agreement", ok);
  }

  {
    bool ok = true;
    std::string detail;
    for (int m = 3; m <= 7; ++m) {
      const Psl2ImageReport r = psl2_image_in_aut(m, kDefaultModulusLimit, vertex_limit);
      if (r.aut_plus_index != 2 || !r.inside_plus) {
        ok = false;
        detail = "m=" + std::to_string(m);
      }
    }
    push("orientation-split[3..7]", ok, detail);
  }

  {
    bool ok = true;
    const Complex2 f2 = farey_level(2), f3 = farey_level(3);
    const Complex2 k3 = gstar_level(2), k4 = gstar_level(3);
    const ProductComplex pp = product_pants({f2, f3});
    if (pp.flattened.vertex_count() != 12 ||
        pp.flattened.edge_count() != f2.edge_count() * 4 + f3.edge_count() * 3)
      ok = false;
    const ProductComplex ps = product_star({k3, k4, k3});
    if (ps.flattened.vertex_count() != 36 ||
        ps.flattened.edge_count() != 3 * 12 + 6 * 9 + 3 * 12)
      ok = false;
    push("product-formulas", ok);
  }

  {
    bool ok = true;
    for (const auto& p :
         {product_star({gstar_level(2), gstar_level(2)}),
          product_star({gstar_level(2), gstar_level(3)}),
          product_star({gstar_level(3), gstar_level(3), gstar_level(2)})}) {
      const int expected = p.factor_count();
      for (int v = 0; v < p.flattened.vertex_count(); ++v) {
        if (local_dimension(p.flattened, v, kMaxNeighborGuard) != expected) ok = false;
        if (static_cast<int>(fibers_through(p.flattened, v).size()) != expected) ok = false;
      }
    }
    push("local-dimension-and-fibers", ok);
  }

  {
    bool ok = true;
    const ProductComplex p = product_star({gstar_level(2), gstar_level(3), gstar_level(2)});
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 50 && ok; ++trial) {
      PartialTuple rho, sigma, merged;
      for (int coord = 0; coord < p.factor_count(); ++coord) {
        const int value = std::uniform_int_distribution<int>(0, p.factor_sizes[coord] - 1)(rng);
        if (std::uniform_int_distribution<int>(0, 1)(rng)) rho[coord] = value;
        if (std::uniform_int_distribution<int>(0, 1)(rng)) sigma[coord] = value;
      }
      merged = rho;
      for (const auto& [coordinate, value] : sigma) merged[coordinate] = value;
      const Complex2 inter = subcomplex_intersection(p, rho, sigma);
      const Complex2 expect = subcomplex_of_cut(p, merged);
      if (inter.vertices != expect.vertices || inter.edges != expect.edges) ok = false;
      PartialTuple clash = rho;
      rho[0] = 0;
      clash[0] = 1;
      if (subcomplex_intersection(p, rho, clash).vertex_count() != 0) ok = false;
    }
    push("subcomplex-intersections", ok);
  }

  {
    bool ok = true;
    const AutInclusionReport a =
        check_aut_inclusion(farey_level(2), gstar_level(2), vertex_limit);
    const ProductComplex pants = product_pants({farey_level(3), farey_level(3)});
    const ProductComplex star = product_star({gstar_level(3), gstar_level(3)});
    const AutInclusionReport b =
        check_aut_inclusion(pants.flattened, star.flattened, vertex_limit);
    ok = a.inclusion && b.inclusion;
    push("aut-inclusion", ok);
  }

  {
    bool ok = true;
    for (const auto& factors :
         {std::vector<Complex2>{gstar_level(2), gstar_level(3)},
          std::vector<Complex2>{gstar_level(2), gstar_level(2), gstar_level(3)}}) {
      const ProductComplex p = product_star(factors);
      if (!simplicially_isomorphic(reconstruct_curve_complex(p),
                                   direct_curve_complex(factors)))
        ok = false;
    }
    push("reconstruction-roundtrip", ok);
  }

  {
    bool ok = true;
    try {
      const Tower t1 = build_tower(SurfaceSpec::parse("1,1"), {2, 4, 8});
      const Tower t2 = build_tower(SurfaceSpec::parse("1,1"), {2, 3, 6});
      const AutGroup c1 = compatible_automorphisms(t1, kDefaultEnumerationLimit, vertex_limit);
      const AutGroup c2 = compatible_automorphisms(t2, kDefaultEnumerationLimit, vertex_limit);
      ok = c1.order >= 1 && c2.order >= 1;
    } catch (const Error&) {
      ok = false;
    }
    push("tower-projections-and-descent", ok);
  }

  {
    const ProductComplex p = product_star({gstar_level(2), gstar_level(2)});
    const Complex2 nv = nerve(p.flattened, fiber_metadata(p.flattened));
    Complex2 k33;
    k33.vertices = {"a0", "a1", "a2", "b0", "b1", "b2"};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) k33.edges.push_back(make_edge(i, 3 + j));
    push("nerve-of-fiber-cover", graph_isomorphic(nv, k33).has_value());
  }

  return rows;
}

}  // namespace curvex
