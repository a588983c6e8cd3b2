#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "curvex/farey.hpp"
#include "curvex/level.hpp"
#include "curvex/product.hpp"
#include "oracles.hpp"

using namespace curvex;

namespace {

long long star_edge_formula(const std::vector<int>& sizes) {
  long long total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    long long term = static_cast<long long>(sizes[i]) * (sizes[i] - 1) / 2;
    for (std::size_t j = 0; j < sizes.size(); ++j)
      if (j != i) term *= sizes[j];
    total += term;
  }
  return total;
}

long long pants_edge_formula(const std::vector<Complex2>& factors) {
  long long total = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    long long term = factors[i].edge_count();
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) term *= factors[j].vertex_count();
    total += term;
  }
  return total;
}

}  // namespace

TEST_CASE("pants product of two level-2 quotients") {
  const Complex2 f2 = farey_level(2);
  const ProductComplex p = product_pants({f2, f2});
  CHECK(p.flattened.vertex_count() == 9);
  CHECK(p.flattened.edge_count() == 18);
  p.flattened.validate();
}

TEST_CASE("single factor product is the factor itself") {
  const Complex2 f2 = farey_level(2);
  const ProductComplex p = product_pants({f2});
  CHECK(p.flattened.vertices == f2.vertices);
  CHECK(p.flattened.edges == f2.edges);
  CHECK(p.flattened.triangles == f2.triangles);
}

TEST_CASE("point factors contribute nothing") {
  const Complex2 f2 = farey_level(2);
  const ProductComplex p = product_pants({f2, point_complex()});
  CHECK(graph_isomorphic(p.flattened, f2).has_value());
}

TEST_CASE("star product counts") {
  const Complex2 k3 = gstar_level(2);
  const ProductComplex rook = product_star({k3, k3});
  CHECK(rook.flattened.vertex_count() == 9);
  CHECK(rook.flattened.edge_count() == 18);
  const ProductComplex cube = product_star({k3, k3, k3});
  CHECK(cube.flattened.vertex_count() == 27);
  CHECK(cube.flattened.edge_count() == 81);
}

TEST_CASE("flavors do not mix") {
  const Complex2 f2 = farey_level(2);   // pants flavor
  const Complex2 k3 = gstar_level(2);   // star flavor
  CHECK_THROWS_AS(product_pants({f2, k3}), Error);
  CHECK_THROWS_AS(product_star({k3, f2}), Error);
}

TEST_CASE("product formulas over the suite factor lists") {
  const std::vector<Complex2> pantsish = {farey_level(2), farey_level(3), farey_level(5),
                                          point_complex()};
  for (std::size_t a = 0; a < pantsish.size(); ++a)
    for (std::size_t b = a; b < pantsish.size(); ++b) {
      const ProductComplex p = product_pants({pantsish[a], pantsish[b]});
      long long vertices = 1;
      for (const Complex2& f : p.factors) vertices *= f.vertex_count();
      CHECK(p.flattened.vertex_count() == vertices);
      CHECK(p.flattened.edge_count() == pants_edge_formula(p.factors));
    }
  const std::vector<Complex2> starish = {gstar_level(2), gstar_level(3),
                                         complete_complex({"a", "b", "c", "d"}),
                                         point_complex()};
  for (std::size_t a = 0; a < starish.size(); ++a)
    for (std::size_t b = a; b < starish.size(); ++b)
      for (std::size_t c = b; c < starish.size(); ++c) {
        const ProductComplex p = product_star({starish[a], starish[b], starish[c]});
        long long vertices = 1;
        for (const Complex2& f : p.factors) vertices *= f.vertex_count();
        CHECK(p.flattened.vertex_count() == vertices);
        CHECK(p.flattened.edge_count() == star_edge_formula(p.factor_sizes));
      }
}

TEST_CASE("every product edge changes exactly one coordinate") {
  const ProductComplex p = product_star({gstar_level(3), gstar_level(2), point_complex()});
  REQUIRE(p.coordinate_of_edge.size() == p.flattened.edges.size());
  for (std::size_t i = 0; i < p.flattened.edges.size(); ++i) {
    const Edge& e = p.flattened.edges[i];
    const auto ta = p.tuple_of(e[0]), tb = p.tuple_of(e[1]);
    int changed = -1, count = 0;
    for (int k = 0; k < p.factor_count(); ++k)
      if (ta[k] != tb[k]) {
        changed = k;
        ++count;
      }
    CHECK(count == 1);
    CHECK(changed == p.coordinate_of_edge[i]);
  }
  // triangles are axis-aligned
  for (const Triangle& t : p.flattened.triangles) {
    const auto ta = p.tuple_of(t[0]), tb = p.tuple_of(t[1]), tc = p.tuple_of(t[2]);
    std::set<int> axes;
    for (int k = 0; k < p.factor_count(); ++k) {
      if (ta[k] != tb[k]) axes.insert(k);
      if (tb[k] != tc[k]) axes.insert(k);
      if (ta[k] != tc[k]) axes.insert(k);
    }
    CHECK(axes.size() == 1);
  }
}

TEST_CASE("closure of a pants product is the star product of the closures") {
  const Complex2 ball = farey_ball(1);
  const ProductComplex pants = product_pants({ball, ball});
  const Complex2 closed = complete_closure(pants.flattened);
  const ProductComplex star = product_star({complete_closure(ball), complete_closure(ball)});
  CHECK(closed.vertices == star.flattened.vertices);
  std::multiset<Edge> a(closed.edges.begin(), closed.edges.end());
  std::multiset<Edge> b(star.flattened.edges.begin(), star.flattened.edges.end());
  CHECK(a == b);
  std::multiset<Triangle> ta(closed.triangles.begin(), closed.triangles.end());
  std::multiset<Triangle> tb(star.flattened.triangles.begin(), star.flattened.triangles.end());
  CHECK(ta == tb);
}

TEST_CASE("direct curve complex counts") {
  const Complex2 k3 = gstar_level(2);
  SECTION("two factors") {
    const SimplicialComplex sc = direct_curve_complex({k3, k3});
    CHECK(sc.vertex_labels.size() == 6);
    CHECK(sc.count(0) == 6);
    CHECK(sc.count(1) == 9);
  }
  SECTION("one factor leaves isolated vertices") {
    const SimplicialComplex sc = direct_curve_complex({gstar_level(3)});
    CHECK(sc.count(0) == 4);
    CHECK(sc.count(1) == 0);
  }
  SECTION("three factors give 27 top simplices") {
    const SimplicialComplex sc = direct_curve_complex({k3, k3, k3});
    CHECK(sc.count(2) == 27);
  }
  SECTION("factor limit") {
    const std::vector<Complex2> many(7, k3);
    CHECK_THROWS_AS(direct_curve_complex(many), Error);
  }
}

TEST_CASE("subcomplexes of cuts") {
  const ProductComplex p = product_star({gstar_level(2), gstar_level(2)});
  SECTION("fixing one coordinate gives a fiber") {
    const Complex2 fiber = subcomplex_of_cut(p, {{0, 1}});
    CHECK(fiber.vertex_count() == 3);
    CHECK(fiber.edge_count() == 3);
  }
  SECTION("fixing nothing gives everything") {
    const Complex2 whole = subcomplex_of_cut(p, {});
    CHECK(whole.vertex_count() == 9);
    CHECK(whole.edge_count() == 18);
  }
  SECTION("fixing all coordinates gives one vertex") {
    const Complex2 v = subcomplex_of_cut(p, {{0, 2}, {1, 0}});
    CHECK(v.vertex_count() == 1);
    CHECK(v.edge_count() == 0);
  }
  SECTION("coordinates are validated") {
    CHECK_THROWS_AS(subcomplex_of_cut(p, {{5, 0}}), Error);
    CHECK_THROWS_AS(subcomplex_of_cut(p, {{0, 9}}), Error);
  }
}

TEST_CASE("subcomplex intersections merge compatible tuples") {
  const ProductComplex p = product_star({gstar_level(2), gstar_level(2)});
  SECTION("disjoint coordinates merge") {
    const Complex2 both = subcomplex_intersection(p, {{0, 1}}, {{1, 2}});
    CHECK(both.vertex_count() == 1);
  }
  SECTION("conflicting coordinates are empty") {
    const Complex2 empty = subcomplex_intersection(p, {{0, 1}}, {{0, 2}});
    CHECK(empty.vertex_count() == 0);
  }
  SECTION("nested tuples give the finer subcomplex") {
    const Complex2 fine = subcomplex_intersection(p, {{0, 1}}, {{0, 1}, {1, 2}});
    const Complex2 direct = subcomplex_of_cut(p, {{0, 1}, {1, 2}});
    CHECK(fine.vertices == direct.vertices);
    CHECK(fine.edges == direct.edges);
  }
}

TEST_CASE("containment of cut subcomplexes mirrors tuple containment") {
  const ProductComplex p = product_star({gstar_level(2), gstar_level(3)});
  const PartialTuple rho{{0, 1}, {1, 2}};
  const PartialTuple sigma{{0, 1}};
  const Complex2 a = subcomplex_of_cut(p, rho);
  const Complex2 b = subcomplex_of_cut(p, sigma);
  const std::set<std::string> bs(b.vertices.begin(), b.vertices.end());
  for (const std::string& label : a.vertices) CHECK(bs.count(label) == 1);
  const PartialTuple tau{{1, 0}};
  const Complex2 c = subcomplex_of_cut(p, tau);
  const std::set<std::string> cs(c.vertices.begin(), c.vertices.end());
  bool contained = true;
  for (const std::string& label : a.vertices)
    if (!cs.count(label)) contained = false;
  CHECK_FALSE(contained);
}

TEST_CASE("product metadata rebuilds the product") {
  const ProductComplex p = product_star({gstar_level(2), gstar_level(3)});
  const Complex2 doc = complex_from_json(complex_to_json(p.flattened));
  const ProductComplex back = product_from_complex(doc);
  CHECK(back.kind == ProductKind::star);
  CHECK(back.flattened.vertices == p.flattened.vertices);
  CHECK(back.flattened.edges == p.flattened.edges);
  CHECK(back.coordinate_of_edge == p.coordinate_of_edge);
  Complex2 bare;
  bare.vertices = {"a"};
  CHECK_THROWS_AS(product_from_complex(bare), Error);
}

TEST_CASE("random compatible and incompatible pairs") {
  const ProductComplex p = product_star({gstar_level(2), gstar_level(3), gstar_level(2)});
  std::mt19937 rng(99);
  auto random_tuple = [&](int fix_count) {
    PartialTuple sigma;
    while (static_cast<int>(sigma.size()) < fix_count) {
      const int coord = std::uniform_int_distribution<int>(0, p.factor_count() - 1)(rng);
      sigma[coord] = std::uniform_int_distribution<int>(0, p.factor_sizes[coord] - 1)(rng);
    }
    return sigma;
  };
  for (int trial = 0; trial < 100; ++trial) {
    // compatible: rho and sigma drawn from a common full tuple
    PartialTuple full = random_tuple(p.factor_count());
    PartialTuple rho, sigma;
    for (const auto& [coord, value] : full) {
      if (std::uniform_int_distribution<int>(0, 1)(rng)) rho[coord] = value;
      if (std::uniform_int_distribution<int>(0, 1)(rng)) sigma[coord] = value;
    }
    PartialTuple merged = rho;
    for (const auto& [coord, value] : sigma) merged[coord] = value;
    const Complex2 inter = subcomplex_intersection(p, rho, sigma);
    const Complex2 expect = subcomplex_of_cut(p, merged);
    CHECK(inter.vertices == expect.vertices);
    CHECK(inter.edges == expect.edges);

    // incompatible: force a clash on one coordinate
    PartialTuple clash = rho;
    const int coord = std::uniform_int_distribution<int>(0, p.factor_count() - 1)(rng);
    rho[coord] = 0;
    clash[coord] = 1;
    CHECK(subcomplex_intersection(p, rho, clash).vertex_count() == 0);
  }
}
