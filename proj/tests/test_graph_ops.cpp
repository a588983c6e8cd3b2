#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "curvex/farey.hpp"
#include "curvex/graph_ops.hpp"
#include "curvex/level.hpp"
#include "curvex/product.hpp"
#include "oracles.hpp"

using namespace curvex;

TEST_CASE("nerve basics") {
  const Complex2 k3 = complete_complex({"x", "y", "z"});
  SECTION("pair cover of a triangle is a triangle") {
    const Complex2 nv = nerve(k3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(nv.vertex_count() == 3);
    CHECK(nv.edge_count() == 3);
    CHECK(nv.triangle_count() == 0);
  }
  SECTION("single covering set") {
    const Complex2 nv = nerve(k3, {{0, 1, 2}});
    CHECK(nv.vertex_count() == 1);
    CHECK(nv.edge_count() == 0);
  }
  SECTION("empty set rejected") {
    CHECK_THROWS_AS(nerve(k3, {{0, 1, 2}, {}}), Error);
  }
  SECTION("cover must exhaust the vertices") {
    CHECK_THROWS_AS(nerve(k3, {{0, 1}}), Error);
  }
}

TEST_CASE("nerve of the axis-fiber cover of K3 x K3 is K3,3") {
  const ProductComplex p = product_star({gstar_level(2), gstar_level(2)});
  const Complex2 nv = nerve(p.flattened, fiber_metadata(p.flattened));
  CHECK(nv.vertex_count() == 6);
  CHECK(nv.edge_count() == 9);
  // K3,3: bipartite 3+3, every cross pair joined
  Complex2 k33;
  k33.vertices = {"a0", "a1", "a2", "b0", "b1", "b2"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k33.edges.push_back(make_edge(i, 3 + j));
  CHECK(graph_isomorphic(nv, k33).has_value());
}

TEST_CASE("nerve is monotone under cover refinement") {
  std::mt19937 rng(2025);
  for (int trial = 0; trial < 40; ++trial) {
    const Complex2 c = oracles::random_complex(rng);
    const int n = c.vertex_count();
    // random cover of 3 sets (plus a completion set to satisfy the pre)
    std::vector<std::vector<int>> cover(3);
    for (int v = 0; v < n; ++v)
      cover[std::uniform_int_distribution<int>(0, 2)(rng)].push_back(v);
    std::vector<std::vector<int>> clean;
    for (auto& s : cover)
      if (!s.empty()) clean.push_back(s);
    if (clean.size() < 2) continue;
    const Complex2 before = nerve(c, clean);
    // split the last set into two halves
    std::vector<std::vector<int>> refined(clean.begin(), clean.end() - 1);
    const auto& last = clean.back();
    if (last.size() < 2) continue;
    refined.emplace_back(last.begin(), last.begin() + last.size() / 2);
    refined.emplace_back(last.begin() + last.size() / 2, last.end());
    const Complex2 after = nerve(c, refined);
    // edges between untouched sets survive
    for (const Edge& e : before.edges)
      if (e[0] < static_cast<int>(clean.size()) - 1 && e[1] < static_cast<int>(clean.size()) - 1)
        CHECK(std::find(after.edges.begin(), after.edges.end(), e) != after.edges.end());
  }
}

TEST_CASE("trivial quotient is an isomorphic copy") {
  const Complex2 c = farey_level(4);
  const Complex2 q = quotient_by_action(c, {VertexPermutation::identity(c.vertex_count())});
  CHECK(q.vertex_count() == c.vertex_count());
  CHECK(q.edges == c.edges);
  CHECK(q.triangles == c.triangles);
  CHECK(q.metadata.at(meta::kCollapsedEdges) == "0");
}

TEST_CASE("K3 under a 3-cycle collapses") {
  const Complex2 k3 = complete_complex({"x", "y", "z"});
  const Complex2 q = quotient_by_action(k3, {VertexPermutation({1, 2, 0})});
  CHECK(q.vertex_count() == 1);
  CHECK(q.edge_count() == 0);
  CHECK(q.metadata.at(meta::kCollapsedEdges) == "1");
  CHECK(q.metadata.at(meta::kCollapsedTriangles) == "1");
}

TEST_CASE("non-automorphisms are rejected") {
  const Complex2 p = farey_ball(0);
  // swapping 1/1 with 1/0 is not an automorphism of the base ball
  std::vector<int> bad{2, 1, 0, 3};
  CHECK_THROWS_AS(quotient_by_action(p, {VertexPermutation(bad)}), Error);
}

namespace {

// the principal congruence kernel inside PSL2(Z/big) relative to small | big,
// as vertex permutations of farey_level(big)
std::vector<VertexPermutation> congruence_kernel_action(int big, int small) {
  const CosetGeometry geo = CosetGeometry::build(big);
  const Complex2 stage = farey_level(big);
  const auto action = psl2_vertex_action(geo, stage);
  std::vector<VertexPermutation> kernel;
  for (int i = 0; i < geo.group.order(); ++i) {
    const Psl2ModM& e = geo.group.element(i);
    const Psl2ModM reduced = Psl2Group::canonical(small, {e[0], e[1], e[2], e[3]});
    if (reduced == Psl2ModM{1, 0, 0, 1}) kernel.push_back(action[i]);
  }
  return kernel;
}

}  // namespace

TEST_CASE("congruence quotient of a level complex is the lower level") {
  const std::vector<VertexPermutation> kernel = congruence_kernel_action(4, 2);
  CHECK(kernel.size() == 4);  // |PSL2(Z/4)| / |PSL2(Z/2)|
  const Complex2 q = quotient_by_action(farey_level(4), kernel);
  CHECK(q.vertex_count() == 3);
  CHECK(q.edge_count() == 3);
  CHECK(q.triangle_count() == 2);
  CHECK(graph_isomorphic(q, farey_level(2)).has_value());
}

TEST_CASE("quotient functoriality: residual action equals the join") {
  // X(8): quotient by ker(8->4), then by the residual ker(8->2), equals the
  // one-step quotient by ker(8->2)
  const Complex2 stage = farey_level(8);
  const auto k84 = congruence_kernel_action(8, 4);
  const auto k82 = congruence_kernel_action(8, 2);

  const Complex2 first = quotient_by_action(stage, k84);

  // induced residual permutations on the first quotient, well-definedness
  // checked as we go
  std::map<std::string, int> index_of;
  for (int i = 0; i < first.vertex_count(); ++i) index_of[first.vertices[i]] = i;
  // orbit map: stage vertex -> first-quotient vertex, recovered through labels
  // (quotient labels are the least orbit members' labels)
  detail::Dsu orbits(stage.vertex_count());
  for (const auto& g : k84)
    for (int v = 0; v < stage.vertex_count(); ++v) orbits.unite(v, g(v));
  std::vector<int> to_first(stage.vertex_count());
  for (int v = 0; v < stage.vertex_count(); ++v)
    to_first[v] = index_of.at(stage.vertices[orbits.find(v)]);

  std::vector<VertexPermutation> residual;
  for (const auto& g : k82) {
    std::vector<int> im(first.vertex_count(), -1);
    for (int v = 0; v < stage.vertex_count(); ++v) {
      const int from = to_first[v], to = to_first[g(v)];
      if (im[from] < 0) im[from] = to;
      REQUIRE(im[from] == to);  // the kernel action descends
    }
    residual.emplace_back(im);
  }
  const Complex2 second = quotient_by_action(first, residual);
  const Complex2 direct = quotient_by_action(stage, k82);
  CHECK(second.vertices == direct.vertices);
  CHECK(second.edges == direct.edges);
  CHECK(second.triangles == direct.triangles);
}

TEST_CASE("ball vertices with full level-2 orbit data collapse to the quotient") {
  // partial congruence action on a finite ball: identify v ~ g(v) whenever
  // both live in the ball, for g among the level-2 congruence generators
  const Complex2 ball = farey_ball(6);
  const auto slopes = ball_slopes(ball);
  std::map<Slope, int> index_of;
  for (std::size_t i = 0; i < slopes.size(); ++i) index_of[slopes[i]] = static_cast<int>(i);

  const Psl2Matrix gens[] = {Psl2Matrix::of(1, 2, 0, 1), Psl2Matrix::of(1, 0, 2, 1),
                             Psl2Matrix::of(1, -2, 0, 1), Psl2Matrix::of(1, 0, -2, 1)};
  const int n = ball.vertex_count();
  detail::Dsu classes(n);
  // vertices with full orbit data: all four generator images stay inside
  std::vector<char> full(n, 1);
  for (int v = 0; v < n; ++v)
    for (const Psl2Matrix& g : gens)
      if (!index_of.count(moebius_act(g, slopes[v]))) full[v] = 0;
  for (int v = 0; v < n; ++v) {
    if (!full[v]) continue;
    for (const Psl2Matrix& g : gens) {
      const int w = index_of.at(moebius_act(g, slopes[v]));
      if (full[w]) classes.unite(v, w);
    }
  }
  // quotient graph on the full-data classes, compared against farey_level(2)
  std::set<int> reps;
  std::map<int, int> rep_index;
  for (int v = 0; v < n; ++v)
    if (full[v] && reps.insert(classes.find(v)).second)
      rep_index.emplace(classes.find(v), static_cast<int>(rep_index.size()));
  std::set<Edge> qedges;
  for (const Edge& e : ball.edges) {
    if (!full[e[0]] || !full[e[1]]) continue;
    const int a = rep_index.at(classes.find(e[0]));
    const int b = rep_index.at(classes.find(e[1]));
    if (a != b) qedges.insert(make_edge(a, b));
  }
  CHECK(rep_index.size() == 3);
  CHECK(qedges.size() == 3);
}
