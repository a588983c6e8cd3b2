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

inline constexpr int kDefaultDirectFactorLimit = 6;

enum class ProductKind { pants, star };

namespace meta {
inline constexpr const char* kFactors = "factors";
}

// Complex assembled from dimension-<=1 factors; vertices are tuples, every
// edge changes exactly one coordinate, and the factor/coordinate structure
// is retained.
struct ProductComplex {
  ProductKind kind = ProductKind::pants;
  std::vector<Complex2> factors;
  std::vector<int> factor_sizes;
  Complex2 flattened;
  std::vector<int> coordinate_of_edge;  // parallel to flattened.edges

  int factor_count() const { return static_cast<int>(factors.size()); }

  int flat_index(const std::vector<int>& tuple) const {
    int idx = 0;
    for (std::size_t i = 0; i < factor_sizes.size(); ++i) idx = idx * factor_sizes[i] + tuple[i];
    return idx;
  }

  std::vector<int> tuple_of(int flat) const {
    std::vector<int> tuple(factor_sizes.size());
    for (int i = static_cast<int>(factor_sizes.size()) - 1; i >= 0; --i) {
      tuple[i] = flat % factor_sizes[i];
      flat /= factor_sizes[i];
    }
    return tuple;
  }
};

namespace detail {

inline std::string tuple_label(const std::vector<Complex2>& factors,
                               const std::vector<int>& tuple) {
  if (factors.size() == 1) return factors[0].vertices[tuple[0]];
  std::string out = "(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "|";
    out += factors[i].vertices[tuple[i]];
  }
  out += ")";
  return out;
}

inline bool factor_is_point(const Complex2& f) { return f.vertex_count() == 1; }

inline bool factor_is_complete(const Complex2& f) {
  const int n = f.vertex_count();
  return static_cast<int>(f.edge_pairs().size()) == n * (n - 1) / 2;
}

inline ProductComplex product_common(std::vector<Complex2> factors, ProductKind kind) {
  if (factors.empty()) fail(errc::invalid_argument, "product needs at least one factor");
  ProductComplex p;
  p.kind = kind;
  p.factors = std::move(factors);
  for (const Complex2& f : p.factors) {
    f.validate();
    p.factor_sizes.push_back(f.vertex_count());
  }

  long long total = 1;
  for (int s : p.factor_sizes) {
    total *= s;
    if (total > 2000000) fail(errc::size_limit, "product vertex set too large");
  }

  Complex2& c = p.flattened;
  for (long long v = 0; v < total; ++v)
    c.vertices.push_back(tuple_label(p.factors, p.tuple_of(static_cast<int>(v))));

  // stride of coordinate i in the row-major flat index
  std::vector<long long> stride(p.factor_count(), 1);
  for (int i = p.factor_count() - 2; i >= 0; --i)
    stride[i] = stride[i + 1] * p.factor_sizes[i + 1];

  // enumerate assignments of every coordinate except i
  auto for_each_section = [&](int i, auto&& body) {
    std::vector<int> others(p.factor_count(), 0);
    others[i] = 0;
    for (;;) {
      long long base = 0;
      for (int j = 0; j < p.factor_count(); ++j)
        if (j != i) base += others[j] * stride[j];
      body(base);
      int j = p.factor_count() - 1;
      while (j >= 0) {
        if (j == i) {
          --j;
          continue;
        }
        if (++others[j] < p.factor_sizes[j]) break;
        others[j] = 0;
        --j;
      }
      if (j < 0) break;
    }
  };

  std::vector<std::vector<int>> fibers;
  for (int i = 0; i < p.factor_count(); ++i) {
    const Complex2& f = p.factors[i];
    const int ni = p.factor_sizes[i];
    for_each_section(i, [&](long long base) {
      if (kind == ProductKind::pants) {
        for (const Edge& e : f.edges) {
          c.edges.push_back(make_edge(static_cast<int>(base + e[0] * stride[i]),
                                      static_cast<int>(base + e[1] * stride[i])));
          p.coordinate_of_edge.push_back(i);
        }
        for (const Triangle& t : f.triangles)
          c.triangles.push_back(oriented_triangle(static_cast<int>(base + t[0] * stride[i]),
                                                  static_cast<int>(base + t[1] * stride[i]),
                                                  static_cast<int>(base + t[2] * stride[i])));
      } else {
        for (int u = 0; u < ni; ++u)
          for (int v = u + 1; v < ni; ++v) {
            c.edges.push_back(make_edge(static_cast<int>(base + u * stride[i]),
                                        static_cast<int>(base + v * stride[i])));
            p.coordinate_of_edge.push_back(i);
          }
        for (int u = 0; u < ni; ++u)
          for (int v = u + 1; v < ni; ++v)
            for (int w = v + 1; w < ni; ++w)
              c.triangles.push_back(oriented_triangle(static_cast<int>(base + u * stride[i]),
                                                      static_cast<int>(base + v * stride[i]),
                                                      static_cast<int>(base + w * stride[i])));
      }
      if (ni >= 2) {
        std::vector<int> fiber(ni);
        for (int u = 0; u < ni; ++u) fiber[u] = static_cast<int>(base + u * stride[i]);
        fibers.push_back(std::move(fiber));
      }
    });
  }

  c.metadata[meta::kKind] =
      kind == ProductKind::pants ? meta::kKindProductPants : meta::kKindProductStar;
  {
    nlohmann::json fs = nlohmann::json::array();
    for (const Complex2& f : p.factors) fs.push_back(complex_to_json(f));
    c.metadata[meta::kFactors] = fs.dump();
  }
  {
    std::string sizes;
    for (std::size_t i = 0; i < p.factor_sizes.size(); ++i) {
      if (i) sizes += ",";
      sizes += std::to_string(p.factor_sizes[i]);
    }
    c.metadata[meta::kFactorSizes] = sizes;
  }
  {
    std::string coords;
    for (std::size_t i = 0; i < p.coordinate_of_edge.size(); ++i) {
      if (i) coords += ",";
      coords += std::to_string(p.coordinate_of_edge[i]);
    }
    c.metadata[meta::kEdgeCoordinates] = coords;
  }
  set_fiber_metadata(c, fibers);
  std::string cons = kind == ProductKind::pants ? "product_pants(" : "product_star(";
  for (std::size_t i = 0; i < p.factors.size(); ++i) {
    if (i) cons += ",";
    cons += p.factors[i].metadata.count(meta::kConstruction)
                ? p.factors[i].metadata.at(meta::kConstruction)
                : "?";
  }
  c.metadata[meta::kConstruction] = cons + ")";
  return p;
}

}  // namespace detail

// Pants-flavor product: edges come from factor edges, one coordinate at a
// time; triangles are factor triangles crossed with fixed coordinates.
inline ProductComplex product_pants(std::vector<Complex2> factors) {
  for (const Complex2& f : factors) {
    const auto kind = f.metadata.find(meta::kKind);
    const std::string k = kind == f.metadata.end() ? "" : kind->second;
    if (!(k == meta::kKindPants || k == meta::kKindPoint))
      fail(errc::mixed_flavor, "pants product requires pants-graph or point factors");
  }
  return detail::product_common(std::move(factors), ProductKind::pants);
}

// Star-flavor product: the Hamming-style product where edges join tuples
// differing in exactly one coordinate (all distinct pairs of that factor).
inline ProductComplex product_star(std::vector<Complex2> factors) {
  for (const Complex2& f : factors) {
    const auto kind = f.metadata.find(meta::kKind);
    const std::string k = kind == f.metadata.end() ? "" : kind->second;
    if (!(k == meta::kKindStar || k == meta::kKindPoint))
      fail(errc::mixed_flavor, "star product requires complete-graph or point factors");
    if (!detail::factor_is_complete(f))
      fail(errc::mixed_flavor, "star factor is not a complete graph");
  }
  return detail::product_common(std::move(factors), ProductKind::star);
}

// Rebuild a ProductComplex from a flattened complex exported by this
// library (factor documents travel in the metadata).
inline ProductComplex product_from_complex(const Complex2& c) {
  const auto kind_it = c.metadata.find(meta::kKind);
  const auto factors_it = c.metadata.find(meta::kFactors);
  if (kind_it == c.metadata.end() || factors_it == c.metadata.end())
    fail(errc::missing_fiber_metadata, "complex does not carry product metadata");
  std::vector<Complex2> factors;
  for (const auto& fj : nlohmann::json::parse(factors_it->second))
    factors.push_back(complex_from_json(fj));
  ProductComplex p;
  if (kind_it->second == meta::kKindProductPants)
    p = product_pants(std::move(factors));
  else if (kind_it->second == meta::kKindProductStar)
    p = product_star(std::move(factors));
  else
    fail(errc::invalid_argument, "complex is not a product export");
  if (p.flattened.vertices != c.vertices || p.flattened.edges != c.edges)
    fail(errc::invalid_argument, "product metadata does not match the complex");
  return p;
}

// Simplicial complex as simplex lists per dimension (vertex sets, sorted).
struct SimplicialComplex {
  std::vector<std::string> vertex_labels;
  std::vector<std::vector<std::vector<int>>> simplices_by_dim;

  int dimension() const { return static_cast<int>(simplices_by_dim.size()) - 1; }
  std::size_t count(int dim) const {
    if (dim < 0 || dim >= static_cast<int>(simplices_by_dim.size())) return 0;
    return simplices_by_dim[dim].size();
  }

  Complex2 one_skeleton() const {
    Complex2 c;
    c.vertices = vertex_labels;
    if (simplices_by_dim.size() > 1)
      for (const auto& s : simplices_by_dim[1]) c.edges.push_back(make_edge(s[0], s[1]));
    return c;
  }
};

// Curve complex of a disjoint union of dimension-<=1 pieces, built directly
// from the factor vertex sets: a k-simplex picks k+1 distinct factors and
// one curve (factor vertex) in each.  Point factors are pants pieces and
// carry no curves, so they contribute nothing.
inline SimplicialComplex direct_curve_complex(const std::vector<Complex2>& factors,
                                              int factor_limit = kDefaultDirectFactorLimit) {
  if (factors.empty()) fail(errc::invalid_argument, "need at least one factor");
  if (static_cast<int>(factors.size()) > factor_limit)
    fail(errc::size_limit, "too many factors for direct curve complex");
  std::vector<const Complex2*> live;
  std::vector<int> live_index;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].vertex_count() > 1) {
      live.push_back(&factors[i]);
      live_index.push_back(static_cast<int>(i));
    }
  SimplicialComplex sc;
  std::vector<std::vector<int>> vertex_of(live.size());
  for (std::size_t i = 0; i < live.size(); ++i) {
    vertex_of[i].resize(live[i]->vertex_count());
    for (int v = 0; v < live[i]->vertex_count(); ++v) {
      vertex_of[i][v] = static_cast<int>(sc.vertex_labels.size());
      sc.vertex_labels.push_back("f" + std::to_string(live_index[i]) + ":" +
                                 live[i]->vertices[v]);
    }
  }
  const int r = static_cast<int>(live.size());
  sc.simplices_by_dim.assign(r, {});
  // iterate nonempty factor subsets
  for (int mask = 1; mask < (1 << r); ++mask) {
    std::vector<int> chosen;
    for (int i = 0; i < r; ++i)
      if (mask & (1 << i)) chosen.push_back(i);
    const int k = static_cast<int>(chosen.size()) - 1;
    std::vector<int> pick(chosen.size(), 0);
    for (;;) {
      std::vector<int> simplex;
      simplex.reserve(chosen.size());
      for (std::size_t j = 0; j < chosen.size(); ++j)
        simplex.push_back(vertex_of[chosen[j]][pick[j]]);
      std::sort(simplex.begin(), simplex.end());
      sc.simplices_by_dim[k].push_back(std::move(simplex));
      int j = static_cast<int>(chosen.size()) - 1;
      while (j >= 0 && ++pick[j] == live[chosen[j]]->vertex_count()) pick[j--] = 0;
      if (j < 0) break;
    }
  }
  for (auto& lst : sc.simplices_by_dim) std::sort(lst.begin(), lst.end());
  return sc;
}

// Simplicial isomorphism check for flag complexes: match the 1-skeletons,
// then verify every higher simplex is carried over.
inline bool simplicially_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.simplices_by_dim.size() != b.simplices_by_dim.size()) return false;
  for (std::size_t k = 0; k < a.simplices_by_dim.size(); ++k)
    if (a.simplices_by_dim[k].size() != b.simplices_by_dim[k].size()) return false;
  const auto iso = graph_isomorphic(a.one_skeleton(), b.one_skeleton());
  if (!iso) return false;
  for (std::size_t k = 2; k < a.simplices_by_dim.size(); ++k) {
    std::set<std::vector<int>> bs(b.simplices_by_dim[k].begin(), b.simplices_by_dim[k].end());
    for (const auto& s : a.simplices_by_dim[k]) {
      std::vector<int> img;
      img.reserve(s.size());
      for (int v : s) img.push_back((*iso)(v));
      std::sort(img.begin(), img.end());
      if (!bs.count(img)) return false;
    }
  }
  return true;
}

// Partial tuple: coordinate -> factor vertex index.
using PartialTuple = std::map<int, int>;

// Full subcomplex on the tuples that agree with sigma.
inline Complex2 subcomplex_of_cut(const ProductComplex& p, const PartialTuple& sigma) {
  for (const auto& [coord, value] : sigma) {
    if (coord < 0 || coord >= p.factor_count())
      fail(errc::invalid_coordinate, "coordinate " + std::to_string(coord) + " out of range");
    if (value < 0 || value >= p.factor_sizes[coord])
      fail(errc::invalid_coordinate, "vertex " + std::to_string(value) +
                                        " not in factor " + std::to_string(coord));
  }
  const int n = p.flattened.vertex_count();
  std::vector<int> new_index(n, -1);
  Complex2 out;
  for (int v = 0; v < n; ++v) {
    const std::vector<int> tuple = p.tuple_of(v);
    bool keep = true;
    for (const auto& [coord, value] : sigma)
      if (tuple[coord] != value) {
        keep = false;
        break;
      }
    if (keep) {
      new_index[v] = out.vertex_count();
      out.vertices.push_back(p.flattened.vertices[v]);
    }
  }
  for (const Edge& e : p.flattened.edges)
    if (new_index[e[0]] >= 0 && new_index[e[1]] >= 0)
      out.edges.push_back(make_edge(new_index[e[0]], new_index[e[1]]));
  for (const Triangle& t : p.flattened.triangles)
    if (new_index[t[0]] >= 0 && new_index[t[1]] >= 0 && new_index[t[2]] >= 0)
      out.triangles.push_back(
          oriented_triangle(new_index[t[0]], new_index[t[1]], new_index[t[2]]));
  nlohmann::json fixed = nlohmann::json::object();
  for (const auto& [coord, value] : sigma) fixed[std::to_string(coord)] = value;
  out.metadata[meta::kConstruction] = "subcomplex_of_cut(" + fixed.dump() + ")";
  return out;
}

// Lemma-style intersection: merge compatible partial tuples, empty complex
// otherwise.
inline Complex2 subcomplex_intersection(const ProductComplex& p, const PartialTuple& rho,
                                        const PartialTuple& sigma) {
  PartialTuple merged = rho;
  for (const auto& [coord, value] : sigma) {
    const auto it = merged.find(coord);
    if (it != merged.end() && it->second != value) return Complex2{};  // incompatible
    merged[coord] = value;
  }
  return subcomplex_of_cut(p, merged);
}

}  // namespace curvex
