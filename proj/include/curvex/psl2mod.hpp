#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "curvex/errors.hpp"

namespace curvex {

inline constexpr int kDefaultModulusLimit = 25;

// Element of PSL2(Z/m): (a,b,c,d) with ad-bc = 1, identified with its
// negation; canonical representative is the lexicographic least of the pair.
using Psl2ModM = std::array<int, 4>;

// Brute-force enumerated PSL2(Z/m) with multiplication through canonical
// representatives.  Element order is whatever the enumeration found; no
// order formula is assumed anywhere.
class Psl2Group {
public:
  static Psl2Group enumerate(int m, int modulus_limit = kDefaultModulusLimit) {
    if (m < 2 || m > modulus_limit)
      fail(errc::modulus_limit, "modulus " + std::to_string(m) + " outside 2.." +
                                    std::to_string(modulus_limit));
    Psl2Group g;
    g.m_ = m;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d) {
            if (((a * d - b * c) % m + m) % m != 1) continue;
            const Psl2ModM e = canonical(m, {a, b, c, d});
            if (e != Psl2ModM{a, b, c, d}) continue;  // keep canonical reps only
            g.index_.emplace(key(e), static_cast<int>(g.elems_.size()));
            g.elems_.push_back(e);
          }
    return g;
  }

  static Psl2ModM canonical(int m, Psl2ModM e) {
    for (int& x : e) x = ((x % m) + m) % m;
    Psl2ModM neg;
    for (int i = 0; i < 4; ++i) neg[i] = (m - e[i]) % m;
    return neg < e ? neg : e;
  }

  int modulus() const { return m_; }
  int order() const { return static_cast<int>(elems_.size()); }
  const Psl2ModM& element(int i) const { return elems_[i]; }

  int index_of(Psl2ModM e) const {
    const auto it = index_.find(key(canonical(m_, e)));
    if (it == index_.end()) fail(errc::invalid_argument, "not a group element");
    return it->second;
  }

  int identity() const { return index_of({1, 0, 0, 1}); }

  int mul(int i, int j) const {
    const Psl2ModM& x = elems_[i];
    const Psl2ModM& y = elems_[j];
    return index_of({x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                     x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]});
  }

  int inverse(int i) const {
    const Psl2ModM& x = elems_[i];
    return index_of({x[3], -x[1], -x[2], x[0]});
  }

  int element_order(int i) const {
    const int id = identity();
    int k = 1;
    int acc = i;
    while (acc != id) {
      acc = mul(acc, i);
      ++k;
    }
    return k;
  }

  // Standard generators of the Farey coset geometry.
  int t_elem() const { return index_of({1, 1, 0, 1}); }   // fixes the cusp at infinity
  int s_elem() const { return index_of({0, -1, 1, 0}); }  // order 2, flips the base edge
  int r_elem() const { return index_of({0, -1, 1, -1}); } // order 3, rotates the base triangle

  std::vector<int> cyclic_subgroup(int gen) const {
    std::vector<int> out{identity()};
    int acc = gen;
    while (acc != identity()) {
      out.push_back(acc);
      acc = mul(acc, gen);
    }
    return out;
  }

  // Closure of a generating set; `limit` guards runaway enumeration.
  std::vector<int> subgroup_closure(const std::vector<int>& gens,
                                    std::size_t limit = 1u << 22) const {
    std::vector<char> seen(elems_.size(), 0);
    std::vector<int> frontier{identity()}, members{identity()};
    seen[identity()] = 1;
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier)
        for (int gidx : gens) {
          const int y = mul(x, gidx);
          if (!seen[y]) {
            seen[y] = 1;
            members.push_back(y);
            next.push_back(y);
            if (members.size() > limit) fail(errc::size_limit, "subgroup closure too large");
          }
        }
      frontier = std::move(next);
    }
    std::sort(members.begin(), members.end());
    return members;
  }

private:
  static std::uint32_t key(const Psl2ModM& e) {
    return (static_cast<std::uint32_t>(e[0]) << 24) | (static_cast<std::uint32_t>(e[1]) << 16) |
           (static_cast<std::uint32_t>(e[2]) << 8) | static_cast<std::uint32_t>(e[3]);
  }

  int m_ = 0;
  std::vector<Psl2ModM> elems_;
  std::unordered_map<std::uint32_t, int> index_;
};

}  // namespace curvex
