#pragma once

#include <cstdlib>
#include <numeric>
#include <string>

#include "curvex/errors.hpp"
#include "curvex/surface.hpp"

namespace curvex {

// Primitive integer pair up to sign: an isotopy class of curve on a
// modular-dimension-1 surface.  Canonical form q > 0, or (1,0) for the
// slope at infinity.
struct Slope {
  long long p = 1;
  long long q = 0;

  static Slope canonical(long long p, long long q) {
    if (p == 0 && q == 0) fail(errc::invalid_argument, "slope 0/0");
    const long long g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
      p = -p;
      q = -q;
    }
    return Slope{p, q};
  }

  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

  static Slope parse(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos) fail(errc::invalid_argument, "bad slope '" + text + "'");
    char* rest = nullptr;
    const long long p = std::strtoll(text.c_str(), &rest, 10);
    if (rest != text.c_str() + slash) fail(errc::invalid_argument, "bad slope '" + text + "'");
    const char* qstart = text.c_str() + slash + 1;
    const long long q = std::strtoll(qstart, &rest, 10);
    if (*rest != '\0' || rest == qstart) fail(errc::invalid_argument, "bad slope '" + text + "'");
    return canonical(p, q);
  }

  friend bool operator==(const Slope& a, const Slope& b) { return a.p == b.p && a.q == b.q; }
  friend bool operator<(const Slope& a, const Slope& b) {
    return a.p != b.p ? a.p < b.p : a.q < b.q;
  }
};

// |p_s q_t - q_s p_t|; the Farey edge relation is slope_det == 1.
inline long long slope_det(const Slope& s, const Slope& t) {
  const long long d = s.p * t.q - s.q * t.p;
  return d < 0 ? -d : d;
}

// Integer matrix with determinant 1, identified with its negation.
// Canonical sign: first nonzero of (a,b,c,d) positive.
struct Psl2Matrix {
  long long a = 1, b = 0, c = 0, d = 1;

  static Psl2Matrix of(long long a, long long b, long long c, long long d) {
    if (a * d - b * c != 1) fail(errc::invalid_argument, "matrix determinant is not 1");
    long long sign = 0;
    for (long long x : {a, b, c, d}) {
      if (x != 0) {
        sign = x > 0 ? 1 : -1;
        break;
      }
    }
    return Psl2Matrix{sign * a, sign * b, sign * c, sign * d};
  }

  static Psl2Matrix identity() { return Psl2Matrix{}; }

  Psl2Matrix operator*(const Psl2Matrix& o) const {
    return of(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
  }

  Psl2Matrix inverse() const { return of(d, -b, -c, a); }

  friend bool operator==(const Psl2Matrix& x, const Psl2Matrix& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

inline Slope moebius_act(const Psl2Matrix& m, const Slope& s) {
  return Slope::canonical(m.a * s.p + m.b * s.q, m.c * s.p + m.d * s.q);
}

inline void require_dimension_one(SurfaceType t) {
  if (modular_dimension(t) != 1)
    fail(errc::wrong_type, type_str(t) + " has modular dimension != 1");
}

// Geometric intersection number of two slopes on a dimension-1 surface:
// the slope pairing on (1,1), twice it on (0,4).
inline long long intersection_number(SurfaceType t, const Slope& s, const Slope& u) {
  require_dimension_one(t);
  const long long det = slope_det(s, u);
  return t.genus == 1 ? det : 2 * det;
}

// Minimal positive intersection for the type; exactly the Farey edge relation.
inline bool is_elementary_move(SurfaceType t, const Slope& s, const Slope& u) {
  require_dimension_one(t);
  return slope_det(s, u) == 1;
}

}  // namespace curvex
