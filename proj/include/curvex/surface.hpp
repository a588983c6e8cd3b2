#pragma once

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <string>
#include <vector>

#include "curvex/errors.hpp"

namespace curvex {

// Connected surface type: genus g with n unordered punctures.
struct SurfaceType {
  int genus = 0;
  int punctures = 0;
  auto operator<=>(const SurfaceType&) const = default;
};

inline bool is_hyperbolic(SurfaceType t) { return 2 * t.genus - 2 + t.punctures > 0; }
inline bool is_pants(SurfaceType t) { return t.genus == 0 && t.punctures == 3; }
inline int modular_dimension(SurfaceType t) { return 3 * t.genus - 3 + t.punctures; }

inline std::string type_str(SurfaceType t) {
  return std::to_string(t.genus) + "," + std::to_string(t.punctures);
}

// Multiset of connected surface types, kept sorted.
struct SurfaceSpec {
  std::vector<SurfaceType> components;

  SurfaceSpec() = default;
  explicit SurfaceSpec(std::vector<SurfaceType> comps) : components(std::move(comps)) {
    std::sort(components.begin(), components.end());
    validate();
  }

  void validate() const {
    for (SurfaceType t : components) {
      if (t.genus < 0 || t.punctures < 0)
        fail(errc::invalid_argument, "negative genus or puncture count");
      if (!is_hyperbolic(t))
        fail(errc::non_hyperbolic_type, "component " + type_str(t) + " is not hyperbolic");
    }
  }

  bool empty() const { return components.empty(); }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i) out += "+";
      out += type_str(components[i]);
    }
    return out;
  }

  // Grammar: "g,n(+g,n)*", e.g. "1,1+0,4".
  static SurfaceSpec parse(const std::string& text) {
    std::vector<SurfaceType> comps;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('+', pos);
      if (end == std::string::npos) end = text.size();
      const std::string piece = text.substr(pos, end - pos);
      const std::size_t comma = piece.find(',');
      if (comma == std::string::npos)
        fail(errc::invalid_argument, "bad surface component '" + piece + "'");
      char* rest = nullptr;
      const long g = std::strtol(piece.c_str(), &rest, 10);
      if (rest != piece.c_str() + comma)
        fail(errc::invalid_argument, "bad genus in '" + piece + "'");
      const char* nstart = piece.c_str() + comma + 1;
      const long n = std::strtol(nstart, &rest, 10);
      if (*rest != '\0' || rest == nstart)
        fail(errc::invalid_argument, "bad puncture count in '" + piece + "'");
      comps.push_back({static_cast<int>(g), static_cast<int>(n)});
      pos = end + 1;
    }
    if (text.empty()) fail(errc::invalid_argument, "empty surface spec");
    return SurfaceSpec(std::move(comps));
  }

  friend bool operator==(const SurfaceSpec& a, const SurfaceSpec& b) {
    return a.components == b.components;
  }
};

inline int modular_dimension(const SurfaceSpec& s) {
  int d = 0;
  for (SurfaceType t : s.components) d += modular_dimension(t);
  return d;
}

inline bool is_hyperbolic(const SurfaceSpec& s) {
  for (SurfaceType t : s.components)
    if (!is_hyperbolic(t)) return false;
  return true;
}

inline SurfaceSpec disjoint_union(const SurfaceSpec& a, const SurfaceSpec& b) {
  std::vector<SurfaceType> comps = a.components;
  comps.insert(comps.end(), b.components.begin(), b.components.end());
  return SurfaceSpec(std::move(comps));
}

// Cut along a nonseparating curve: (g,n) -> (g-1, n+2).
inline SurfaceSpec cut_nonseparating(SurfaceType t) {
  if (!is_hyperbolic(t)) fail(errc::invalid_cut, "cut of non-hyperbolic type");
  if (t.genus < 1) fail(errc::invalid_cut, "nonseparating cut needs genus >= 1");
  return SurfaceSpec({{t.genus - 1, t.punctures + 2}});
}

// Cut along a separating curve into the two stated pieces; each piece's
// puncture count includes its new boundary puncture.
inline SurfaceSpec cut_separating(SurfaceType t, SurfaceType p1, SurfaceType p2) {
  if (!is_hyperbolic(t)) fail(errc::invalid_cut, "cut of non-hyperbolic type");
  if (p1.genus + p2.genus != t.genus || p1.punctures + p2.punctures != t.punctures + 2)
    fail(errc::invalid_cut, "pieces do not assemble to the cut surface");
  if (p1.punctures < 1 || p2.punctures < 1)
    fail(errc::invalid_cut, "each piece must contain the new boundary puncture");
  if (!is_hyperbolic(p1) || !is_hyperbolic(p2))
    fail(errc::invalid_cut, "cut produces a non-hyperbolic piece");
  return SurfaceSpec({p1, p2});
}

// Static table of exceptional isomorphism classes of completed complexes.
inline std::vector<SurfaceType> exceptional_partners(SurfaceType t) {
  if (!is_hyperbolic(t)) fail(errc::non_hyperbolic_type, type_str(t) + " is not hyperbolic");
  static const std::pair<SurfaceType, SurfaceType> table[] = {
      {{2, 0}, {0, 6}}, {{1, 2}, {0, 5}}, {{1, 1}, {0, 4}}};
  for (const auto& [a, b] : table) {
    if (t == a) return {b};
    if (t == b) return {a};
  }
  return {};
}

}  // namespace curvex
