#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace curvex {

// Every failure carries a stable machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw Error(code, message);
}

namespace errc {
inline constexpr const char* invalid_argument = "invalid-argument";
inline constexpr const char* invalid_complex = "invalid-complex";
inline constexpr const char* size_limit = "size-limit-exceeded";
inline constexpr const char* not_an_automorphism = "not-an-automorphism";
inline constexpr const char* mixed_orientation = "mixed-orientation";
inline constexpr const char* empty_cover_set = "empty-cover-set";
inline constexpr const char* wrong_type = "wrong-type";
inline constexpr const char* invalid_cut = "invalid-cut";
inline constexpr const char* non_hyperbolic_type = "non-hyperbolic-type";
inline constexpr const char* depth_limit = "depth-limit";
inline constexpr const char* modulus_limit = "modulus-limit";
inline constexpr const char* divisibility = "divisibility";
inline constexpr const char* mixed_flavor = "mixed-flavor";
inline constexpr const char* invalid_coordinate = "invalid-coordinate";
inline constexpr const char* missing_fiber_metadata = "missing-fiber-metadata";
inline constexpr const char* neighborhood_too_large = "neighborhood-too-large";
inline constexpr const char* vertex_set_mismatch = "vertex-set-mismatch";
inline constexpr const char* no_unique_top = "no-unique-top";
inline constexpr const char* projection_mismatch = "projection-mismatch";
inline constexpr const char* deadline_exceeded = "deadline-exceeded";
}  // namespace errc

}  // namespace curvex
