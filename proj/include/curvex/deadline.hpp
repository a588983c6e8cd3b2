#pragma once

#include <chrono>
#include <optional>

#include "curvex/errors.hpp"

namespace curvex {

// Cooperative deadline: long searches poll it and abort with a structured
// error when time runs out.  Default-constructed, it never fires.
class Deadline {
public:
  Deadline() = default;
  static Deadline after_seconds(double s) {
    Deadline d;
    d.at_ = std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(s));
    return d;
  }

  void check() const {
    if (at_ && std::chrono::steady_clock::now() > *at_)
      fail(errc::deadline_exceeded, "computation exceeded the deadline");
  }

private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace curvex
