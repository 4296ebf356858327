#pragma once

#include <cstdint>
#include <random>

#include "qdl/complex_util.hpp"
#include "qdl/group.hpp"

namespace qdl {

/// Deterministic sample stream. Uniform doubles are drawn through a fixed
/// 53-bit construction so reports are reproducible across platforms.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  long uniform_int(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// A real point of the group with continuous part in [-range, range]
  /// (theta in [0, 2pi) for the circle) and uniform discrete part.
  GroupPoint point(GroupKind kind, double range = 1.5, long z_span = 3) {
    switch (kind.family()) {
      case group_family::real_line:
        return GroupPoint::of(kind, uniform(-range, range));
      case group_family::real_by_zn:
        return GroupPoint::of(kind, uniform(-range, range),
                              uniform_int(0, kind.modulus() - 1));
      case group_family::circle_by_z:
        return GroupPoint::of(kind, uniform(0.0, two_pi), uniform_int(-z_span, z_span));
    }
    throw error("unreachable");
  }

  /// As point(), with an imaginary offset on the continuous component.
  GroupPoint point_complex(GroupKind kind, double range, double im_lo, double im_hi,
                           long z_span = 3) {
    GroupPoint p = point(kind, range, z_span);
    return p.shifted(cx(0.0, uniform(im_lo, im_hi)));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qdl
