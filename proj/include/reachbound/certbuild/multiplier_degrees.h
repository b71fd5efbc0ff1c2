#pragma once

#include <string>
#include <vector>

#include "reachbound/problem/problem_spec.h"

namespace reachbound {

/// Largest total degree any constraint identity may reach.
inline constexpr int kMaxIdentityDegree = 12;

/// Which domain inequality localizes a multiplier.
enum class Companion { kStateRegion, kInputSet, kTimeWindow };

struct MultiplierSlot {
  std::string name;  ///< "s0".."s3"; the side suffix is added by the builder
  Companion companion;
  int companion_degree{0};
  /// Even degree of the multiplier, or -1 when it is absent.
  int degree{-1};
  bool x_only{false};  ///< s0 lives on the terminal slice and depends on x only
  bool present() const { return degree >= 0; }
};

/// Degree bookkeeping shared by both sides of the program.
struct DegreeTable {
  int value_degree{0};   ///< d
  int field_degree{0};   ///< deg f
  int total_degree{0};   ///< D, even
  std::vector<MultiplierSlot> multipliers;  ///< s0, s1, s2, s3 in order
  int gram_half_degree() const { return total_degree / 2; }

  std::string Describe() const;
};

/// D = max(d + deg f - 1, d, deg c, deg g) rounded up to even. Each multiplier
/// gets the largest even degree with deg s + deg(companion) <= D; a multiplier
/// whose companion is identically zero, or whose companion alone exceeds D, is
/// absent. Throws SizingError for D > kMaxIdentityDegree.
DegreeTable MultiplierDegrees(const ProblemSpec& spec);

}  // namespace reachbound
