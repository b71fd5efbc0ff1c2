#pragma once

#include <span>

#include <Eigen/Dense>

namespace reachbound {

inline std::span<const double> AsSpan(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return {v.data(), static_cast<size_t>(v.size())};
}

}  // namespace reachbound
