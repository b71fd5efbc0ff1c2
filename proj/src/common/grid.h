#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace reachbound {

inline std::vector<double> Linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  return v;
}

// Cartesian product of per-dimension samples, first axis fastest.
inline void ForEachProduct(const std::vector<std::vector<double>>& axes,
                           const std::function<void(const Eigen::VectorXd&)>& visit) {
  const int k = static_cast<int>(axes.size());
  Eigen::VectorXd point(k);
  std::vector<int> idx(k, 0);
  if (k == 0) {
    visit(point);
    return;
  }
  while (true) {
    for (int i = 0; i < k; ++i) point[i] = axes[i][idx[i]];
    visit(point);
    int i = 0;
    while (i < k && ++idx[i] == static_cast<int>(axes[i].size())) idx[i++] = 0;
    if (i == k) return;
  }
}

}  // namespace reachbound
