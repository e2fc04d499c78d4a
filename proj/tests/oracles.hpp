#ifndef GKD_TESTS_ORACLES_HPP
#define GKD_TESTS_ORACLES_HPP

// Test-side oracles, deliberately written as plain enumerations that stay
// independent of the library code paths they cross-check.

#include "gkd/distribution.hpp"
#include "gkd/labeling.hpp"
#include "gkd/network.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double plogp_sum(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

struct LabelingEval {
  double h_phi_x = 0.0;
  double helper = 0.0;  // H(phi_X | phi_Y)
  double p_err = 0.0;
};

inline LabelingEval evaluate(const gkd::JointDistribution& j, const std::vector<int>& lx,
                             const std::vector<int>& ly, int range) {
  std::vector<std::vector<double>> q(range, std::vector<double>(range, 0.0));
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj) q[lx[i]][ly[jj]] += j.p(i, jj);
  LabelingEval e;
  std::vector<double> mx(range, 0.0), my(range, 0.0);
  for (int a = 0; a < range; ++a)
    for (int b = 0; b < range; ++b) {
      mx[a] += q[a][b];
      my[b] += q[a][b];
      if (a != b) e.p_err += q[a][b];
    }
  e.h_phi_x = plogp_sum(mx);
  double h_joint = 0.0;
  for (int a = 0; a < range; ++a)
    for (int b = 0; b < range; ++b)
      if (q[a][b] > 0.0) h_joint -= q[a][b] * std::log2(q[a][b]);
  e.helper = h_joint - plogp_sum(my);
  return e;
}

// Visits every labeling pair with labels in [0, range)^(nx+ny).
inline void for_each_labeling(int nx, int ny, int range,
                              const std::function<void(const std::vector<int>&,
                                                       const std::vector<int>&)>& fn) {
  std::vector<int> lx(nx, 0), ly(ny, 0);
  std::function<void(int)> rec_y = [&](int j) {
    if (j == ny) {
      fn(lx, ly);
      return;
    }
    for (int c = 0; c < range; ++c) {
      ly[j] = c;
      rec_y(j + 1);
    }
  };
  std::function<void(int)> rec_x = [&](int i) {
    if (i == nx) {
      rec_y(0);
      return;
    }
    for (int c = 0; c < range; ++c) {
      lx[i] = c;
      rec_x(i + 1);
    }
  };
  rec_x(0);
}

// Best H(phi_X) - lambda H(phi_X|phi_Y) over binary labelings, by direct
// enumeration without any of the library's aggregation tricks.
inline double best_binary_lagrangian(const gkd::JointDistribution& j, double lambda) {
  double best = -1e300;
  for_each_labeling(j.nx(), j.ny(), 2, [&](const std::vector<int>& lx,
                                           const std::vector<int>& ly) {
    const LabelingEval e = evaluate(j, lx, ly, 2);
    best = std::max(best, e.h_phi_x - lambda * e.helper);
  });
  return best;
}

// Enumerates all edge subsets and returns the cheapest one whose removal
// disconnects every source from the sink.
inline double brute_force_min_cut(const gkd::CapacitatedNetwork& net,
                                  const std::vector<int>& sources, int sink) {
  const auto& edges = net.edges();
  const int m = static_cast<int>(edges.size());
  double best = 1e300;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double cost = 0.0;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) cost += edges[e].capacity;
    if (cost >= best) continue;
    // Reachability without the removed edges.
    std::vector<bool> seen(net.node_count(), false);
    std::vector<int> stack(sources);
    for (int s : sources) seen[s] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e = 0; e < m; ++e)
        if (!(mask & (1u << e)) && edges[e].from == v && !seen[edges[e].to]) {
          seen[edges[e].to] = true;
          stack.push_back(edges[e].to);
        }
    }
    if (!seen[sink]) best = cost;
  }
  return best;
}

}  // namespace oracle

#endif  // GKD_TESTS_ORACLES_HPP
