#include "gkd/components.hpp"

#include <numeric>

namespace gkd {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

ComponentDecomposition connected_components(const JointDistribution& j) {
  const int nx = j.nx(), ny = j.ny();
  UnionFind uf(nx + ny);  // y-node j lives at index nx + j
  for (int i = 0; i < nx; ++i)
    for (int jj = 0; jj < ny; ++jj)
      if (j.p(i, jj) > 0.0) uf.unite(i, nx + jj);

  ComponentDecomposition out{std::vector<int>(nx, -1), std::vector<int>(ny, -1),
                             ProbVector(), 0};
  std::vector<int> id_of_root(nx + ny, -1);
  for (int i = 0; i < nx; ++i) {
    int r = uf.find(i);
    if (id_of_root[r] < 0) id_of_root[r] = out.count++;
    out.component_of_x[i] = id_of_root[r];
  }
  for (int jj = 0; jj < ny; ++jj) {
    int r = uf.find(nx + jj);
    // Every y-symbol has positive marginal, so it shares an edge with some
    // x-symbol and its root was already numbered.
    out.component_of_y[jj] = id_of_root[r];
  }

  std::vector<double> w(out.count, 0.0);
  for (int i = 0; i < nx; ++i)
    for (int jj = 0; jj < ny; ++jj) w[out.component_of_x[i]] += j.p(i, jj);
  out.weights = ProbVector(std::move(w));
  return out;
}

GkCommonInformation gk_common_information(const JointDistribution& j) {
  GkCommonInformation out;
  out.decomposition = connected_components(j);
  out.entropy = entropy_bits(out.decomposition.weights);
  return out;
}

LabelingPair gk_labelings(const JointDistribution& j) {
  ComponentDecomposition d = connected_components(j);
  return LabelingPair{d.component_of_x, d.component_of_y, d.count};
}

}  // namespace gkd
