#ifndef GKD_COMPONENTS_HPP
#define GKD_COMPONENTS_HPP

#include "gkd/distribution.hpp"
#include "gkd/labeling.hpp"

namespace gkd {

// Maximal decomposition of the bipartite support graph of P into connected
// components. Component ids are canonical: numbered in order of the smallest
// participating x-index, so repeated runs produce identical output.
struct ComponentDecomposition {
  std::vector<int> component_of_x;
  std::vector<int> component_of_y;
  ProbVector weights;  // p(C_k) = total mass inside component k
  int count = 0;
};

// An edge exists iff P(i,j) > 0 exactly; near-zero entries are kept.
ComponentDecomposition connected_components(const JointDistribution& j);

struct GkCommonInformation {
  double entropy = 0.0;  // H(K) in bits
  ComponentDecomposition decomposition;
};

GkCommonInformation gk_common_information(const JointDistribution& j);

// phi_X(i) = component of x_i, phi_Y(j) = component of y_j. Zero
// disagreement probability and H(phi_X(X)) = H(K) by construction.
LabelingPair gk_labelings(const JointDistribution& j);

}  // namespace gkd

#endif  // GKD_COMPONENTS_HPP
