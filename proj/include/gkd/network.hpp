#ifndef GKD_NETWORK_HPP
#define GKD_NETWORK_HPP

#include "gkd/distribution.hpp"
#include "gkd/labeling.hpp"

#include <string>
#include <vector>

namespace gkd {

struct NetworkNode {
  std::string id;
  std::string role;  // "", "s_X", "s_Y", "s_H", "t"
};

struct NetworkEdge {
  int from = 0, to = 0;
  double capacity = 0.0;  // bits per unit time
};

// Capacitated DAG with role-tagged nodes. Validation rejects cycles,
// negative capacities, duplicate roles, and a helper node that coincides
// with a source.
class CapacitatedNetwork {
 public:
  CapacitatedNetwork(std::vector<NetworkNode> nodes, std::vector<NetworkEdge> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::vector<NetworkNode>& nodes() const { return nodes_; }
  const std::vector<NetworkEdge>& edges() const { return edges_; }

  int index_of(const std::string& id) const;  // -1 when absent
  int role_node(const std::string& role) const;  // -1 when absent

 private:
  std::vector<NetworkNode> nodes_;
  std::vector<NetworkEdge> edges_;
};

// Max-flow value from the source set to the sink (Edmonds-Karp on the
// residual graph; a super-source is attached when |sources| > 1). Exact for
// integer capacities; real capacities tolerate 1e-9 slack downstream.
double min_cut(const CapacitatedNetwork& net, const std::vector<int>& sources, int sink);

// Also reports the source side of a minimum cut, for duality checks.
struct MinCutDetail {
  double value = 0.0;
  std::vector<bool> source_side;
};

MinCutDetail min_cut_detail(const CapacitatedNetwork& net, const std::vector<int>& sources,
                            int sink);

struct FeasibilityRow {
  std::string name;
  double required = 0.0;
  double achieved = 0.0;
  bool pass = false;
};

struct FeasibilityReport {
  std::vector<FeasibilityRow> rows;
  bool overall = false;
};

// The seven sufficient min-cut conditions for communicating (X, Y) through
// the network with a helper, in their stated order.
FeasibilityReport check_feasibility(const CapacitatedNetwork& net,
                                    const JointDistribution& j, const LabelingPair& l);

// Same conditions with the source-to-helper requirements reduced to
// H(X_cut), H(Y_cut) and their sum.
FeasibilityReport check_feasibility_limited(const CapacitatedNetwork& net,
                                            const JointDistribution& j,
                                            const LabelingPair& l);

CapacitatedNetwork parse_network_json(const std::string& text);
CapacitatedNetwork load_network_file(const std::string& path);

}  // namespace gkd

#endif  // GKD_NETWORK_HPP
