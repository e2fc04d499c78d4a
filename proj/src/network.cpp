#include "gkd/network.hpp"

#include "gkd/objectives.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gkd {

namespace {
constexpr double kResidualEps = 1e-12;
constexpr double kSlack = 1e-9;
}  // namespace

CapacitatedNetwork::CapacitatedNetwork(std::vector<NetworkNode> nodes,
                                       std::vector<NetworkEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  if (nodes_.empty()) throw std::invalid_argument("network: no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t k = i + 1; k < nodes_.size(); ++k)
      if (nodes_[i].id == nodes_[k].id)
        throw std::invalid_argument("network: duplicate node id '" + nodes_[i].id + "'");
    const std::string& r = nodes_[i].role;
    if (!r.empty() && r != "s_X" && r != "s_Y" && r != "s_H" && r != "t")
      throw std::invalid_argument("network: unknown role '" + r + "'");
  }
  for (const char* role : {"s_X", "s_Y", "s_H", "t"}) {
    int seen = 0;
    for (const auto& n : nodes_)
      if (n.role == role) ++seen;
    if (seen > 1)
      throw std::invalid_argument(std::string("network: role ") + role +
                                  " assigned to more than one node");
  }
  for (const auto& e : edges_) {
    if (e.from < 0 || e.from >= node_count() || e.to < 0 || e.to >= node_count())
      throw std::invalid_argument("network: edge endpoint out of range");
    if (e.from == e.to) throw std::invalid_argument("network: self-loop");
    if (e.capacity < 0.0) throw std::invalid_argument("network: negative capacity");
  }

  // Kahn's algorithm; leftovers mean a cycle.
  std::vector<int> indeg(node_count(), 0);
  for (const auto& e : edges_) ++indeg[e.to];
  std::deque<int> q;
  for (int v = 0; v < node_count(); ++v)
    if (indeg[v] == 0) q.push_back(v);
  int seen = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    ++seen;
    for (const auto& e : edges_)
      if (e.from == v && --indeg[e.to] == 0) q.push_back(e.to);
  }
  if (seen != node_count()) throw std::invalid_argument("network: graph has a cycle");
}

int CapacitatedNetwork::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].id == id) return static_cast<int>(i);
  return -1;
}

int CapacitatedNetwork::role_node(const std::string& role) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].role == role) return static_cast<int>(i);
  return -1;
}

namespace {

// Residual-graph Edmonds-Karp (BFS augmenting paths) over paired edges.
struct FlowGraph {
  struct Arc {
    int to;
    double residual;
  };
  std::vector<Arc> arcs;                // forward at 2k, backward at 2k+1
  std::vector<std::vector<int>> adj;    // node -> arc indices

  explicit FlowGraph(int n) : adj(n) {}

  void add_edge(int from, int to, double cap) {
    adj[from].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({to, cap});
    adj[to].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({from, 0.0});
  }

  double max_flow(int s, int t) {
    double flow = 0.0;
    std::vector<int> via(adj.size());
    for (;;) {
      std::fill(via.begin(), via.end(), -1);
      via[s] = -2;
      std::deque<int> q{s};
      while (!q.empty() && via[t] == -1) {
        const int v = q.front();
        q.pop_front();
        for (int a : adj[v])
          if (arcs[a].residual > kResidualEps && via[arcs[a].to] == -1) {
            via[arcs[a].to] = a;
            q.push_back(arcs[a].to);
          }
      }
      if (via[t] == -1) return flow;
      double bottleneck = std::numeric_limits<double>::infinity();
      for (int v = t; v != s; v = arcs[via[v] ^ 1].to)
        bottleneck = std::min(bottleneck, arcs[via[v]].residual);
      for (int v = t; v != s; v = arcs[via[v] ^ 1].to) {
        arcs[via[v]].residual -= bottleneck;
        arcs[via[v] ^ 1].residual += bottleneck;
      }
      flow += bottleneck;
    }
  }

  std::vector<bool> reachable_from(int s) const {
    std::vector<bool> seen(adj.size(), false);
    seen[s] = true;
    std::deque<int> q{s};
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int a : adj[v])
        if (arcs[a].residual > kResidualEps && !seen[arcs[a].to]) {
          seen[arcs[a].to] = true;
          q.push_back(arcs[a].to);
        }
    }
    return seen;
  }
};

FlowGraph build_flow_graph(const CapacitatedNetwork& net, const std::vector<int>& sources,
                           int sink, int* super_source) {
  if (sources.empty()) throw std::invalid_argument("min_cut: empty source set");
  for (int s : sources) {
    if (s < 0 || s >= net.node_count() || sink < 0 || sink >= net.node_count())
      throw std::invalid_argument("min_cut: node index out of range");
    if (s == sink) throw std::invalid_argument("min_cut: sink belongs to the source set");
  }
  double cap_sum = 1.0;
  for (const auto& e : net.edges()) cap_sum += e.capacity;

  const bool need_super = sources.size() > 1;
  FlowGraph g(net.node_count() + (need_super ? 1 : 0));
  for (const auto& e : net.edges()) g.add_edge(e.from, e.to, e.capacity);
  if (need_super) {
    *super_source = net.node_count();
    for (int s : sources) g.add_edge(*super_source, s, cap_sum);
  } else {
    *super_source = sources[0];
  }
  return g;
}

}  // namespace

double min_cut(const CapacitatedNetwork& net, const std::vector<int>& sources, int sink) {
  int s = -1;
  FlowGraph g = build_flow_graph(net, sources, sink, &s);
  return g.max_flow(s, sink);
}

MinCutDetail min_cut_detail(const CapacitatedNetwork& net, const std::vector<int>& sources,
                            int sink) {
  int s = -1;
  FlowGraph g = build_flow_graph(net, sources, sink, &s);
  MinCutDetail d;
  d.value = g.max_flow(s, sink);
  std::vector<bool> seen = g.reachable_from(s);
  seen.resize(net.node_count());
  for (int v : sources) seen[v] = true;  // the super source collapses into them
  d.source_side = std::move(seen);
  return d;
}

namespace {

struct Roles {
  int sx, sy, sh, t;
};

Roles require_roles(const CapacitatedNetwork& net) {
  Roles r{net.role_node("s_X"), net.role_node("s_Y"), net.role_node("s_H"),
          net.role_node("t")};
  if (r.sx < 0 || r.sy < 0 || r.sh < 0 || r.t < 0)
    throw std::invalid_argument("feasibility: network must assign s_X, s_Y, s_H and t");
  if (r.sh == r.sx || r.sh == r.sy)
    throw std::invalid_argument("feasibility: helper node coincides with a source");
  return r;
}

double joint_label_entropy(const JointDistribution& j, const LabelingPair& l) {
  const Eigen::MatrixXd q = induced_label_joint(j, l);
  double h = 0.0;
  for (int a = 0; a < q.rows(); ++a)
    for (int b = 0; b < q.cols(); ++b)
      if (q(a, b) > 0.0) h -= q(a, b) * std::log2(q(a, b));
  return h;
}

FeasibilityReport run_conditions(const CapacitatedNetwork& net, const Roles& r,
                                 double to_helper_x, double to_helper_y,
                                 const JointDistribution& j, const LabelingPair& l) {
  const double hy = entropy_bits(j.py());
  const double hx_res = residual_entropy_x(j, l);
  const double hy_res = residual_entropy_y(j, l);
  const double helper = helper_rate_general(j, l);
  const double joint_labels = joint_label_entropy(j, l);

  struct Cond {
    std::string name;
    std::vector<int> sources;
    int sink;
    double required;
  };
  const std::vector<Cond> conds = {
      {"rho(s_X;s_H)", {r.sx}, r.sh, to_helper_x},
      {"rho(s_Y;s_H)", {r.sy}, r.sh, to_helper_y},
      {"rho(s_X,s_Y;s_H)", {r.sx, r.sy}, r.sh, to_helper_x + to_helper_y},
      {"rho(s_X;t)", {r.sx}, r.t, hx_res},
      {"rho(s_Y;t)", {r.sy}, r.t, hy},
      {"rho(s_H;t)", {r.sh}, r.t, helper},
      {"rho(s_X,s_Y,s_H;t)", {r.sx, r.sy, r.sh}, r.t, hx_res + hy_res + joint_labels},
  };

  FeasibilityReport report;
  report.overall = true;
  for (const auto& c : conds) {
    FeasibilityRow row;
    row.name = c.name;
    row.required = c.required;
    row.achieved = min_cut(net, c.sources, c.sink);
    row.pass = row.achieved >= row.required - kSlack;
    report.overall = report.overall && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace

FeasibilityReport check_feasibility(const CapacitatedNetwork& net,
                                    const JointDistribution& j, const LabelingPair& l) {
  l.validate(j.nx(), j.ny());
  const Roles r = require_roles(net);
  return run_conditions(net, r, entropy_bits(j.px()), entropy_bits(j.py()), j, l);
}

FeasibilityReport check_feasibility_limited(const CapacitatedNetwork& net,
                                            const JointDistribution& j,
                                            const LabelingPair& l) {
  l.validate(j.nx(), j.ny());
  const Roles r = require_roles(net);
  const CutSets cuts = cut_sets(j, l);
  return run_conditions(net, r, cuts.h_x_cut, cuts.h_y_cut, j, l);
}

CapacitatedNetwork parse_network_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("network parse error: ") + e.what());
  }
  if (!doc.contains("nodes") || !doc.contains("edges"))
    throw std::invalid_argument("network: missing nodes/edges");

  std::vector<NetworkNode> nodes;
  for (const auto& n : doc["nodes"]) {
    NetworkNode node;
    node.id = n.at("id").get<std::string>();
    if (n.contains("role")) node.role = n["role"].get<std::string>();
    nodes.push_back(std::move(node));
  }
  auto index_of = [&](const std::string& id) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].id == id) return static_cast<int>(i);
    throw std::invalid_argument("network: edge references unknown node '" + id + "'");
  };
  std::vector<NetworkEdge> edges;
  for (const auto& e : doc["edges"]) {
    NetworkEdge edge;
    edge.from = index_of(e.at("from").get<std::string>());
    edge.to = index_of(e.at("to").get<std::string>());
    edge.capacity = e.at("capacity").get<double>();
    edges.push_back(edge);
  }
  return CapacitatedNetwork(std::move(nodes), std::move(edges));
}

CapacitatedNetwork load_network_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open network file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_network_json(buf.str());
}

}  // namespace gkd
