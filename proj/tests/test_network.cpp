#include "gkd/network.hpp"

#include "gkd/components.hpp"
#include "gkd/objectives.hpp"
#include "golden.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace gkd;

namespace {

// s_X, s_Y, s_H, t star: both sources feed the helper and the terminal,
// the helper feeds the terminal.
CapacitatedNetwork star(double cap, double helper_to_t) {
  std::vector<NetworkNode> nodes = {
      {"sx", "s_X"}, {"sy", "s_Y"}, {"sh", "s_H"}, {"t", "t"}};
  std::vector<NetworkEdge> edges = {{0, 2, cap}, {1, 2, cap}, {0, 3, cap},
                                    {1, 3, cap}, {2, 3, helper_to_t}};
  return CapacitatedNetwork(std::move(nodes), std::move(edges));
}

CapacitatedNetwork random_dag(std::mt19937_64& rng, int n, int max_edges) {
  std::vector<NetworkNode> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(i), ""});
  std::vector<NetworkEdge> edges;
  const int m = 1 + static_cast<int>(rng() % max_edges);
  for (int e = 0; e < m; ++e) {
    int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
    if (a == b) continue;
    if (a > b) std::swap(a, b);  // forward edges only keep it acyclic
    edges.push_back({a, b, static_cast<double>(rng() % 8)});
  }
  if (edges.empty()) edges.push_back({0, n - 1, 1.0});
  return CapacitatedNetwork(std::move(nodes), std::move(edges));
}

}  // namespace

TEST_CASE("min cut basics") {
  {
    CapacitatedNetwork net({{"s", ""}, {"t", ""}}, {{0, 1, 3.0}});
    CHECK(min_cut(net, {0}, 1) == 3.0);
  }
  {
    // Diamond with unit capacities.
    CapacitatedNetwork net({{"s", ""}, {"a", ""}, {"b", ""}, {"t", ""}},
                           {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
    CHECK(min_cut(net, {0}, 3) == 2.0);
  }
  {
    // Two sources share one unit bottleneck.
    CapacitatedNetwork net({{"s1", ""}, {"s2", ""}, {"m", ""}, {"t", ""}},
                           {{0, 2, 1}, {1, 2, 1}, {2, 3, 1}});
    CHECK(min_cut(net, {0, 1}, 3) == 1.0);
  }
  {
    // No path at all.
    CapacitatedNetwork net({{"s", ""}, {"x", ""}, {"t", ""}}, {{0, 1, 5}});
    CHECK(min_cut(net, {0}, 2) == 0.0);
  }
  {
    // Fractional capacities, 1e-9 slack.
    CapacitatedNetwork net({{"s", ""}, {"a", ""}, {"b", ""}, {"t", ""}},
                           {{0, 1, 0.5}, {0, 2, 0.25}, {1, 3, 1}, {2, 3, 1}});
    CHECK(min_cut(net, {0}, 3) == doctest::Approx(0.75).epsilon(1e-12));
  }
  CapacitatedNetwork net({{"s", ""}, {"t", ""}}, {{0, 1, 3.0}});
  CHECK_THROWS_AS(min_cut(net, {0}, 0), std::invalid_argument);
}

TEST_CASE("network validation") {
  CHECK_THROWS_WITH_AS(
      CapacitatedNetwork({{"a", ""}, {"b", ""}}, {{0, 1, 1}, {1, 0, 1}}),
      doctest::Contains("cycle"), std::invalid_argument);
  CHECK_THROWS_AS(CapacitatedNetwork({{"a", ""}, {"a", ""}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(CapacitatedNetwork({{"a", "s_X"}, {"b", "s_X"}}, {{0, 1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CapacitatedNetwork({{"a", ""}, {"b", ""}}, {{0, 1, -1}}),
                  std::invalid_argument);
}

TEST_CASE("min cut agrees with exhaustive edge-cut enumeration") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 60; ++t) {
    CapacitatedNetwork net = random_dag(rng, 4 + static_cast<int>(rng() % 3), 10);
    const int n = net.node_count();
    const int sink = n - 1;
    std::vector<int> sources = {0};
    if (t % 3 == 0 && n > 2) sources.push_back(1);
    if (std::find(sources.begin(), sources.end(), sink) != sources.end()) continue;
    const double mc = min_cut(net, sources, sink);
    const double brute = oracle::brute_force_min_cut(net, sources, sink);
    CHECK(mc == doctest::Approx(brute).epsilon(1e-9));
  }
}

TEST_CASE("max-flow equals the value of the reported cut") {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 40; ++t) {
    CapacitatedNetwork net = random_dag(rng, 5, 12);
    MinCutDetail d = min_cut_detail(net, {0}, net.node_count() - 1);
    double crossing = 0.0;
    for (const auto& e : net.edges())
      if (d.source_side[e.from] && !d.source_side[e.to]) crossing += e.capacity;
    CHECK(d.value == doctest::Approx(crossing).epsilon(1e-9));
  }
}

TEST_CASE("feasibility on the all-10 star") {
  JointDistribution b = golden::block();
  FeasibilityReport r = check_feasibility(star(10, 10), b, gk_labelings(b));
  CHECK(r.overall);
  REQUIRE(r.rows.size() == 7);
  for (const auto& row : r.rows) CHECK(row.pass);
  CHECK(r.rows[0].name == "rho(s_X;s_H)");
  CHECK(r.rows[0].required == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("zeroed helper edge fails exactly the helper condition") {
  JointDistribution d = golden::delta_perturbed(0.1);
  FeasibilityReport r = check_feasibility(star(10, 0), d, golden::block_labeling());
  CHECK_FALSE(r.overall);
  REQUIRE(r.rows.size() == 7);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.rows[i].name == "rho(s_H;t)")
      CHECK_FALSE(r.rows[i].pass);
    else
      CHECK(r.rows[i].pass);
  }
}

TEST_CASE("point mass passes everywhere") {
  JointDistribution pm = golden::point_mass();
  FeasibilityReport r =
      check_feasibility(star(1, 1), pm, LabelingPair::constant(1, 1));
  CHECK(r.overall);
}

TEST_CASE("missing roles are rejected") {
  CapacitatedNetwork net({{"a", "s_X"}, {"b", "s_Y"}, {"t", "t"}},
                         {{0, 2, 1}, {1, 2, 1}});
  JointDistribution b = golden::block();
  CHECK_THROWS_WITH_AS(check_feasibility(net, b, gk_labelings(b)),
                       doctest::Contains("s_H"), std::invalid_argument);
}

TEST_CASE("limited helper feasibility") {
  JointDistribution d = golden::delta_perturbed(0.1);
  LabelingPair l = golden::block_labeling();
  const CutSets cuts = cut_sets(d, l);

  // Tight source-to-helper capacities: enough for H(X_cut), not for H(X).
  const double cap = cuts.h_x_cut + 0.05;
  std::vector<NetworkNode> nodes = {
      {"sx", "s_X"}, {"sy", "s_Y"}, {"sh", "s_H"}, {"t", "t"}};
  std::vector<NetworkEdge> edges = {{0, 2, cap}, {1, 2, cap}, {0, 3, 10},
                                    {1, 3, 10},  {2, 3, 10}};
  CapacitatedNetwork net(std::move(nodes), std::move(edges));
  FeasibilityReport limited = check_feasibility_limited(net, d, l);
  FeasibilityReport full = check_feasibility(net, d, l);
  CHECK(limited.overall);
  CHECK_FALSE(full.overall);

  // Requirements dominate row by row.
  for (std::size_t i = 0; i < limited.rows.size(); ++i)
    CHECK(limited.rows[i].required <= full.rows[i].required + 1e-9);

  // Zero-cut labelings reduce the source-to-helper requirements to zero.
  JointDistribution b = golden::block();
  FeasibilityReport gk = check_feasibility_limited(star(10, 10), b, gk_labelings(b));
  CHECK(gk.rows[0].required == 0.0);
  CHECK(gk.rows[1].required == 0.0);
}

TEST_CASE("capacity increases never break a passing condition") {
  std::mt19937_64 rng(73);
  JointDistribution d = golden::delta_perturbed(0.1);
  LabelingPair l = golden::block_labeling();
  for (int t = 0; t < 20; ++t) {
    const double c1 = 4.0 * golden::uniform01(rng);
    const double c2 = 4.0 * golden::uniform01(rng);
    FeasibilityReport before = check_feasibility(star(c1, c2), d, l);
    FeasibilityReport after =
        check_feasibility(star(c1 + golden::uniform01(rng), c2 + golden::uniform01(rng)), d, l);
    for (std::size_t i = 0; i < before.rows.size(); ++i)
      if (before.rows[i].pass) CHECK(after.rows[i].pass);
  }
}

TEST_CASE("network json parsing") {
  const std::string text = R"({
    "nodes": [{"id": "sx", "role": "s_X"}, {"id": "sy", "role": "s_Y"},
              {"id": "sh", "role": "s_H"}, {"id": "t", "role": "t"}],
    "edges": [{"from": "sx", "to": "sh", "capacity": 10},
              {"from": "sy", "to": "sh", "capacity": 10},
              {"from": "sx", "to": "t", "capacity": 10},
              {"from": "sy", "to": "t", "capacity": 10},
              {"from": "sh", "to": "t", "capacity": 10}]
  })";
  CapacitatedNetwork net = parse_network_json(text);
  CHECK(net.node_count() == 4);
  CHECK(net.role_node("s_H") == 2);
  CHECK_THROWS_AS(parse_network_json("{"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_network_json(R"({"nodes": [{"id":"a"}], "edges":
      [{"from":"a","to":"zzz","capacity":1}]})"),
                       doctest::Contains("unknown node"), std::invalid_argument);
}
