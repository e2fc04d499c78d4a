// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include "gkd/codec.hpp"
#include "gkd/components.hpp"
#include "gkd/distribution.hpp"
#include "gkd/network.hpp"
#include "gkd/objectives.hpp"
#include "gkd/search.hpp"
#include "gkd/spectral.hpp"

#include "golden.hpp"
#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace gkd;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << title;
  if (!pass && !detail.empty()) std::cout << " -- " << detail;
  std::cout << "\n";
  if (!pass) ++g_failures;
}

bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool rate_close(double rate, double target, std::string& detail, const std::string& name) {
  // 3% relative plus 0.05 bits/symbol absolute.
  if (std::abs(rate - target) <= 0.03 * target + 0.05) return true;
  std::ostringstream os;
  os << name << " rate " << rate << " vs target " << target;
  detail = os.str();
  return false;
}

struct GoldenInstance {
  std::string name;
  JointDistribution dist;
};

std::vector<GoldenInstance> small_golden_set() {
  std::vector<GoldenInstance> out;
  out.push_back({"block", golden::block()});
  out.push_back({"delta-perturbed", golden::delta_perturbed(0.1)});
  out.push_back({"eps-example", golden::eps_example(0.2)});
  out.push_back({"point-mass", golden::point_mass()});
  out.push_back({"independent-uniform", golden::independent_uniform_2x2()});
  out.push_back({"identity-coupling", golden::identity_coupling_2x2()});
  return out;
}

}  // namespace

int main() {
  criterion(1, "block example: H(K), components, zero-error labelings", [](std::string& d) {
    JointDistribution b = golden::block();
    const GkCommonInformation gk = gk_common_information(b);
    if (!approx(gk.entropy, 1.0, 1e-9)) return d = "H(K) != 1", false;
    if (gk.decomposition.count != 2) return d = "component count != 2", false;
    const LabelingPair l = gk_labelings(b);
    if (disagreement_probability(b, l) != 0.0) return d = "P_err != 0", false;
    if (!approx(label_entropy_x(b, l), 1.0, 1e-9)) return d = "H(phi_X) != 1", false;
    return true;
  });

  criterion(2, "block example: singular values, sigma_2, multiplicity, H(K) <= log m",
            [](std::string& d) {
    const SpectralSummary s = spectral_summary(golden::block());
    const std::vector<double> expect = {1.0, 1.0, 0.0, 0.0};
    if (s.singular_values.size() != 4) return d = "wrong spectrum size", false;
    for (int i = 0; i < 4; ++i)
      if (!approx(s.singular_values[i], expect[i], 1e-8))
        return d = "singular value " + std::to_string(i), false;
    if (!approx(s.maximal_correlation, 1.0, 1e-8)) return d = "sigma_2 != 1", false;
    if (s.multiplicity_of_one != 2) return d = "multiplicity != 2", false;
    const double h_k = gk_common_information(golden::block()).entropy;
    if (h_k > std::log2(2.0) + 1e-9) return d = "H(K) > log2(m)", false;
    if (!approx(h_k, std::log2(2.0), 1e-9)) return d = "H(K) < log2(m): not tight", false;
    return true;
  });

  criterion(3, "nu = 1 - sigma_2 on the worked examples and 100 random instances",
            [](std::string& d) {
    for (const auto& g : {golden::block(), golden::delta_perturbed(0.1),
                          golden::eps_example(0.2)}) {
      if (verify_laplacian_identity(g, 1e-8).residual > 1e-8)
        return d = "worked example residual > 1e-8", false;
    }
    std::mt19937_64 rng(1003);
    for (int t = 0; t < 100; ++t) {
      const int nx = 2 + static_cast<int>(rng() % 7);  // up to 8x8
      const int ny = 2 + static_cast<int>(rng() % 7);
      JointDistribution j = golden::random_distribution(rng, nx, ny, 0.25);
      if (verify_laplacian_identity(j, 1e-8).residual > 1e-8)
        return d = "random instance " + std::to_string(t), false;
    }
    return true;
  });

  criterion(4, "delta-perturbed example: H(K)=0, P_err=delta/8, h(0.0125), cut sets",
            [](std::string& d) {
    JointDistribution j = golden::delta_perturbed(0.1);
    if (gk_common_information(j).entropy != 0.0) return d = "H(K) != 0", false;
    const LabelingPair l = golden::block_labeling();
    const double p_err = disagreement_probability(j, l);
    if (!approx(p_err, 0.0125, 1e-12)) return d = "P_err != 0.0125", false;
    if (!approx(binary_entropy(p_err), 0.096946, 1e-5))
      return d = "h(0.0125) != 0.096946 +- 1e-5", false;
    const CutSets cuts = cut_sets(j, l);
    if (cuts.s_x != std::vector<int>{1} || cuts.s_y != std::vector<int>{2})
      return d = "cut sets differ from {x_2}, {y_3}", false;
    return true;
  });

  criterion(5, "3x2 example: helper rate h(0.1), dominant face slope != -1",
            [](std::string& d) {
    JointDistribution j = golden::eps_example(0.2);
    const LabelingPair l = golden::eps_labeling();
    const double p_err = disagreement_probability(j, l);
    if (!approx(binary_entropy(p_err), 0.468996, 1e-5))
      return d = "h(eps/2) != 0.468996 +- 1e-5", false;
    const RateRegion r = rate_region_binary(j, l);
    const auto& f = r.dominant_face;
    const double slope = (f.back().r_y - f.front().r_y) / (f.back().r_x - f.front().r_x);
    if (std::abs(slope + 1.0) <= 1e-6) return d = "slope is -1", false;
    return true;
  });

  criterion(6, "oracle consistency: constrained(0) = H(K); spectral <= brute, equality on components",
            [](std::string& d) {
    std::vector<GoldenInstance> instances = small_golden_set();
    std::mt19937_64 rng(1006);
    for (int t = 0; t < 50; ++t)
      instances.push_back(
          {"random-4x4-" + std::to_string(t), golden::random_distribution(rng, 4, 4, 0.2)});

    for (const auto& inst : instances) {
      if (inst.dist.nx() + inst.dist.ny() > 10) continue;
      const double h_k = gk_common_information(inst.dist).entropy;
      const SearchResult constrained = brute_force_constrained(inst.dist, 0.0);
      if (!approx(constrained.objective_value, h_k, 1e-9))
        return d = inst.name + ": constrained(0) != H(K)", false;

      const int k = connected_components(inst.dist).count;
      for (double lambda : {0.5, 2.0}) {
        const SearchResult spectral = spectral_threshold_search(
            inst.dist, {ObjectiveKind::Lagrangian, lambda, 0.0});
        const SearchResult brute = brute_force_lagrangian(inst.dist, lambda);
        if (spectral.objective_value > brute.objective_value + 1e-9)
          return d = inst.name + ": spectral beats brute", false;
        if (k >= 2 && !approx(spectral.objective_value, brute.objective_value, 1e-9))
          return d = inst.name + ": no equality despite exact components", false;
      }
    }
    return true;
  });

  criterion(7, "lambda sweep: finite crossover to a zero-disagreement optimum with H = H(K)",
            [](std::string& d) {
    for (const auto& [name, j] : {std::pair<std::string, JointDistribution>{
                                      "delta-perturbed", golden::delta_perturbed(0.1)},
                                  {"independent-uniform", golden::independent_uniform_2x2()}}) {
      const double h_k = gk_common_information(j).entropy;
      const std::vector<double> grid = default_lambda_grid();
      double crossover = -1.0;
      for (double lambda : grid) {
        const SearchResult r = brute_force_lagrangian(j, lambda);
        const bool zero_err = disagreement_probability(j, r.labeling) == 0.0;
        if (crossover < 0.0 && zero_err) crossover = lambda;
        if (crossover >= 0.0) {
          if (!zero_err) return d = name + ": optimum regressed above crossover", false;
          if (!approx(label_entropy_x(j, r.labeling), h_k, 1e-9))
            return d = name + ": H(phi_X) != H(K) above crossover", false;
        }
      }
      if (crossover < 0.0) return d = name + ": no crossover on the grid", false;
      if (crossover <= grid.front())
        return d = name + ": crossover not strictly above the grid minimum", false;
    }
    return true;
  });

  criterion(8, "codec: all four schemes decode exactly at n=1e5 with rates near targets",
            [](std::string& d) {
    struct Case {
      std::string name;
      JointDistribution dist;
      LabelingPair labeling;
      std::uint64_t seed;
    };
    const std::vector<Case> cases = {
        {"block", golden::block(), golden::block_labeling(), 801},
        {"delta-perturbed", golden::delta_perturbed(0.1), golden::block_labeling(), 802},
    };
    const std::uint64_t n = 100000;
    for (const auto& c : cases) {
      const SampleBlock block = sample(c.dist, n, c.seed);
      const std::vector<SchemeResult> results = {
          run_gk_scheme(c.dist, block),
          run_binary_helper_scheme(c.dist, c.labeling, block),
          run_general_helper_scheme(c.dist, c.labeling, block),
          run_limited_helper_scheme(c.dist, c.labeling, block),
      };
      for (const auto& r : results) {
        if (!r.report.decoded_ok)
          return d = c.name + "/" + r.bundle.scheme + ": decode mismatch", false;
        for (const auto& s : r.report.streams)
          if (!rate_close(s.bits_per_symbol, s.target, d,
                          c.name + "/" + r.bundle.scheme + "/" + s.name))
            return false;
      }
    }
    return true;
  });

  criterion(9, "limited helper reproduces the omniscient error sequence on 100 triples",
            [](std::string& d) {
    std::mt19937_64 rng(1009);
    for (int t = 0; t < 100; ++t) {
      JointDistribution j =
          golden::random_distribution(rng, 3 + t % 3, 3 + (t / 2) % 3, 0.3);
      LabelingPair l = golden::random_binary_labeling(rng, j.nx(), j.ny());
      SampleBlock block = sample(j, 1000, 5000 + t);
      if (error_sequence_limited(j, l, block) != error_sequence(l, block))
        return d = "triple " + std::to_string(t), false;
    }
    return true;
  });

  criterion(10, "min-cut checker: star passes, zeroed helper edge fails only rho(s_H;t)",
            [](std::string& d) {
    auto star = [](double helper_cap) {
      std::vector<NetworkNode> nodes = {
          {"sx", "s_X"}, {"sy", "s_Y"}, {"sh", "s_H"}, {"t", "t"}};
      std::vector<NetworkEdge> edges = {{0, 2, 10}, {1, 2, 10}, {0, 3, 10},
                                        {1, 3, 10}, {2, 3, helper_cap}};
      return CapacitatedNetwork(std::move(nodes), std::move(edges));
    };
    JointDistribution b = golden::block();
    if (!check_feasibility(star(10), b, gk_labelings(b)).overall)
      return d = "star should pass for the block example", false;

    JointDistribution dp = golden::delta_perturbed(0.1);
    const FeasibilityReport r = check_feasibility(star(0), dp, golden::block_labeling());
    if (r.overall) return d = "zeroed helper edge should fail", false;
    for (const auto& row : r.rows) {
      const bool should_fail = row.name == "rho(s_H;t)";
      if (row.pass == should_fail) return d = "wrong row outcome: " + row.name, false;
    }

    std::mt19937_64 rng(1010);
    for (int t = 0; t < 50; ++t) {
      const int n = 4 + static_cast<int>(rng() % 3);
      std::vector<NetworkNode> nodes;
      for (int i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(i), ""});
      std::vector<NetworkEdge> edges;
      const int m = 1 + static_cast<int>(rng() % 10);
      for (int e = 0; e < m; ++e) {
        int a = static_cast<int>(rng() % n), bb = static_cast<int>(rng() % n);
        if (a == bb) continue;
        if (a > bb) std::swap(a, bb);
        edges.push_back({a, bb, static_cast<double>(rng() % 7)});
      }
      if (edges.empty()) edges.push_back({0, n - 1, 1.0});
      CapacitatedNetwork net(std::move(nodes), std::move(edges));
      const double mc = min_cut(net, {0}, n - 1);
      const double brute = oracle::brute_force_min_cut(net, {0}, n - 1);
      if (!approx(mc, brute, 1e-9))
        return d = "network " + std::to_string(t) + ": min-cut mismatch", false;
    }
    return true;
  });

  criterion(11, "algebraic properties over 1000 randomized trials", [](std::string& d) {
    std::mt19937_64 rng(1011);
    for (int t = 0; t < 1000; ++t) {
      JointDistribution j =
          golden::random_distribution(rng, 2 + t % 5, 2 + (t / 3) % 5, 0.2);
      LabelingPair l = golden::random_binary_labeling(rng, j.nx(), j.ny());

      const double p_err = disagreement_probability(j, l);
      double bilinear = 0.0;
      const std::vector<int> sx = signs_from_labels(l.phi_x);
      const std::vector<int> sy = signs_from_labels(l.phi_y);
      for (int i = 0; i < j.nx(); ++i)
        for (int jj = 0; jj < j.ny(); ++jj) bilinear += sx[i] * sy[jj] * j.p(i, jj);
      if (!approx(p_err, 0.5 * (1.0 - bilinear), 1e-12))
        return d = "bilinear identity, trial " + std::to_string(t), false;

      const double chain =
          label_entropy_x(j, l) + residual_entropy_x(j, l) - entropy_bits(j.px());
      if (std::abs(chain) > 1e-9) return d = "chain rule, trial " + std::to_string(t), false;

      LabelingPair neg = l;
      for (int& v : neg.phi_y) v = 1 - v;
      if (!approx(disagreement_probability(j, neg), 1.0 - p_err, 1e-12))
        return d = "sign flip, trial " + std::to_string(t), false;
    }
    return true;
  });

  if (g_failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " criteria failed\n";
  return 1;
}
