#ifndef GKD_SEARCH_HPP
#define GKD_SEARCH_HPP

#include "gkd/distribution.hpp"
#include "gkd/labeling.hpp"

#include <string>
#include <vector>

namespace gkd {

enum class ObjectiveKind { Lagrangian, Constrained, Conductance };
enum class SearchMethod { BruteForce, Spectral };

struct SearchResult {
  LabelingPair labeling;
  double objective_value = 0.0;
  ObjectiveKind objective_kind = ObjectiveKind::Lagrangian;
  double param = 0.0;  // lambda or epsilon, depending on the kind
  SearchMethod method = SearchMethod::BruteForce;
  double runtime_ms = 0.0;
  std::vector<std::string> warnings;
};

// Exhaustive binary searches. phi_x(0) is fixed to label 0 (the objectives
// are invariant under a global label swap) and ties are broken toward the
// lexicographically smallest (phi_x, phi_y). Throws when n_X + n_Y > 24.
SearchResult brute_force_lagrangian(const JointDistribution& j, double lambda);
SearchResult brute_force_constrained(const JointDistribution& j, double epsilon);

// phi_y(j) = argmax_c sum_{i : phi_x(i)=c} P(i,j), ties toward the smaller
// label; minimizes the disagreement probability for fixed phi_x.
std::vector<int> best_response_phi_y(const JointDistribution& j,
                                     const std::vector<int>& phi_x, int range_size);

struct SpectralSearchParams {
  ObjectiveKind kind = ObjectiveKind::Lagrangian;
  double lambda = 1.0;   // Lagrangian
  double epsilon = 0.0;  // Constrained
};

// Threshold search on the second singular vectors (u, v) of Q. Candidate
// thresholds are all midpoints between consecutive sorted entries of u and
// of the marginal-normalized u_i / sqrt(p_X(i)) (likewise for v); each
// candidate phi_x is paired with every v-threshold phi_y and with the best
// response. The returned pair is label-swapped so that P(phi_X = +1) <= 1/2.
SearchResult spectral_threshold_search(const JointDistribution& j,
                                       const SpectralSearchParams& params);

// Greedy recursion: repeatedly split the label class whose binary spectral
// split most improves the global Lagrangian objective, evaluating each
// split on the renormalized sub-distribution of that class. Stops early
// when no split improves, so the result has at most k labels.
LabelingPair recursive_spectral(const JointDistribution& j, int k, double lambda = 1.0);

std::vector<double> default_lambda_grid();  // 2^-4 ... 2^10

// Smallest grid lambda whose brute-force optimum has zero disagreement and
// H(phi_X) = H(K); +infinity when no grid point qualifies.
double lambda_max_estimate(const JointDistribution& j,
                           const std::vector<double>& grid = default_lambda_grid());

struct TradeoffPoint {
  double param = 0.0;
  double h_phi_x = 0.0;
  double helper_rate = 0.0;  // H(phi_X | phi_Y)
  double p_err = 0.0;
  SearchMethod method = SearchMethod::BruteForce;
};

enum class SweepKind { Epsilon, Lambda };

std::vector<TradeoffPoint> tradeoff_sweep(const JointDistribution& j, SweepKind kind,
                                          const std::vector<double>& grid,
                                          SearchMethod method);

}  // namespace gkd

#endif  // GKD_SEARCH_HPP
