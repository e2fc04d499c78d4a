#ifndef GKD_OBJECTIVES_HPP
#define GKD_OBJECTIVES_HPP

#include "gkd/distribution.hpp"
#include "gkd/labeling.hpp"

#include <array>
#include <map>

namespace gkd {

// P(phi_X(X) != phi_Y(Y)).
double disagreement_probability(const JointDistribution& j, const LabelingPair& l);

// Joint distribution of (phi_X(X), phi_Y(Y)) as an L x L matrix.
Eigen::MatrixXd induced_label_joint(const JointDistribution& j, const LabelingPair& l);

// Entropy of phi_X(X) under the push-forward of p_X.
double label_entropy_x(const JointDistribution& j, const LabelingPair& l);
double label_entropy_y(const JointDistribution& j, const LabelingPair& l);

// H(X | phi_X(X)), the residual rate after revealing the label.
double residual_entropy_x(const JointDistribution& j, const LabelingPair& l);
double residual_entropy_y(const JointDistribution& j, const LabelingPair& l);

// H(phi_X(X) | phi_Y(Y)): the helper rate of the general coding scheme.
double helper_rate_general(const JointDistribution& j, const LabelingPair& l);

// H(phi_X(X)) - lambda * H(phi_X(X) | phi_Y(Y)).
double lagrangian_objective(const JointDistribution& j, const LabelingPair& l,
                            double lambda);

// h(1/2 (1 + sx^T P 1)) - lambda h(1/2 (1 - sx^T P sy)) for sign vectors in
// {-1,+1}; the binary matrix form of the relaxation, which penalizes the
// error probability rather than the conditional label entropy.
double matrix_objective_binary(const JointDistribution& j, const std::vector<int>& sx,
                               const std::vector<int>& sy, double lambda);

enum class ConductanceKind { Finite, Infinite, Undefined };

// P(phi_X = +1) / P(phi_X != phi_Y), subject to P(phi_X = +1) <= 1/2.
// Binary labelings only. Undefined when the constraint is violated;
// Infinite when the cut is zero but the +1 side is nonempty.
struct Conductance {
  ConductanceKind kind = ConductanceKind::Undefined;
  double value = 0.0;
};

Conductance conductance_ratio(const JointDistribution& j, const LabelingPair& l);

// S_X: x-symbols that can participate in a disagreement, and the entropy of
// X_cut, the variable that collapses everything outside S_X to one symbol.
struct CutSets {
  std::vector<int> s_x, s_y;  // ascending symbol indices
  double h_x_cut = 0.0, h_y_cut = 0.0;
};

CutSets cut_sets(const JointDistribution& j, const LabelingPair& l);

struct RatePoint {
  double alpha, r_x, r_y, r_h;
};

struct RateRegion {
  std::vector<std::array<double, 3>> corner_points;  // (R_X, R_Y, R_H)
  std::vector<RatePoint> dominant_face;
  std::vector<double> alpha_grid;
};

std::vector<double> default_alpha_grid();  // 101 evenly spaced points

// Time-shared region for binary labelings with helper rate h(P_err):
// the alpha corner is (H(X|phi_X) + a H(phi_X), H(Y|phi_Y) + (1-a) H(phi_Y)).
RateRegion rate_region_binary(const JointDistribution& j, const LabelingPair& l,
                              const std::vector<double>& alpha_grid = default_alpha_grid());

// The corner (H(X|phi_X), H(Y), H(phi_X|phi_Y)) and its mirror; no interior
// points, since the helper rate along the face is not pinned down.
RateRegion rate_region_general(const JointDistribution& j, const LabelingPair& l);

// Everything one labeling pair implies, bundled for reporting.
struct DecompositionReport {
  double h_phi_x = 0.0, h_phi_y = 0.0;
  double h_x_given_phi_x = 0.0, h_y_given_phi_y = 0.0;
  double p_err = 0.0;
  double helper_rate_binary = 0.0;  // h(P_err); meaningful for L == 2
  double helper_rate_general = 0.0;
  std::map<double, double> lagrangian_at;
  Conductance conductance;  // Undefined unless L == 2
  CutSets cuts;
};

DecompositionReport evaluate_labeling(const JointDistribution& j, const LabelingPair& l,
                                      const std::vector<double>& lambdas = {0.0, 0.5, 1.0,
                                                                            2.0, 4.0});

}  // namespace gkd

#endif  // GKD_OBJECTIVES_HPP
