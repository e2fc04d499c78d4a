#include "gkd/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gkd {

namespace {

void check(const JointDistribution& j, const LabelingPair& l) {
  l.validate(j.nx(), j.ny());
}

std::vector<double> label_masses(const ProbVector& marginal, const std::vector<int>& phi,
                                 int range_size) {
  std::vector<double> mass(range_size, 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i) mass[phi[i]] += marginal[i];
  return mass;
}

}  // namespace

double disagreement_probability(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  double p = 0.0;
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj)
      if (l.phi_x[i] != l.phi_y[jj]) p += j.p(i, jj);
  return p;
}

Eigen::MatrixXd induced_label_joint(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(l.range_size, l.range_size);
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj) q(l.phi_x[i], l.phi_y[jj]) += j.p(i, jj);
  return q;
}

double label_entropy_x(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  return entropy_bits(label_masses(j.px(), l.phi_x, l.range_size));
}

double label_entropy_y(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  return entropy_bits(label_masses(j.py(), l.phi_y, l.range_size));
}

namespace {

double residual_entropy(const ProbVector& marginal, const std::vector<int>& phi,
                        int range_size) {
  // H(X | phi_X(X)) = sum_i p(i) log2(mass(phi(i)) / p(i)).
  std::vector<double> mass(range_size, 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i) mass[phi[i]] += marginal[i];
  double h = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double p = marginal[i];
    if (p > 0.0) h += p * std::log2(mass[phi[i]] / p);
  }
  return h;
}

}  // namespace

double residual_entropy_x(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  return residual_entropy(j.px(), l.phi_x, l.range_size);
}

double residual_entropy_y(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  return residual_entropy(j.py(), l.phi_y, l.range_size);
}

double helper_rate_general(const JointDistribution& j, const LabelingPair& l) {
  const Eigen::MatrixXd q = induced_label_joint(j, l);
  double h = 0.0;
  for (int b = 0; b < l.range_size; ++b) {
    const double col = q.col(b).sum();
    if (col <= 0.0) continue;
    for (int a = 0; a < l.range_size; ++a) {
      const double v = q(a, b);
      if (v > 0.0) h += v * std::log2(col / v);
    }
  }
  return h;
}

double lagrangian_objective(const JointDistribution& j, const LabelingPair& l,
                            double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lagrangian_objective: lambda < 0");
  return label_entropy_x(j, l) - lambda * helper_rate_general(j, l);
}

double matrix_objective_binary(const JointDistribution& j, const std::vector<int>& sx,
                               const std::vector<int>& sy, double lambda) {
  if (static_cast<int>(sx.size()) != j.nx() || static_cast<int>(sy.size()) != j.ny())
    throw std::invalid_argument("matrix_objective_binary: size mismatch");
  for (int v : sx)
    if (v != 1 && v != -1)
      throw std::invalid_argument("matrix_objective_binary: signs must be +-1");
  for (int v : sy)
    if (v != 1 && v != -1)
      throw std::invalid_argument("matrix_objective_binary: signs must be +-1");

  double bilinear = 0.0, row_sum = 0.0;
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj) {
      bilinear += sx[i] * sy[jj] * j.p(i, jj);
      row_sum += sx[i] * j.p(i, jj);
    }
  const double p_one = std::clamp(0.5 * (1.0 + row_sum), 0.0, 1.0);
  const double p_err = std::clamp(0.5 * (1.0 - bilinear), 0.0, 1.0);
  return binary_entropy(p_one) - lambda * binary_entropy(p_err);
}

Conductance conductance_ratio(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  if (!l.is_binary())
    throw std::invalid_argument("conductance_ratio: binary labelings only");
  const double p_one = label_masses(j.px(), l.phi_x, 2)[0];  // label 0 <-> sign +1
  if (p_one > 0.5 + 1e-12) return {ConductanceKind::Undefined, 0.0};
  const double p_err = disagreement_probability(j, l);
  if (p_err > 0.0) return {ConductanceKind::Finite, p_one / p_err};
  if (p_one > 0.0)
    return {ConductanceKind::Infinite, std::numeric_limits<double>::infinity()};
  return {ConductanceKind::Finite, 0.0};
}

CutSets cut_sets(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  CutSets out;
  std::vector<bool> in_x(j.nx(), false), in_y(j.ny(), false);
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj)
      if (j.p(i, jj) > 0.0 && l.phi_x[i] != l.phi_y[jj]) {
        in_x[i] = true;
        in_y[jj] = true;
      }
  auto collapse_entropy = [](const ProbVector& marginal, const std::vector<bool>& in) {
    std::vector<double> atoms;
    double rest = 0.0;
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (in[i])
        atoms.push_back(marginal[i]);
      else
        rest += marginal[i];
    }
    atoms.push_back(rest);
    return entropy_bits(atoms);
  };
  for (int i = 0; i < j.nx(); ++i)
    if (in_x[i]) out.s_x.push_back(i);
  for (int jj = 0; jj < j.ny(); ++jj)
    if (in_y[jj]) out.s_y.push_back(jj);
  out.h_x_cut = collapse_entropy(j.px(), in_x);
  out.h_y_cut = collapse_entropy(j.py(), in_y);
  return out;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> g(101);
  for (int i = 0; i <= 100; ++i) g[i] = i / 100.0;
  return g;
}

RateRegion rate_region_binary(const JointDistribution& j, const LabelingPair& l,
                              const std::vector<double>& alpha_grid) {
  check(j, l);
  if (!l.is_binary())
    throw std::invalid_argument("rate_region_binary: binary labelings only");
  const double hx_res = residual_entropy_x(j, l);
  const double hy_res = residual_entropy_y(j, l);
  const double hx_lab = label_entropy_x(j, l);
  const double hy_lab = label_entropy_y(j, l);
  const double r_h = binary_entropy(disagreement_probability(j, l));

  RateRegion out;
  out.alpha_grid = alpha_grid;
  for (double a : alpha_grid) {
    if (a < 0.0 || a > 1.0)
      throw std::invalid_argument("rate_region_binary: alpha outside [0, 1]");
    out.dominant_face.push_back(
        {a, hx_res + a * hx_lab, hy_res + (1.0 - a) * hy_lab, r_h});
  }
  out.corner_points.push_back({hx_res, hy_res + hy_lab, r_h});  // alpha = 0
  out.corner_points.push_back({hx_res + hx_lab, hy_res, r_h});  // alpha = 1
  return out;
}

RateRegion rate_region_general(const JointDistribution& j, const LabelingPair& l) {
  check(j, l);
  RateRegion out;
  const double hy = entropy_bits(j.py());
  const double hx = entropy_bits(j.px());
  out.corner_points.push_back({residual_entropy_x(j, l), hy, helper_rate_general(j, l)});
  // Mirror corner: roles of X and Y swapped.
  double mirror_helper = 0.0;
  {
    const Eigen::MatrixXd q = induced_label_joint(j, l);
    for (int a = 0; a < l.range_size; ++a) {
      const double row = q.row(a).sum();
      if (row <= 0.0) continue;
      for (int b = 0; b < l.range_size; ++b) {
        const double v = q(a, b);
        if (v > 0.0) mirror_helper += v * std::log2(row / v);
      }
    }
  }
  out.corner_points.push_back({hx, residual_entropy_y(j, l), mirror_helper});
  return out;
}

DecompositionReport evaluate_labeling(const JointDistribution& j, const LabelingPair& l,
                                      const std::vector<double>& lambdas) {
  check(j, l);
  DecompositionReport r;
  r.h_phi_x = label_entropy_x(j, l);
  r.h_phi_y = label_entropy_y(j, l);
  r.h_x_given_phi_x = residual_entropy_x(j, l);
  r.h_y_given_phi_y = residual_entropy_y(j, l);
  r.p_err = disagreement_probability(j, l);
  r.helper_rate_binary = binary_entropy(r.p_err);
  r.helper_rate_general = helper_rate_general(j, l);
  for (double lam : lambdas) r.lagrangian_at[lam] = lagrangian_objective(j, l, lam);
  if (l.is_binary()) r.conductance = conductance_ratio(j, l);
  r.cuts = cut_sets(j, l);
  return r;
}

}  // namespace gkd
