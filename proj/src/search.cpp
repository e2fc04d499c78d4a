#include "gkd/search.hpp"

#include "gkd/components.hpp"
#include "gkd/objectives.hpp"
#include "gkd/spectral.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace gkd {

namespace {

constexpr int kBruteLimit = 24;
constexpr double kFeasTol = 1e-12;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_brute_size(const JointDistribution& j) {
  if (j.nx() + j.ny() > kBruteLimit)
    throw std::invalid_argument(
        "size limit exceeded: brute force requires n_X + n_Y <= " +
        std::to_string(kBruteLimit) + ", got " + std::to_string(j.nx() + j.ny()));
}

// Shared exhaustive scan over binary labelings with phi_x(0) = 0. The
// callback sees (phi_x, phi_y, H(phi_X), H(phi_X|phi_Y), P_err) in
// lexicographic order of the concatenated label vectors, so accepting only
// strict improvements yields the lexicographically smallest optimum.
template <typename Fn>
void scan_binary_labelings(const JointDistribution& j, Fn&& visit) {
  const int nx = j.nx(), ny = j.ny();
  const std::uint64_t mx_end = 1ull << (nx - 1);
  const std::uint64_t my_end = 1ull << ny;
  std::vector<int> phi_x(nx, 0), phi_y(ny, 0);
  std::vector<double> r0(ny), r1(ny);

  for (std::uint64_t mx = 0; mx < mx_end; ++mx) {
    phi_x[0] = 0;
    for (int i = 1; i < nx; ++i) phi_x[i] = static_cast<int>((mx >> (nx - 1 - i)) & 1);
    std::fill(r0.begin(), r0.end(), 0.0);
    std::fill(r1.begin(), r1.end(), 0.0);
    for (int i = 0; i < nx; ++i)
      for (int jj = 0; jj < ny; ++jj) (phi_x[i] == 0 ? r0 : r1)[jj] += j.p(i, jj);
    double mass0 = 0.0;
    for (int jj = 0; jj < ny; ++jj) mass0 += r0[jj];
    const double h_phi_x = binary_entropy(std::clamp(mass0, 0.0, 1.0));

    for (std::uint64_t my = 0; my < my_end; ++my) {
      for (int jj = 0; jj < ny; ++jj)
        phi_y[jj] = static_cast<int>((my >> (ny - 1 - jj)) & 1);
      double q[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
      for (int jj = 0; jj < ny; ++jj) {
        q[0][phi_y[jj]] += r0[jj];
        q[1][phi_y[jj]] += r1[jj];
      }
      double helper = 0.0;
      for (int b = 0; b < 2; ++b) {
        const double col = q[0][b] + q[1][b];
        if (col <= 0.0) continue;
        for (int a = 0; a < 2; ++a)
          if (q[a][b] > 0.0) helper += q[a][b] * std::log2(col / q[a][b]);
      }
      visit(phi_x, phi_y, h_phi_x, helper, q[0][1] + q[1][0]);
    }
  }
}

}  // namespace

SearchResult brute_force_lagrangian(const JointDistribution& j, double lambda) {
  check_brute_size(j);
  if (lambda < 0.0) throw std::invalid_argument("brute_force_lagrangian: lambda < 0");
  const auto t0 = Clock::now();

  SearchResult best;
  best.objective_kind = ObjectiveKind::Lagrangian;
  best.param = lambda;
  best.method = SearchMethod::BruteForce;
  best.objective_value = -std::numeric_limits<double>::infinity();
  scan_binary_labelings(j, [&](const std::vector<int>& px, const std::vector<int>& py,
                               double h, double helper, double) {
    const double value = h - lambda * helper;
    if (value > best.objective_value) {
      best.objective_value = value;
      best.labeling = LabelingPair{px, py, 2};
    }
  });
  best.runtime_ms = elapsed_ms(t0);
  return best;
}

SearchResult brute_force_constrained(const JointDistribution& j, double epsilon) {
  check_brute_size(j);
  if (epsilon < 0.0) throw std::invalid_argument("brute_force_constrained: epsilon < 0");
  const auto t0 = Clock::now();

  SearchResult best;
  best.objective_kind = ObjectiveKind::Constrained;
  best.param = epsilon;
  best.method = SearchMethod::BruteForce;
  best.objective_value = -std::numeric_limits<double>::infinity();
  // Among equal-entropy optima, prefer the cheaper helper: the frontier
  // should report the least helper rate that attains each entropy level.
  double best_helper = std::numeric_limits<double>::infinity();
  scan_binary_labelings(j, [&](const std::vector<int>& px, const std::vector<int>& py,
                               double h, double helper, double) {
    if (helper > epsilon + kFeasTol) return;
    if (h > best.objective_value ||
        (h == best.objective_value && helper < best_helper)) {
      best.objective_value = h;
      best_helper = helper;
      best.labeling = LabelingPair{px, py, 2};
    }
  });
  best.runtime_ms = elapsed_ms(t0);
  return best;
}

std::vector<int> best_response_phi_y(const JointDistribution& j,
                                     const std::vector<int>& phi_x, int range_size) {
  if (static_cast<int>(phi_x.size()) != j.nx())
    throw std::invalid_argument("best_response_phi_y: phi_x size mismatch");
  std::vector<int> phi_y(j.ny(), 0);
  std::vector<double> mass(range_size);
  for (int jj = 0; jj < j.ny(); ++jj) {
    std::fill(mass.begin(), mass.end(), 0.0);
    for (int i = 0; i < j.nx(); ++i) mass[phi_x[i]] += j.p(i, jj);
    int arg = 0;
    for (int c = 1; c < range_size; ++c)
      if (mass[c] > mass[arg]) arg = c;  // ties stay at the smaller label
    phi_y[jj] = arg;
  }
  return phi_y;
}

namespace {

// Label vectors produced by sweeping all midpoint thresholds of `values`
// (entry above the threshold -> label 0, i.e. sign +1).
void append_threshold_labelings(const std::vector<double>& values,
                                std::vector<std::vector<int>>& out) {
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
    const double t = 0.5 * (sorted[k] + sorted[k + 1]);
    std::vector<int> labels(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) labels[i] = values[i] > t ? 0 : 1;
    out.push_back(std::move(labels));
  }
}

std::vector<std::vector<int>> candidate_labelings(const Eigen::VectorXd& vec,
                                                  const ProbVector& marginal) {
  std::vector<std::vector<int>> out;
  out.push_back(std::vector<int>(vec.size(), 0));  // constant comes first
  std::vector<double> raw(vec.data(), vec.data() + vec.size());
  append_threshold_labelings(raw, out);
  // Thresholds of the marginal-normalized vector: piecewise constant on
  // exact components, so disjoint blocks are recovered even when the top
  // singular space is degenerate and the raw entries interleave.
  std::vector<double> scaled(raw);
  for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] /= std::sqrt(marginal[i]);
  append_threshold_labelings(scaled, out);
  // Dedupe, preserving first occurrence.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> unique;
  for (auto& v : out)
    if (seen.insert(v).second) unique.push_back(std::move(v));
  return unique;
}

void swap_binary_labels(std::vector<int>& labels) {
  for (int& v : labels) v = 1 - v;
}

}  // namespace

SearchResult spectral_threshold_search(const JointDistribution& j,
                                       const SpectralSearchParams& params) {
  const auto t0 = Clock::now();
  SearchResult best;
  best.objective_kind = params.kind;
  best.param = params.kind == ObjectiveKind::Constrained ? params.epsilon : params.lambda;
  best.method = SearchMethod::Spectral;
  best.objective_value = -std::numeric_limits<double>::infinity();

  const int nx = j.nx(), ny = j.ny();

  std::vector<std::vector<int>> cands_x, cands_y;
  if (std::min(nx, ny) < 2) {
    cands_x.push_back(std::vector<int>(nx, 0));
    cands_y.push_back(std::vector<int>(ny, 0));
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(build_q_matrix(j),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
      throw std::runtime_error("spectral_threshold_search: SVD did not converge");
    const auto& sv = svd.singularValues();
    if (sv.size() >= 3 && sv(1) - sv(2) <= 1e-12)
      best.warnings.push_back(
          "sigma_2 is degenerate with sigma_3; the threshold vectors are not unique");
    cands_x = candidate_labelings(svd.matrixU().col(1), j.px());
    cands_y = candidate_labelings(svd.matrixV().col(1), j.py());
  }

  double best_constrained_helper = std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<int> phi_x, std::vector<int> phi_y) {
    // Flip normalization: make P(phi_X = +1) <= 1/2 (label 0 is +1). A
    // global swap changes no entropy and no disagreement.
    double mass0 = 0.0;
    for (int i = 0; i < nx; ++i)
      if (phi_x[i] == 0) mass0 += j.px()[i];
    if (mass0 > 0.5) {
      swap_binary_labels(phi_x);
      swap_binary_labels(phi_y);
    }
    LabelingPair cand{std::move(phi_x), std::move(phi_y), 2};
    double value = 0.0;
    switch (params.kind) {
      case ObjectiveKind::Lagrangian:
        value = lagrangian_objective(j, cand, params.lambda);
        break;
      case ObjectiveKind::Constrained: {
        const double helper = helper_rate_general(j, cand);
        if (helper > params.epsilon + kFeasTol) return;
        value = label_entropy_x(j, cand);
        if (value == best.objective_value && helper < best_constrained_helper) {
          best_constrained_helper = helper;
          best.labeling = std::move(cand);
          return;
        }
        if (value > best.objective_value) best_constrained_helper = helper;
        break;
      }
      case ObjectiveKind::Conductance: {
        const Conductance c = conductance_ratio(j, cand);
        if (c.kind == ConductanceKind::Undefined) return;
        value = c.value;
        break;
      }
    }
    if (value > best.objective_value) {
      best.objective_value = value;
      best.labeling = std::move(cand);
    }
  };

  for (const auto& cx : cands_x) {
    for (const auto& cy : cands_y) consider(cx, cy);
    consider(cx, best_response_phi_y(j, cx, 2));
  }
  best.runtime_ms = elapsed_ms(t0);
  return best;
}

LabelingPair recursive_spectral(const JointDistribution& j, int k, double lambda) {
  if (k < 2) throw std::invalid_argument("recursive_spectral: k must be >= 2");
  const int nx = j.nx(), ny = j.ny();
  std::vector<int> labels_x(nx, 0), labels_y(ny, 0);
  int levels = 1;
  double current = 0.0;  // Lagrangian of the constant pair

  while (levels < k) {
    double best_value = current + 1e-12;
    std::vector<int> best_x, best_y;
    for (int c = 0; c < levels; ++c) {
      std::vector<int> xs, ys;
      for (int i = 0; i < nx; ++i)
        if (labels_x[i] == c) xs.push_back(i);
      for (int jj = 0; jj < ny; ++jj)
        if (labels_y[jj] == c) ys.push_back(jj);
      if (xs.size() < 2 || ys.size() < 2) continue;

      // Restrict to the class and renormalize; drop symbols with no mass
      // inside the class so the sub-distribution is valid.
      Eigen::MatrixXd sub(xs.size(), ys.size());
      double total = 0.0;
      for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = 0; b < ys.size(); ++b) {
          sub(a, b) = j.p(xs[a], ys[b]);
          total += sub(a, b);
        }
      if (total <= 0.0) continue;
      std::vector<int> map_x, map_y;
      for (std::size_t a = 0; a < xs.size(); ++a)
        if (sub.row(a).sum() > 0.0) map_x.push_back(xs[a]);
      for (std::size_t b = 0; b < ys.size(); ++b)
        if (sub.col(b).sum() > 0.0) map_y.push_back(ys[b]);
      if (map_x.size() < 2 || map_y.size() < 2) continue;
      Eigen::MatrixXd kept(map_x.size(), map_y.size());
      for (std::size_t a = 0; a < map_x.size(); ++a)
        for (std::size_t b = 0; b < map_y.size(); ++b)
          kept(a, b) = j.p(map_x[a], map_y[b]) / total;
      JointDistribution sub_dist(std::move(kept));

      SearchResult r = spectral_threshold_search(
          sub_dist, {ObjectiveKind::Lagrangian, lambda, 0.0});
      const bool constant_x =
          std::all_of(r.labeling.phi_x.begin(), r.labeling.phi_x.end(),
                      [&](int v) { return v == r.labeling.phi_x[0]; });
      if (constant_x) continue;

      std::vector<int> trial_x(labels_x), trial_y(labels_y);
      for (std::size_t a = 0; a < map_x.size(); ++a)
        if (r.labeling.phi_x[a] == 1) trial_x[map_x[a]] = levels;
      for (std::size_t b = 0; b < map_y.size(); ++b)
        if (r.labeling.phi_y[b] == 1) trial_y[map_y[b]] = levels;
      const double value =
          lagrangian_objective(j, LabelingPair{trial_x, trial_y, levels + 1}, lambda);
      if (value > best_value) {
        best_value = value;
        best_x = std::move(trial_x);
        best_y = std::move(trial_y);
      }
    }
    if (best_x.empty()) break;
    labels_x = std::move(best_x);
    labels_y = std::move(best_y);
    current = best_value;
    ++levels;
  }
  return LabelingPair{std::move(labels_x), std::move(labels_y), levels};
}

std::vector<double> default_lambda_grid() {
  std::vector<double> g;
  for (int e = -4; e <= 10; ++e) g.push_back(std::ldexp(1.0, e));
  return g;
}

double lambda_max_estimate(const JointDistribution& j, const std::vector<double>& grid) {
  const double h_k = gk_common_information(j).entropy;
  for (double lambda : grid) {
    SearchResult r = brute_force_lagrangian(j, lambda);
    if (disagreement_probability(j, r.labeling) == 0.0 &&
        std::abs(label_entropy_x(j, r.labeling) - h_k) <= 1e-9)
      return lambda;
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<TradeoffPoint> tradeoff_sweep(const JointDistribution& j, SweepKind kind,
                                          const std::vector<double>& grid,
                                          SearchMethod method) {
  std::vector<TradeoffPoint> out;
  for (double param : grid) {
    SearchResult r;
    if (method == SearchMethod::BruteForce)
      r = kind == SweepKind::Epsilon ? brute_force_constrained(j, param)
                                     : brute_force_lagrangian(j, param);
    else
      r = spectral_threshold_search(
          j, kind == SweepKind::Epsilon
                 ? SpectralSearchParams{ObjectiveKind::Constrained, 0.0, param}
                 : SpectralSearchParams{ObjectiveKind::Lagrangian, param, 0.0});
    TradeoffPoint p;
    p.param = param;
    p.h_phi_x = label_entropy_x(j, r.labeling);
    p.helper_rate = helper_rate_general(j, r.labeling);
    p.p_err = disagreement_probability(j, r.labeling);
    p.method = method;
    out.push_back(p);
  }
  if (method == SearchMethod::BruteForce && kind == SweepKind::Epsilon) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
      if (out[i + 1].param >= out[i].param && out[i + 1].h_phi_x < out[i].h_phi_x - 1e-12)
        throw std::logic_error("tradeoff_sweep: brute-force frontier is not monotone");
  }
  return out;
}

}  // namespace gkd
