#include "gkd/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gkd {

namespace {

constexpr double kMultiplicityTol = 1e-8;

// Symmetric dilation [[0, Q], [Q^T, 0]], which equals D^{-1/2} A D^{-1/2}
// for the bipartite adjacency A = [[0, P], [P^T, 0]] because the node
// degrees are exactly the marginals.
Eigen::MatrixXd normalized_adjacency(const Eigen::MatrixXd& q) {
  const int nx = static_cast<int>(q.rows()), ny = static_cast<int>(q.cols());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nx + ny, nx + ny);
  m.topRightCorner(nx, ny) = q;
  m.bottomLeftCorner(ny, nx) = q.transpose();
  return m;
}

}  // namespace

Eigen::MatrixXd build_q_matrix(const JointDistribution& j) {
  Eigen::MatrixXd q(j.nx(), j.ny());
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj)
      q(i, jj) = j.p(i, jj) / std::sqrt(j.px()[i] * j.py()[jj]);
  return q;
}

SpectralSummary spectral_summary(const JointDistribution& j) {
  SpectralSummary out;
  const Eigen::MatrixXd q = build_q_matrix(j);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("spectral_summary: SVD did not converge");

  const auto& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  out.left_vectors = svd.matrixU();
  out.right_vectors = svd.matrixV();
  out.maximal_correlation = sv.size() >= 2 ? sv(1) : 0.0;
  for (double s : out.singular_values)
    if (std::abs(s - 1.0) <= kMultiplicityTol) ++out.multiplicity_of_one;

  const Eigen::MatrixXd n =
      Eigen::MatrixXd::Identity(j.nx() + j.ny(), j.nx() + j.ny()) - normalized_adjacency(q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(n);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_summary: Laplacian eigensolve did not converge");
  const auto& ev = es.eigenvalues();
  out.laplacian_eigenvalues.assign(ev.data(), ev.data() + ev.size());
  return out;
}

LaplacianIdentityReport verify_laplacian_identity(const JointDistribution& j, double tol) {
  SpectralSummary s = spectral_summary(j);
  LaplacianIdentityReport r;
  r.nu = s.laplacian_eigenvalues.size() >= 2 ? s.laplacian_eigenvalues[1] : 0.0;
  r.sigma2 = s.maximal_correlation;
  r.residual = std::abs(r.nu - (1.0 - r.sigma2));
  r.residual_squared_convention = std::abs(r.nu - (1.0 - r.sigma2 * r.sigma2));
  r.pass = r.residual <= tol;
  return r;
}

bool proof_identity_check(const JointDistribution& j, double tol) {
  const Eigen::MatrixXd q = build_q_matrix(j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(q);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("proof_identity_check: SVD did not converge");

  std::vector<double> expected;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    expected.push_back(svd.singularValues()(i));
    expected.push_back(-svd.singularValues()(i));
  }
  expected.resize(j.nx() + j.ny(), 0.0);  // |nx - ny| zero padding
  std::sort(expected.begin(), expected.end());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_adjacency(q));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("proof_identity_check: eigensolve did not converge");

  for (std::size_t i = 0; i < expected.size(); ++i)
    if (std::abs(expected[i] - es.eigenvalues()(static_cast<int>(i))) > tol) return false;
  return true;
}

}  // namespace gkd
