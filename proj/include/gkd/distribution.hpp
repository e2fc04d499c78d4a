#ifndef GKD_DISTRIBUTION_HPP
#define GKD_DISTRIBUTION_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace gkd {

// Finite probability vector. Entries are nonnegative and sum to 1 within
// 1e-9; construction throws otherwise. Entries are stored exactly as given
// (no silent renormalization).
class ProbVector {
 public:
  ProbVector() : values_{1.0}, entries_(1) {}  // degenerate point mass
  explicit ProbVector(std::vector<double> entries);

  std::size_t size() const { return entries_; }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
  std::size_t entries_;
};

// Shannon entropy in bits, with the 0 * log(1/0) = 0 convention.
// Summation is left-to-right so results are reproducible.
double entropy_bits(const std::vector<double>& p);
double entropy_bits(const ProbVector& p);

// h(p) = -p log2 p - (1-p) log2(1-p); throws if p is outside [0, 1].
double binary_entropy(double p);

enum class CondSide { XGivenY, YGivenX };

// Validated joint distribution over finite alphabets.
//
// Construction enforces: no negative entries, nonempty matrix, total mass
// within 1e-6 of 1 (renormalized when the deviation exceeds 1e-9, accepted
// as-is below that so that save/load round-trips are bit-identical).
// Symbols with zero marginal probability are stripped; their original
// indices are kept so callers can warn about them.
class JointDistribution {
 public:
  explicit JointDistribution(Eigen::MatrixXd p,
                             std::vector<std::string> x_labels = {},
                             std::vector<std::string> y_labels = {});

  int nx() const { return static_cast<int>(p_.rows()); }
  int ny() const { return static_cast<int>(p_.cols()); }
  const Eigen::MatrixXd& matrix() const { return p_; }
  double p(int i, int j) const { return p_(i, j); }

  const ProbVector& px() const { return px_; }
  const ProbVector& py() const { return py_; }

  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }

  // Original indices removed during load because their marginal was zero.
  const std::vector<int>& stripped_x() const { return stripped_x_; }
  const std::vector<int>& stripped_y() const { return stripped_y_; }
  bool renormalized() const { return renormalized_; }

 private:
  Eigen::MatrixXd p_;
  std::vector<std::string> x_labels_, y_labels_;
  std::vector<int> stripped_x_, stripped_y_;
  bool renormalized_ = false;
  ProbVector px_, py_;
};

double joint_entropy(const JointDistribution& j);
double conditional_entropy(const JointDistribution& j, CondSide side);

enum class DistFormat { MatrixJson, Csv };

JointDistribution parse_distribution(const std::string& text, DistFormat format);
// Format chosen from the file extension: .json -> matrix-json, anything
// else -> csv.
JointDistribution load_distribution_file(const std::string& path);

std::string to_matrix_json(const JointDistribution& j);
void save_distribution(const JointDistribution& j, const std::string& path);

}  // namespace gkd

#endif  // GKD_DISTRIBUTION_HPP
