#include "gkd/distribution.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gkd {

namespace {

constexpr double kSumTolStrict = 1e-9;
constexpr double kSumTolAccept = 1e-6;

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

ProbVector::ProbVector(std::vector<double> entries) : values_(std::move(entries)) {
  if (values_.empty()) throw std::invalid_argument("ProbVector: empty");
  double sum = 0.0;
  for (double v : values_) {
    if (v < 0.0) throw std::invalid_argument("ProbVector: negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolStrict)
    throw std::invalid_argument("ProbVector: entries sum to " + std::to_string(sum) +
                                ", expected 1 within 1e-9");
  entries_ = values_.size();
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

double entropy_bits(const ProbVector& p) { return entropy_bits(p.values()); }

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binary_entropy: p = " + std::to_string(p) +
                                " outside [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

JointDistribution::JointDistribution(Eigen::MatrixXd p,
                                     std::vector<std::string> x_labels,
                                     std::vector<std::string> y_labels)
    : p_(std::move(p)),
      x_labels_(std::move(x_labels)),
      y_labels_(std::move(y_labels)),
      px_({1.0}),
      py_({1.0}) {
  if (p_.rows() == 0 || p_.cols() == 0)
    throw std::invalid_argument("JointDistribution: empty matrix");
  for (int i = 0; i < p_.rows(); ++i)
    for (int j = 0; j < p_.cols(); ++j)
      if (p_(i, j) < 0.0)
        throw std::invalid_argument("JointDistribution: negative entry at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");

  if (x_labels_.empty()) x_labels_ = default_labels(static_cast<int>(p_.rows()));
  if (y_labels_.empty()) y_labels_ = default_labels(static_cast<int>(p_.cols()));
  if (static_cast<int>(x_labels_.size()) != p_.rows() ||
      static_cast<int>(y_labels_.size()) != p_.cols())
    throw std::invalid_argument("JointDistribution: label count mismatch");

  double sum = 0.0;
  for (int i = 0; i < p_.rows(); ++i)
    for (int j = 0; j < p_.cols(); ++j) sum += p_(i, j);
  if (std::abs(sum - 1.0) > kSumTolAccept)
    throw std::invalid_argument("JointDistribution: total mass " + std::to_string(sum) +
                                " deviates from 1 by more than 1e-6");

  // Strip zero-marginal symbols; D^{-1/2} is undefined on them.
  std::vector<int> keep_x, keep_y;
  for (int i = 0; i < p_.rows(); ++i) {
    if (p_.row(i).sum() > 0.0)
      keep_x.push_back(i);
    else
      stripped_x_.push_back(i);
  }
  for (int j = 0; j < p_.cols(); ++j) {
    if (p_.col(j).sum() > 0.0)
      keep_y.push_back(j);
    else
      stripped_y_.push_back(j);
  }
  if (keep_x.empty() || keep_y.empty())
    throw std::invalid_argument("JointDistribution: all mass is zero");
  if (!stripped_x_.empty() || !stripped_y_.empty()) {
    Eigen::MatrixXd q(keep_x.size(), keep_y.size());
    std::vector<std::string> xl, yl;
    for (std::size_t a = 0; a < keep_x.size(); ++a) {
      xl.push_back(x_labels_[keep_x[a]]);
      for (std::size_t b = 0; b < keep_y.size(); ++b) q(a, b) = p_(keep_x[a], keep_y[b]);
    }
    for (std::size_t b = 0; b < keep_y.size(); ++b) yl.push_back(y_labels_[keep_y[b]]);
    p_ = std::move(q);
    x_labels_ = std::move(xl);
    y_labels_ = std::move(yl);
  }

  // Renormalize only when the deviation is material; leaving sums within
  // 1e-9 untouched keeps save/load round-trips bit-identical.
  if (std::abs(sum - 1.0) > kSumTolStrict) {
    p_ /= sum;
    renormalized_ = true;
  }

  std::vector<double> px(p_.rows()), py(p_.cols(), 0.0);
  for (int i = 0; i < p_.rows(); ++i) {
    double r = 0.0;
    for (int j = 0; j < p_.cols(); ++j) {
      r += p_(i, j);
      py[j] += p_(i, j);
    }
    px[i] = r;
  }
  px_ = ProbVector(std::move(px));
  py_ = ProbVector(std::move(py));
}

double joint_entropy(const JointDistribution& j) {
  double h = 0.0;
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj) {
      double v = j.p(i, jj);
      if (v > 0.0) h -= v * std::log2(v);
    }
  return h;
}

double conditional_entropy(const JointDistribution& j, CondSide side) {
  // Direct evaluation: H(X|Y) = sum_{i,j} P(i,j) log2(p_Y(j) / P(i,j)).
  double h = 0.0;
  for (int i = 0; i < j.nx(); ++i)
    for (int jj = 0; jj < j.ny(); ++jj) {
      double v = j.p(i, jj);
      if (v <= 0.0) continue;
      double m = side == CondSide::XGivenY ? j.py()[jj] : j.px()[i];
      h += v * std::log2(m / v);
    }
  return h;
}

namespace {

JointDistribution parse_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix-json parse error: ") + e.what());
  }
  if (!doc.contains("p") || !doc["p"].is_array())
    throw std::invalid_argument("matrix-json: missing \"p\" array");
  const auto& rows = doc["p"];
  if (rows.empty()) throw std::invalid_argument("matrix-json: empty matrix");
  std::size_t ncols = rows[0].size();
  Eigen::MatrixXd m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != ncols)
      throw std::invalid_argument("matrix-json: ragged matrix at row " + std::to_string(i));
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!rows[i][j].is_number())
        throw std::invalid_argument("matrix-json: non-numeric entry at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      m(i, j) = rows[i][j].get<double>();
    }
  }
  std::vector<std::string> xl, yl;
  if (doc.contains("x_labels")) xl = doc["x_labels"].get<std::vector<std::string>>();
  if (doc.contains("y_labels")) yl = doc["y_labels"].get<std::vector<std::string>>();
  return JointDistribution(std::move(m), std::move(xl), std::move(yl));
}

JointDistribution parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::invalid_argument("csv: bad number '" + cell + "' on line " +
                                    std::to_string(lineno));
      }
    }
    if (!rows.empty() && row.size() != rows[0].size())
      throw std::invalid_argument("csv: ragged row on line " + std::to_string(lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("csv: empty matrix");
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return JointDistribution(std::move(m));
}

}  // namespace

JointDistribution parse_distribution(const std::string& text, DistFormat format) {
  return format == DistFormat::MatrixJson ? parse_matrix_json(text) : parse_csv(text);
}

JointDistribution load_distribution_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open distribution file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  DistFormat fmt = std::filesystem::path(path).extension() == ".json"
                       ? DistFormat::MatrixJson
                       : DistFormat::Csv;
  return parse_distribution(buf.str(), fmt);
}

std::string to_matrix_json(const JointDistribution& j) {
  nlohmann::json doc;
  doc["x_labels"] = j.x_labels();
  doc["y_labels"] = j.y_labels();
  auto rows = nlohmann::json::array();
  for (int i = 0; i < j.nx(); ++i) {
    auto row = nlohmann::json::array();
    for (int jj = 0; jj < j.ny(); ++jj) row.push_back(j.p(i, jj));
    rows.push_back(std::move(row));
  }
  doc["p"] = std::move(rows);
  return doc.dump(2);
}

void save_distribution(const JointDistribution& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write distribution file: " + path);
  out << to_matrix_json(j) << "\n";
}

}  // namespace gkd
