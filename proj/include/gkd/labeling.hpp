#ifndef GKD_LABELING_HPP
#define GKD_LABELING_HPP

#include <string>
#include <vector>

namespace gkd {

// A pair of labeling functions phi_X : [n_X] -> [L], phi_Y : [n_Y] -> [L]
// sharing one label range. Binary pairs (L == 2) map label 0 to sign +1 and
// label 1 to sign -1 wherever a sign convention is needed.
struct LabelingPair {
  std::vector<int> phi_x;
  std::vector<int> phi_y;
  int range_size = 1;

  static LabelingPair constant(int nx, int ny) {
    return LabelingPair{std::vector<int>(nx, 0), std::vector<int>(ny, 0), 1};
  }

  bool is_binary() const { return range_size == 2; }

  // Throws std::invalid_argument unless labels lie in [0, range_size) and
  // the sizes match the given alphabets.
  void validate(int nx, int ny) const;
};

std::vector<int> signs_from_labels(const std::vector<int>& labels);  // 0 -> +1, 1 -> -1

LabelingPair parse_labeling_json(const std::string& text);
LabelingPair load_labeling_file(const std::string& path);
std::string to_labeling_json(const LabelingPair& l, const std::string& config_json = "");

}  // namespace gkd

#endif  // GKD_LABELING_HPP
