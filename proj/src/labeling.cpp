#include "gkd/labeling.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gkd {

void LabelingPair::validate(int nx, int ny) const {
  if (range_size < 1) throw std::invalid_argument("labeling: range_size < 1");
  if (static_cast<int>(phi_x.size()) != nx || static_cast<int>(phi_y.size()) != ny)
    throw std::invalid_argument("labeling: size mismatch with distribution");
  for (int v : phi_x)
    if (v < 0 || v >= range_size)
      throw std::invalid_argument("labeling: phi_x label out of range");
  for (int v : phi_y)
    if (v < 0 || v >= range_size)
      throw std::invalid_argument("labeling: phi_y label out of range");
}

std::vector<int> signs_from_labels(const std::vector<int>& labels) {
  std::vector<int> s(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) s[i] = labels[i] == 0 ? 1 : -1;
  return s;
}

LabelingPair parse_labeling_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("labeling parse error: ") + e.what());
  }
  if (!doc.contains("phi_x") || !doc.contains("phi_y"))
    throw std::invalid_argument("labeling: missing phi_x / phi_y");
  LabelingPair l;
  l.phi_x = doc["phi_x"].get<std::vector<int>>();
  l.phi_y = doc["phi_y"].get<std::vector<int>>();
  if (doc.contains("L")) {
    l.range_size = doc["L"].get<int>();
  } else {
    int m = 0;
    for (int v : l.phi_x) m = std::max(m, v);
    for (int v : l.phi_y) m = std::max(m, v);
    l.range_size = m + 1;
  }
  return l;
}

LabelingPair load_labeling_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open labeling file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_labeling_json(buf.str());
}

std::string to_labeling_json(const LabelingPair& l, const std::string& config_json) {
  nlohmann::json doc;
  doc["phi_x"] = l.phi_x;
  doc["phi_y"] = l.phi_y;
  doc["L"] = l.range_size;
  if (!config_json.empty()) doc["config"] = nlohmann::json::parse(config_json);
  return doc.dump(2);
}

}  // namespace gkd
