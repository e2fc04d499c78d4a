#ifndef GKD_CODEC_HPP
#define GKD_CODEC_HPP

#include "gkd/distribution.hpp"
#include "gkd/labeling.hpp"
#include "gkd/range_coder.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gkd {

// Block of iid samples drawn by inverse CDF over the row-major flattened
// joint, using mt19937_64 with 53-bit uniforms; reproducible across
// platforms for a fixed seed.
struct SampleBlock {
  std::uint64_t n = 0;
  std::vector<std::int32_t> x_seq, y_seq;
  std::uint64_t seed = 0;

  bool operator==(const SampleBlock& other) const {
    return x_seq == other.x_seq && y_seq == other.y_seq;
  }
};

SampleBlock sample(const JointDistribution& j, std::uint64_t n, std::uint64_t seed);

// Lossless coding of a symbol sequence under known per-symbol models;
// contexts[i] selects the model for symbol i (empty = all zero). Throws if
// a symbol has zero probability under its model.
std::vector<std::uint8_t> encode_entropy(const std::vector<int>& seq,
                                         const std::vector<int>& contexts,
                                         const std::vector<CodingTable>& models);
std::vector<int> decode_entropy(const std::vector<std::uint8_t>& bytes, std::size_t n,
                                const std::vector<int>& contexts,
                                const std::vector<CodingTable>& models);

struct Stream {
  std::string name;
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_length = 0;  // 8 * bytes, flush included
};

struct EncodedBundle {
  std::string scheme;  // gk | binary-helper | general-helper | limited-helper
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::vector<Stream> streams;

  const Stream* find(const std::string& name) const;
};

struct StreamRate {
  std::string name;
  double bits_per_symbol = 0.0;
  double target = 0.0;  // single-letter entropy this stream should approach
};

struct RateReport {
  std::vector<StreamRate> streams;
  double total_rate = 0.0;
  double total_target = 0.0;
  bool decoded_ok = false;
};

struct SchemeResult {
  EncodedBundle bundle;
  SampleBlock decoded;
  RateReport report;
};

enum class HelperCorner { XSide, YSide };

// Thm-1-style coding: the component index once, then each source relative
// to its component.
SchemeResult run_gk_scheme(const JointDistribution& j, const SampleBlock& block);

// Binary labelings with an omniscient helper that codes the disagreement
// indicator e^n at rate h(P_err). The X-side corner sends Y fully.
SchemeResult run_binary_helper_scheme(const JointDistribution& j, const LabelingPair& l,
                                      const SampleBlock& block,
                                      HelperCorner corner = HelperCorner::XSide);

// Arbitrary label ranges: the helper codes phi_X(x^n) given phi_Y(y^n).
// Y is sent at rate H(Y), split as (phi_Y labels, Y | phi_Y) so that with
// the component labelings the payload matches the gk scheme byte for byte.
SchemeResult run_general_helper_scheme(const JointDistribution& j, const LabelingPair& l,
                                       const SampleBlock& block);

// Binary labelings where the helper sees only X_cut and Y_cut; its error
// sequence provably matches the omniscient one, which run_* verifies.
SchemeResult run_limited_helper_scheme(const JointDistribution& j, const LabelingPair& l,
                                       const SampleBlock& block);

// e_i = 1 iff phi_X(x_i) != phi_Y(y_i), computed from the full samples.
std::vector<std::uint8_t> error_sequence(const LabelingPair& l, const SampleBlock& block);
// Same sequence computed only from the cut-collapsed symbols.
std::vector<std::uint8_t> error_sequence_limited(const JointDistribution& j,
                                                 const LabelingPair& l,
                                                 const SampleBlock& block);

// Rebuilds the static models from (j, l) and inverts a bundle; l may be
// null for the gk scheme only.
SampleBlock decode_bundle(const JointDistribution& j, const LabelingPair* l,
                          const EncodedBundle& bundle);

void write_bundle_file(const EncodedBundle& bundle, const std::string& path);
EncodedBundle read_bundle_file(const std::string& path);

}  // namespace gkd

#endif  // GKD_CODEC_HPP
