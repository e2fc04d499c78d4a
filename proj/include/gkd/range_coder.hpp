#ifndef GKD_RANGE_CODER_HPP
#define GKD_RANGE_CODER_HPP

#include <cstdint>
#include <vector>

namespace gkd {

// Byte-oriented carryless range coder (64-bit low, 32-bit range, cache +
// pending-0xFF carry handling). The first emitted byte is always zero and
// is skipped by the decoder. Frequencies are integers with totals up to
// 2^16, so the per-symbol redundancy stays below ~0.01 bits at these sizes.
//
// Streams that encode nothing produce zero bytes: certain symbols (freq ==
// total) are skipped on both sides, which keeps deterministic streams at
// exactly zero rate. A decoder reading past the end of its buffer sees
// zero bytes; corruption therefore surfaces as a wrong decode, never as
// out-of-bounds access.

class RangeEncoder {
 public:
  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total);
  std::vector<std::uint8_t> finish();
  bool wrote_anything() const { return started_; }

 private:
  void shift_low();

  std::vector<std::uint8_t> out_;
  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  bool started_ = false;
  bool finished_ = false;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(const std::vector<std::uint8_t>& bytes) : bytes_(&bytes) {}

  // Returns a value in [0, total); the caller locates the symbol whose
  // cumulative interval contains it, then calls advance with that interval.
  std::uint32_t decode_freq(std::uint32_t total);
  void advance(std::uint32_t cum, std::uint32_t freq);

 private:
  std::uint8_t next_byte();
  void init();

  const std::vector<std::uint8_t>* bytes_;
  std::size_t pos_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
  std::uint32_t last_r_ = 1;
  bool initialized_ = false;
};

// Quantized static model for one context: cumulative frequencies over an
// alphabet, total 2^16. Symbols with zero probability get zero frequency
// and cannot be coded.
struct CodingTable {
  std::vector<std::uint32_t> cum;  // size = alphabet + 1, cum.front() == 0
  std::uint32_t total = 0;
  int certain_symbol = -1;  // symbol with freq == total, or -1

  int alphabet() const { return static_cast<int>(cum.size()) - 1; }
  std::uint32_t freq(int s) const { return cum[s + 1] - cum[s]; }
};

CodingTable make_coding_table(const std::vector<double>& pmf,
                              std::uint32_t total = 1u << 16);

void encode_symbol(RangeEncoder& enc, const CodingTable& table, int symbol);
int decode_symbol(RangeDecoder& dec, const CodingTable& table);

}  // namespace gkd

#endif  // GKD_RANGE_CODER_HPP
