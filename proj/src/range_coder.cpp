#include "gkd/range_coder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gkd {

namespace {
constexpr std::uint32_t kTopValue = 1u << 24;
}

void RangeEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    std::uint8_t carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t byte = cache_;
    do {
      out_.push_back(static_cast<std::uint8_t>(byte + carry));
      byte = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ << 8) & 0xFFFFFFFFull;
}

void RangeEncoder::encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
  if (finished_) throw std::logic_error("RangeEncoder: encode after finish");
  if (freq == 0 || cum + freq > total)
    throw std::invalid_argument("RangeEncoder: bad interval");
  if (freq == total) return;  // certain symbol carries no information
  started_ = true;
  const std::uint32_t r = range_ / total;
  low_ += static_cast<std::uint64_t>(r) * cum;
  range_ = r * freq;
  while (range_ < kTopValue) {
    range_ <<= 8;
    shift_low();
  }
}

std::vector<std::uint8_t> RangeEncoder::finish() {
  if (finished_) throw std::logic_error("RangeEncoder: finish twice");
  finished_ = true;
  if (!started_) return {};
  for (int i = 0; i < 5; ++i) shift_low();
  return std::move(out_);
}

std::uint8_t RangeDecoder::next_byte() {
  if (pos_ < bytes_->size()) return (*bytes_)[pos_++];
  ++pos_;
  return 0;  // reads past the end decode as zeros
}

void RangeDecoder::init() {
  next_byte();  // leading zero byte from the encoder cache
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
  initialized_ = true;
}

std::uint32_t RangeDecoder::decode_freq(std::uint32_t total) {
  if (!initialized_) init();
  last_r_ = range_ / total;
  const std::uint32_t v = code_ / last_r_;
  return std::min(v, total - 1);
}

void RangeDecoder::advance(std::uint32_t cum, std::uint32_t freq) {
  code_ -= cum * last_r_;
  range_ = last_r_ * freq;
  while (range_ < kTopValue) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
  }
}

CodingTable make_coding_table(const std::vector<double>& pmf, std::uint32_t total) {
  if (pmf.empty()) throw std::invalid_argument("make_coding_table: empty pmf");
  const int m = static_cast<int>(pmf.size());
  std::vector<std::uint32_t> freq(m, 0);
  std::uint64_t sum = 0;
  int largest = -1;
  for (int s = 0; s < m; ++s) {
    if (pmf[s] < 0.0) throw std::invalid_argument("make_coding_table: negative mass");
    if (pmf[s] > 0.0) {
      freq[s] = std::max<std::uint32_t>(
          1, static_cast<std::uint32_t>(std::llround(pmf[s] * total)));
      if (largest < 0 || freq[s] > freq[largest]) largest = s;
    }
    sum += freq[s];
  }
  if (largest < 0) throw std::invalid_argument("make_coding_table: all-zero pmf");
  // Absorb the rounding drift into the heaviest symbol.
  const std::int64_t drift = static_cast<std::int64_t>(total) - static_cast<std::int64_t>(sum);
  if (drift < 0 && freq[largest] <= static_cast<std::uint64_t>(-drift))
    throw std::invalid_argument("make_coding_table: alphabet too large for total");
  freq[largest] = static_cast<std::uint32_t>(freq[largest] + drift);

  CodingTable t;
  t.total = total;
  t.cum.resize(m + 1, 0);
  for (int s = 0; s < m; ++s) t.cum[s + 1] = t.cum[s] + freq[s];
  for (int s = 0; s < m; ++s)
    if (freq[s] == total) t.certain_symbol = s;
  return t;
}

void encode_symbol(RangeEncoder& enc, const CodingTable& table, int symbol) {
  if (symbol < 0 || symbol >= table.alphabet())
    throw std::invalid_argument("encode_symbol: symbol out of range");
  const std::uint32_t f = table.freq(symbol);
  if (f == 0)
    throw std::invalid_argument("encode_symbol: symbol outside model support");
  enc.encode(table.cum[symbol], f, table.total);
}

int decode_symbol(RangeDecoder& dec, const CodingTable& table) {
  if (table.certain_symbol >= 0) return table.certain_symbol;
  const std::uint32_t v = dec.decode_freq(table.total);
  // cum is nondecreasing; find the symbol whose interval contains v.
  const auto it = std::upper_bound(table.cum.begin() + 1, table.cum.end(), v);
  const int symbol = static_cast<int>(it - table.cum.begin()) - 1;
  dec.advance(table.cum[symbol], table.freq(symbol));
  return symbol;
}

}  // namespace gkd
