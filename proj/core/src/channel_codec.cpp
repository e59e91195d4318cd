#include "grainple/channel_codec.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace grainple {

CodecSpec codec_by_name(const std::string& name) {
  if (name == "repetition3") return {"repetition3", 3, 1, 1};
  if (name == "hamming74") return {"hamming74", 7, 4, 1};
  throw std::invalid_argument("unknown codec \"" + name +
                              "\" (expected repetition3|hamming74)");
}

// Systematic Hamming(7,4) codeword for nibble d1..d4 (bit 3 down to 0 of d).
static uint8_t hamming_codeword(unsigned d) {
  const unsigned d1 = (d >> 3) & 1, d2 = (d >> 2) & 1, d3 = (d >> 1) & 1,
                 d4 = d & 1;
  const unsigned p1 = d1 ^ d2 ^ d4;
  const unsigned p2 = d1 ^ d3 ^ d4;
  const unsigned p3 = d2 ^ d3 ^ d4;
  return static_cast<uint8_t>(d1 << 6 | d2 << 5 | d3 << 4 | d4 << 3 |
                              p1 << 2 | p2 << 1 | p3);
}

BitVec encode(const BitVec& data, const CodecSpec& spec) {
  if (data.empty() || data.size() % spec.k != 0)
    throw std::invalid_argument("data length " + std::to_string(data.size()) +
                                " not a positive multiple of k=" +
                                std::to_string(spec.k));
  BitVec out;
  out.reserve(data.size() / spec.k * spec.n);
  if (spec.name == "repetition3") {
    for (uint8_t bit : data)
      out.insert(out.end(), 3, static_cast<uint8_t>(bit & 1u));
  } else {
    for (std::size_t i = 0; i < data.size(); i += 4) {
      unsigned d = 0;
      for (std::size_t j = 0; j < 4; ++j) d = d << 1 | (data[i + j] & 1u);
      const uint8_t cw = hamming_codeword(d);
      for (int b = 6; b >= 0; --b) out.push_back((cw >> b) & 1u);
    }
  }
  return out;
}

DecodeResult decode(const BitVec& received, const CodecSpec& spec) {
  if (received.empty() || received.size() % spec.n != 0)
    throw std::invalid_argument("received length " +
                                std::to_string(received.size()) +
                                " not a positive multiple of n=" +
                                std::to_string(spec.n));
  DecodeResult res;
  res.data.reserve(received.size() / spec.n * spec.k);
  if (spec.name == "repetition3") {
    for (std::size_t i = 0; i < received.size(); i += 3) {
      const unsigned ones = (received[i] & 1u) + (received[i + 1] & 1u) +
                            (received[i + 2] & 1u);
      const uint8_t vote = ones >= 2 ? 1 : 0;
      res.data.push_back(vote);
      const unsigned dist = vote ? 3 - ones : ones;
      if (dist == 1) ++res.corrected;
      // dist can never exceed 1: repetition-3 is perfect under majority vote.
    }
  } else {
    for (std::size_t i = 0; i < received.size(); i += 7) {
      unsigned word = 0;
      for (std::size_t j = 0; j < 7; ++j) word = word << 1 | (received[i + j] & 1u);
      unsigned best_d = 0, best_dist = 8;
      for (unsigned d = 0; d < 16; ++d) {
        const unsigned dist =
            std::popcount(word ^ static_cast<unsigned>(hamming_codeword(d)));
        if (dist < best_dist) {
          best_dist = dist;
          best_d = d;
        }
      }
      for (int b = 3; b >= 0; --b) res.data.push_back((best_d >> b) & 1u);
      if (best_dist == 1) ++res.corrected;
      if (best_dist > spec.correctable) ++res.failed_codewords;
    }
  }
  return res;
}

}  // namespace grainple
