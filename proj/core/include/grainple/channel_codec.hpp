#pragma once

#include <cstdint>
#include <string>

#include "grainple/bits.hpp"

namespace grainple {

// Desk-scale FEC codecs: repetition-3 and systematic Hamming(7,4) with
// parity bits appended (p1=d1^d2^d4, p2=d1^d3^d4, p3=d2^d3^d4).
struct CodecSpec {
  std::string name;
  uint32_t n = 0;            // codeword bits
  uint32_t k = 0;            // data bits per codeword
  uint32_t correctable = 0;  // max correctable errors per codeword
};

CodecSpec codec_by_name(const std::string& name);  // repetition3 | hamming74

// data.size() must be a multiple of spec.k; systematic layout, data first.
BitVec encode(const BitVec& data, const CodecSpec& spec);

struct DecodeResult {
  BitVec data;
  std::size_t corrected = 0;          // codewords repaired from one flipped bit
  std::size_t failed_codewords = 0;   // distance > correctable from every codeword
};

// Nearest-codeword decoding per codeword (majority vote / minimum distance).
// Both codecs are perfect codes, so every received word is within distance 1
// of some codeword and failed_codewords stays 0; the field exists for codecs
// that can detect failure.
DecodeResult decode(const BitVec& received, const CodecSpec& spec);

}  // namespace grainple
