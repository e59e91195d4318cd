#pragma once

#include <cstdint>
#include <string>

#include "grainple/bits.hpp"

namespace grainple {

// A channel-coded message: L codewords of n bits. disclosed_prefix leading
// bits are transmitted in the clear (selective header disclosure).
struct Frame {
  BitVec bits;
  uint32_t codeword_len = 0;    // n
  uint32_t codeword_count = 0;  // L
  uint32_t disclosed_prefix = 0;
};

struct EncryptedFrame {
  BitVec bits;
  uint32_t codeword_len = 0;
  uint32_t disclosed_prefix = 0;
};

// bits.size() must be a positive multiple of codeword_len.
Frame segment(BitVec bits, uint32_t codeword_len, uint32_t disclosed_prefix = 0);

// XOR of the suffix past disclosed_prefix with the keystream; disclosed bits
// pass through verbatim and consume no keystream. Keystream must cover the
// encrypted suffix.
EncryptedFrame encrypt_frame(const Frame& frame, const BitVec& keystream);
Frame decrypt_frame(const EncryptedFrame& received, const BitVec& keystream);

// Frame file format: "PLE1" | n (4-byte BE) | disclosed_prefix (4-byte BE),
// then the frame bits packed MSB-first and zero-padded to a byte boundary.
// The reader recovers L as floor(payload_bits / n); the writer rejects
// frames for which padding would make that reconstruction ambiguous.
std::vector<uint8_t> frame_to_file_bytes(const BitVec& bits, uint32_t codeword_len,
                                         uint32_t disclosed_prefix);
Frame frame_from_file_bytes(const std::vector<uint8_t>& raw);

void write_frame_file(const std::string& path, const BitVec& bits,
                      uint32_t codeword_len, uint32_t disclosed_prefix);
Frame read_frame_file(const std::string& path);

}  // namespace grainple
