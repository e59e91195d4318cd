#include "grainple/bits.hpp"

#include <stdexcept>

namespace grainple {

BitVec bits_from_bytes(const uint8_t* bytes, std::size_t nbits) {
  BitVec out(nbits);
  for (std::size_t i = 0; i < nbits; ++i)
    out[i] = (bytes[i >> 3] >> (7 - (i & 7))) & 1u;
  return out;
}

std::vector<uint8_t> bits_to_bytes(const BitVec& bits) {
  std::vector<uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    out[i >> 3] |= static_cast<uint8_t>((bits[i] & 1u) << (7 - (i & 7)));
  return out;
}

static int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::vector<uint8_t> bytes_from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0)
    throw std::invalid_argument("hex string has odd length");
  std::vector<uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
      throw std::invalid_argument("invalid hex character in \"" + hex + "\"");
    out[i] = static_cast<uint8_t>(hi << 4 | lo);
  }
  return out;
}

std::string bytes_to_hex(const uint8_t* bytes, std::size_t len) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(digits[bytes[i] >> 4]);
    out.push_back(digits[bytes[i] & 0xf]);
  }
  return out;
}

BitVec bits_from_hex(const std::string& hex) {
  auto bytes = bytes_from_hex(hex);
  return bits_from_bytes(bytes.data(), bytes.size() * 8);
}

std::string bits_to_hex(const BitVec& bits) {
  if (bits.size() % 8 != 0)
    throw std::invalid_argument("bit count not a multiple of 8");
  auto bytes = bits_to_bytes(bits);
  return bytes_to_hex(bytes.data(), bytes.size());
}

BitVec xor_bits(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("xor_bits: length mismatch");
  BitVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

std::size_t count_ones(const BitVec& bits) {
  std::size_t n = 0;
  for (uint8_t b : bits) n += b & 1u;
  return n;
}

std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] ^ b[i]) & 1u;
  return n;
}

}  // namespace grainple
