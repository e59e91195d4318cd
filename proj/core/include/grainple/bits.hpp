#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace grainple {

// One bit per element, values 0 or 1. Packing into bytes is MSB-first:
// bit i lives in bit 7-(i%8) of byte i/8. All hex I/O in the project uses
// this convention.
using BitVec = std::vector<uint8_t>;

BitVec bits_from_bytes(const uint8_t* bytes, std::size_t nbits);
std::vector<uint8_t> bits_to_bytes(const BitVec& bits);  // zero-padded to a byte boundary

std::vector<uint8_t> bytes_from_hex(const std::string& hex);
std::string bytes_to_hex(const uint8_t* bytes, std::size_t len);

BitVec bits_from_hex(const std::string& hex);
std::string bits_to_hex(const BitVec& bits);  // requires bits.size() % 8 == 0

BitVec xor_bits(const BitVec& a, const BitVec& b);
std::size_t count_ones(const BitVec& bits);
std::size_t hamming_distance(const BitVec& a, const BitVec& b);

}  // namespace grainple
