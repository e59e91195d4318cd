#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <random>

#include "grainple/ple_frame.hpp"

using namespace grainple;

namespace {

BitVec bits_of(const char* s) {
  BitVec v;
  for (; *s; ++s) v.push_back(*s == '1' ? 1 : 0);
  return v;
}

BitVec random_bits(std::mt19937_64& rng, std::size_t n) {
  BitVec v(n);
  for (auto& b : v) b = static_cast<uint8_t>(rng() & 1u);
  return v;
}

}  // namespace

TEST_CASE("segment: 12 bits with n=4 gives three codewords") {
  auto f = segment(bits_of("101011110000"), 4);
  CHECK(f.codeword_count == 3);
  CHECK(f.codeword_len == 4);
}

TEST_CASE("segment: rejects empty and indivisible input") {
  CHECK_THROWS_AS(segment(bits_of("1010101"), 4), std::invalid_argument);
  CHECK_THROWS_AS(segment(BitVec{}, 4), std::invalid_argument);
  CHECK_THROWS_AS(segment(bits_of("1010"), 0), std::invalid_argument);
}

TEST_CASE("segment: 7000 random bits round-trip through codewords") {
  std::mt19937_64 rng(1);
  auto bits = random_bits(rng, 7000);
  auto f = segment(bits, 7);
  CHECK(f.codeword_count == 1000);
  BitVec reassembled;
  for (uint32_t cw = 0; cw < f.codeword_count; ++cw)
    for (uint32_t j = 0; j < f.codeword_len; ++j)
      reassembled.push_back(f.bits[cw * f.codeword_len + j]);
  CHECK(reassembled == bits);
}

TEST_CASE("encrypt_frame: XOR table") {
  auto f = segment(bits_of("1010"), 4);
  CHECK(encrypt_frame(f, bits_of("0110")).bits == bits_of("1100"));
}

TEST_CASE("encrypt_frame: full disclosure passes through, no keystream used") {
  auto f = segment(bits_of("1010"), 4, 4);
  CHECK(encrypt_frame(f, BitVec{}).bits == bits_of("1010"));
}

TEST_CASE("encrypt_frame: partial disclosure XORs only the suffix") {
  auto f = segment(bits_of("1010"), 4, 2);
  CHECK(encrypt_frame(f, bits_of("11")).bits == bits_of("1001"));
}

TEST_CASE("encrypt_frame: insufficient keystream") {
  auto f = segment(bits_of("1010"), 4);
  CHECK_THROWS_AS(encrypt_frame(f, bits_of("011")), std::invalid_argument);
}

TEST_CASE("decrypt inverts encrypt for random frames and prefixes") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const uint32_t n = 1 + rng() % 16;
    const uint32_t L = 1 + rng() % 20;
    auto bits = random_bits(rng, n * L);
    const uint32_t prefix = rng() % (n * L + 1);
    auto f = segment(bits, n, prefix);
    auto z = random_bits(rng, n * L - prefix);
    auto round_trip = decrypt_frame(encrypt_frame(f, z), z);
    CHECK(round_trip.bits == bits);
    CHECK(round_trip.codeword_count == L);
  }
}

TEST_CASE("error preservation: decrypt(encrypt(F) ^ e) = F ^ e") {
  auto f = segment(bits_of("1010"), 4);
  auto z = bits_of("0110");
  auto e = bits_of("0001");
  auto received = xor_bits(encrypt_frame(f, z).bits, e);
  EncryptedFrame ef{received, 4, 0};
  CHECK(decrypt_frame(ef, z).bits == bits_of("1011"));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const uint32_t n = 1 + rng() % 12;
    const uint32_t L = 1 + rng() % 12;
    const uint32_t prefix = rng() % (n * L + 1);
    auto frame = segment(random_bits(rng, n * L), n, prefix);
    auto ks = random_bits(rng, n * L - prefix);
    auto err = random_bits(rng, n * L);
    EncryptedFrame noisy{xor_bits(encrypt_frame(frame, ks).bits, err), n, prefix};
    CHECK(decrypt_frame(noisy, ks).bits == xor_bits(frame.bits, err));
  }
}

TEST_CASE("disclosure neutrality: suffix alignment is prefix-independent") {
  std::mt19937_64 rng(4);
  auto bits = random_bits(rng, 64);
  auto z = random_bits(rng, 64);
  for (uint32_t prefix : {0u, 8u, 32u, 63u}) {
    auto f = segment(bits, 8, prefix);
    auto enc = encrypt_frame(f, z);
    CHECK(enc.bits.size() == bits.size());
    for (uint32_t i = 0; i < prefix; ++i) CHECK(enc.bits[i] == bits[i]);
    for (std::size_t i = prefix; i < bits.size(); ++i)
      CHECK(enc.bits[i] == (bits[i] ^ z[i - prefix]));
  }
}

TEST_CASE("PLE1 file round trip") {
  std::mt19937_64 rng(5);
  auto bits = random_bits(rng, 56 * 25);  // n=7, L=200, byte-aligned
  const auto path =
      (std::filesystem::temp_directory_path() / "grainple_frame_test.ple").string();
  write_frame_file(path, bits, 7, 21);
  auto f = read_frame_file(path);
  CHECK(f.bits == bits);
  CHECK(f.codeword_len == 7);
  CHECK(f.codeword_count == 200);
  CHECK(f.disclosed_prefix == 21);
  std::filesystem::remove(path);
}

TEST_CASE("PLE1 writer rejects ambiguous padded lengths") {
  // 9 bits with n=3 pads to 16 bits, which would read back as L=5.
  CHECK_THROWS_AS(frame_to_file_bytes(BitVec(9, 0), 3, 0), std::invalid_argument);
}

TEST_CASE("PLE1 reader rejects bad magic and empty payload") {
  CHECK_THROWS_AS(frame_from_file_bytes({'X', 'X', 'X', 'X'}), std::runtime_error);
  std::vector<uint8_t> header_only{'P', 'L', 'E', '1', 0, 0, 0, 7, 0, 0, 0, 0};
  CHECK_THROWS_AS(frame_from_file_bytes(header_only), std::runtime_error);
}
