#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "grainple/bits.hpp"

namespace grainple {

// 128-bit secret key. Bit k_i is bit 7-(i%8) of byte i/8 (MSB-first),
// matching the hex test-vector convention used throughout the project.
struct Key {
  std::array<uint8_t, 16> bytes{};

  static Key from_hex(const std::string& hex);
  uint8_t bit(std::size_t i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1u; }
  std::string to_hex() const { return bytes_to_hex(bytes.data(), bytes.size()); }
  bool operator==(const Key&) const = default;
};

// 96-bit public nonce, same bit convention (IV_0 = MSB of byte 0).
struct Nonce {
  std::array<uint8_t, 12> bytes{};

  static Nonce from_hex(const std::string& hex);
  uint8_t bit(std::size_t i) const { return (bytes[i >> 3] >> (7 - (i & 7))) & 1u; }
  std::string to_hex() const { return bytes_to_hex(bytes.data(), bytes.size()); }
  bool operator==(const Nonce&) const = default;
};

// Register snapshot at a given round, packed MSB-first into 16 bytes each.
struct StateSnapshot {
  uint64_t round = 0;
  std::array<uint8_t, 16> lfsr{};
  std::array<uint8_t, 16> nfsr{};

  // Golden-file record: "round=<t> lfsr=<32 hex> nfsr=<32 hex>"
  std::string to_line() const;
  bool operator==(const StateSnapshot&) const = default;
};

namespace grain {

constexpr uint64_t kInitRounds = 512;
constexpr uint64_t kKeyReintroStart = 320;
constexpr uint64_t kKeyReintroEnd = 384;  // exclusive

// Bit-accurate cipher state: one byte per register bit. The key copy is
// needed by the feedback until round 383 and is erased at round 384.
struct State {
  std::array<uint8_t, 128> lfsr{};
  std::array<uint8_t, 128> nfsr{};
  std::array<uint8_t, 128> key{};
  bool key_live = false;
  uint64_t round = 0;
};

uint8_t f_bit(const State& st);
uint8_t g_bit(const State& st);
uint8_t h_bit(const State& st);
uint8_t pre_output(const State& st);

State load_initial_state(const Key& key, const Nonce& nonce);
void clock(State& st);
State initialize(const Key& key, const Nonce& nonce);

// Throws std::logic_error while st.round < 512.
BitVec generate_keystream(State& st, std::size_t nbits);

StateSnapshot snapshot(const State& st);

}  // namespace grain

enum class Backend { Reference, Optimized };

Backend backend_from_name(const std::string& name);
std::string backend_name(Backend b);

// Keystream generated from (key, nonce) and the identifier of the key that
// produced it. Successive generate() calls continue the stream seamlessly.
class KeystreamGenerator {
 public:
  KeystreamGenerator(const Key& key, const Nonce& nonce,
                     Backend backend = Backend::Optimized);
  ~KeystreamGenerator();
  KeystreamGenerator(KeystreamGenerator&&) noexcept;
  KeystreamGenerator& operator=(KeystreamGenerator&&) noexcept;

  BitVec generate(std::size_t nbits);

  // Diagnostic snapshots captured during initialization, at rounds 320,
  // 384 and 512. Used by the golden-file and backend-equivalence tests.
  const std::map<uint64_t, StateSnapshot>& init_snapshots() const;

  Backend backend() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace grainple
