#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "grainple/grain128ple.hpp"

namespace grainple {

// 96-bit counter; top 32 bits of the __int128 are unused and must be zero.
using Counter96 = unsigned __int128;

constexpr Counter96 counter96_max() {
  return (static_cast<Counter96>(1) << 96) - 1;
}

// Big-endian encoding, IV_0 = most significant counter bit.
Nonce counter_to_nonce(Counter96 counter);
Counter96 nonce_to_counter(const Nonce& nonce);

// Per-peer nonce lifecycle: an up-ticking 96-bit counter on the sender side,
// a sliding replay window on the receiver side.
struct SessionRecord {
  std::string key_id;
  Counter96 next_counter = 0;
  std::optional<Counter96> highest_seen;

  // Receiver replay window: bit d covers counter highest_seen - d.
  static constexpr std::size_t kWindowBits = 1024;
  std::array<uint64_t, kWindowBits / 64> window{};
};

// One file per key_id under dir: fnv1a64(key_id) 8 bytes || next_counter
// 12 bytes BE || highest_seen 12 bytes BE (all-ones = none), then a 4-byte
// BE CRC32 of the preceding 32 bytes. The replay window is in-memory only.
class SessionStore {
 public:
  explicit SessionStore(std::string dir);

  void persist(const SessionRecord& record) const;
  SessionRecord restore(const std::string& key_id) const;  // throws on corruption
  bool exists(const std::string& key_id) const;

  std::string path_for(const std::string& key_id) const;

 private:
  std::string dir_;
};

// Issues the next nonce, persisting the incremented counter before the nonce
// is released. release_hook, when set, runs between persist and release
// (fault-injection point for crash-safety tests). Throws on counter
// exhaustion.
Nonce issue_nonce(SessionRecord& session, const SessionStore& store,
                  const std::function<void()>& release_hook = nullptr);

enum class AcceptDecision {
  Accept,     // fresh counter; decrypt with nonce = frame counter
  Duplicate,  // counter already seen
  Stale,      // below the replay window; rejected
};

AcceptDecision accept_frame(SessionRecord& session, Counter96 frame_counter);

uint64_t fnv1a64(const std::string& s);
uint32_t crc32(const uint8_t* data, std::size_t len);

}  // namespace grainple
