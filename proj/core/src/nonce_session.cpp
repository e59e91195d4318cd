#include "grainple/nonce_session.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace grainple {

Nonce counter_to_nonce(Counter96 counter) {
  Nonce n;
  for (int i = 0; i < 12; ++i)
    n.bytes[11 - i] = static_cast<uint8_t>(counter >> (8 * i));
  return n;
}

Counter96 nonce_to_counter(const Nonce& nonce) {
  Counter96 c = 0;
  for (int i = 0; i < 12; ++i) c = c << 8 | nonce.bytes[i];
  return c;
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint32_t crc32(const uint8_t* data, std::size_t len) {
  uint32_t crc = 0xffffffffu;
  for (std::size_t i = 0; i < len; ++i) {
    crc ^= data[i];
    for (int b = 0; b < 8; ++b)
      crc = (crc >> 1) ^ (0xedb88320u & (0u - (crc & 1u)));
  }
  return ~crc;
}

SessionStore::SessionStore(std::string dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string SessionStore::path_for(const std::string& key_id) const {
  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.session",
                static_cast<unsigned long long>(fnv1a64(key_id)));
  return (std::filesystem::path(dir_) / name).string();
}

bool SessionStore::exists(const std::string& key_id) const {
  return std::filesystem::exists(path_for(key_id));
}

static void put_counter96(uint8_t* out, Counter96 c) {
  for (int i = 0; i < 12; ++i)
    out[11 - i] = static_cast<uint8_t>(c >> (8 * i));
}

static Counter96 get_counter96(const uint8_t* in) {
  Counter96 c = 0;
  for (int i = 0; i < 12; ++i) c = c << 8 | in[i];
  return c;
}

void SessionStore::persist(const SessionRecord& record) const {
  uint8_t buf[36] = {};
  const uint64_t hash = fnv1a64(record.key_id);
  for (int i = 0; i < 8; ++i)
    buf[7 - i] = static_cast<uint8_t>(hash >> (8 * i));
  // next_counter == 2^96 (exhausted) does not fit 12 bytes; all-ones marks
  // it. A live counter of 2^96-1 shares that encoding and restores as
  // exhausted, wasting the final nonce rather than ever reusing one.
  if (record.next_counter >= counter96_max())
    for (int i = 8; i < 20; ++i) buf[i] = 0xff;
  else
    put_counter96(buf + 8, record.next_counter);
  if (record.highest_seen)
    put_counter96(buf + 20, *record.highest_seen);
  else
    for (int i = 20; i < 32; ++i) buf[i] = 0xff;  // none sentinel
  const uint32_t sum = crc32(buf, 32);
  for (int i = 0; i < 4; ++i)
    buf[35 - i] = static_cast<uint8_t>(sum >> (8 * i));

  const std::string path = path_for(record.key_id);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out.write(reinterpret_cast<const char*>(buf), sizeof(buf));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

SessionRecord SessionStore::restore(const std::string& key_id) const {
  const std::string path = path_for(key_id);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("no session file for key \"" + key_id + "\"");
  std::vector<uint8_t> buf((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
  if (buf.size() != 36)
    throw std::runtime_error("session file truncated or oversized: " + path);
  uint32_t stored = 0;
  for (int i = 0; i < 4; ++i) stored = stored << 8 | buf[32 + i];
  if (stored != crc32(buf.data(), 32))
    throw std::runtime_error("session file checksum mismatch: " + path);
  uint64_t hash = 0;
  for (int i = 0; i < 8; ++i) hash = hash << 8 | buf[i];
  if (hash != fnv1a64(key_id))
    throw std::runtime_error("session file belongs to a different key: " + path);

  SessionRecord rec;
  rec.key_id = key_id;
  rec.next_counter = get_counter96(buf.data() + 8);
  if (rec.next_counter == counter96_max())
    rec.next_counter = counter96_max() + 1;  // exhausted sentinel
  Counter96 hs = get_counter96(buf.data() + 20);
  bool all_ones = true;
  for (int i = 20; i < 32; ++i) all_ones = all_ones && buf[i] == 0xff;
  if (!all_ones) rec.highest_seen = hs;
  return rec;
}

Nonce issue_nonce(SessionRecord& session, const SessionStore& store,
                  const std::function<void()>& release_hook) {
  if (session.next_counter > counter96_max())
    throw std::runtime_error("nonce counter exhausted; retire the key");

  const Counter96 issued = session.next_counter;
  session.next_counter = issued + 1;
  store.persist(session);  // durable before the nonce is released
  if (release_hook) release_hook();
  return counter_to_nonce(issued);
}

AcceptDecision accept_frame(SessionRecord& session, Counter96 frame_counter) {
  if (frame_counter > counter96_max())
    throw std::invalid_argument("frame counter out of 96-bit range");
  auto& win = session.window;
  constexpr std::size_t kBits = SessionRecord::kWindowBits;

  if (!session.highest_seen) {
    session.highest_seen = frame_counter;
    win.fill(0);
    win[0] = 1;  // bit 0 = highest_seen
    return AcceptDecision::Accept;
  }

  const Counter96 highest = *session.highest_seen;
  if (frame_counter > highest) {
    const Counter96 shift = frame_counter - highest;
    if (shift >= kBits) {
      win.fill(0);
    } else {
      const std::size_t s = static_cast<std::size_t>(shift);
      const std::size_t words = s / 64, bits = s % 64;
      for (std::size_t i = win.size(); i-- > 0;) {
        uint64_t v = i >= words ? win[i - words] << bits : 0;
        if (bits && i > words) v |= win[i - words - 1] >> (64 - bits);
        win[i] = v;
      }
    }
    win[0] |= 1;
    session.highest_seen = frame_counter;
    return AcceptDecision::Accept;
  }

  const Counter96 behind = highest - frame_counter;
  if (behind >= kBits) return AcceptDecision::Stale;
  const std::size_t d = static_cast<std::size_t>(behind);
  const uint64_t mask = uint64_t(1) << (d % 64);
  if (win[d / 64] & mask) return AcceptDecision::Duplicate;
  win[d / 64] |= mask;
  return AcceptDecision::Accept;
}

}  // namespace grainple
