#include "grainple/grain128ple.hpp"

#include <algorithm>
#include <stdexcept>

namespace grainple {

Key Key::from_hex(const std::string& hex) {
  auto bytes = bytes_from_hex(hex);
  if (bytes.size() != 16)
    throw std::invalid_argument("key must be 32 hex characters (128 bits)");
  Key k;
  std::copy(bytes.begin(), bytes.end(), k.bytes.begin());
  return k;
}

Nonce Nonce::from_hex(const std::string& hex) {
  auto bytes = bytes_from_hex(hex);
  if (bytes.size() != 12)
    throw std::invalid_argument("nonce must be 24 hex characters (96 bits)");
  Nonce n;
  std::copy(bytes.begin(), bytes.end(), n.bytes.begin());
  return n;
}

std::string StateSnapshot::to_line() const {
  return "round=" + std::to_string(round) +
         " lfsr=" + bytes_to_hex(lfsr.data(), lfsr.size()) +
         " nfsr=" + bytes_to_hex(nfsr.data(), nfsr.size());
}

namespace grain {

uint8_t f_bit(const State& st) {
  const auto& s = st.lfsr;
  return s[0] ^ s[7] ^ s[38] ^ s[70] ^ s[81] ^ s[96];
}

uint8_t g_bit(const State& st) {
  const auto& b = st.nfsr;
  return b[0] ^ b[26] ^ b[56] ^ b[91] ^ b[96] ^
         (b[3] & b[67]) ^ (b[11] & b[13]) ^ (b[17] & b[18]) ^
         (b[27] & b[59]) ^ (b[40] & b[48]) ^ (b[61] & b[65]) ^
         (b[68] & b[84]) ^ (b[22] & b[24] & b[25]) ^
         (b[70] & b[78] & b[82]) ^ (b[88] & b[92] & b[93] & b[95]);
}

uint8_t h_bit(const State& st) {
  const auto& s = st.lfsr;
  const auto& b = st.nfsr;
  return (b[12] & s[8]) ^ (s[13] & s[20]) ^ (b[95] & s[42]) ^
         (s[60] & s[79]) ^ (b[12] & b[95] & s[94]);
}

uint8_t pre_output(const State& st) {
  const auto& s = st.lfsr;
  const auto& b = st.nfsr;
  return h_bit(st) ^ s[93] ^ b[2] ^ b[15] ^ b[36] ^ b[45] ^ b[64] ^ b[73] ^
         b[89];
}

State load_initial_state(const Key& key, const Nonce& nonce) {
  State st;
  for (std::size_t i = 0; i < 128; ++i) st.nfsr[i] = key.bit(i);
  for (std::size_t i = 0; i < 96; ++i) st.lfsr[i] = nonce.bit(i);
  for (std::size_t i = 96; i < 127; ++i) st.lfsr[i] = 1;
  st.lfsr[127] = 0;
  for (std::size_t i = 0; i < 128; ++i) st.key[i] = key.bit(i);
  st.key_live = true;
  st.round = 0;
  return st;
}

void clock(State& st) {
  const uint64_t t = st.round;
  const uint8_t ft = f_bit(st);
  const uint8_t gt = g_bit(st);
  const uint8_t yt = pre_output(st);
  const uint8_t s0 = st.lfsr[0];

  uint8_t nfsr_in, lfsr_in;
  if (t < kKeyReintroStart) {
    nfsr_in = gt ^ s0 ^ yt;
    lfsr_in = ft ^ yt;
  } else if (t < kKeyReintroEnd) {
    if (!st.key_live)
      throw std::logic_error("key copy required for rounds 320-383 but erased");
    nfsr_in = gt ^ s0 ^ yt ^ st.key[t - 320];
    lfsr_in = ft ^ yt ^ st.key[t - 256];
  } else {
    nfsr_in = gt ^ s0;
    lfsr_in = ft;
  }

  std::copy(st.nfsr.begin() + 1, st.nfsr.end(), st.nfsr.begin());
  std::copy(st.lfsr.begin() + 1, st.lfsr.end(), st.lfsr.begin());
  st.nfsr[127] = nfsr_in;
  st.lfsr[127] = lfsr_in;
  st.round = t + 1;

  // Last key use is round 383; the copy is erased as soon as it is dead.
  if (st.round == kKeyReintroEnd && st.key_live) {
    st.key.fill(0);
    st.key_live = false;
  }
}

State initialize(const Key& key, const Nonce& nonce) {
  State st = load_initial_state(key, nonce);
  for (uint64_t t = 0; t < kInitRounds; ++t) clock(st);
  return st;
}

BitVec generate_keystream(State& st, std::size_t nbits) {
  if (st.round < kInitRounds)
    throw std::logic_error("keystream requested before initialization (round " +
                           std::to_string(st.round) + " < 512)");
  BitVec z(nbits);
  for (std::size_t i = 0; i < nbits; ++i) {
    z[i] = pre_output(st);
    clock(st);
  }
  return z;
}

StateSnapshot snapshot(const State& st) {
  StateSnapshot snap;
  snap.round = st.round;
  for (std::size_t i = 0; i < 128; ++i) {
    snap.lfsr[i >> 3] |= static_cast<uint8_t>((st.lfsr[i] & 1u) << (7 - (i & 7)));
    snap.nfsr[i >> 3] |= static_cast<uint8_t>((st.nfsr[i] & 1u) << (7 - (i & 7)));
  }
  return snap;
}

}  // namespace grain

Backend backend_from_name(const std::string& name) {
  if (name == "reference") return Backend::Reference;
  if (name == "optimized") return Backend::Optimized;
  throw std::invalid_argument("unknown backend \"" + name +
                              "\" (expected reference|optimized)");
}

std::string backend_name(Backend b) {
  return b == Backend::Reference ? "reference" : "optimized";
}

namespace {

// Word-parallel backend. Registers are packed 128 bits in two uint64 words,
// register index i at word i/64, bit i%64 (LSB-first). The highest tap index
// in any feedback or filter function is 96, so 32 consecutive rounds depend
// only on the 128 bits present before the batch; the cipher is therefore
// clocked 32 rounds at a time, producing 32 keystream bits per step.
struct Packed128 {
  uint64_t w[2] = {0, 0};

  uint8_t bit(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w[i >> 6] |= uint64_t(1) << (i & 63); }

  // Bits i..i+31 as a 32-bit lane; lane bit k is register bit i+k.
  uint32_t lane(unsigned i) const {
    if (i <= 32) return static_cast<uint32_t>(w[0] >> i);
    if (i < 64)
      return static_cast<uint32_t>((w[0] >> i) | (w[1] << (64 - i)));
    return static_cast<uint32_t>(w[1] >> (i - 64));
  }

  // Shift out 32 rounds, shifting in the batch's 32 feedback bits at the top.
  void shift32(uint32_t in) {
    w[0] = (w[0] >> 32) | (w[1] << 32);
    w[1] = (w[1] >> 32) | (static_cast<uint64_t>(in) << 32);
  }
};

class FastGrain {
 public:
  FastGrain(const Key& key, const Nonce& nonce,
            std::map<uint64_t, StateSnapshot>& snaps) {
    for (std::size_t i = 0; i < 128; ++i)
      if (key.bit(i)) {
        nfsr_.set(i);
        key_.set(i);
      }
    for (std::size_t i = 0; i < 96; ++i)
      if (nonce.bit(i)) lfsr_.set(i);
    for (std::size_t i = 96; i < 127; ++i) lfsr_.set(i);

    for (uint64_t base = 0; base < grain::kInitRounds; base += 32) {
      uint32_t f, g, y;
      filters(f, g, y);
      const uint32_t s0 = lfsr_.lane(0);
      uint32_t nfsr_in, lfsr_in;
      if (base < grain::kKeyReintroStart) {
        nfsr_in = g ^ s0 ^ y;
        lfsr_in = f ^ y;
      } else if (base < grain::kKeyReintroEnd) {
        nfsr_in = g ^ s0 ^ y ^ key_.lane(static_cast<unsigned>(base - 320));
        lfsr_in = f ^ y ^ key_.lane(static_cast<unsigned>(base - 256));
      } else {
        nfsr_in = g ^ s0;
        lfsr_in = f;
      }
      nfsr_.shift32(nfsr_in);
      lfsr_.shift32(lfsr_in);
      round_ = base + 32;
      if (round_ == 320 || round_ == 384 || round_ == 512)
        snaps[round_] = snapshot();
    }
    key_ = Packed128{};  // key dead after round 383
  }

  BitVec generate(std::size_t nbits) {
    BitVec out;
    out.reserve(nbits);
    while (out.size() < nbits) {
      if (buf_pos_ == buf_.size()) refill();
      out.push_back(buf_[buf_pos_++]);
    }
    return out;
  }

 private:
  void filters(uint32_t& f, uint32_t& g, uint32_t& y) const {
    const Packed128& s = lfsr_;
    const Packed128& b = nfsr_;
    f = s.lane(0) ^ s.lane(7) ^ s.lane(38) ^ s.lane(70) ^ s.lane(81) ^
        s.lane(96);
    g = b.lane(0) ^ b.lane(26) ^ b.lane(56) ^ b.lane(91) ^ b.lane(96) ^
        (b.lane(3) & b.lane(67)) ^ (b.lane(11) & b.lane(13)) ^
        (b.lane(17) & b.lane(18)) ^ (b.lane(27) & b.lane(59)) ^
        (b.lane(40) & b.lane(48)) ^ (b.lane(61) & b.lane(65)) ^
        (b.lane(68) & b.lane(84)) ^ (b.lane(22) & b.lane(24) & b.lane(25)) ^
        (b.lane(70) & b.lane(78) & b.lane(82)) ^
        (b.lane(88) & b.lane(92) & b.lane(93) & b.lane(95));
    const uint32_t h = (b.lane(12) & s.lane(8)) ^ (s.lane(13) & s.lane(20)) ^
                       (b.lane(95) & s.lane(42)) ^ (s.lane(60) & s.lane(79)) ^
                       (b.lane(12) & b.lane(95) & s.lane(94));
    y = h ^ s.lane(93) ^ b.lane(2) ^ b.lane(15) ^ b.lane(36) ^ b.lane(45) ^
        b.lane(64) ^ b.lane(73) ^ b.lane(89);
  }

  void refill() {
    uint32_t f, g, y;
    filters(f, g, y);
    const uint32_t s0 = lfsr_.lane(0);
    buf_.resize(32);
    for (unsigned k = 0; k < 32; ++k) buf_[k] = (y >> k) & 1u;
    buf_pos_ = 0;
    nfsr_.shift32(g ^ s0);
    lfsr_.shift32(f);
    round_ += 32;
  }

  StateSnapshot snapshot() const {
    StateSnapshot snap;
    snap.round = round_;
    for (std::size_t i = 0; i < 128; ++i) {
      snap.lfsr[i >> 3] |= static_cast<uint8_t>(lfsr_.bit(i) << (7 - (i & 7)));
      snap.nfsr[i >> 3] |= static_cast<uint8_t>(nfsr_.bit(i) << (7 - (i & 7)));
    }
    return snap;
  }

  Packed128 lfsr_, nfsr_, key_;
  uint64_t round_ = 0;
  BitVec buf_;
  std::size_t buf_pos_ = 0;
};

}  // namespace

struct KeystreamGenerator::Impl {
  Backend backend;
  std::map<uint64_t, StateSnapshot> snaps;
  grain::State ref;  // Reference backend only
  std::unique_ptr<FastGrain> fast;

  Impl(const Key& key, const Nonce& nonce, Backend b) : backend(b) {
    if (backend == Backend::Reference) {
      ref = grain::load_initial_state(key, nonce);
      for (uint64_t t = 0; t < grain::kInitRounds; ++t) {
        grain::clock(ref);
        if (ref.round == 320 || ref.round == 384 || ref.round == 512)
          snaps[ref.round] = grain::snapshot(ref);
      }
    } else {
      fast = std::make_unique<FastGrain>(key, nonce, snaps);
    }
  }
};

KeystreamGenerator::KeystreamGenerator(const Key& key, const Nonce& nonce,
                                       Backend backend)
    : impl_(std::make_unique<Impl>(key, nonce, backend)) {}

KeystreamGenerator::~KeystreamGenerator() = default;
KeystreamGenerator::KeystreamGenerator(KeystreamGenerator&&) noexcept = default;
KeystreamGenerator& KeystreamGenerator::operator=(KeystreamGenerator&&) noexcept =
    default;

BitVec KeystreamGenerator::generate(std::size_t nbits) {
  if (impl_->backend == Backend::Reference)
    return grain::generate_keystream(impl_->ref, nbits);
  return impl_->fast->generate(nbits);
}

const std::map<uint64_t, StateSnapshot>& KeystreamGenerator::init_snapshots()
    const {
  return impl_->snaps;
}

Backend KeystreamGenerator::backend() const { return impl_->backend; }

}  // namespace grainple
