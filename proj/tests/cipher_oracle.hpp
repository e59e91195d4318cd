#pragma once

// Test-only oracle for the cipher: a separate bit-level implementation
// written term by term from the register update equations, kept independent
// of the core backends it checks. std::deque front/back models the shift
// registers directly.

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "grainple/grain128ple.hpp"

namespace oracle {

struct Cipher {
  std::deque<int> s;  // LFSR, front = index 0
  std::deque<int> b;  // NFSR
  std::vector<int> k;
  uint64_t t = 0;

  Cipher(const grainple::Key& key, const grainple::Nonce& nonce) {
    for (int i = 0; i < 128; ++i) k.push_back(key.bit(i));
    b.assign(k.begin(), k.end());
    for (int i = 0; i < 96; ++i) s.push_back(nonce.bit(i));
    for (int i = 0; i < 31; ++i) s.push_back(1);
    s.push_back(0);
  }

  int f() const { return s[0] ^ s[7] ^ s[38] ^ s[70] ^ s[81] ^ s[96]; }

  int g() const {
    int v = b[0] ^ b[26] ^ b[56] ^ b[91] ^ b[96];
    v ^= b[3] & b[67];
    v ^= b[11] & b[13];
    v ^= b[17] & b[18];
    v ^= b[27] & b[59];
    v ^= b[40] & b[48];
    v ^= b[61] & b[65];
    v ^= b[68] & b[84];
    v ^= b[22] & b[24] & b[25];
    v ^= b[70] & b[78] & b[82];
    v ^= b[88] & b[92] & b[93] & b[95];
    return v;
  }

  int h() const {
    int v = b[12] & s[8];
    v ^= s[13] & s[20];
    v ^= b[95] & s[42];
    v ^= s[60] & s[79];
    v ^= b[12] & b[95] & s[94];
    return v;
  }

  int y() const {
    return h() ^ s[93] ^ b[2] ^ b[15] ^ b[36] ^ b[45] ^ b[64] ^ b[73] ^ b[89];
  }

  void step() {
    const int ft = f(), gt = g(), yt = y(), s0 = s[0];
    int nb, ns;
    if (t <= 319) {
      nb = gt ^ s0 ^ yt;
      ns = ft ^ yt;
    } else if (t <= 383) {
      nb = gt ^ s0 ^ yt ^ k[t - 320];
      ns = ft ^ yt ^ k[t - 256];
    } else {
      nb = gt ^ s0;
      ns = ft;
    }
    b.pop_front();
    b.push_back(nb);
    s.pop_front();
    s.push_back(ns);
    ++t;
  }

  void init() {
    while (t < 512) step();
  }

  grainple::BitVec keystream(std::size_t n) {
    grainple::BitVec z;
    for (std::size_t i = 0; i < n; ++i) {
      z.push_back(static_cast<uint8_t>(y()));
      step();
    }
    return z;
  }

  std::string snapshot_line() const {
    grainple::BitVec sb(s.begin(), s.end()), bb(b.begin(), b.end());
    return "round=" + std::to_string(t) + " lfsr=" + grainple::bits_to_hex(sb) +
           " nfsr=" + grainple::bits_to_hex(bb);
  }
};

}  // namespace oracle
