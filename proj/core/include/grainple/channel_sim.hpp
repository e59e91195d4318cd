#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "grainple/bits.hpp"
#include "grainple/channel_codec.hpp"
#include "grainple/grain128ple.hpp"

namespace grainple {

// Binary symmetric channel. The error vector is a pure function of
// (seed, length, crossover_p): bit i flips iff u_i < p where u_i is drawn
// from std::mt19937_64(seed) as (next() >> 11) * 2^-53.
struct BscChannel {
  double crossover_p = 0.0;
  uint64_t seed = 0;
};

// received = bits ^ e; e returned for ground-truth accounting.
std::pair<BitVec, BitVec> transmit(const BitVec& bits, const BscChannel& channel);

struct ChannelReport {
  uint64_t trial = 0;
  double crossover_p = 0.0;
  bool ple_enabled = false;
  std::string codec;
  uint32_t disclosed_prefix = 0;
  double raw_ber = 0.0;   // Bob's pre-decode BER (= errors_injected / coded bits)
  double post_fer = 0.0;  // fraction of codewords decoded incorrectly
  double eve_ber = 0.0;   // Eve's decoded output vs. true data
  uint64_t errors_injected = 0;
  uint64_t seed = 0;

  // Not in the CSV: kept for invariant checks.
  BitVec bob_data;               // Bob's post-decode output
  double eve_ber_disclosed = -1.0;  // Eve's BER on the disclosed-prefix region
};

// Fig-2 pipeline: encode -> (encrypt) -> BSC -> (decrypt) -> decode, with an
// Eve tap that decodes the channel output without decrypting.
// disclosed_prefix is in coded-bit positions.
ChannelReport run_pipeline(const BitVec& data, const Key& key, const Nonce& nonce,
                           const CodecSpec& spec, const BscChannel& channel,
                           bool ple_enabled, uint32_t disclosed_prefix = 0);

// splitmix64; per-trial seeds are derived as mix(base_seed + trial_index).
uint64_t mix_seed(uint64_t x);

struct SweepConfig {
  Key key;
  uint64_t trials = 1;
  uint64_t base_seed = 0;
  std::string codec = "hamming74";
  bool ple_enabled = true;
  uint32_t disclosed_prefix = 0;
  std::size_t data_bits_per_trial = 1024;  // rounded down to a multiple of k
};

// Trials are numbered globally across p values; trial data is drawn from an
// RNG seeded with mix(trial_seed ^ kDataStreamTag) and the nonce is the
// global trial index.
std::vector<ChannelReport> sweep(const std::vector<double>& p_values,
                                 const SweepConfig& config);

std::string reports_to_csv(const std::vector<ChannelReport>& reports);

}  // namespace grainple
