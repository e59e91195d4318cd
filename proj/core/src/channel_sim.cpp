#include "grainple/channel_sim.hpp"

#include "grainple/ple_frame.hpp"

#include <cstdio>
#include <random>
#include <stdexcept>

namespace grainple {

std::pair<BitVec, BitVec> transmit(const BitVec& bits, const BscChannel& channel) {
  if (channel.crossover_p < 0.0 || channel.crossover_p > 1.0)
    throw std::invalid_argument("crossover probability outside [0, 1]");
  std::mt19937_64 rng(channel.seed);
  BitVec e(bits.size(), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    e[i] = u < channel.crossover_p ? 1 : 0;
  }
  BitVec received(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) received[i] = bits[i] ^ e[i];
  return {std::move(received), std::move(e)};
}

static double block_error_rate(const BitVec& decoded, const BitVec& truth,
                               uint32_t k) {
  const std::size_t blocks = truth.size() / k;
  std::size_t bad = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t j = 0; j < k; ++j) {
      if (decoded[b * k + j] != truth[b * k + j]) {
        ++bad;
        break;
      }
    }
  }
  return blocks ? static_cast<double>(bad) / static_cast<double>(blocks) : 0.0;
}

ChannelReport run_pipeline(const BitVec& data, const Key& key, const Nonce& nonce,
                           const CodecSpec& spec, const BscChannel& channel,
                           bool ple_enabled, uint32_t disclosed_prefix) {
  const BitVec coded = encode(data, spec);
  if (disclosed_prefix > coded.size())
    throw std::invalid_argument("disclosed prefix exceeds coded frame length");

  BitVec on_air;
  if (ple_enabled) {
    KeystreamGenerator gen(key, nonce);
    const BitVec z = gen.generate(coded.size() - disclosed_prefix);
    Frame frame = segment(coded, spec.n, disclosed_prefix);
    on_air = encrypt_frame(frame, z).bits;
  } else {
    on_air = coded;
  }

  auto [received, e] = transmit(on_air, channel);

  BitVec bob_coded;
  if (ple_enabled) {
    KeystreamGenerator gen(key, nonce);
    const BitVec z = gen.generate(coded.size() - disclosed_prefix);
    EncryptedFrame ef;
    ef.bits = received;
    ef.codeword_len = spec.n;
    ef.disclosed_prefix = disclosed_prefix;
    bob_coded = decrypt_frame(ef, z).bits;
  } else {
    bob_coded = received;
  }

  ChannelReport report;
  report.crossover_p = channel.crossover_p;
  report.ple_enabled = ple_enabled;
  report.codec = spec.name;
  report.disclosed_prefix = disclosed_prefix;
  report.seed = channel.seed;
  report.errors_injected = count_ones(e);
  report.raw_ber =
      static_cast<double>(report.errors_injected) / static_cast<double>(coded.size());

  DecodeResult bob = decode(bob_coded, spec);
  report.bob_data = std::move(bob.data);
  report.post_fer = block_error_rate(report.bob_data, data, spec.k);

  // Eve decodes the channel output without the key.
  DecodeResult eve = decode(received, spec);
  report.eve_ber = static_cast<double>(hamming_distance(eve.data, data)) /
                   static_cast<double>(data.size());

  // Disclosed-region leak: data bits of codewords fully inside the prefix.
  const std::size_t disclosed_cw = disclosed_prefix / spec.n;
  if (disclosed_cw > 0) {
    const std::size_t region = disclosed_cw * spec.k;
    std::size_t diff = 0;
    for (std::size_t i = 0; i < region; ++i) diff += eve.data[i] != data[i];
    report.eve_ber_disclosed =
        static_cast<double>(diff) / static_cast<double>(region);
  }
  return report;
}

uint64_t mix_seed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

static constexpr uint64_t kDataStreamTag = 0xd1b54a32d192ed03ull;

static Nonce nonce_from_index(uint64_t index) {
  Nonce n;
  for (int i = 0; i < 8; ++i)
    n.bytes[11 - i] = static_cast<uint8_t>(index >> (8 * i));
  return n;
}

std::vector<ChannelReport> sweep(const std::vector<double>& p_values,
                                 const SweepConfig& config) {
  if (p_values.empty()) throw std::invalid_argument("no crossover probabilities");
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const CodecSpec spec = codec_by_name(config.codec);
  std::size_t data_bits = config.data_bits_per_trial / spec.k * spec.k;
  if (data_bits == 0)
    throw std::invalid_argument("data_bits_per_trial smaller than one codeword");

  std::vector<ChannelReport> reports;
  reports.reserve(p_values.size() * config.trials);
  uint64_t global = 0;
  for (double p : p_values) {
    for (uint64_t t = 0; t < config.trials; ++t, ++global) {
      const uint64_t trial_seed = mix_seed(config.base_seed + global);
      std::mt19937_64 data_rng(mix_seed(trial_seed ^ kDataStreamTag));
      BitVec data(data_bits);
      for (auto& bit : data) bit = static_cast<uint8_t>(data_rng() & 1u);

      ChannelReport r =
          run_pipeline(data, config.key, nonce_from_index(global), spec,
                       BscChannel{p, trial_seed}, config.ple_enabled,
                       config.disclosed_prefix);
      r.trial = global;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

std::string reports_to_csv(const std::vector<ChannelReport>& reports) {
  std::string out =
      "trial,p,ple,codec,disclosed_prefix,raw_ber,post_fer,eve_ber,"
      "errors_injected,seed\n";
  char line[256];
  for (const auto& r : reports) {
    std::snprintf(line, sizeof(line), "%llu,%g,%s,%s,%u,%.8g,%.8g,%.8g,%llu,%llu\n",
                  static_cast<unsigned long long>(r.trial), r.crossover_p,
                  r.ple_enabled ? "on" : "off", r.codec.c_str(),
                  r.disclosed_prefix, r.raw_ber, r.post_fer, r.eve_ber,
                  static_cast<unsigned long long>(r.errors_injected),
                  static_cast<unsigned long long>(r.seed));
    out += line;
  }
  return out;
}

}  // namespace grainple
