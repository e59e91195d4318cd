// grainple: keystream generation, physical-layer frame encryption, and a
// noisy-channel pipeline simulator around the Grain-128PLE stream cipher.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grainple/bits.hpp"
#include "grainple/channel_codec.hpp"
#include "grainple/channel_sim.hpp"
#include "grainple/grain128ple.hpp"
#include "grainple/nonce_session.hpp"
#include "grainple/ple_frame.hpp"

using namespace grainple;

namespace {

std::string store_dir() {
  if (const char* env = std::getenv("GRAIN_PLE_STORE_DIR")) return env;
  return ".grainple";
}

Nonce resolve_nonce(const std::string& nonce_hex, const std::string& key_id) {
  if (!nonce_hex.empty()) return Nonce::from_hex(nonce_hex);
  // Counter nonce from the per-key session store; persisted before release.
  SessionStore store(store_dir());
  SessionRecord session =
      store.exists(key_id) ? store.restore(key_id) : SessionRecord{key_id, 0, {}, {}};
  Nonce nonce = issue_nonce(session, store);
  std::cerr << "nonce " << nonce.to_hex() << " issued for key-id \"" << key_id
            << "\"\n";
  return nonce;
}

int cmd_keystream(const std::string& key_hex, const std::string& nonce_hex,
                  std::size_t bits, const std::string& backend) {
  KeystreamGenerator gen(Key::from_hex(key_hex), Nonce::from_hex(nonce_hex),
                         backend_from_name(backend));
  const BitVec z = gen.generate(bits);
  auto bytes = bits_to_bytes(z);
  std::cout << bytes_to_hex(bytes.data(), bytes.size());
  if (!bytes.empty()) std::cout << "\n";
  return 0;
}

int cmd_crypt(bool decrypt, const std::string& key_hex,
              const std::string& nonce_hex, const std::string& key_id,
              const std::string& in_path, const std::string& out_path,
              int prefix_override, const std::string& backend) {
  const Key key = Key::from_hex(key_hex);
  const Nonce nonce = resolve_nonce(nonce_hex, key_id);
  Frame frame = read_frame_file(in_path);
  if (prefix_override >= 0)
    frame.disclosed_prefix = static_cast<uint32_t>(prefix_override);
  if (frame.disclosed_prefix > frame.bits.size())
    throw std::runtime_error("disclosed prefix exceeds frame length");

  KeystreamGenerator gen(key, nonce, backend_from_name(backend));
  const BitVec z = gen.generate(frame.bits.size() - frame.disclosed_prefix);
  BitVec out_bits;
  if (decrypt) {
    EncryptedFrame ef{frame.bits, frame.codeword_len, frame.disclosed_prefix};
    out_bits = decrypt_frame(ef, z).bits;
  } else {
    out_bits = encrypt_frame(frame, z).bits;
  }
  write_frame_file(out_path, out_bits, frame.codeword_len,
                   frame.disclosed_prefix);
  return 0;
}

int cmd_simulate(const std::string& key_hex, std::vector<double> p_values,
                 uint64_t trials, uint64_t seed, const std::string& codec,
                 const std::string& ple, uint32_t disclosed_prefix,
                 std::size_t data_bits, const std::string& out_path) {
  SweepConfig config;
  config.key = Key::from_hex(key_hex);
  config.trials = trials;
  config.base_seed = seed;
  config.codec = codec;
  config.ple_enabled = ple == "on";
  config.disclosed_prefix = disclosed_prefix;
  config.data_bits_per_trial = data_bits;
  const std::string csv = reports_to_csv(sweep(p_values, config));
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << csv;
  }
  return 0;
}

int cmd_vectors(const std::string& key_hex, const std::string& nonce_hex,
                std::size_t bits, const std::string& backend) {
  KeystreamGenerator gen(Key::from_hex(key_hex), Nonce::from_hex(nonce_hex),
                         backend_from_name(backend));
  for (const auto& [round, snap] : gen.init_snapshots())
    std::cout << snap.to_line() << "\n";
  const BitVec z = gen.generate(bits);
  std::cout << "z[0.." << bits << ")=" << bits_to_hex(z) << "\n";
  return 0;
}

int cmd_bench(const std::string& key_hex, const std::string& nonce_hex,
              std::size_t bits) {
  const Key key = Key::from_hex(key_hex);
  const Nonce nonce = Nonce::from_hex(nonce_hex);

  // Equality guard before timing anything.
  {
    KeystreamGenerator a(key, nonce, Backend::Reference);
    KeystreamGenerator b(key, nonce, Backend::Optimized);
    if (a.generate(4096) != b.generate(4096))
      throw std::runtime_error("backend outputs diverge; refusing to benchmark");
  }
  for (Backend backend : {Backend::Reference, Backend::Optimized}) {
    const auto start = std::chrono::steady_clock::now();
    KeystreamGenerator gen(key, nonce, backend);
    volatile uint8_t sink = 0;
    const BitVec z = gen.generate(bits);
    for (uint8_t b : z) sink = sink ^ b;
    const auto stop = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(stop - start).count();
    std::cout << backend_name(backend) << ": "
              << static_cast<double>(bits) / secs << " bits/s (" << bits
              << " bits in " << secs << " s)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grain-128PLE physical-layer encryption toolkit"};
  app.require_subcommand(1);

  std::string key_hex, nonce_hex, key_id = "default";
  std::string backend = "optimized", codec = "hamming74", ple = "on";
  std::string in_path, out_path;
  std::size_t bits = 128;
  std::vector<double> p_values;
  uint64_t trials = 1, seed = 0;
  uint32_t disclosed_prefix = 0;
  int prefix_override = -1;
  std::size_t data_bits = 1024;

  auto add_key = [&](CLI::App* cmd) {
    cmd->add_option("--key", key_hex, "128-bit key, 32 hex chars")->required();
  };
  auto add_nonce = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--nonce", nonce_hex, "96-bit nonce, 24 hex chars");
    if (required) opt->required();
  };

  auto* ks = app.add_subcommand("keystream", "emit keystream bits as hex");
  add_key(ks);
  add_nonce(ks, true);
  ks->add_option("--bits", bits, "number of keystream bits");
  ks->add_option("--backend", backend, "reference|optimized");

  auto* enc = app.add_subcommand("encrypt", "encrypt a PLE1 frame file");
  auto* dec = app.add_subcommand("decrypt", "decrypt a PLE1 frame file");
  for (auto* cmd : {enc, dec}) {
    add_key(cmd);
    add_nonce(cmd, false);
    cmd->add_option("--key-id", key_id,
                    "session id; issues a counter nonce when --nonce is absent");
    cmd->add_option("--in", in_path, "input PLE1 frame file")->required();
    cmd->add_option("--out", out_path, "output PLE1 frame file")->required();
    cmd->add_option("--disclosed-prefix", prefix_override,
                    "override the file's disclosed-prefix field");
    cmd->add_option("--backend", backend, "reference|optimized");
  }

  auto* sim = app.add_subcommand("simulate", "run the encode-encrypt-BSC-decode sweep");
  add_key(sim);
  sim->add_option("--p", p_values, "BSC crossover probabilities")->required();
  sim->add_option("--trials", trials, "trials per probability");
  sim->add_option("--seed", seed, "base RNG seed");
  sim->add_option("--codec", codec, "repetition3|hamming74");
  sim->add_option("--ple", ple, "on|off")->check(CLI::IsMember({"on", "off"}));
  sim->add_option("--disclosed-prefix", disclosed_prefix,
                  "unencrypted leading coded bits");
  sim->add_option("--bits", data_bits, "data bits per trial");
  sim->add_option("--out", out_path, "CSV path (default stdout)");

  auto* vec = app.add_subcommand("vectors", "emit init snapshots and keystream goldens");
  add_key(vec);
  add_nonce(vec, true);
  vec->add_option("--bits", bits, "keystream bits (multiple of 8)");
  vec->add_option("--backend", backend, "reference|optimized");

  auto* bench = app.add_subcommand("bench", "keystream throughput, both backends");
  add_key(bench);
  add_nonce(bench, true);
  bench->add_option("--bits", bits, "bits per timed run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(ks))
      return cmd_keystream(key_hex, nonce_hex, bits, backend);
    if (app.got_subcommand(enc))
      return cmd_crypt(false, key_hex, nonce_hex, key_id, in_path, out_path,
                       prefix_override, backend);
    if (app.got_subcommand(dec))
      return cmd_crypt(true, key_hex, nonce_hex, key_id, in_path, out_path,
                       prefix_override, backend);
    if (app.got_subcommand(sim))
      return cmd_simulate(key_hex, p_values, trials, seed, codec, ple,
                          disclosed_prefix, data_bits, out_path);
    if (app.got_subcommand(vec))
      return cmd_vectors(key_hex, nonce_hex, bits, backend);
    if (app.got_subcommand(bench)) return cmd_bench(key_hex, nonce_hex, bits);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
