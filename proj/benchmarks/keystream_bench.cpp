#include <benchmark/benchmark.h>

#include <random>

#include "grainple/channel_codec.hpp"
#include "grainple/channel_sim.hpp"
#include "grainple/grain128ple.hpp"

using namespace grainple;

namespace {

const Key kKey = Key::from_hex("000102030405060708090a0b0c0d0e0f");
const Nonce kNonce = Nonce::from_hex("000102030405060708090a0b");

void BM_Initialize(benchmark::State& state) {
  const auto backend = static_cast<Backend>(state.range(0));
  for (auto _ : state) {
    KeystreamGenerator gen(kKey, kNonce, backend);
    benchmark::DoNotOptimize(gen);
  }
}
BENCHMARK(BM_Initialize)
    ->Arg(static_cast<int>(Backend::Reference))
    ->Arg(static_cast<int>(Backend::Optimized));

void BM_Keystream(benchmark::State& state) {
  const auto backend = static_cast<Backend>(state.range(0));
  const std::size_t nbits = static_cast<std::size_t>(state.range(1));
  KeystreamGenerator gen(kKey, kNonce, backend);
  for (auto _ : state) {
    BitVec z = gen.generate(nbits);
    benchmark::DoNotOptimize(z.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(nbits));
}
BENCHMARK(BM_Keystream)
    ->Args({static_cast<int>(Backend::Reference), 1 << 16})
    ->Args({static_cast<int>(Backend::Optimized), 1 << 16});

void BM_Pipeline(benchmark::State& state) {
  const CodecSpec spec = codec_by_name("hamming74");
  BitVec data(4096);
  std::mt19937_64 rng(7);
  for (auto& b : data) b = static_cast<uint8_t>(rng() & 1u);
  for (auto _ : state) {
    ChannelReport r = run_pipeline(data, kKey, kNonce, spec,
                                   BscChannel{0.01, 42}, true, 0);
    benchmark::DoNotOptimize(r.post_fer);
  }
}
BENCHMARK(BM_Pipeline);

}  // namespace

BENCHMARK_MAIN();
