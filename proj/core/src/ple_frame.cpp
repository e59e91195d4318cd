#include "grainple/ple_frame.hpp"

#include <fstream>
#include <stdexcept>

namespace grainple {

Frame segment(BitVec bits, uint32_t codeword_len, uint32_t disclosed_prefix) {
  if (codeword_len == 0) throw std::invalid_argument("codeword length is zero");
  if (bits.empty()) throw std::invalid_argument("frame has no bits");
  if (bits.size() % codeword_len != 0)
    throw std::invalid_argument("frame length " + std::to_string(bits.size()) +
                                " not a multiple of codeword length " +
                                std::to_string(codeword_len));
  if (disclosed_prefix > bits.size())
    throw std::invalid_argument("disclosed prefix exceeds frame length");
  Frame f;
  f.codeword_len = codeword_len;
  f.codeword_count = static_cast<uint32_t>(bits.size() / codeword_len);
  f.disclosed_prefix = disclosed_prefix;
  f.bits = std::move(bits);
  return f;
}

static void xor_suffix(BitVec& out, const BitVec& in, uint32_t prefix,
                       const BitVec& keystream) {
  if (prefix > in.size())
    throw std::invalid_argument("disclosed prefix exceeds frame length");
  const std::size_t enc_len = in.size() - prefix;
  if (keystream.size() < enc_len)
    throw std::invalid_argument("keystream too short: need " +
                                std::to_string(enc_len) + " bits, have " +
                                std::to_string(keystream.size()));
  out.resize(in.size());
  for (std::size_t i = 0; i < prefix; ++i) out[i] = in[i];
  for (std::size_t i = prefix; i < in.size(); ++i)
    out[i] = in[i] ^ keystream[i - prefix];
}

EncryptedFrame encrypt_frame(const Frame& frame, const BitVec& keystream) {
  EncryptedFrame ef;
  ef.codeword_len = frame.codeword_len;
  ef.disclosed_prefix = frame.disclosed_prefix;
  xor_suffix(ef.bits, frame.bits, frame.disclosed_prefix, keystream);
  return ef;
}

Frame decrypt_frame(const EncryptedFrame& received, const BitVec& keystream) {
  BitVec plain;
  xor_suffix(plain, received.bits, received.disclosed_prefix, keystream);
  return segment(std::move(plain), received.codeword_len,
                 received.disclosed_prefix);
}

static void put_be32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

static uint32_t get_be32(const std::vector<uint8_t>& in, std::size_t off) {
  return static_cast<uint32_t>(in[off]) << 24 |
         static_cast<uint32_t>(in[off + 1]) << 16 |
         static_cast<uint32_t>(in[off + 2]) << 8 |
         static_cast<uint32_t>(in[off + 3]);
}

std::vector<uint8_t> frame_to_file_bytes(const BitVec& bits,
                                         uint32_t codeword_len,
                                         uint32_t disclosed_prefix) {
  if (codeword_len == 0) throw std::invalid_argument("codeword length is zero");
  if (bits.empty() || bits.size() % codeword_len != 0)
    throw std::invalid_argument("frame bits not a positive multiple of n");
  const std::size_t payload_bits = ((bits.size() + 7) / 8) * 8;
  // The header carries no explicit bit count; the padded length must map
  // back to the same L or the file cannot be read unambiguously.
  if (payload_bits / codeword_len != bits.size() / codeword_len)
    throw std::invalid_argument(
        "frame length ambiguous in PLE1 format: Ln must satisfy "
        "floor(padded_bits/n) == L (pad to a multiple of 8 bits for small n)");
  std::vector<uint8_t> out;
  out.reserve(12 + payload_bits / 8);
  out.insert(out.end(), {'P', 'L', 'E', '1'});
  put_be32(out, codeword_len);
  put_be32(out, disclosed_prefix);
  auto packed = bits_to_bytes(bits);
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

Frame frame_from_file_bytes(const std::vector<uint8_t>& raw) {
  if (raw.size() < 12 || raw[0] != 'P' || raw[1] != 'L' || raw[2] != 'E' ||
      raw[3] != '1')
    throw std::runtime_error("not a PLE1 frame file");
  const uint32_t n = get_be32(raw, 4);
  const uint32_t prefix = get_be32(raw, 8);
  if (n == 0) throw std::runtime_error("PLE1 header: codeword length is zero");
  const std::size_t payload_bits = (raw.size() - 12) * 8;
  const std::size_t codewords = payload_bits / n;
  if (codewords == 0) throw std::runtime_error("PLE1 file holds no codewords");
  BitVec bits = bits_from_bytes(raw.data() + 12, codewords * n);
  return segment(std::move(bits), n, prefix);
}

void write_frame_file(const std::string& path, const BitVec& bits,
                      uint32_t codeword_len, uint32_t disclosed_prefix) {
  auto raw = frame_to_file_bytes(bits, codeword_len, disclosed_prefix);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Frame read_frame_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<uint8_t> raw((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
  return frame_from_file_bytes(raw);
}

}  // namespace grainple
