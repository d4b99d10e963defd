#pragma once

#include <array>
#include <cstdint>

namespace polyvol::rng {

/// Philox 4x32-10 counter block cipher. Counter-based: the k-th draw of any
/// stream can be produced without generating the first k-1, which is what
/// makes sampling order independent of the thread layout.
inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
  constexpr uint32_t kMul0 = 0xD2511F53u, kMul1 = 0xCD9E8D57u;
  constexpr uint32_t kWeyl0 = 0x9E3779B9u, kWeyl1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    uint64_t p0 = static_cast<uint64_t>(kMul0) * ctr[0];
    uint64_t p1 = static_cast<uint64_t>(kMul1) * ctr[2];
    uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
    uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

/// 53-bit uniform in [0, 1) from two 32-bit words.
inline double to_unit(uint32_t hi, uint32_t lo) {
  uint64_t u = (static_cast<uint64_t>(hi) << 32) | lo;
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

/// Deterministic substream addressed by (seed, i, j, k). Successive draws use
/// successive counter blocks of the fixed address, two doubles per block.
class Stream {
 public:
  Stream(uint64_t seed, uint32_t i, uint32_t j, uint32_t k)
      : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)}, addr_{i, j, k, 0} {}

  double next_unit() {
    if (pos_ == 2) {
      addr_[3] = block_++;
      buf_ = philox4x32(addr_, key_);
      pos_ = 0;
    }
    double d = to_unit(buf_[2 * pos_], buf_[2 * pos_ + 1]);
    ++pos_;
    return d;
  }

  /// Uniform in [-r, r].
  double next_symmetric(double r) { return (2.0 * next_unit() - 1.0) * r; }

 private:
  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 4> addr_;
  std::array<uint32_t, 4> buf_{};
  uint32_t block_ = 0;
  int pos_ = 2;
};

/// Fixed stream indices keeping unrelated sampling tasks on disjoint
/// counter addresses for the same user seed. Volume scans use their plain
/// cell coordinates as the (i, j) address.
inline constexpr uint32_t kStreamLoja = 0x4C4F4A41u;
inline constexpr uint32_t kStreamCheb = 0x43484542u;
inline constexpr uint32_t kStreamLevels = 0x53494E47u;
inline constexpr uint32_t kStreamProbe = 0x50524F42u;

}  // namespace polyvol::rng
