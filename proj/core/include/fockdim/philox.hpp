#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace fockdim {

/// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
/// Stateless: the output is a pure function of (counter, key).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  static constexpr Key key_from_seed(std::uint64_t seed) noexcept {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }

  /// Block `block` of sample `index` in stream `stream`.
  static constexpr Counter at(std::uint64_t seed, std::uint64_t index, std::uint32_t block,
                              std::uint32_t stream) noexcept {
    return generate({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                     block, stream},
                    key_from_seed(seed));
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

/// Uniform in (0, 1) on the midpoints of a 2^52 grid, so both ends are exactly excluded.
constexpr double uniform_open(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi >> 6) << 26) | (lo >> 6);
  return (static_cast<double>(bits) + 0.5) * 0x1p-52;
}

/// Two independent standard normals from one Philox block (Box-Muller).
inline std::array<double, 2> gaussian_pair(const Philox4x32::Counter& r) noexcept {
  const double u1 = uniform_open(r[0], r[1]);
  const double u2 = uniform_open(r[2], r[3]);
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  return {rad * std::cos(ang), rad * std::sin(ang)};
}

/// Stream identifiers; distinct uses of one seed never share counters.
namespace streams {
inline constexpr std::uint32_t kSphere = 0;
inline constexpr std::uint32_t kShift = 1;
inline constexpr std::uint32_t kLelong = 2;
}  // namespace streams

}  // namespace fockdim
