#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

namespace recor {

/// Written into every output sidecar. Bump the suffix whenever the stream
/// layout, sub-seed derivation or variate transforms change.
inline constexpr std::string_view kRngIdentity = "philox4x32-10/splitmix64-subseed/v1";

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Folds a coordinate path (e.g. scenario, level, replicate) into a sub-seed.
/// Distinct paths under one master seed give unrelated streams.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = splitmix64_mix(master + 0x9e3779b97f4a7c15ull);
  std::uint64_t depth = 0;
  for (std::uint64_t v : path) {
    ++depth;
    h = splitmix64_mix(h ^ splitmix64_mix(v + depth * 0x9e3779b97f4a7c15ull));
  }
  return h;
}

/// Philox4x32 block function with 10 rounds (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based generator: a (key, stream) pair addresses an independent
/// sequence of 128-bit blocks. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key, std::uint64_t stream = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1); never returns an endpoint.
  double uniform() noexcept;
  /// Standard normal via Box-Muller; spare variate is cached.
  double normal() noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace recor
