#pragma once

// Deterministic random number utilities.
//
// All randomness in the toolkit flows through SplitMix64 (Steele, Lea and
// Flood's 64-bit generator, "splitmix64 v1" in output metadata). The uniform
// mapping and the Poisson samplers below are fixed so that a given seed yields
// identical scenarios and simulation traces on every platform; the standard
// library distributions are avoided because their algorithms are
// implementation-defined.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace macp {

inline constexpr const char* kGeneratorName = "splitmix64-v1";

/// 64-bit finalizer of SplitMix64; also used to derive substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// Seed of the substream addressed by (master, a, b, c). Distinct coordinates
// give statistically independent streams; the mapping is order-sensitive.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a,
                                       std::uint64_t b = 0,
                                       std::uint64_t c = 0) noexcept {
  std::uint64_t h = mix64(master + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (a + 0x632be59bd9b4e019ULL));
  h = mix64(h ^ (b + 0x85157af5e5a5f1b3ULL));
  h = mix64(h ^ (c + 0xd6e8feb86659fd93ULL));
  return h;
}

/// Uniform double in [0, 1) built from the top 53 bits.
template <typename Gen>
double uniform01(Gen& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [low, high).
template <typename Gen>
double uniform_real(Gen& gen, double low, double high) {
  return low + (high - low) * uniform01(gen);
}

namespace detail {

// Sequential-search inversion; suitable for small means.
template <typename Gen>
std::uint64_t poisson_inversion(Gen& gen, double mean) {
  const double u = uniform01(gen);
  double term = std::exp(-mean);
  double cdf = term;
  std::uint64_t k = 0;
  // The k bound only matters when rounding leaves cdf a hair below u.
  while (u >= cdf && k < 1000) {
    ++k;
    term *= mean / static_cast<double>(k);
    cdf += term;
  }
  return k;
}

// Hörmann's transformed rejection with squeeze (PTRS), for mean >= 10.
template <typename Gen>
std::uint64_t poisson_ptrs(Gen& gen, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform01(gen) - 0.5;
    const double v = uniform01(gen);
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace detail

/// Draws K ~ Poisson(mean).
template <typename Gen>
std::uint64_t sample_poisson(Gen& gen, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson mean must be finite and non-negative");
  }
  if (mean == 0.0) {
    return 0;
  }
  if (mean < 10.0) {
    return detail::poisson_inversion(gen, mean);
  }
  return detail::poisson_ptrs(gen, mean);
}

}  // namespace macp
