#ifndef WLSTATS_SHUFFLE_HPP
#define WLSTATS_SHUFFLE_HPP

#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wlstats/error.hpp"
#include "wlstats/ngram.hpp"
#include "wlstats/parallel.hpp"
#include "wlstats/segment.hpp"
#include "wlstats/summation.hpp"
#include "wlstats/types.hpp"

namespace wlstats {

// Identifies the exact shuffle procedure below; recorded in every report.
// Bump the version if any step changes.
inline constexpr std::string_view kShuffleGenerator =
    "wlstats-shuffle-v1: xoshiro256** seeded by splitmix64, Lemire bounded integers, "
    "descending Fisher-Yates, seed = base_seed ^ mix(repeat, segment)";

inline constexpr std::uint64_t kDefaultBaseSeed = 0x5EEDull;

// The splitmix64 output function.
constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  constexpr std::uint64_t next() noexcept { return splitmix64_finalize(state_ += 0x9E3779B97F4A7C15ull); }

 private:
  std::uint64_t state_;
};

// mix(r, s) = F(F(r + 0x9E3779B97F4A7C15) ^ (s + 0xD1B54A32D192ED03)),
// F = splitmix64_finalize.
constexpr std::uint64_t mix_seed(std::uint64_t repeat, std::uint64_t segment) noexcept {
  return splitmix64_finalize(splitmix64_finalize(repeat + 0x9E3779B97F4A7C15ull) ^ (segment + 0xD1B54A32D192ED03ull));
}

// xoshiro256** 1.0 (Blackman & Vigna). State is filled from four
// consecutive splitmix64 outputs of the seed.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound), Lemire's multiply-and-reject method.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t s_[4]{};
};

// for i = len-1 down to 1: swap(v[i], v[below(i + 1)]).
inline void shuffle_in_place(std::span<WordLength> values, std::uint64_t seed) noexcept {
  Xoshiro256StarStar rng(seed);
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

inline std::vector<WordLength> shuffle_segment(std::span<const WordLength> values, std::uint64_t seed) {
  std::vector<WordLength> out(values.begin(), values.end());
  shuffle_in_place(out, seed);
  return out;
}

inline std::vector<WordLength> shuffle_segment(const SegmentView& segment, std::uint64_t seed) {
  return shuffle_segment(segment.values, seed);
}

struct CorrelationOptions {
  std::size_t block_len = kDefaultBlockLength;
  std::size_t repeats = 10;
  std::uint64_t base_seed = kDefaultBaseSeed;
  unsigned threads = 1;
};

// C_n = mean shuffled block entropy - original block entropy.
struct CorrelationResult {
  int n = 0;
  double c = 0.0;
  double phi_original = 0.0;
  double phi_shuffled_mean = 0.0;
  std::vector<double> phi_shuffled_per_repeat;
  std::size_t repeats = 0;
  std::uint64_t base_seed = 0;
  std::string generator{kShuffleGenerator};
};

// Each segment is shuffled on its own. Task (repeat r, segment s) uses seed
// base_seed ^ mix_seed(r, s); shuffled entropies are averaged over segments
// in index order, then over repeats, so the result does not depend on the
// thread count.
inline CorrelationResult c_n(const WordLengthSeries& series, int n, const CorrelationOptions& options = {}) {
  if (options.repeats < 1) throw ConfigError("repeats must be at least 1");
  const EntropyResult original = phi_n(series, n, options.block_len, options.threads);
  const auto segments = segment(series, options.block_len);
  const std::size_t n_seg = segments.size();

  std::vector<double> shuffled(options.repeats * n_seg);
  parallel_chunks(shuffled.size(), options.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    SegmentEntropy h;
    std::vector<WordLength> buffer;
    for (std::size_t task = begin; task < end; ++task) {
      const std::size_t r = task / n_seg;
      const std::size_t s = task % n_seg;
      buffer.assign(segments[s].values.begin(), segments[s].values.end());
      shuffle_in_place(buffer, options.base_seed ^ mix_seed(r, s));
      shuffled[task] = h(buffer, n);
    }
  });

  CorrelationResult result;
  result.n = n;
  result.repeats = options.repeats;
  result.base_seed = options.base_seed;
  result.phi_original = original.phi;
  result.phi_shuffled_per_repeat.resize(options.repeats);
  for (std::size_t r = 0; r < options.repeats; ++r) {
    result.phi_shuffled_per_repeat[r] =
        compensated_mean(std::span<const double>(shuffled).subspan(r * n_seg, n_seg));
  }
  result.phi_shuffled_mean = compensated_mean(result.phi_shuffled_per_repeat);
  result.c = result.phi_shuffled_mean - result.phi_original;
  return result;
}

}  // namespace wlstats

#endif  // WLSTATS_SHUFFLE_HPP
