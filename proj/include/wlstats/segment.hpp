#ifndef WLSTATS_SEGMENT_HPP
#define WLSTATS_SEGMENT_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "wlstats/error.hpp"
#include "wlstats/types.hpp"

namespace wlstats {

inline constexpr std::size_t kDefaultBlockLength = 1000;

// Non-owning window onto a series; valid while the series is alive.
struct SegmentView {
  std::string_view language;
  std::size_t index = 0;
  std::span<const WordLength> values;

  std::size_t size() const noexcept { return values.size(); }
};

inline void check_block_length(std::size_t block_len) {
  if (block_len < 2) throw ConfigError("block length must be at least 2, got " + std::to_string(block_len));
}

inline std::size_t segment_count(std::size_t series_length, std::size_t block_len) {
  check_block_length(block_len);
  return series_length / block_len;
}

// Consecutive disjoint blocks of exactly `block_len` words. The trailing
// partial block is dropped.
inline std::vector<SegmentView> segment(const WordLengthSeries& series,
                                        std::size_t block_len = kDefaultBlockLength) {
  const std::size_t count = segment_count(series.size(), block_len);
  std::vector<SegmentView> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({series.language, i, series.view().subspan(i * block_len, block_len)});
  }
  return out;
}

}  // namespace wlstats

#endif  // WLSTATS_SEGMENT_HPP
