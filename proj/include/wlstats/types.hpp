#ifndef WLSTATS_TYPES_HPP
#define WLSTATS_TYPES_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wlstats {

inline constexpr std::string_view kToolName = "wlstats";
inline constexpr std::string_view kToolVersion = "1.0.0";

// Letters per word. Always >= 1 inside a series.
using WordLength = std::uint32_t;

// Largest supported n-gram order.
inline constexpr int kMaxOrder = 8;

struct WordLengthSeries {
  std::string language;
  std::vector<WordLength> values;

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  std::span<const WordLength> view() const noexcept { return values; }
};

// A tuple of 1..kMaxOrder consecutive word lengths. Ordering is
// lexicographic over the used prefix, shorter tuples first on a tie.
class Gram {
 public:
  Gram() = default;

  explicit Gram(std::span<const WordLength> values)
      : order_(static_cast<std::uint8_t>(std::min<std::size_t>(values.size(), kMaxOrder))) {
    std::copy_n(values.begin(), order_, values_.begin());
  }

  Gram(std::initializer_list<WordLength> values)
      : Gram(std::span<const WordLength>(values.begin(), values.size())) {}

  int order() const noexcept { return order_; }
  WordLength operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const WordLength> values() const noexcept { return {values_.data(), order_}; }

  friend bool operator==(const Gram& a, const Gram& b) noexcept {
    return std::ranges::equal(a.values(), b.values());
  }

  friend std::strong_ordering operator<=>(const Gram& a, const Gram& b) noexcept {
    return std::lexicographical_compare_three_way(a.values_.begin(), a.values_.begin() + a.order_,
                                                  b.values_.begin(), b.values_.begin() + b.order_);
  }

  // Space-separated decimal lengths, e.g. "3 1 4".
  std::string to_string() const {
    std::string out;
    for (int i = 0; i < order_; ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(values_[i]);
    }
    return out;
  }

 private:
  std::array<WordLength, kMaxOrder> values_{};
  std::uint8_t order_ = 0;
};

}  // namespace wlstats

#endif  // WLSTATS_TYPES_HPP
