#ifndef WLSTATS_FREQUENCY_HPP
#define WLSTATS_FREQUENCY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "wlstats/error.hpp"
#include "wlstats/segment.hpp"
#include "wlstats/types.hpp"

namespace wlstats {

struct FrequencyEntry {
  Gram gram;
  std::uint64_t count = 0;
  double probability = 0.0;
};

// Counts of the distinct n-grams of one order. `entries` is sorted by
// ascending gram; probability is exactly count / total.
struct FrequencyTable {
  int n = 0;
  std::uint64_t total = 0;
  std::vector<FrequencyEntry> entries;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t distinct() const noexcept { return entries.size(); }

  const FrequencyEntry* find(const Gram& gram) const {
    auto it = std::ranges::lower_bound(entries, gram, {}, &FrequencyEntry::gram);
    return it != entries.end() && it->gram == gram ? &*it : nullptr;
  }
};

inline void check_order(int n) {
  if (n < 1 || n > kMaxOrder) {
    throw ConfigError("n-gram order must be in 1.." + std::to_string(kMaxOrder) + ", got " + std::to_string(n));
  }
}

inline double probability_of(std::uint64_t count, std::uint64_t total) noexcept {
  return static_cast<double>(count) / static_cast<double>(total);
}

namespace detail {

// Bits per word length when an n-gram is packed into one 64-bit key, with
// the first element in the most significant position so that key order
// equals lexicographic gram order.
inline constexpr int packed_bits(int n) noexcept { return n == 1 ? 64 : 64 / n; }

inline bool packable(std::span<const WordLength> values, int n) noexcept {
  const int bits = packed_bits(n);
  if (bits >= 32) return true;
  const WordLength limit = WordLength{1} << bits;
  return std::ranges::all_of(values, [limit](WordLength v) { return v < limit; });
}

inline Gram unpack(std::uint64_t key, int n) {
  const int bits = packed_bits(n);
  const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  std::array<WordLength, kMaxOrder> v{};
  for (int i = n - 1; i >= 0; --i) {
    v[static_cast<std::size_t>(i)] = static_cast<WordLength>(key & mask);
    key = bits == 64 ? 0 : key >> bits;
  }
  return Gram(std::span<const WordLength>(v.data(), static_cast<std::size_t>(n)));
}

// Appends the packed key of every stride-1 window of `values` to `keys`.
inline void pack_windows(std::span<const WordLength> values, int n, std::vector<std::uint64_t>& keys) {
  const int bits = packed_bits(n);
  const std::size_t windows = values.size() - static_cast<std::size_t>(n) + 1;
  const std::uint64_t mask = bits * n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << (bits * n)) - 1;
  std::uint64_t key = 0;
  for (int i = 0; i < n - 1; ++i) key = (key << bits) | values[static_cast<std::size_t>(i)];
  for (std::size_t j = 0; j < windows; ++j) {
    const std::uint64_t v = values[j + static_cast<std::size_t>(n) - 1];
    key = (bits == 64 ? v : ((key << bits) | v)) & mask;
    keys.push_back(key);
  }
}

// Sorts `keys` in place and emits (key, run length) pairs in ascending key order.
template <typename Emit>
void count_sorted_runs(std::vector<std::uint64_t>& keys, Emit&& emit) {
  std::ranges::sort(keys);
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    emit(keys[i], static_cast<std::uint64_t>(j - i));
    i = j;
  }
}

inline void check_window(std::span<const WordLength> values, int n) {
  check_order(n);
  if (static_cast<std::size_t>(n) > values.size()) {
    throw DomainError("n-gram order " + std::to_string(n) + " exceeds sequence length " +
                      std::to_string(values.size()));
  }
}

}  // namespace detail

// Mergeable gram counts for one order. Merging is associative and
// commutative, so partial counters built over disjoint window ranges can
// be combined in any order.
class NGramCounter {
 public:
  explicit NGramCounter(int n) : n_(n) { check_order(n); }

  int order() const noexcept { return n_; }
  std::uint64_t total() const noexcept { return total_; }

  // Counts every window of length n that lies fully inside `values`.
  void add_windows(std::span<const WordLength> values) {
    if (values.size() < static_cast<std::size_t>(n_)) return;
    const std::size_t windows = values.size() - static_cast<std::size_t>(n_) + 1;
    if (detail::packable(values, n_)) {
      std::vector<std::uint64_t> keys;
      keys.reserve(windows);
      detail::pack_windows(values, n_, keys);
      for (std::uint64_t k : keys) ++packed_[k];
    } else {
      for (std::size_t j = 0; j < windows; ++j) ++wide_[Gram(values.subspan(j, static_cast<std::size_t>(n_)))];
    }
    total_ += windows;
  }

  void merge(const NGramCounter& other) {
    if (other.n_ != n_) throw ConfigError("cannot merge counters of different orders");
    for (const auto& [k, c] : other.packed_) packed_[k] += c;
    for (const auto& [g, c] : other.wide_) wide_[g] += c;
    total_ += other.total_;
  }

  FrequencyTable table() const {
    std::map<Gram, std::uint64_t> all(wide_.begin(), wide_.end());
    for (const auto& [k, c] : packed_) all[detail::unpack(k, n_)] += c;
    FrequencyTable t{n_, total_, {}};
    t.entries.reserve(all.size());
    for (const auto& [g, c] : all) t.entries.push_back({g, c, probability_of(c, total_)});
    return t;
  }

 private:
  int n_;
  std::uint64_t total_ = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> packed_;
  std::map<Gram, std::uint64_t> wide_;
};

// Gliding count: the K = len - n + 1 overlapping windows of `values`.
inline FrequencyTable count_ngrams(std::span<const WordLength> values, int n) {
  detail::check_window(values, n);
  FrequencyTable table{n, values.size() - static_cast<std::size_t>(n) + 1, {}};
  if (detail::packable(values, n)) {
    std::vector<std::uint64_t> keys;
    keys.reserve(table.total);
    detail::pack_windows(values, n, keys);
    detail::count_sorted_runs(keys, [&](std::uint64_t key, std::uint64_t count) {
      table.entries.push_back({detail::unpack(key, n), count, probability_of(count, table.total)});
    });
    return table;
  }
  NGramCounter counter(n);
  counter.add_windows(values);
  return counter.table();
}

inline FrequencyTable count_ngrams(const SegmentView& segment, int n) { return count_ngrams(segment.values, n); }

// Gliding count over a whole series, windows crossing segment boundaries.
// Work is split into `threads` contiguous window ranges whose counters are
// merged; the table does not depend on the thread count.
inline FrequencyTable corpus_ngrams(std::span<const WordLength> values, int n, unsigned threads = 1) {
  detail::check_window(values, n);
  const std::size_t windows = values.size() - static_cast<std::size_t>(n) + 1;
  const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(threads, windows / 65536 + 1));
  std::vector<NGramCounter> partial(parts, NGramCounter(n));
  auto work = [&](std::size_t p) {
    const std::size_t begin = windows * p / parts;
    const std::size_t end = windows * (p + 1) / parts;
    partial[p].add_windows(values.subspan(begin, end - begin + static_cast<std::size_t>(n) - 1));
  };
  if (parts == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t p = 0; p < parts; ++p) pool.emplace_back(work, p);
  }
  for (std::size_t p = 1; p < parts; ++p) partial[0].merge(partial[p]);
  return partial[0].table();
}

}  // namespace wlstats

#endif  // WLSTATS_FREQUENCY_HPP
