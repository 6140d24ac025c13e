#ifndef WLSTATS_NGRAM_HPP
#define WLSTATS_NGRAM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "wlstats/error.hpp"
#include "wlstats/frequency.hpp"
#include "wlstats/parallel.hpp"
#include "wlstats/segment.hpp"
#include "wlstats/summation.hpp"
#include "wlstats/types.hpp"

namespace wlstats {

// Block entropy of one order: phi is the mean of the per-segment values.
struct EntropyResult {
  int n = 0;
  double phi = 0.0;
  std::vector<double> per_segment;
  std::size_t n_segments = 0;
};

struct RankRow {
  std::size_t rank = 0;
  Gram gram;
  double probability = 0.0;
};

struct RankTable {
  int n = 0;
  std::vector<RankRow> rows;
};

namespace detail {

// Accumulates -sum p ln p. Callers feed counts in ascending gram order so
// that every code path sums the same terms in the same order.
class EntropyAccumulator {
 public:
  explicit EntropyAccumulator(std::uint64_t total) : total_(total) {}

  void add(std::uint64_t count) {
    const double p = probability_of(count, total_);
    sum_.add(p * std::log(p));
  }

  double value() const noexcept {
    const double h = -sum_.value();
    return h == 0.0 ? 0.0 : h;
  }

 private:
  std::uint64_t total_;
  CompensatedSum sum_;
};

}  // namespace detail

// Shannon entropy in nats of a frequency table.
inline double entropy(const FrequencyTable& table) {
  if (table.empty() || table.total == 0) throw DomainError("entropy of an empty table");
  detail::EntropyAccumulator acc(table.total);
  for (const auto& e : table.entries) acc.add(e.count);
  return acc.value();
}

// Computes entropy(count_ngrams(values, n)) without materializing the table.
// Keeps a scratch buffer, so one instance per thread.
class SegmentEntropy {
 public:
  double operator()(std::span<const WordLength> values, int n) {
    detail::check_window(values, n);
    if (!detail::packable(values, n)) return entropy(count_ngrams(values, n));
    keys_.clear();
    detail::pack_windows(values, n, keys_);
    detail::EntropyAccumulator acc(keys_.size());
    detail::count_sorted_runs(keys_, [&](std::uint64_t, std::uint64_t count) { acc.add(count); });
    return acc.value();
  }

 private:
  std::vector<std::uint64_t> keys_;
};

inline double segment_entropy(std::span<const WordLength> values, int n) {
  SegmentEntropy e;
  return e(values, n);
}

// Mean block entropy over the complete segments of a series.
inline EntropyResult phi_n(const WordLengthSeries& series, int n, std::size_t block_len = kDefaultBlockLength,
                           unsigned threads = 1) {
  check_order(n);
  const auto segments = segment(series, block_len);
  if (segments.empty()) throw DomainError("no complete segments");
  if (static_cast<std::size_t>(n) > block_len) {
    throw DomainError("n-gram order " + std::to_string(n) + " exceeds block length " + std::to_string(block_len));
  }
  EntropyResult result;
  result.n = n;
  result.n_segments = segments.size();
  result.per_segment.resize(segments.size());
  parallel_chunks(segments.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    SegmentEntropy h;
    for (std::size_t s = begin; s < end; ++s) result.per_segment[s] = h(segments[s].values, n);
  });
  result.phi = compensated_mean(result.per_segment);
  return result;
}

// Rows by descending probability, ties by ascending gram.
inline RankTable rank_table(const FrequencyTable& table) {
  if (table.empty()) throw DomainError("rank table of an empty frequency table");
  std::vector<const FrequencyEntry*> order;
  order.reserve(table.entries.size());
  for (const auto& e : table.entries) order.push_back(&e);
  std::ranges::stable_sort(order, [](const FrequencyEntry* a, const FrequencyEntry* b) {
    if (a->count != b->count) return a->count > b->count;
    return a->gram < b->gram;
  });
  RankTable out{table.n, {}};
  out.rows.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out.rows.push_back({i + 1, order[i]->gram, order[i]->probability});
  return out;
}

}  // namespace wlstats

#endif  // WLSTATS_NGRAM_HPP
