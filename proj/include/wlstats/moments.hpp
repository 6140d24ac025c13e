#ifndef WLSTATS_MOMENTS_HPP
#define WLSTATS_MOMENTS_HPP

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wlstats/error.hpp"
#include "wlstats/frequency.hpp"
#include "wlstats/segment.hpp"
#include "wlstats/summation.hpp"
#include "wlstats/types.hpp"

namespace wlstats {

// Population moments of word lengths. Skewness and kurtosis (non-excess)
// are empty when the standard deviation is zero.
struct MomentSummary {
  double mean = 0.0;
  double sd = 0.0;
  std::optional<double> skewness;
  std::optional<double> kurtosis;
  std::size_t n_segments = 1;
};

namespace detail {

// Central moments from a value histogram: the mean comes from exact integer
// sums, then each distinct value contributes count * d^k once.
template <typename Histogram>
MomentSummary moments_from_histogram(const Histogram& histogram, std::uint64_t n, std::uint64_t sum) {
  const double count = static_cast<double>(n);
  const double mean = static_cast<double>(sum) / count;
  CompensatedSum m2, m3, m4;
  for (const auto& [value, c] : histogram) {
    if (c == 0) continue;
    const double d = static_cast<double>(value) - mean;
    const double w = static_cast<double>(c);
    const double d2 = d * d;
    m2.add(w * d2);
    m3.add(w * d2 * d);
    m4.add(w * d2 * d2);
  }
  MomentSummary out;
  out.mean = mean;
  const double var = m2.value() / count;
  out.sd = std::sqrt(var);
  if (var > 0.0) {
    out.skewness = (m3.value() / count) / (var * out.sd);
    out.kurtosis = (m4.value() / count) / (var * var);
  }
  return out;
}

}  // namespace detail

inline MomentSummary moments(std::span<const WordLength> values) {
  if (values.empty()) throw DomainError("moments of an empty segment");
  std::uint64_t sum = 0;
  WordLength max_value = 0;
  for (WordLength v : values) {
    sum += v;
    max_value = std::max(max_value, v);
  }
  if (max_value < 4096) {
    std::vector<std::pair<WordLength, std::uint64_t>> histogram(max_value + 1);
    for (WordLength v = 0; v <= max_value; ++v) histogram[v].first = v;
    for (WordLength v : values) ++histogram[v].second;
    return detail::moments_from_histogram(histogram, values.size(), sum);
  }
  std::map<WordLength, std::uint64_t> histogram;
  for (WordLength v : values) ++histogram[v];
  return detail::moments_from_histogram(histogram, values.size(), sum);
}

inline MomentSummary moments(const SegmentView& segment) { return moments(segment.values); }

// Field-wise arithmetic mean. Undefined skewness/kurtosis values are left
// out of those two means only; n_segments is the input length.
inline MomentSummary average_moments(std::span<const MomentSummary> per_segment) {
  if (per_segment.empty()) throw DomainError("no complete segments");
  CompensatedSum mean, sd, skew, kurt;
  std::size_t n_skew = 0, n_kurt = 0;
  for (const auto& m : per_segment) {
    mean.add(m.mean);
    sd.add(m.sd);
    if (m.skewness) {
      skew.add(*m.skewness);
      ++n_skew;
    }
    if (m.kurtosis) {
      kurt.add(*m.kurtosis);
      ++n_kurt;
    }
  }
  const double n = static_cast<double>(per_segment.size());
  MomentSummary out;
  out.mean = mean.value() / n;
  out.sd = sd.value() / n;
  if (n_skew) out.skewness = skew.value() / static_cast<double>(n_skew);
  if (n_kurt) out.kurtosis = kurt.value() / static_cast<double>(n_kurt);
  out.n_segments = per_segment.size();
  return out;
}

inline std::vector<MomentSummary> segment_moments(const WordLengthSeries& series,
                                                  std::size_t block_len = kDefaultBlockLength) {
  std::vector<MomentSummary> out;
  for (const auto& seg : segment(series, block_len)) out.push_back(moments(seg));
  return out;
}

// Moments of the unsegmented series.
inline MomentSummary whole_series_moments(const WordLengthSeries& series) { return moments(series.view()); }

// Corpus-level probability of each word length.
inline FrequencyTable unigram_distribution(const WordLengthSeries& series) {
  if (series.empty()) throw DomainError("unigram distribution of an empty series");
  return count_ngrams(series.view(), 1);
}

}  // namespace wlstats

#endif  // WLSTATS_MOMENTS_HPP
