// Reference implementations used only by the tests. They follow the
// textbook definitions directly and share no code with the library.
#ifndef WLSTATS_TESTS_ORACLES_HPP
#define WLSTATS_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "wlstats/types.hpp"

namespace oracle {

using Values = std::vector<wlstats::WordLength>;
using GramCounts = std::map<std::vector<wlstats::WordLength>, std::uint64_t>;

// Every stride-1 window, enumerated and counted one by one.
inline GramCounts naive_ngrams(const Values& v, int n) {
  GramCounts counts;
  for (std::size_t j = 0; j + static_cast<std::size_t>(n) <= v.size(); ++j) {
    std::vector<wlstats::WordLength> gram;
    for (int k = 0; k < n; ++k) gram.push_back(v[j + static_cast<std::size_t>(k)]);
    ++counts[gram];
  }
  return counts;
}

// -sum p ln p in long double.
inline long double shannon(const GramCounts& counts) {
  long double total = 0;
  for (const auto& [g, c] : counts) total += static_cast<long double>(c);
  long double h = 0;
  for (const auto& [g, c] : counts) {
    const long double p = static_cast<long double>(c) / total;
    h -= p * std::log(p);
  }
  return h;
}

struct Moments {
  long double mean, sd, skewness, kurtosis;
};

// Two passes over the raw values: mean first, then central sums.
inline Moments two_pass_moments(const Values& v) {
  long double sum = 0;
  for (auto x : v) sum += x;
  const long double mean = sum / static_cast<long double>(v.size());
  long double m2 = 0, m3 = 0, m4 = 0;
  for (auto x : v) {
    const long double d = static_cast<long double>(x) - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const long double n = static_cast<long double>(v.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const long double sd = std::sqrt(m2);
  return {mean, sd, m3 / (sd * sd * sd), m4 / (m2 * m2)};
}

// Expected entropy of the n-grams of a uniformly shuffled segment,
// estimated with an unrelated generator and std::shuffle.
inline long double simulated_shuffled_entropy(Values v, int n, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  long double acc = 0;
  for (int t = 0; t < trials; ++t) {
    std::shuffle(v.begin(), v.end(), rng);
    acc += shannon(naive_ngrams(v, n));
  }
  return acc / trials;
}

inline Values random_values(std::mt19937_64& rng, std::size_t length, wlstats::WordLength max_value) {
  std::uniform_int_distribution<wlstats::WordLength> dist(1, max_value);
  Values v(length);
  for (auto& x : v) x = dist(rng);
  return v;
}

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(WLSTATS_FIXTURE_DIR) / name; }

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("wlstats_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace oracle

#endif  // WLSTATS_TESTS_ORACLES_HPP
