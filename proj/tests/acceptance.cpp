// Acceptance runner. Prints one PASS/FAIL/SKIP line per criterion.
//
//   wlstats_acceptance            run everything
//   wlstats_acceptance 3 5        run only criteria 3 and 5
//
// Exit status: 0 when nothing failed, 1 on any failure, 77 when every
// selected criterion was skipped.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "wlstats/wlstats.hpp"

using namespace wlstats;
using Clock = std::chrono::steady_clock;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      status = Status::fail;
      failures.push_back(what);
    }
  }
};

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(1e-300, std::fabs(b)); }

WordLengthSeries prose_series() {
  LanguageCorpus corpus{"en", {oracle::fixture("en_prose.txt")}, 0};
  return to_series(corpus);
}

// Two-state chain over lengths 2 and 7 that switches state with probability 0.9.
WordLengthSeries markov_series(std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(0.9);
  WordLengthSeries s{"mk", {}};
  bool state = false;
  for (std::size_t i = 0; i < length; ++i) {
    if (flip(rng)) state = !state;
    s.values.push_back(state ? 7 : 2);
  }
  return s;
}

WordLengthSeries iid_series(std::size_t length, WordLength max_value, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return {"ii", oracle::random_values(rng, length, max_value)};
}

// 1. Gliding tables and entropies against naive enumeration.
Outcome oracle_equivalence() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t tables = 0;
  long double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t length = 10 + rng() % 9991;
    const auto alphabet = static_cast<WordLength>(1 + rng() % 20);
    const auto v = oracle::random_values(rng, length, alphabet);
    for (int n = 1; n <= 3; ++n) {
      const auto table = count_ngrams(v, n);
      const auto naive = oracle::naive_ngrams(v, n);
      bool same = table.entries.size() == naive.size() && table.total == length - static_cast<std::size_t>(n) + 1;
      auto it = naive.begin();
      for (std::size_t i = 0; same && i < table.entries.size(); ++i, ++it) {
        const auto& e = table.entries[i];
        same = std::ranges::equal(e.gram.values(), it->first) && e.count == it->second;
      }
      out.check(same, "table mismatch trial " + std::to_string(trial) + " n=" + std::to_string(n));
      const long double err = std::fabs(static_cast<long double>(entropy(table)) - oracle::shannon(naive));
      worst = std::max(worst, err);
      ++tables;
    }
  }
  const double elapsed = seconds_since(start);
  out.check(worst <= 1e-12, "entropy error " + fmt(static_cast<double>(worst)));
  out.check(elapsed < 60.0, "runtime " + fmt(elapsed) + " s");
  out.detail = std::to_string(tables) + " tables exact, max entropy error " + fmt(static_cast<double>(worst), 3) +
               ", " + fmt(elapsed, 3) + " s";
  return out;
}

// 2. Per-segment moments against a two-pass oracle.
Outcome moment_correctness() {
  Outcome out;
  std::mt19937_64 rng(77);
  std::vector<oracle::Values> segments;
  for (int i = 0; i < 2000; ++i) {
    segments.push_back(oracle::random_values(rng, 1000, static_cast<WordLength>(2 + rng() % 19)));
  }
  const auto prose = prose_series();
  for (const auto& seg : segment(prose)) segments.emplace_back(seg.values.begin(), seg.values.end());

  double worst = 0;
  std::size_t bound_violations = 0, on_bound = 0;
  for (const auto& v : segments) {
    const auto m = moments(v);
    const auto o = oracle::two_pass_moments(v);
    if (!m.skewness || !m.kurtosis) {
      out.check(false, "undefined shape statistics on a varying segment");
      continue;
    }
    for (auto [got, want] : {std::pair{m.mean, o.mean}, std::pair{m.sd, o.sd}, std::pair{*m.skewness, o.skewness},
                             std::pair{*m.kurtosis, o.kurtosis}}) {
      worst = std::max(worst, static_cast<double>(std::fabs(got - want) / std::max(1.0L, std::fabs(want))));
    }
    // Two-valued segments sit exactly on the bound, so allow rounding there.
    const double bound = 1.0 + *m.skewness * *m.skewness;
    if (*m.kurtosis < bound * (1.0 - 1e-14)) ++bound_violations;
    if (std::fabs(*m.kurtosis - bound) <= 1e-14 * bound) ++on_bound;
  }
  out.check(worst <= 1e-10, "relative error " + fmt(worst));
  out.check(bound_violations == 0, std::to_string(bound_violations) + " segments below 1 + skewness^2");

  bool constant_ok = true;
  for (WordLength c : {1u, 5u, 19u}) {
    const auto m = moments(std::vector<WordLength>(1000, c));
    constant_ok = constant_ok && m.sd == 0.0 && !m.skewness && !m.kurtosis;
  }
  out.check(constant_ok, "constant segment not marked undefined");
  out.detail = std::to_string(segments.size()) + " segments, max relative error " + fmt(worst, 3) +
               ", Pearson bound violations " + std::to_string(bound_violations) +
               " (" + std::to_string(on_bound) + " two-valued segments at equality)";
  return out;
}

// 3. C_1 = 0, shuffles are permutations, thread count does not matter.
Outcome shuffle_invariants() {
  Outcome out;
  const std::vector<WordLengthSeries> fixtures = {prose_series(), iid_series(50000, 20, 3), markov_series(50000, 4)};
  double worst_c1 = 0;
  std::size_t permutations = 0;
  for (const auto& s : fixtures) {
    worst_c1 = std::max(worst_c1, std::fabs(c_n(s, 1).c));
    for (const auto& seg : segment(s)) {
      oracle::Values sorted_in(seg.values.begin(), seg.values.end());
      std::ranges::sort(sorted_in);
      for (std::uint64_t r = 0; r < 3; ++r) {
        auto shuffled = shuffle_segment(seg, kDefaultBaseSeed ^ mix_seed(r, seg.index));
        std::ranges::sort(shuffled);
        out.check(shuffled == sorted_in, "shuffle is not a permutation in " + s.language);
        ++permutations;
      }
    }
    for (int n = 2; n <= 3; ++n) {
      const auto one = c_n(s, n, {kDefaultBlockLength, 10, 4242, 1});
      const auto eight = c_n(s, n, {kDefaultBlockLength, 10, 4242, 8});
      out.check(one.c == eight.c && one.phi_shuffled_per_repeat == eight.phi_shuffled_per_repeat,
                "C_" + std::to_string(n) + " differs between 1 and 8 threads on " + s.language);
    }
  }
  out.check(worst_c1 <= 1e-12, "|C_1| = " + fmt(worst_c1));
  out.detail = "max |C_1| " + fmt(worst_c1, 3) + ", " + std::to_string(permutations) +
               " shuffles checked, C_2/C_3 identical at 1 and 8 threads";
  return out;
}

// 4. No correlation on i.i.d. data, clear correlation on an alternating chain.
Outcome null_correlation() {
  Outcome out;
  const auto iid = iid_series(100 * 1000, 12, 404);
  const CorrelationOptions opts{kDefaultBlockLength, 10, kDefaultBaseSeed, 1};
  const double c2 = c_n(iid, 2, opts).c;
  const double c3 = c_n(iid, 3, opts).c;
  out.check(std::fabs(c2) < 0.01, "i.i.d. |C_2| = " + fmt(c2));
  out.check(std::fabs(c3) < 0.01, "i.i.d. |C_3| = " + fmt(c3));

  const auto chain = markov_series(100 * 1000, 405);
  const auto mk = c_n(chain, 2, opts);
  out.check(mk.c >= 10.0 * std::fabs(c2), "chain C_2 " + fmt(mk.c) + " < 10x i.i.d.");

  // Expected shuffled entropy by brute force: many independent shuffles
  // per segment, averaged the same way as C_n.
  long double expected = 0;
  std::size_t index = 0;
  const auto segs = segment(chain);
  for (const auto& seg : segs) {
    expected += oracle::simulated_shuffled_entropy(oracle::Values(seg.values.begin(), seg.values.end()), 2, 40, 9000 + index++);
  }
  expected /= static_cast<long double>(segs.size());
  const double gap = std::fabs(mk.phi_shuffled_mean - static_cast<double>(expected));
  out.check(gap < 0.002, "shuffled entropy off the brute-force value by " + fmt(gap));
  out.detail = "i.i.d. C_2 " + fmt(c2, 3) + ", C_3 " + fmt(c3, 3) + "; chain C_2 " + fmt(mk.c) +
               ", shuffled entropy vs brute force " + fmt(gap, 3);
  return out;
}

// Independent draws from the prose word-length distribution. A uniform
// alphabet would make skewness ~0 and relative differences meaningless.
WordLengthSeries resampled_prose(std::size_t length, std::uint64_t seed) {
  const auto prose = prose_series();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, prose.size() - 1);
  WordLengthSeries s{"rs", {}};
  for (std::size_t i = 0; i < length; ++i) s.values.push_back(prose.values[pick(rng)]);
  return s;
}

// 5. Whole-series moments against the segment average, all four moments.
Outcome segmented_vs_whole() {
  Outcome out;
  const std::vector<WordLengthSeries> fixtures = {prose_series(), resampled_prose(150000, 5), markov_series(150000, 6)};
  std::string detail;
  for (const auto& s : fixtures) {
    if (segment_count(s.size(), kDefaultBlockLength) < 100) {
      out.check(false, s.language + " has fewer than 100 segments");
      continue;
    }
    const auto whole = whole_series_moments(s);
    const auto avg = average_moments(segment_moments(s));
    const std::pair<const char*, std::pair<double, double>> rows[] = {
        {"mean", {avg.mean, whole.mean}},
        {"sd", {avg.sd, whole.sd}},
        {"skewness", {avg.skewness.value_or(NAN), whole.skewness.value_or(NAN)}},
        {"kurtosis", {avg.kurtosis.value_or(NAN), whole.kurtosis.value_or(NAN)}}};
    double worst = 0;
    for (const auto& [name, values] : rows) {
      const double d = rel_diff(values.first, values.second);
      out.check(d < 0.01, s.language + " " + name + " differs by " + fmt(100 * d, 3) + "%");
      worst = std::max(worst, d);
    }
    if (!detail.empty()) detail += ", ";
    detail += s.language + " max " + fmt(100 * worst, 3) + "%";
  }
  out.detail = detail;
  return out;
}

// 6. Orderings across ten Europarl languages. Needs data supplied by the user.
Outcome europarl_reproduction() {
  Outcome out;
  const char* manifest = std::getenv("WLSTATS_EUROPARL_MANIFEST");
  if (!manifest || !*manifest) {
    out.status = Status::skip;
    out.detail = "set WLSTATS_EUROPARL_MANIFEST to a manifest with en fi de sv nl fr it es pt el";
    return out;
  }
  oracle::TempDir dir("europarl");
  AnalysisConfig config;
  config.manifest = manifest;
  config.output_dir = dir.path();
  config.threads = std::max(1u, std::thread::hardware_concurrency());
  const auto start = Clock::now();
  const auto result = analyze(config);
  const double elapsed = seconds_since(start);
  for (const auto& e : result.errors) out.check(false, e.language + ": " + e.message);

  std::map<std::string, const LanguageReport*> by_code;
  for (const auto& r : result.reports) by_code[r.language] = &r;
  const std::vector<std::string> all = {"en", "fi", "de", "sv", "nl", "fr", "it", "es", "pt", "el"};
  for (const auto& code : all) {
    if (!by_code.count(code)) {
      out.check(false, "missing language " + code);
      out.detail = "incomplete manifest";
      return out;
    }
    const auto* r = by_code[code];
    out.check(r->word_count >= 100000, code + " has only " + std::to_string(r->word_count) + " words");
    out.check(r->moments && r->entropy(1) && r->correlation(2) && r->correlation(3), code + " missing metrics");
  }
  if (out.status == Status::fail) {
    out.detail = "incomplete reports";
    return out;
  }

  auto metric = [&](const std::string& code, const std::string& name) -> double {
    const auto* r = by_code[code];
    if (name == "mean") return r->moments->mean;
    if (name == "sd") return r->moments->sd;
    if (name == "kurtosis") return r->moments->kurtosis.value_or(NAN);
    if (name == "phi_1") return r->entropy(1)->phi;
    if (name == "c_2") return r->correlation(2)->c;
    return r->correlation(3)->c;
  };
  auto extreme = [&](const std::string& name, bool max) {
    std::string best = all.front();
    for (const auto& code : all) {
      if (max ? metric(code, name) > metric(best, name) : metric(code, name) < metric(best, name)) best = code;
    }
    return best;
  };

  const double en_mean = metric("en", "mean");
  const double fi_mean = metric("fi", "mean");
  out.check(std::fabs(en_mean - 4.9) <= 0.3, "en mean " + fmt(en_mean));
  out.check(std::fabs(fi_mean - 8.0) <= 0.5, "fi mean " + fmt(fi_mean));
  out.check(extreme("mean", false) == "en", "mean minimum is " + extreme("mean", false));
  out.check(extreme("mean", true) == "fi", "mean maximum is " + extreme("mean", true));
  out.check(extreme("sd", true) == "fi", "sd maximum is " + extreme("sd", true));
  out.check(extreme("phi_1", true) == "fi", "phi_1 maximum is " + extreme("phi_1", true));

  const std::vector<std::string> germanic = {"de", "sv", "nl"};
  const std::vector<std::string> romance_greek = {"fr", "it", "es", "pt", "el"};
  double germanic_min = INFINITY, other_max = -INFINITY;
  for (const auto& g : germanic) germanic_min = std::min(germanic_min, metric(g, "kurtosis"));
  for (const auto& o : romance_greek) other_max = std::max(other_max, metric(o, "kurtosis"));
  out.check(germanic_min > other_max, "kurtosis groups overlap");
  const double en_kurt = metric("en", "kurtosis");
  out.check(en_kurt > other_max && en_kurt < germanic_min, "en kurtosis " + fmt(en_kurt) + " not between groups");

  for (const std::string name : {"c_2", "c_3"}) {
    double low_max = -INFINITY, high_min = INFINITY;
    for (const auto& g : {"de", "sv", "nl", "fi"}) low_max = std::max(low_max, metric(g, name));
    for (const auto& o : {"fr", "it", "es", "pt", "el", "en"}) high_min = std::min(high_min, metric(o, name));
    out.check(low_max < high_min, name + " groups overlap");
  }
  out.check(elapsed < 300.0, "runtime " + fmt(elapsed) + " s");
  out.detail = "en mean " + fmt(en_mean) + ", fi mean " + fmt(fi_mean) + ", " + fmt(elapsed, 3) + " s";
  return out;
}

// 7. KDE normalisation and peak height.
Outcome kde_check() {
  Outcome out;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::vector<double> samples(10000);
  for (auto& x : samples) x = normal(rng);
  const auto curve = kde(samples);
  const double integral = trapezoid(curve.grid, curve.density);
  const double peak = *std::ranges::max_element(curve.density);
  out.check(std::fabs(integral - 1.0) <= 1e-6, "normal curve integrates to " + fmt(integral, 10));
  out.check(std::fabs(peak - 0.3989) <= 0.05, "peak " + fmt(peak));

  // Curves from real per-segment metrics as well.
  const auto prose = prose_series();
  const auto segs = segment_moments(prose);
  std::vector<double> means, phis;
  for (const auto& m : segs) means.push_back(m.mean);
  phis = phi_n(prose, 2).per_segment;
  double worst = std::fabs(integral - 1.0);
  for (const auto* v : {&means, &phis}) {
    const auto c = kde(*v);
    const double i = trapezoid(c.grid, c.density);
    worst = std::max(worst, std::fabs(i - 1.0));
    out.check(std::fabs(i - 1.0) <= 1e-6, "metric curve integrates to " + fmt(i, 10));
  }
  out.detail = "peak " + fmt(peak) + ", max |integral - 1| " + fmt(worst, 3);
  return out;
}

// 8. Throughput and end-to-end time on a million words.
Outcome performance() {
  Outcome out;
  std::vector<std::string> base;
  {
    std::ifstream in(oracle::fixture("en_prose.txt"));
    std::string line;
    while (std::getline(in, line)) base.push_back(line);
  }
  std::vector<std::string> lines;
  std::size_t words = 0;
  const std::size_t per_copy = prose_series().size();
  while (words < 1000000) {
    lines.insert(lines.end(), base.begin(), base.end());
    words += per_copy;
  }

  auto start = Clock::now();
  const auto series = to_series(lines, "en");
  const auto uni = unigram_distribution(series);
  const double tokenize_s = seconds_since(start);
  const double rate = static_cast<double>(series.size()) / tokenize_s;
  out.check(uni.total == series.size(), "unigram total mismatch");
  out.check(rate >= 1e6, "tokenize + unigram at " + fmt(rate / 1e6, 3) + "M words/s");

  AnalysisConfig config;
  config.repeats = 10;
  const WordLengthSeries million{"en", std::vector<WordLength>(series.values.begin(), series.values.begin() + 1000000)};
  start = Clock::now();
  const auto report = analyze_series(million, config, 1);
  const double pipeline_s = seconds_since(start);
  out.check(report.errors.empty(), "pipeline reported metric errors");
  out.check(report.correlations.size() == 2, "missing correlations");
  out.check(pipeline_s < 60.0, "pipeline took " + fmt(pipeline_s) + " s");
  out.detail = fmt(rate / 1e6, 3) + "M words/s tokenize+count, 1M-word pipeline " + fmt(pipeline_s, 3) + " s";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", oracle_equivalence},   {2, "moment correctness", moment_correctness},
      {3, "shuffle invariants", shuffle_invariants},   {4, "null correlation", null_correlation},
      {5, "segmented vs whole", segmented_vs_whole},   {6, "europarl reproduction", europarl_reproduction},
      {7, "kde", kde_check},                           {8, "performance", performance},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::ranges::find(selected, c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.status = Status::fail;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    std::cout << "criterion " << c.id << " (" << c.name << "): " << tag << " - " << o.detail;
    if (!o.failures.empty()) {
      std::cout << " [";
      for (std::size_t i = 0; i < o.failures.size(); ++i) std::cout << (i ? "; " : "") << o.failures[i];
      std::cout << "]";
    }
    std::cout << std::endl;
    (o.status == Status::pass ? passed : o.status == Status::fail ? failed : skipped)++;
  }
  if (failed) return 1;
  if (passed == 0 && skipped > 0) return 77;
  return 0;
}
