#ifndef WLSTATS_REPORT_HPP
#define WLSTATS_REPORT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "wlstats/corpus.hpp"
#include "wlstats/csv.hpp"
#include "wlstats/error.hpp"
#include "wlstats/kde.hpp"
#include "wlstats/moments.hpp"
#include "wlstats/ngram.hpp"
#include "wlstats/parallel.hpp"
#include "wlstats/shuffle.hpp"
#include "wlstats/tokenizer.hpp"

namespace wlstats {

enum class OutputFormat { json, csv, both };

inline std::string_view to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::both: return "both";
  }
  return "both";
}

inline OutputFormat parse_output_format(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "both") return OutputFormat::both;
  throw ConfigError("format must be json, csv or both, got '" + std::string(s) + "'");
}

inline constexpr int kReportSchemaVersion = 1;

struct AnalysisConfig {
  std::filesystem::path manifest;
  std::size_t block_len = kDefaultBlockLength;
  std::vector<int> orders{1, 2, 3};
  std::size_t repeats = 10;
  std::uint64_t base_seed = kDefaultBaseSeed;
  TokenizerOptions tokenizer;
  std::filesystem::path output_dir;
  OutputFormat format = OutputFormat::both;
  std::size_t kde_grid = kDefaultKdeGrid;
  // Never changes results, so it is not echoed into reports.
  unsigned threads = 1;

  void validate() const {
    check_block_length(block_len);
    if (orders.empty()) throw ConfigError("at least one n-gram order is required");
    std::set<int> seen;
    for (int n : orders) {
      check_order(n);
      if (!seen.insert(n).second) throw ConfigError("duplicate n-gram order " + std::to_string(n));
    }
    if (repeats < 1) throw ConfigError("repeats must be at least 1");
    if (tokenizer.max_word_length && *tokenizer.max_word_length < 1) throw ConfigError("cap must be positive");
    if (kde_grid < 2) throw ConfigError("KDE grid needs at least two points");
  }
};

// A metric that could not be computed for a language, and why.
struct MetricError {
  std::string metric;
  std::string message;
};

// A language whose corpus could not be turned into a series at all.
struct LanguageError {
  std::string language;
  std::string message;
};

struct LanguageReport {
  std::string language;
  std::size_t word_count = 0;
  std::size_t n_segments = 0;
  std::optional<MomentSummary> moments;
  std::optional<MomentSummary> whole_series_moments;
  std::vector<MomentSummary> segment_moments;
  std::optional<FrequencyTable> unigram;
  std::vector<EntropyResult> entropies;
  std::vector<CorrelationResult> correlations;
  std::vector<RankTable> rank_tables;
  std::map<std::string, DensityCurve> densities;
  std::vector<MetricError> errors;

  const EntropyResult* entropy(int n) const {
    auto it = std::ranges::find(entropies, n, &EntropyResult::n);
    return it == entropies.end() ? nullptr : &*it;
  }
  const CorrelationResult* correlation(int n) const {
    auto it = std::ranges::find(correlations, n, &CorrelationResult::n);
    return it == correlations.end() ? nullptr : &*it;
  }
};

struct AnalysisResult {
  std::vector<LanguageReport> reports;
  std::vector<LanguageError> errors;
};

namespace detail {

template <typename F>
void record_errors(LanguageReport& report, const std::string& metric, F&& compute) {
  try {
    compute();
  } catch (const DomainError& e) {
    report.errors.push_back({metric, e.what()});
  } catch (const ConfigError& e) {
    report.errors.push_back({metric, e.what()});
  }
}

inline void add_density(LanguageReport& report, const std::string& metric, const std::vector<double>& samples,
                        std::size_t grid) {
  record_errors(report, "kde_" + metric, [&] { report.densities.emplace(metric, kde(samples, grid)); });
}

}  // namespace detail

// Every metric for one series. Metrics that cannot be computed become
// MetricError records instead of exceptions.
inline LanguageReport analyze_series(const WordLengthSeries& series, const AnalysisConfig& config,
                                     unsigned threads = 1) {
  LanguageReport report;
  report.language = series.language;
  report.word_count = series.size();
  report.n_segments = segment_count(series.size(), config.block_len);

  std::vector<int> orders = config.orders;
  std::ranges::sort(orders);

  detail::record_errors(report, "whole_series_moments", [&] { report.whole_series_moments = whole_series_moments(series); });
  detail::record_errors(report, "unigram_distribution", [&] { report.unigram = unigram_distribution(series); });
  detail::record_errors(report, "moments", [&] {
    report.segment_moments = segment_moments(series, config.block_len);
    report.moments = average_moments(report.segment_moments);
  });

  for (int n : orders) {
    detail::record_errors(report, "rank_n" + std::to_string(n),
                          [&] { report.rank_tables.push_back(rank_table(corpus_ngrams(series.view(), n, threads))); });
    detail::record_errors(report, "phi_" + std::to_string(n),
                          [&] { report.entropies.push_back(phi_n(series, n, config.block_len, threads)); });
    if (n >= 2) {
      detail::record_errors(report, "c_" + std::to_string(n), [&] {
        CorrelationOptions opts{config.block_len, config.repeats, config.base_seed, threads};
        report.correlations.push_back(c_n(series, n, opts));
      });
    }
  }

  if (report.segment_moments.size() >= 2) {
    std::vector<double> mean, sd, skew, kurt;
    for (const auto& m : report.segment_moments) {
      mean.push_back(m.mean);
      sd.push_back(m.sd);
      if (m.skewness) skew.push_back(*m.skewness);
      if (m.kurtosis) kurt.push_back(*m.kurtosis);
    }
    detail::add_density(report, "mean", mean, config.kde_grid);
    detail::add_density(report, "sd", sd, config.kde_grid);
    detail::add_density(report, "skewness", skew, config.kde_grid);
    detail::add_density(report, "kurtosis", kurt, config.kde_grid);
    for (const auto& e : report.entropies) {
      detail::add_density(report, "phi_" + std::to_string(e.n), e.per_segment, config.kde_grid);
    }
  } else {
    report.errors.push_back({"kde", "fewer than two complete segments"});
  }
  return report;
}

// Runs the pipeline for every manifest language. A language whose corpus
// cannot be read yields a LanguageError and the others still run. Reports
// are ordered as in the manifest.
inline AnalysisResult analyze(const AnalysisConfig& config) {
  config.validate();
  const Manifest manifest = read_manifest(config.manifest);
  const std::size_t languages = manifest.entries.size();
  std::vector<std::optional<LanguageReport>> reports(languages);
  std::vector<std::optional<LanguageError>> errors(languages);
  const unsigned outer = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(config.threads, languages)));
  const unsigned inner = std::max(1u, config.threads / outer);

  parallel_chunks(languages, outer, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& entry = manifest.entries[i];
      WordLengthSeries series;
      try {
        LanguageCorpus corpus = resolve_entry(entry, manifest.base_dir);
        series = to_series(corpus, config.tokenizer);
      } catch (const IngestError& e) {
        errors[i] = LanguageError{entry.code, e.what()};
        continue;
      }
      reports[i] = analyze_series(series, config, inner);
    }
  });

  AnalysisResult result;
  for (std::size_t i = 0; i < languages; ++i) {
    if (reports[i]) result.reports.push_back(std::move(*reports[i]));
    if (errors[i]) result.errors.push_back(std::move(*errors[i]));
  }
  return result;
}

// ---- cross-language summary ----

inline constexpr std::array<std::string_view, 9> kSummaryColumns = {"mean", "sd",   "skewness", "kurtosis", "phi_1",
                                                                    "phi_2", "phi_3", "c_2",     "c_3"};

struct SummaryRow {
  std::string language;
  std::array<std::optional<double>, kSummaryColumns.size()> values;
  // 1 = largest value in the column.
  std::array<std::size_t, kSummaryColumns.size()> ranks{};
};

struct CrossLanguageSummary {
  std::vector<SummaryRow> rows;

  const SummaryRow* row(std::string_view language) const {
    auto it = std::ranges::find(rows, language, &SummaryRow::language);
    return it == rows.end() ? nullptr : &*it;
  }

  static std::size_t column(std::string_view name) {
    auto it = std::ranges::find(kSummaryColumns, name);
    if (it == kSummaryColumns.end()) throw ConfigError("unknown summary column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - kSummaryColumns.begin());
  }
};

// One row per language (sorted by code) with per-column ranks. Ranks run
// from the largest value down; equal values rank by language code and
// missing values rank last.
inline CrossLanguageSummary compare_languages(std::span<const LanguageReport> reports) {
  if (reports.size() < 2) throw ConfigError("comparison needs at least two language reports");
  CrossLanguageSummary summary;
  for (const auto& r : reports) {
    SummaryRow row;
    row.language = r.language;
    if (r.moments) {
      row.values[0] = r.moments->mean;
      row.values[1] = r.moments->sd;
      row.values[2] = r.moments->skewness;
      row.values[3] = r.moments->kurtosis;
    }
    for (int n = 1; n <= 3; ++n) {
      if (const auto* e = r.entropy(n)) row.values[static_cast<std::size_t>(3 + n)] = e->phi;
    }
    for (int n = 2; n <= 3; ++n) {
      if (const auto* c = r.correlation(n)) row.values[static_cast<std::size_t>(5 + n)] = c->c;
    }
    summary.rows.push_back(std::move(row));
  }
  std::ranges::sort(summary.rows, {}, &SummaryRow::language);

  for (std::size_t col = 0; col < kSummaryColumns.size(); ++col) {
    std::vector<std::size_t> order(summary.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
      const auto& va = summary.rows[a].values[col];
      const auto& vb = summary.rows[b].values[col];
      if (va.has_value() != vb.has_value()) return va.has_value();
      return va && *va > *vb;
    });
    for (std::size_t rank = 0; rank < order.size(); ++rank) summary.rows[order[rank]].ranks[col] = rank + 1;
  }
  return summary;
}

inline std::string summary_csv(const CrossLanguageSummary& summary) {
  std::string out = "language";
  for (auto c : kSummaryColumns) out += ',' + std::string(c);
  for (auto c : kSummaryColumns) out += ",rank_" + std::string(c);
  out += '\n';
  for (const auto& row : summary.rows) {
    out += row.language;
    for (const auto& v : row.values) out += ',' + format_optional(v);
    for (auto r : row.ranks) out += ',' + std::to_string(r);
    out += '\n';
  }
  return out;
}

// ---- JSON ----

namespace detail {

inline nlohmann::json optional_json(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(); }

inline std::optional<double> optional_from_json(const nlohmann::json& j) {
  return j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
}

inline nlohmann::json moments_json(const MomentSummary& m) {
  return {{"mean", m.mean},
          {"sd", m.sd},
          {"skewness", optional_json(m.skewness)},
          {"kurtosis", optional_json(m.kurtosis)},
          {"n_segments", m.n_segments}};
}

inline MomentSummary moments_from_json(const nlohmann::json& j) {
  MomentSummary m;
  m.mean = j.at("mean").get<double>();
  m.sd = j.at("sd").get<double>();
  m.skewness = optional_from_json(j.at("skewness"));
  m.kurtosis = optional_from_json(j.at("kurtosis"));
  m.n_segments = j.at("n_segments").get<std::size_t>();
  return m;
}

}  // namespace detail

inline std::string rank_file_name(std::string_view language, int n) {
  return std::string(language) + "_rank_n" + std::to_string(n) + ".csv";
}

inline std::string density_file_name(std::string_view language, std::string_view metric) {
  return std::string(language) + "_kde_" + std::string(metric) + ".csv";
}

inline nlohmann::json config_json(const AnalysisConfig& config) {
  return {{"manifest", config.manifest.generic_string()},
          {"block_len", config.block_len},
          {"orders", config.orders},
          {"repeats", config.repeats},
          {"base_seed", config.base_seed},
          {"kde_grid", config.kde_grid},
          {"format", to_string(config.format)},
          {"tokenizer",
           {{"join_apostrophes", config.tokenizer.join_apostrophes},
            {"join_hyphens", config.tokenizer.join_hyphens},
            {"digits_in_words", config.tokenizer.digits_in_words},
            {"max_word_length", config.tokenizer.max_word_length ? nlohmann::json(*config.tokenizer.max_word_length)
                                                                  : nlohmann::json()}}}};
}

inline nlohmann::json report_json(const LanguageReport& report, const AnalysisConfig& config) {
  using nlohmann::json;
  const bool csv = config.format != OutputFormat::json;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["generator"] = kShuffleGenerator;
  j["config"] = config_json(config);
  j["language"] = report.language;
  j["word_count"] = report.word_count;
  j["n_segments"] = report.n_segments;
  j["moments"] = report.moments ? detail::moments_json(*report.moments) : json();
  j["whole_series_moments"] = report.whole_series_moments ? detail::moments_json(*report.whole_series_moments) : json();

  json seg = {{"mean", json::array()}, {"sd", json::array()}, {"skewness", json::array()}, {"kurtosis", json::array()}};
  for (const auto& m : report.segment_moments) {
    seg["mean"].push_back(m.mean);
    seg["sd"].push_back(m.sd);
    seg["skewness"].push_back(detail::optional_json(m.skewness));
    seg["kurtosis"].push_back(detail::optional_json(m.kurtosis));
  }
  j["segment_moments"] = seg;

  j["unigram_distribution"] = json::array();
  if (report.unigram) {
    for (const auto& e : report.unigram->entries) {
      j["unigram_distribution"].push_back({{"length", e.gram[0]}, {"count", e.count}, {"probability", e.probability}});
    }
  }

  j["entropies"] = json::array();
  for (const auto& e : report.entropies) {
    j["entropies"].push_back({{"n", e.n}, {"phi", e.phi}, {"n_segments", e.n_segments}, {"per_segment", e.per_segment}});
  }

  j["correlations"] = json::array();
  for (const auto& c : report.correlations) {
    j["correlations"].push_back({{"n", c.n},
                                 {"c", c.c},
                                 {"phi_original", c.phi_original},
                                 {"phi_shuffled_mean", c.phi_shuffled_mean},
                                 {"phi_shuffled_per_repeat", c.phi_shuffled_per_repeat},
                                 {"repeats", c.repeats},
                                 {"base_seed", c.base_seed},
                                 {"generator", c.generator}});
  }

  j["rank_tables"] = json::array();
  for (const auto& t : report.rank_tables) {
    j["rank_tables"].push_back({{"n", t.n},
                                {"distinct", t.rows.size()},
                                {"file", csv ? json(rank_file_name(report.language, t.n)) : json()}});
  }

  j["kde"] = json::array();
  for (const auto& [metric, curve] : report.densities) {
    j["kde"].push_back({{"metric", metric},
                        {"bandwidth", curve.bandwidth},
                        {"grid_size", curve.grid.size()},
                        {"file", csv ? json(density_file_name(report.language, metric)) : json()}});
  }

  j["errors"] = json::array();
  for (const auto& e : report.errors) j["errors"].push_back({{"metric", e.metric}, {"message", e.message}});
  return j;
}

// Rebuilds the parts of a report that live in its JSON file. Rank rows and
// density curves are only in the CSV side files and come back empty.
inline LanguageReport report_from_json(const nlohmann::json& j) {
  LanguageReport r;
  try {
    r.language = j.at("language").get<std::string>();
    r.word_count = j.at("word_count").get<std::size_t>();
    r.n_segments = j.at("n_segments").get<std::size_t>();
    if (!j.at("moments").is_null()) r.moments = detail::moments_from_json(j["moments"]);
    if (!j.at("whole_series_moments").is_null()) r.whole_series_moments = detail::moments_from_json(j["whole_series_moments"]);
    const auto& seg = j.at("segment_moments");
    for (std::size_t i = 0; i < seg.at("mean").size(); ++i) {
      MomentSummary m;
      m.mean = seg["mean"][i].get<double>();
      m.sd = seg["sd"][i].get<double>();
      m.skewness = detail::optional_from_json(seg["skewness"][i]);
      m.kurtosis = detail::optional_from_json(seg["kurtosis"][i]);
      r.segment_moments.push_back(m);
    }
    if (!j.at("unigram_distribution").empty()) {
      FrequencyTable t{1, 0, {}};
      for (const auto& e : j["unigram_distribution"]) {
        const auto count = e.at("count").get<std::uint64_t>();
        t.entries.push_back({Gram{e.at("length").get<WordLength>()}, count, e.at("probability").get<double>()});
        t.total += count;
      }
      r.unigram = std::move(t);
    }
    for (const auto& e : j.at("entropies")) {
      EntropyResult er;
      er.n = e.at("n").get<int>();
      er.phi = e.at("phi").get<double>();
      er.n_segments = e.at("n_segments").get<std::size_t>();
      er.per_segment = e.at("per_segment").get<std::vector<double>>();
      r.entropies.push_back(std::move(er));
    }
    for (const auto& e : j.at("correlations")) {
      CorrelationResult c;
      c.n = e.at("n").get<int>();
      c.c = e.at("c").get<double>();
      c.phi_original = e.at("phi_original").get<double>();
      c.phi_shuffled_mean = e.at("phi_shuffled_mean").get<double>();
      c.phi_shuffled_per_repeat = e.at("phi_shuffled_per_repeat").get<std::vector<double>>();
      c.repeats = e.at("repeats").get<std::size_t>();
      c.base_seed = e.at("base_seed").get<std::uint64_t>();
      c.generator = e.at("generator").get<std::string>();
      r.correlations.push_back(std::move(c));
    }
    for (const auto& e : j.at("errors")) {
      r.errors.push_back({e.at("metric").get<std::string>(), e.at("message").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report JSON: ") + e.what());
  }
  return r;
}

inline LanguageReport read_report(const std::filesystem::path& path) {
  try {
    return report_from_json(nlohmann::json::parse(read_text_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("cannot parse " + path.string() + ": " + e.what());
  }
}

inline nlohmann::json summary_json(const CrossLanguageSummary& summary) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : summary.rows) {
    nlohmann::json values, ranks;
    for (std::size_t c = 0; c < kSummaryColumns.size(); ++c) {
      values[std::string(kSummaryColumns[c])] = detail::optional_json(row.values[c]);
      ranks[std::string(kSummaryColumns[c])] = row.ranks[c];
    }
    rows.push_back({{"language", row.language}, {"values", values}, {"ranks", ranks}});
  }
  return {{"columns", kSummaryColumns}, {"rows", rows}};
}

// Writes <lang>.json and (csv formats) <lang>_moments.csv,
// <lang>_entropy.csv, <lang>_unigram.csv, <lang>_correlation.csv,
// <lang>_rank_n<k>.csv, <lang>_kde_<metric>.csv, plus summary.{csv,json}
// and errors.json when applicable. Returns the files written.
inline std::vector<std::filesystem::path> emit_report(const AnalysisResult& result,
                                                      const std::optional<CrossLanguageSummary>& summary,
                                                      const AnalysisConfig& config) {
  namespace fs = std::filesystem;
  const fs::path& dir = config.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error("cannot create output directory " + dir.string());

  const bool json_out = config.format != OutputFormat::csv;
  const bool csv_out = config.format != OutputFormat::json;
  std::vector<fs::path> written;
  auto write = [&](const std::string& name, const std::string& text) {
    write_text_file(dir / name, text);
    written.push_back(dir / name);
  };

  for (const auto& r : result.reports) {
    const std::string& lang = r.language;
    if (json_out) write(lang + ".json", report_json(r, config).dump(2) + "\n");
    if (!csv_out) continue;
    if (r.moments) write(lang + "_moments.csv", moments_csv(r.segment_moments, *r.moments));
    if (!r.entropies.empty()) write(lang + "_entropy.csv", entropy_csv(r.entropies));
    if (r.unigram) write(lang + "_unigram.csv", unigram_csv(*r.unigram));
    if (!r.correlations.empty()) {
      std::string text = "n,c,phi_original,phi_shuffled_mean,repeats,base_seed\n";
      for (const auto& c : r.correlations) {
        text += std::to_string(c.n) + ',' + format_double(c.c) + ',' + format_double(c.phi_original) + ',' +
                format_double(c.phi_shuffled_mean) + ',' + std::to_string(c.repeats) + ',' +
                std::to_string(c.base_seed) + '\n';
      }
      write(lang + "_correlation.csv", text);
    }
    for (const auto& t : r.rank_tables) write(rank_file_name(lang, t.n), rank_table_csv(t));
    for (const auto& [metric, curve] : r.densities) write(density_file_name(lang, metric), density_csv(curve));
  }

  if (summary) {
    if (csv_out) write("summary.csv", summary_csv(*summary));
    if (json_out) write("summary.json", summary_json(*summary).dump(2) + "\n");
  }
  if (!result.errors.empty()) {
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& e : result.errors) errors.push_back({{"language", e.language}, {"message", e.message}});
    write("errors.json", errors.dump(2) + "\n");
  }
  return written;
}

}  // namespace wlstats

#endif  // WLSTATS_REPORT_HPP
