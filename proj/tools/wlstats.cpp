// wlstats command line: analyze corpora, compare reports, audit the tokenizer.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wlstats/wlstats.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLanguageErrors = 1;
constexpr int kExitFatal = 2;

struct TokenizerFlags {
  unsigned cap = 0;
  bool no_apostrophes = false;
  bool no_hyphens = false;
  bool digits_in_words = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--cap", cap, "Drop words longer than this many letters (0 = no cap)")->envname("WLSTATS_CAP");
    cmd.add_flag("--no-join-apostrophes", no_apostrophes, "Split words at internal apostrophes");
    cmd.add_flag("--no-join-hyphens", no_hyphens, "Split words at internal hyphens");
    cmd.add_flag("--digits-in-words", digits_in_words, "Let digits continue a word (they are never counted)");
  }

  wlstats::TokenizerOptions options() const {
    wlstats::TokenizerOptions o;
    o.join_apostrophes = !no_apostrophes;
    o.join_hyphens = !no_hyphens;
    o.digits_in_words = digits_in_words;
    if (cap > 0) o.max_word_length = cap;
    return o;
  }
};

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

void print_summary(const wlstats::CrossLanguageSummary& summary) {
  std::printf("%-4s", "lang");
  for (auto c : wlstats::kSummaryColumns) std::printf(" %10s", std::string(c).c_str());
  std::printf("\n");
  for (const auto& row : summary.rows) {
    std::printf("%-4s", row.language.c_str());
    for (const auto& v : row.values) std::printf(" %10s", cell(v).c_str());
    std::printf("\n");
  }
}

std::vector<fs::path> collect_reports(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p = in;
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && entry.path().extension() == ".json" && name != "summary.json" &&
            name != "errors.json") {
          files.push_back(entry.path());
        }
      }
    } else {
      files.push_back(p);
    }
  }
  std::ranges::sort(files);
  return files;
}

int run_analyze(wlstats::AnalysisConfig config, const std::string& format) {
  config.format = wlstats::parse_output_format(format);
  const auto result = wlstats::analyze(config);
  std::optional<wlstats::CrossLanguageSummary> summary;
  if (result.reports.size() >= 2) summary = wlstats::compare_languages(result.reports);
  const auto files = wlstats::emit_report(result, summary, config);

  for (const auto& r : result.reports) {
    std::printf("%s: %zu words, %zu segments, %zu metric errors\n", r.language.c_str(), r.word_count, r.n_segments,
                r.errors.size());
    for (const auto& e : r.errors) std::fprintf(stderr, "  %s/%s: %s\n", r.language.c_str(), e.metric.c_str(), e.message.c_str());
  }
  if (summary) print_summary(*summary);
  for (const auto& e : result.errors) std::fprintf(stderr, "error: %s: %s\n", e.language.c_str(), e.message.c_str());
  std::printf("wrote %zu files to %s\n", files.size(), config.output_dir.string().c_str());
  return result.errors.empty() ? kExitOk : kExitLanguageErrors;
}

int run_compare(const std::vector<std::string>& inputs, const std::string& out, const std::string& format) {
  std::vector<wlstats::LanguageReport> reports;
  for (const auto& path : collect_reports(inputs)) reports.push_back(wlstats::read_report(path));
  const auto summary = wlstats::compare_languages(reports);
  print_summary(summary);
  if (!out.empty()) {
    const auto fmt = wlstats::parse_output_format(format);
    fs::create_directories(out);
    if (fmt != wlstats::OutputFormat::json) wlstats::write_text_file(fs::path(out) / "summary.csv", wlstats::summary_csv(summary));
    if (fmt != wlstats::OutputFormat::csv) {
      wlstats::write_text_file(fs::path(out) / "summary.json", wlstats::summary_json(summary).dump(2) + "\n");
    }
  }
  return kExitOk;
}

int run_tokens(const std::string& manifest, const std::string& lang, const std::string& file, std::size_t count,
               const wlstats::TokenizerOptions& options) {
  wlstats::LanguageCorpus corpus;
  if (!file.empty()) {
    corpus.code = lang.empty() ? "xx" : lang;
    corpus.paths = {file};
  } else {
    const auto m = wlstats::read_manifest(manifest);
    auto it = std::ranges::find(m.entries, lang, &wlstats::ManifestEntry::code);
    if (it == m.entries.end()) throw wlstats::ConfigError("language '" + lang + "' not in manifest");
    corpus = wlstats::resolve_entry(*it, m.base_dir);
  }
  wlstats::CorpusReader reader(corpus);
  std::string line;
  std::size_t shown = 0;
  while (shown < count && reader.next(line)) {
    wlstats::for_each_token(line, options, [&](std::string_view token, wlstats::WordLength len) {
      if (shown++ < count) std::cout << token << '\t' << len << '\n';
    });
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-length statistics for text corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wlstats::kToolVersion));

  wlstats::AnalysisConfig config;
  std::string manifest, out, format = "both";
  unsigned threads = 1;
  TokenizerFlags tok;

  auto* analyze = app.add_subcommand("analyze", "Analyze every corpus of a manifest and write reports");
  analyze->add_option("--manifest", manifest, "Corpus manifest (JSON)")->required()->envname("WLSTATS_MANIFEST");
  analyze->add_option("--out", out, "Output directory")->required()->envname("WLSTATS_OUT");
  analyze->add_option("--block-len", config.block_len, "Words per segment")->envname("WLSTATS_BLOCK_LEN")->capture_default_str();
  analyze->add_option("--orders", config.orders, "n-gram orders, comma separated")
      ->delimiter(',')
      ->envname("WLSTATS_ORDERS")
      ->capture_default_str();
  analyze->add_option("--repeats", config.repeats, "Shuffles per segment")->envname("WLSTATS_REPEATS")->capture_default_str();
  analyze->add_option("--seed", config.base_seed, "Base shuffle seed")->envname("WLSTATS_SEED")->capture_default_str();
  analyze->add_option("--format", format, "Output formats")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->envname("WLSTATS_FORMAT")
      ->capture_default_str();
  analyze->add_option("--threads", threads, "Worker threads")->envname("WLSTATS_THREADS")->capture_default_str();
  analyze->add_option("--kde-grid", config.kde_grid, "KDE grid points")->envname("WLSTATS_KDE_GRID")->capture_default_str();
  tok.add_to(*analyze);

  std::vector<std::string> inputs;
  std::string compare_out, compare_format = "both";
  auto* compare = app.add_subcommand("compare", "Build the cross-language summary from report files");
  compare->add_option("reports", inputs, "Report JSON files or directories")->required();
  compare->add_option("--out", compare_out, "Directory for summary.csv / summary.json")->envname("WLSTATS_OUT");
  compare->add_option("--format", compare_format, "Output formats")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->envname("WLSTATS_FORMAT");

  std::string tok_manifest, tok_lang, tok_file;
  std::size_t tok_count = 50;
  TokenizerFlags tok_audit;
  auto* tokens = app.add_subcommand("tokens", "Print the first tokens of a corpus with their lengths");
  auto* m_opt = tokens->add_option("--manifest", tok_manifest, "Corpus manifest")->envname("WLSTATS_MANIFEST");
  tokens->add_option("--lang", tok_lang, "Language code from the manifest")->needs(m_opt);
  tokens->add_option("--file", tok_file, "Plain text file instead of a manifest")->excludes(m_opt);
  tokens->add_option("-k,--count", tok_count, "Number of tokens")->capture_default_str();
  tok_audit.add_to(*tokens);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      config.manifest = manifest;
      config.output_dir = out;
      config.threads = threads;
      config.tokenizer = tok.options();
      return run_analyze(config, format);
    }
    if (*compare) return run_compare(inputs, compare_out, compare_format);
    if (*tokens) {
      if (tok_file.empty() && (tok_manifest.empty() || tok_lang.empty())) {
        throw wlstats::ConfigError("tokens needs --file or --manifest with --lang");
      }
      return run_tokens(tok_manifest, tok_lang, tok_file, tok_count, tok_audit.options());
    }
  } catch (const wlstats::Error& e) {
    std::fprintf(stderr, "wlstats: %s\n", e.what());
    return kExitFatal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wlstats: %s\n", e.what());
    return kExitFatal;
  }
  return kExitOk;
}
