#ifndef WLSTATS_CORPUS_HPP
#define WLSTATS_CORPUS_HPP

#include <glob.h>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wlstats/error.hpp"

namespace wlstats {

struct LanguageCorpus {
  std::string code;
  std::vector<std::filesystem::path> paths;
  // Filled in once the corpus has been tokenized.
  std::size_t word_count = 0;
};

// One manifest row before glob expansion.
struct ManifestEntry {
  std::string code;
  std::vector<std::string> patterns;
};

struct Manifest {
  std::filesystem::path base_dir;
  std::vector<ManifestEntry> entries;
};

inline bool is_language_tag(std::string_view code) noexcept {
  return code.size() == 2 && std::ranges::all_of(code, [](char c) { return c >= 'a' && c <= 'z'; });
}

// Returns the offset of the first byte that does not start a well-formed
// UTF-8 sequence, or nullopt when the whole buffer decodes.
inline std::optional<std::size_t> first_invalid_utf8(std::string_view bytes) noexcept {
  const auto* s = reinterpret_cast<const std::uint8_t*>(bytes.data());
  const auto length = static_cast<std::int32_t>(bytes.size());
  std::int32_t i = 0;
  while (i < length) {
    if (s[i] < 0x80) {
      ++i;
      continue;
    }
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return static_cast<std::size_t>(start);
  }
  return std::nullopt;
}

// A line is markup when its first non-whitespace character is '<'.
// Expects valid UTF-8.
inline bool is_markup_line(std::string_view line) noexcept {
  const auto* s = reinterpret_cast<const std::uint8_t*>(line.data());
  const auto length = static_cast<std::int32_t>(line.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c == '<') return true;
    if (c < 0 || !(u_isUWhiteSpace(c) || c == 0xFEFF)) return false;
  }
  return false;
}

// Streams the clean lines of one language: files in lexicographic path
// order, markup lines removed, trailing "\n" / "\r\n" stripped.
class CorpusReader {
 public:
  explicit CorpusReader(const LanguageCorpus& corpus) : paths_(corpus.paths) {
    if (paths_.empty()) throw IngestError("empty corpus for language '" + corpus.code + "'", {});
    std::ranges::sort(paths_);
    for (const auto& p : paths_) {
      std::error_code ec;
      if (!std::filesystem::is_regular_file(p, ec)) {
        throw IngestError("missing or unreadable corpus file: " + p.string(), p);
      }
    }
  }

  // Reads the next clean line into `line`. Returns false at the end of the
  // last file. Throws IngestError on undecodable bytes.
  bool next(std::string& line) {
    for (;;) {
      if (!in_.is_open()) {
        if (next_file_ >= paths_.size()) return false;
        open(paths_[next_file_++]);
      }
      if (!std::getline(in_, line)) {
        if (in_.bad()) throw IngestError("read failure: " + current_.string(), current_);
        in_.close();
        continue;
      }
      const std::uint64_t line_start = offset_;
      offset_ += line.size() + (in_.eof() ? 0 : 1);
      std::string_view view = line;
      if (line_start == 0 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
      if (auto bad = first_invalid_utf8(view)) {
        const std::uint64_t at = line_start + (line.size() - view.size()) + *bad;
        throw IngestError("invalid UTF-8 in " + current_.string() + " at byte offset " + std::to_string(at),
                          current_, at);
      }
      if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
      if (is_markup_line(view)) continue;
      if (view.size() != line.size()) line = std::string(view);
      return true;
    }
  }

  const std::vector<std::filesystem::path>& paths() const noexcept { return paths_; }

 private:
  void open(const std::filesystem::path& p) {
    in_.open(p, std::ios::binary);
    if (!in_) throw IngestError("cannot open corpus file: " + p.string(), p);
    current_ = p;
    offset_ = 0;
  }

  std::vector<std::filesystem::path> paths_;
  std::size_t next_file_ = 0;
  std::ifstream in_;
  std::filesystem::path current_;
  std::uint64_t offset_ = 0;
};

// Reads every clean line of a corpus into memory.
inline std::vector<std::string> load_corpus(const LanguageCorpus& corpus) {
  CorpusReader reader(corpus);
  std::vector<std::string> lines;
  std::string line;
  while (reader.next(line)) lines.push_back(line);
  return lines;
}

inline bool has_glob_magic(std::string_view pattern) noexcept {
  return pattern.find_first_of("*?[") != std::string_view::npos;
}

// Expands glob patterns (relative ones against `base_dir`) into a sorted,
// de-duplicated file list. A literal path that does not exist, or a
// pattern matching nothing, is an IngestError naming it.
inline std::vector<std::filesystem::path> expand_patterns(const std::vector<std::string>& patterns,
                                                          const std::filesystem::path& base_dir) {
  std::set<std::filesystem::path> found;
  for (const auto& pattern : patterns) {
    std::filesystem::path full = pattern;
    if (full.is_relative()) full = base_dir / full;
    if (!has_glob_magic(pattern)) {
      std::error_code ec;
      if (!std::filesystem::is_regular_file(full, ec)) {
        throw IngestError("missing corpus file: " + full.string(), full);
      }
      found.insert(full.lexically_normal());
      continue;
    }
    glob_t g{};
    const int rc = ::glob(full.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) {
        std::filesystem::path p = g.gl_pathv[i];
        std::error_code ec;
        if (std::filesystem::is_regular_file(p, ec)) found.insert(p.lexically_normal());
      }
    }
    ::globfree(&g);
    if (rc != 0 && rc != GLOB_NOMATCH) throw IngestError("cannot expand pattern: " + full.string(), full);
    if (rc == GLOB_NOMATCH) throw IngestError("pattern matched no files: " + full.string(), full);
  }
  return {found.begin(), found.end()};
}

inline LanguageCorpus resolve_entry(const ManifestEntry& entry, const std::filesystem::path& base_dir) {
  LanguageCorpus corpus;
  corpus.code = entry.code;
  if (entry.patterns.empty()) throw IngestError("empty corpus for language '" + entry.code + "'", {});
  corpus.paths = expand_patterns(entry.patterns, base_dir);
  return corpus;
}

// Manifest layout:
//   { "corpora": [ { "code": "en", "paths": ["en/*.txt", ...] }, ... ] }
// Relative paths are taken relative to the manifest's directory.
inline Manifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("corpora") || !doc["corpora"].is_array()) {
    throw ConfigError("manifest must be an object with a \"corpora\" array");
  }
  Manifest manifest;
  manifest.base_dir = base_dir;
  std::set<std::string> seen;
  for (const auto& row : doc["corpora"]) {
    if (!row.is_object() || !row.contains("code") || !row["code"].is_string()) {
      throw ConfigError("manifest entry without a string \"code\"");
    }
    ManifestEntry entry;
    entry.code = row["code"].get<std::string>();
    if (!is_language_tag(entry.code)) {
      throw ConfigError("language code must be two lowercase letters: '" + entry.code + "'");
    }
    if (!seen.insert(entry.code).second) throw ConfigError("duplicate language code '" + entry.code + "'");
    if (row.contains("paths")) {
      const auto& paths = row["paths"];
      if (paths.is_string()) {
        entry.patterns.push_back(paths.get<std::string>());
      } else if (paths.is_array()) {
        for (const auto& p : paths) {
          if (!p.is_string()) throw ConfigError("non-string path for '" + entry.code + "'");
          entry.patterns.push_back(p.get<std::string>());
        }
      } else {
        throw ConfigError("\"paths\" for '" + entry.code + "' must be a string or array");
      }
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

inline Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot read manifest: " + path.string(), path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_manifest(text, path.parent_path());
}

}  // namespace wlstats

#endif  // WLSTATS_CORPUS_HPP
