#ifndef WLSTATS_TOKENIZER_HPP
#define WLSTATS_TOKENIZER_HPP

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

#include "wlstats/corpus.hpp"
#include "wlstats/error.hpp"
#include "wlstats/types.hpp"

namespace wlstats {

struct TokenizerOptions {
  // Keep "don't" / "stop-gap" as one word when the joiner sits between
  // two word characters.
  bool join_apostrophes = true;
  bool join_hyphens = true;
  // Digits continue a word ("b2b") instead of splitting it. They never
  // count toward the length.
  bool digits_in_words = false;
  // Words longer than this are dropped. Disabled when unset.
  std::optional<WordLength> max_word_length;
};

namespace detail {

enum class CharClass : std::uint8_t { other, letter, mark, digit, apostrophe, hyphen };

inline CharClass classify_non_ascii(UChar32 c) noexcept {
  if (c == 0x2019) return CharClass::apostrophe;
  if (c == 0x2010 || c == 0x2011) return CharClass::hyphen;
  if (c == 0x200C || c == 0x200D) return CharClass::mark;
  const std::uint32_t mask = U_GET_GC_MASK(c);
  if (mask & U_GC_L_MASK) return CharClass::letter;
  if (mask & U_GC_M_MASK) return CharClass::mark;
  if (mask & U_GC_ND_MASK) return CharClass::digit;
  return CharClass::other;
}

inline constexpr std::array<CharClass, 128> kAsciiClass = [] {
  std::array<CharClass, 128> t{};
  for (int c = 'a'; c <= 'z'; ++c) t[c] = CharClass::letter;
  for (int c = 'A'; c <= 'Z'; ++c) t[c] = CharClass::letter;
  for (int c = '0'; c <= '9'; ++c) t[c] = CharClass::digit;
  t['\''] = CharClass::apostrophe;
  t['-'] = CharClass::hyphen;
  return t;
}();

// Decodes one code point at `i` (advancing it) and classifies it.
inline CharClass next_class(const std::uint8_t* s, std::int32_t& i, std::int32_t length,
                            UChar32& c) noexcept {
  if (s[i] < 0x80) {
    c = s[i++];
    return kAsciiClass[static_cast<std::size_t>(c)];
  }
  U8_NEXT(s, i, length, c);
  if (c < 0) return CharClass::other;
  return classify_non_ascii(c);
}

// Blocks in which every letter is its own grapheme cluster base and marks
// only ever extend the preceding letter (Latin, Greek, Cyrillic).
inline bool simple_cluster_code_point(UChar32 c) noexcept {
  return c < 0x0590 || (c >= 0x1D00 && c <= 0x1FFF) || (c >= 0x2010 && c <= 0x2019) ||
         c == 0x200C || c == 0x200D;
}

inline icu::BreakIterator& grapheme_iterator() {
  thread_local std::unique_ptr<icu::BreakIterator> it = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> bi(icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status) || !bi) throw Error("cannot create ICU grapheme break iterator");
    return bi;
  }();
  return *it;
}

inline std::size_t count_letter_clusters_icu(std::string_view token) {
  const icu::UnicodeString text = icu::UnicodeString::fromUTF8(icu::StringPiece(token.data(), static_cast<std::int32_t>(token.size())));
  icu::BreakIterator& it = grapheme_iterator();
  it.setText(text);
  std::size_t clusters = 0;
  std::int32_t start = it.first();
  for (std::int32_t end = it.next(); end != icu::BreakIterator::DONE; start = end, end = it.next()) {
    for (std::int32_t i = start; i < end;) {
      const UChar32 c = text.char32At(i);
      if (U_GET_GC_MASK(c) & U_GC_L_MASK) {
        ++clusters;
        break;
      }
      i += U16_LENGTH(c);
    }
  }
  return clusters;
}

}  // namespace detail

// Number of grapheme clusters in `token` that contain a letter. Combining
// marks, apostrophes, hyphens and digits add nothing. The token must be
// valid UTF-8 and contain a letter; a letterless token is a DomainError.
inline WordLength word_length(std::string_view token) {
  const auto* s = reinterpret_cast<const std::uint8_t*>(token.data());
  const auto length = static_cast<std::int32_t>(token.size());
  std::size_t letters = 0;
  bool simple = true;
  for (std::int32_t i = 0; i < length;) {
    UChar32 c;
    if (detail::next_class(s, i, length, c) == detail::CharClass::letter) ++letters;
    if (c >= 0x80 && !detail::simple_cluster_code_point(c)) simple = false;
  }
  if (!simple) letters = detail::count_letter_clusters_icu(token);
  if (letters == 0) throw DomainError("token without letters: '" + std::string(token) + "'");
  return static_cast<WordLength>(letters);
}

// Calls `sink(token, length)` for every word of `line` in order. A word is
// a maximal run of letters (with attached combining marks), optionally
// joined across a single internal apostrophe or hyphen; runs without any
// letter are skipped, and so are words above the configured cap.
template <typename Sink>
void for_each_token(std::string_view line, const TokenizerOptions& options, Sink&& sink) {
  using detail::CharClass;
  const auto* s = reinterpret_cast<const std::uint8_t*>(line.data());
  const auto length = static_cast<std::int32_t>(line.size());

  bool in_token = false;
  bool has_letter = false;
  bool pending_joiner = false;
  std::int32_t start = 0;
  std::int32_t end = 0;

  auto flush = [&] {
    if (in_token && has_letter) {
      const std::string_view token = line.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(end - start));
      const WordLength len = word_length(token);
      if (!options.max_word_length || len <= *options.max_word_length) sink(token, len);
    }
    in_token = has_letter = pending_joiner = false;
  };

  for (std::int32_t i = 0; i < length;) {
    const std::int32_t pos = i;
    UChar32 c;
    const CharClass cls = detail::next_class(s, i, length, c);
    const bool word_char = cls == CharClass::letter || (cls == CharClass::digit && options.digits_in_words);
    if (word_char) {
      if (!in_token) {
        in_token = true;
        start = pos;
      }
      pending_joiner = false;
      end = i;
      if (cls == CharClass::letter) has_letter = true;
    } else if (cls == CharClass::mark && in_token && !pending_joiner) {
      end = i;
    } else if (in_token && !pending_joiner &&
               ((cls == CharClass::apostrophe && options.join_apostrophes) ||
                (cls == CharClass::hyphen && options.join_hyphens))) {
      pending_joiner = true;
    } else {
      flush();
    }
  }
  flush();
}

inline std::vector<std::string_view> tokenize(std::string_view line, const TokenizerOptions& options = {}) {
  std::vector<std::string_view> tokens;
  for_each_token(line, options, [&](std::string_view token, WordLength) { tokens.push_back(token); });
  return tokens;
}

// Appends the word lengths of one line to `series`.
inline void append_line(WordLengthSeries& series, std::string_view line, const TokenizerOptions& options = {}) {
  for_each_token(line, options, [&](std::string_view, WordLength len) { series.values.push_back(len); });
}

template <std::ranges::input_range Lines>
  requires std::convertible_to<std::ranges::range_reference_t<Lines>, std::string_view>
WordLengthSeries to_series(Lines&& lines, std::string language, const TokenizerOptions& options = {}) {
  WordLengthSeries series{std::move(language), {}};
  for (auto&& line : lines) append_line(series, std::string_view(line), options);
  return series;
}

// Streams a corpus from disk and records its word count.
inline WordLengthSeries to_series(LanguageCorpus& corpus, const TokenizerOptions& options = {}) {
  WordLengthSeries series{corpus.code, {}};
  CorpusReader reader(corpus);
  std::string line;
  while (reader.next(line)) append_line(series, line, options);
  corpus.word_count = series.size();
  return series;
}

}  // namespace wlstats

#endif  // WLSTATS_TOKENIZER_HPP
