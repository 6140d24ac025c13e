#ifndef WLSTATS_CSV_HPP
#define WLSTATS_CSV_HPP

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wlstats/error.hpp"
#include "wlstats/kde.hpp"
#include "wlstats/moments.hpp"
#include "wlstats/ngram.hpp"

namespace wlstats {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline std::string format_optional(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

inline double parse_double(std::string_view text) {
  double x = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), x);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw Error("not a number: '" + std::string(text) + "'");
  }
  return x;
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw Error("write failed for " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string rank_table_csv(const RankTable& table) {
  std::string out = "rank,gram,probability\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.rank);
    out += ',';
    out += row.gram.to_string();
    out += ',';
    out += format_double(row.probability);
    out += '\n';
  }
  return out;
}

inline Gram parse_gram(std::string_view text) {
  std::vector<WordLength> values;
  for (auto field : split_fields(text, ' ')) {
    WordLength v = 0;
    const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
    if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
      throw Error("bad gram '" + std::string(text) + "'");
    }
    values.push_back(v);
  }
  if (values.empty() || values.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw Error("bad gram '" + std::string(text) + "'");
  }
  return Gram(values);
}

inline RankTable parse_rank_table_csv(std::string_view text) {
  RankTable table;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line_no++ == 0 || line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) throw Error("rank CSV row needs 3 fields: '" + std::string(line) + "'");
    RankRow row;
    row.rank = static_cast<std::size_t>(parse_double(fields[0]));
    row.gram = parse_gram(fields[1]);
    row.probability = parse_double(fields[2]);
    if (table.rows.empty()) table.n = row.gram.order();
    table.rows.push_back(row);
  }
  return table;
}

inline RankTable read_rank_table_csv(const std::filesystem::path& path) {
  return parse_rank_table_csv(read_text_file(path));
}

// One row per segment, then a "corpus" row with the segment average.
inline std::string moments_csv(std::span<const MomentSummary> per_segment, const MomentSummary& corpus) {
  std::string out = "segment,mean,sd,skewness,kurtosis\n";
  auto row = [&](const std::string& label, const MomentSummary& m) {
    out += label + ',' + format_double(m.mean) + ',' + format_double(m.sd) + ',' + format_optional(m.skewness) +
           ',' + format_optional(m.kurtosis) + '\n';
  };
  for (std::size_t i = 0; i < per_segment.size(); ++i) row(std::to_string(i), per_segment[i]);
  row("corpus", corpus);
  return out;
}

inline std::string entropy_csv(std::span<const EntropyResult> results) {
  std::string out = "segment";
  for (const auto& r : results) out += ",phi_" + std::to_string(r.n);
  out += '\n';
  const std::size_t rows = results.empty() ? 0 : results.front().per_segment.size();
  for (std::size_t s = 0; s < rows; ++s) {
    out += std::to_string(s);
    for (const auto& r : results) out += ',' + format_double(r.per_segment[s]);
    out += '\n';
  }
  out += "corpus";
  for (const auto& r : results) out += ',' + format_double(r.phi);
  out += '\n';
  return out;
}

inline std::string unigram_csv(const FrequencyTable& table) {
  std::string out = "length,count,probability\n";
  for (const auto& e : table.entries) {
    out += std::to_string(e.gram[0]) + ',' + std::to_string(e.count) + ',' + format_double(e.probability) + '\n';
  }
  return out;
}

inline std::string density_csv(const DensityCurve& curve) {
  std::string out = "x,density\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out += format_double(curve.grid[i]) + ',' + format_double(curve.density[i]) + '\n';
  }
  return out;
}

}  // namespace wlstats

#endif  // WLSTATS_CSV_HPP
