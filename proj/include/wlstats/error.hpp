#ifndef WLSTATS_ERROR_HPP
#define WLSTATS_ERROR_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace wlstats {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration values (block length, orders, repeats, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input that a computation cannot be defined on: empty tables, no complete
// segments, zero-spread samples, tokens without letters.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Failure while reading a corpus. Carries the offending path and, for
// decoding failures, the byte offset inside that file.
class IngestError : public Error {
 public:
  IngestError(std::string what, std::filesystem::path path,
              std::optional<std::uint64_t> byte_offset = std::nullopt)
      : Error(std::move(what)), path_(std::move(path)), byte_offset_(byte_offset) {}

  const std::filesystem::path& path() const noexcept { return path_; }
  std::optional<std::uint64_t> byte_offset() const noexcept { return byte_offset_; }

 private:
  std::filesystem::path path_;
  std::optional<std::uint64_t> byte_offset_;
};

}  // namespace wlstats

#endif  // WLSTATS_ERROR_HPP
