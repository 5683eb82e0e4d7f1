#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "derange/arith.hpp"
#include "derange/sequences.hpp"

namespace derange {

struct TermKey {
  Family family = Family::Derangement;
  std::vector<unsigned> params;
  unsigned n = 0;

  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

/// `family\tparams\tn\tvalue`, the record shared by `seq` output and the cache.
std::string format_term_tsv(const TermKey& key, const BigInt& value);

/// Parses one term record. Throws std::invalid_argument describing the defect.
std::pair<TermKey, BigInt> parse_term_tsv(const std::string& line);

/// A cache line that does not parse.
class CacheFormatError : public std::runtime_error {
 public:
  CacheFormatError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Two values for one key: stored vs stored, or stored vs recomputed.
class CacheConflict : public std::runtime_error {
 public:
  CacheConflict(const TermKey& key, const BigInt& cached, const BigInt& computed);
};

/// Append-only text cache of term records.
class TermCache {
 public:
  /// Reads path if it exists; a missing file is an empty cache.
  static TermCache open(std::filesystem::path path);

  std::optional<BigInt> lookup(const TermKey& key) const;

  /// Stores a freshly computed value; it is appended on flush().
  void insert(const TermKey& key, const BigInt& value);

  /// Appends pending records to the file.
  void flush();

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  explicit TermCache(std::filesystem::path path) : path_(std::move(path)) {}

  std::filesystem::path path_;
  std::map<TermKey, BigInt> entries_;
  std::vector<std::string> pending_;
};

}  // namespace derange
