#include "derange/term_cache.hpp"

#include <charconv>
#include <fstream>

namespace derange {

namespace {

unsigned parse_unsigned(const std::string& text, const char* what) {
  unsigned value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw std::invalid_argument(std::string("bad ") + what + " '" + text + "'");
  return value;
}

}  // namespace

std::string format_term_tsv(const TermKey& key, const BigInt& value) {
  std::string line(family_name(key.family));
  line += '\t';
  line += format_params(key.params);
  line += '\t';
  line += std::to_string(key.n);
  line += '\t';
  line += to_decimal(value);
  return line;
}

std::pair<TermKey, BigInt> parse_term_tsv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (fields.size() != 4)
    throw std::invalid_argument("expected 4 tab-separated fields, got " +
                                std::to_string(fields.size()));
  const auto family = parse_family(fields[0]);
  if (!family) throw std::invalid_argument("unknown family '" + fields[0] + "'");
  TermKey key;
  key.family = *family;
  if (!fields[1].empty()) {
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = fields[1].find(',', pos);
      key.params.push_back(parse_unsigned(fields[1].substr(pos, comma - pos), "parameter"));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  SequenceId{key.family, key.params}.validate();
  key.n = parse_unsigned(fields[2], "index");
  return {std::move(key), parse_decimal(fields[3])};
}

CacheFormatError::CacheFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("malformed cache line " + std::to_string(line) + ": " + what),
      line_(line) {}

CacheConflict::CacheConflict(const TermKey& key, const BigInt& cached, const BigInt& computed)
    : std::runtime_error("cache integrity failure for " + std::string(family_name(key.family)) +
                         " params=[" + format_params(key.params) + "] n=" +
                         std::to_string(key.n) + ": cached " + to_decimal(cached) +
                         ", computed " + to_decimal(computed)) {}

TermCache TermCache::open(std::filesystem::path path) {
  TermCache cache(std::move(path));
  std::ifstream in(cache.path_);
  if (!in) return cache;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::pair<TermKey, BigInt> record;
    try {
      record = parse_term_tsv(line);
    } catch (const std::invalid_argument& e) {
      throw CacheFormatError(line_no, e.what());
    }
    auto [it, inserted] = cache.entries_.emplace(record.first, record.second);
    if (!inserted && it->second != record.second)
      throw CacheConflict(record.first, it->second, record.second);
  }
  return cache;
}

std::optional<BigInt> TermCache::lookup(const TermKey& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TermCache::insert(const TermKey& key, const BigInt& value) {
  auto [it, inserted] = entries_.emplace(key, value);
  if (!inserted) {
    if (it->second != value) throw CacheConflict(key, it->second, value);
    return;
  }
  pending_.push_back(format_term_tsv(key, value));
}

void TermCache::flush() {
  if (pending_.empty()) return;
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open cache file " + path_.string());
  for (const auto& line : pending_) out << line << '\n';
  if (!out) throw std::runtime_error("write to cache file " + path_.string() + " failed");
  pending_.clear();
}

}  // namespace derange
