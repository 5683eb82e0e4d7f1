#include "derange/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <future>
#include <numeric>
#include <string>

namespace derange::oracle {

namespace {

constexpr unsigned kNoCycle = ~0U;

// Labels each position of a 0-based permutation with the index of its cycle.
// Returns the number of cycles.
unsigned label_cycles(std::span<const unsigned> perm, std::span<unsigned> label) {
  std::fill(label.begin(), label.end(), kNoCycle);
  unsigned cycles = 0;
  for (unsigned start = 0; start < perm.size(); ++start) {
    if (label[start] != kNoCycle) continue;
    for (unsigned x = start; label[x] == kNoCycle; x = perm[x]) label[x] = cycles;
    ++cycles;
  }
  return cycles;
}

bool zero_based_r_derangement(std::span<const unsigned> perm, unsigned r,
                              std::span<unsigned> label) {
  for (unsigned i = 0; i < perm.size(); ++i)
    if (perm[i] == i) return false;
  if (r < 2) return true;
  label_cycles(perm, label);
  for (unsigned a = 0; a < r; ++a)
    for (unsigned b = a + 1; b < r; ++b)
      if (label[a] == label[b]) return false;
  return true;
}

// Visits every permutation of 0..m-1 with perm[0] == first, lexicographically.
void for_each_with_first(unsigned m, unsigned first,
                         const std::function<void(std::span<const unsigned>)>& visit) {
  std::vector<unsigned> perm;
  perm.reserve(m);
  perm.push_back(first);
  for (unsigned v = 0; v < m; ++v)
    if (v != first) perm.push_back(v);
  do {
    visit(perm);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

std::uint64_t count_slice(unsigned m, unsigned r, unsigned first) {
  std::vector<unsigned> label(m);
  std::uint64_t count = 0;
  for_each_with_first(m, first, [&](std::span<const unsigned> perm) {
    if (zero_based_r_derangement(perm, r, label)) ++count;
  });
  return count;
}

}  // namespace

Config::Config(unsigned n, unsigned r, bool is_signed, Caps caps)
    : n_(n), r_(r), signed_(is_signed) {
  const unsigned cap = is_signed ? caps.signed_total : caps.unsigned_total;
  if (n + r > cap) {
    throw CapExceeded(std::string(is_signed ? "signed" : "unsigned") +
                      " enumeration refused: n + r = " + std::to_string(n + r) +
                      " exceeds the cap of " + std::to_string(cap));
  }
}

std::vector<Cycle> cycle_decomposition(std::span<const unsigned> images) {
  const auto m = static_cast<unsigned>(images.size());
  std::vector<bool> hit(m, false);
  for (unsigned image : images) {
    if (image < 1 || image > m || hit[image - 1]) {
      throw std::invalid_argument("cycle_decomposition: not a bijection on {1.." +
                                  std::to_string(m) + "}");
    }
    hit[image - 1] = true;
  }
  std::vector<Cycle> cycles;
  std::vector<bool> seen(m, false);
  for (unsigned start = 1; start <= m; ++start) {
    if (seen[start - 1]) continue;
    Cycle cycle;
    for (unsigned x = start; !seen[x - 1]; x = images[x - 1]) {
      seen[x - 1] = true;
      cycle.push_back(x);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

Images compose_cycles(const std::vector<Cycle>& cycles, unsigned m) {
  Images images(m);
  std::iota(images.begin(), images.end(), 1U);
  std::vector<bool> used(m, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const unsigned from = cycle[i];
      if (from < 1 || from > m || used[from - 1])
        throw std::invalid_argument("compose_cycles: cycles are not disjoint within {1..m}");
      used[from - 1] = true;
      images[from - 1] = cycle[(i + 1) % cycle.size()];
    }
  }
  return images;
}

bool is_r_derangement(std::span<const unsigned> images, unsigned r) {
  const auto m = static_cast<unsigned>(images.size());
  if (r > m) return false;
  std::vector<unsigned> perm(m);
  for (unsigned i = 0; i < m; ++i) {
    if (images[i] < 1 || images[i] > m)
      throw std::invalid_argument("is_r_derangement: image out of range");
    perm[i] = images[i] - 1;
  }
  cycle_decomposition(images);  // bijectivity check
  std::vector<unsigned> label(m);
  return zero_based_r_derangement(perm, r, label);
}

BigInt count_r_derangements(const Config& cfg, unsigned workers) {
  if (cfg.is_signed())
    throw std::invalid_argument("count_r_derangements: config must be unsigned");
  const unsigned m = cfg.total();
  if (m == 0) return 1;  // the empty permutation
  std::vector<std::uint64_t> slices(m, 0);
  if (workers <= 1) {
    for (unsigned first = 0; first < m; ++first) slices[first] = count_slice(m, cfg.r(), first);
  } else {
    for (unsigned base = 0; base < m; base += workers) {
      std::vector<std::future<std::uint64_t>> pending;
      for (unsigned first = base; first < std::min(m, base + workers); ++first)
        pending.push_back(std::async(std::launch::async, count_slice, m, cfg.r(), first));
      for (unsigned i = 0; i < pending.size(); ++i) slices[base + i] = pending[i].get();
    }
  }
  return static_cast<unsigned long>(std::accumulate(slices.begin(), slices.end(), std::uint64_t{0}));
}

BigInt count_signed_derangements(const Config& cfg) {
  if (!cfg.is_signed() || cfg.r() != 0)
    throw std::invalid_argument("count_signed_derangements: config must be signed with r = 0");
  const unsigned n = cfg.n();
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  std::uint64_t count = 0;
  do {
    // Positions that are fixed by the underlying permutation.
    std::uint32_t fixed = 0;
    for (unsigned i = 0; i < n; ++i)
      if (perm[i] == i) fixed |= 1U << i;
    // Sign vectors: bit i set means position i carries a minus sign.
    for (std::uint32_t minus = 0; minus < (1U << n); ++minus) {
      if ((fixed & ~minus) == 0) ++count;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<unsigned long>(count);
}

namespace {

// Builds ordered partitions by inserting elements 0..n1-1 one at a time:
// each element opens a new block or goes into any slot of an existing block.
class OrderedPartitionCounter {
 public:
  OrderedPartitionCounter(unsigned n1, unsigned n2) : n1_(n1), n2_(n2) {}

  std::uint64_t run() {
    place(0);
    return count_;
  }

 private:
  void place(unsigned element) {
    if (element == n1_) {
      if (blocks_.size() == n2_) ++count_;
      return;
    }
    const unsigned remaining = n1_ - element;
    if (blocks_.size() + remaining < n2_) return;
    // Index access: deeper calls may grow blocks_ and move its storage.
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      for (std::size_t slot = 0; slot <= blocks_[b].size(); ++slot) {
        blocks_[b].insert(blocks_[b].begin() + static_cast<std::ptrdiff_t>(slot), element);
        place(element + 1);
        blocks_[b].erase(blocks_[b].begin() + static_cast<std::ptrdiff_t>(slot));
      }
    }
    if (blocks_.size() < n2_) {
      blocks_.push_back({element});
      place(element + 1);
      blocks_.pop_back();
    }
  }

  unsigned n1_;
  unsigned n2_;
  std::vector<std::vector<unsigned>> blocks_;
  std::uint64_t count_ = 0;
};

}  // namespace

BigInt count_ordered_partitions(unsigned n1, unsigned n2, Caps caps) {
  if (n1 > caps.partition_size) {
    throw CapExceeded("ordered partition enumeration refused: n1 = " + std::to_string(n1) +
                      " exceeds the cap of " + std::to_string(caps.partition_size));
  }
  return static_cast<unsigned long>(OrderedPartitionCounter(n1, n2).run());
}

std::map<std::vector<unsigned>, BigInt> cycle_type_histogram(unsigned m, Caps caps) {
  if (m > caps.unsigned_total) {
    throw CapExceeded("cycle type enumeration refused: m = " + std::to_string(m) +
                      " exceeds the cap of " + std::to_string(caps.unsigned_total));
  }
  std::map<std::vector<unsigned>, BigInt> histogram;
  std::vector<unsigned> perm(m);
  std::iota(perm.begin(), perm.end(), 0U);
  std::vector<unsigned> label(m);
  do {
    const unsigned cycles = label_cycles(perm, label);
    std::vector<unsigned> lengths(cycles, 0);
    for (unsigned x : label) ++lengths[x];
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    histogram[lengths] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return histogram;
}

}  // namespace derange::oracle
