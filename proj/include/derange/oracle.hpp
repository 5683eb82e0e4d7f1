#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "derange/arith.hpp"

namespace derange::oracle {

/// Enumeration size limits. Exceeding one is refused, never truncated.
struct Caps {
  unsigned unsigned_total = 10;  // n + r for plain permutations
  unsigned signed_total = 8;     // n + r for signed permutations
  unsigned partition_size = 8;   // n1 for ordered set partitions
};

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// n free elements plus r distinguished ones; signed selects signed permutations.
class Config {
 public:
  Config(unsigned n, unsigned r, bool is_signed, Caps caps = {});

  unsigned n() const noexcept { return n_; }
  unsigned r() const noexcept { return r_; }
  bool is_signed() const noexcept { return signed_; }
  unsigned total() const noexcept { return n_ + r_; }

 private:
  unsigned n_;
  unsigned r_;
  bool signed_;
};

/// A permutation of {1..m} written as images: images[i-1] = sigma(i).
using Images = std::vector<unsigned>;
using Cycle = std::vector<unsigned>;

/// Cycles in canonical form: each starts at its smallest element and cycles
/// are sorted by that element. Fixed points appear as 1-cycles.
/// Throws std::invalid_argument if images is not a bijection on {1..m}.
std::vector<Cycle> cycle_decomposition(std::span<const unsigned> images);

/// Inverse of cycle_decomposition; elements not mentioned are fixed.
Images compose_cycles(const std::vector<Cycle>& cycles, unsigned m);

/// No fixed point and elements 1..r in pairwise distinct cycles.
bool is_r_derangement(std::span<const unsigned> images, unsigned r);

/// Exhaustive count of r-derangements of {1..n+r}. Counting is split by the
/// image of element 1; workers > 1 runs those slices concurrently.
BigInt count_r_derangements(const Config& cfg, unsigned workers = 1);

/// Exhaustive count of signed permutations of {1..n} with no i mapped to +i.
/// Requires cfg.is_signed() and cfg.r() == 0.
BigInt count_signed_derangements(const Config& cfg);

/// Exhaustive count of partitions of an n1-set into n2 nonempty linear orders.
BigInt count_ordered_partitions(unsigned n1, unsigned n2, Caps caps = {});

/// Number of permutations of {1..m} per cycle type (sorted descending
/// cycle lengths), by enumeration. Requires m <= caps.unsigned_total.
std::map<std::vector<unsigned>, BigInt> cycle_type_histogram(unsigned m, Caps caps = {});

}  // namespace derange::oracle
