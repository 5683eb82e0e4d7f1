#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "derange/arith.hpp"

namespace derange {

/// D(n): fixed-point-free permutations of n elements.
BigInt derangement(unsigned n);

/// D(n) as the nearest integer to n!/e, with e bracketed between partial
/// sums of 1/k! and an explicit tail bound. Requires n >= 1.
BigInt derangement_nearest_int(unsigned n);

/// D_r(n): fixed-point-free permutations of n+r elements whose first r
/// elements lie in pairwise distinct cycles. Zero for n < r.
BigInt r_derangement(unsigned n, unsigned r);

/// D_r(n) through the three-term recurrence
///   D_r(n) = r D_{r-1}(n-1) + (n-1) D_r(n-2) + (n+r-1) D_r(n-1),
/// tabulated bottom-up. Bases (n <= 2 or r == 0) come from the closed form.
BigInt r_derangement_recurrence(unsigned n, unsigned r);

/// D^B(n): signed permutations of n elements with no fixed point.
BigInt b_derangement(unsigned n);

/// L(n1, n2): partitions of an n1-set into n2 nonempty linearly ordered blocks.
BigInt lah(unsigned n1, unsigned n2);

/// k = 0 value of the B-type r-Stirling numbers:
///   sum_{j=0}^{r} C(r,j) 2^{n+r-j} (r-j)! L(n, r-j).
BigInt b_stirling_k0(unsigned n, unsigned r);

enum class Family { Derangement, RDerangement, BDerangement, Lah, BStirlingK0 };

/// A sequence family together with its fixed parameters. The running index
/// n is supplied at evaluation time; for Lah the single parameter is n2.
struct SequenceId {
  Family family = Family::Derangement;
  std::vector<unsigned> params;

  /// Throws std::invalid_argument when params does not match the family arity.
  void validate() const;

  friend bool operator==(const SequenceId&, const SequenceId&) = default;
};

std::size_t family_arity(Family family);
std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

/// Comma-joined params ("" when empty).
std::string format_params(const std::vector<unsigned>& params);

BigInt evaluate(const SequenceId& id, unsigned n);

}  // namespace derange
