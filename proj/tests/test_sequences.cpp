#include <doctest.h>

#include "derange/oracle.hpp"
#include "derange/sequences.hpp"

using namespace derange;

// Frozen values below were produced by exhaustive enumeration of
// (signed) permutations, independently of the closed forms under test.

TEST_CASE("derangement") {
  CHECK(derangement(0) == 1);
  CHECK(derangement(1) == 0);
  CHECK(derangement(4) == 9);
  const long prefix[] = {1, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496, 1334961};
  for (unsigned n = 0; n < std::size(prefix); ++n) CHECK(derangement(n) == prefix[n]);
  CHECK(derangement(30) == BigInt("97581073836835777732377428235481"));
}

TEST_CASE("derangement_nearest_int") {
  CHECK(derangement_nearest_int(1) == 0);
  CHECK(derangement_nearest_int(4) == 9);
  CHECK(derangement_nearest_int(6) == 265);
  CHECK_THROWS_AS(derangement_nearest_int(0), std::invalid_argument);
  for (unsigned n = 1; n <= 500; ++n) REQUIRE(derangement_nearest_int(n) == derangement(n));
}

TEST_CASE("r_derangement") {
  CHECK(r_derangement(2, 2) == 2);
  CHECK(r_derangement(3, 2) == 12);
  CHECK(r_derangement(4, 2) == 84);
  CHECK(r_derangement(3, 1) == 9);

  SUBCASE("empty sum below r") {
    for (unsigned r = 1; r <= 10; ++r)
      for (unsigned n = 0; n < r; ++n) CHECK(r_derangement(n, r) == 0);
  }
  SUBCASE("r = 0 is the classical sequence") {
    for (unsigned n = 0; n <= 200; ++n) REQUIRE(r_derangement(n, 0) == derangement(n));
  }
  SUBCASE("D_1(n) = D(n+1), including n = 0") {
    for (unsigned n = 0; n <= 200; ++n) REQUIRE(r_derangement(n, 1) == derangement(n + 1));
  }
  SUBCASE("D_r(r) = r! and D_r(r+1) = r (r+1)!") {
    for (unsigned r = 1; r <= 30; ++r) CHECK(r_derangement(r, r) == factorial(r));
    for (unsigned r = 2; r <= 30; ++r) CHECK(r_derangement(r + 1, r) == r * factorial(r + 1));
  }
}

TEST_CASE("r_derangement_recurrence") {
  CHECK(r_derangement_recurrence(4, 2) == 84);
  CHECK(r_derangement_recurrence(2, 2) == 2);
  CHECK(r_derangement_recurrence(5, 1) == 265);
  // Hand expansion of one step: 2 D_1(3) + 3 D_2(2) + 5 D_2(3).
  CHECK(2 * r_derangement(3, 1) + 3 * r_derangement(2, 2) + 5 * r_derangement(3, 2) == 84);
  for (unsigned r = 0; r <= 10; ++r)
    for (unsigned n = 0; n <= 120; ++n) REQUIRE(r_derangement_recurrence(n, r) == r_derangement(n, r));
}

TEST_CASE("b_derangement") {
  CHECK(b_derangement(0) == 1);
  CHECK(b_derangement(2) == 5);
  CHECK(b_derangement(4) == 233);
  const long prefix[] = {1, 1, 5, 29, 233, 2329, 27949, 391285};
  for (unsigned n = 0; n < std::size(prefix); ++n) CHECK(b_derangement(n) == prefix[n]);
}

TEST_CASE("lah") {
  CHECK(lah(0, 0) == 1);
  CHECK(lah(3, 2) == 6);
  CHECK(lah(5, 0) == 0);
  CHECK(lah(2, 3) == 0);
  for (unsigned n = 1; n <= 20; ++n) CHECK(lah(n, 1) == factorial(n));
  for (unsigned n = 0; n <= 20; ++n) CHECK(lah(n, n) == 1);
  SUBCASE("closed form matches enumeration up to 8") {
    for (unsigned n1 = 0; n1 <= 8; ++n1)
      for (unsigned n2 = 0; n2 <= n1; ++n2) CHECK(lah(n1, n2) == oracle::count_ordered_partitions(n1, n2));
  }
}

TEST_CASE("b_stirling_k0") {
  CHECK(b_stirling_k0(0, 0) == 1);
  for (unsigned n = 1; n <= 10; ++n) CHECK(b_stirling_k0(n, 0) == 0);
  CHECK(b_stirling_k0(1, 1) == 4);
  // (2, 1): j=0 gives 1 * 2^3 * 1! * L(2,1) = 16, j=1 vanishes.
  CHECK(b_stirling_k0(2, 1) == 16);
  // (2, 2): 2^4 * 2! * L(2,2) + 2 * 2^3 * 1! * L(2,1) + 0 = 32 + 32.
  CHECK(b_stirling_k0(2, 2) == 64);
}

TEST_CASE("all sequence values are nonnegative") {
  for (unsigned n = 0; n <= 60; ++n) {
    CHECK(derangement(n) >= 0);
    CHECK(b_derangement(n) >= 0);
    for (unsigned r = 0; r <= 6; ++r) {
      CHECK(r_derangement(n, r) >= 0);
      CHECK(lah(n, r) >= 0);
      CHECK(b_stirling_k0(n, r) >= 0);
      // Zero exactly below r, plus the single classical zero D(1).
      const bool expect_zero = n < r || (n == 1 && r == 0);
      CHECK((r_derangement(n, r) == 0) == expect_zero);
    }
  }
}

TEST_CASE("SequenceId") {
  const SequenceId plain{Family::Derangement, {}};
  const SequenceId extra{Family::Derangement, {2}};
  const SequenceId missing{Family::RDerangement, {}};
  CHECK_NOTHROW(plain.validate());
  CHECK_THROWS_AS(extra.validate(), std::invalid_argument);
  CHECK_THROWS_AS(missing.validate(), std::invalid_argument);
  CHECK(parse_family("b-stirling-k0") == Family::BStirlingK0);
  CHECK_FALSE(parse_family("stirling").has_value());
  for (Family f : {Family::Derangement, Family::RDerangement, Family::BDerangement, Family::Lah,
                   Family::BStirlingK0})
    CHECK(parse_family(family_name(f)) == f);
  CHECK(evaluate({Family::RDerangement, {2}}, 4) == 84);
  CHECK(evaluate({Family::Lah, {2}}, 3) == 6);
  CHECK(format_params({}).empty());
  CHECK(format_params({2, 7}) == "2,7");
}
