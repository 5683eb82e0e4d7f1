#include <doctest.h>

#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include "derange/arith.hpp"

using namespace derange;

TEST_CASE("factorial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  // Independent check against repeated multiplication well past 64 bits.
  BigInt running = 1;
  for (unsigned n = 1; n <= 60; ++n) {
    running *= n;
    CHECK(factorial(n) == running);
  }
}

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(10, 3) == 120);

  SUBCASE("symmetry and Pascal's rule up to 64") {
    for (unsigned n = 0; n <= 64; ++n) {
      for (unsigned k = 0; k <= n; ++k) {
        CHECK(binomial(n, k) == binomial(n, n - k));
        if (n >= 1 && k >= 1) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
      }
    }
  }

  SUBCASE("rows beyond the memo table agree with the factorial formula") {
    for (unsigned n : {600U, 777U, 1000U}) {
      for (std::int64_t k : {0L, 1L, 2L, 17L, 300L}) {
        const BigInt expected = factorial(n) / (factorial(static_cast<unsigned>(k)) *
                                                factorial(n - static_cast<unsigned>(k)));
        CHECK(binomial(n, k) == expected);
      }
      CHECK(binomial(n, n) == 1);
      CHECK(binomial(n, n + 1) == 0);
    }
  }
}

TEST_CASE("rising_factorial") {
  CHECK(rising_factorial(3, 0) == 1);
  CHECK(rising_factorial(2, 3) == 60);
  CHECK(rising_factorial(0, 4) == 24);
  for (unsigned r = 0; r <= 32; ++r)
    for (unsigned q = 0; q <= 32; ++q) CHECK(rising_factorial(r, q) * factorial(r) == factorial(r + q));
}

TEST_CASE("falling_factorial and power") {
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(5, 0) == 1);
  CHECK(falling_factorial(3, 4) == 0);
  CHECK(power(2, 10) == 1024);
  CHECK(power(-1, 3) == -1);
  CHECK(power(7, 0) == 1);
}

TEST_CASE("rational normalization") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  for (int i = 0; i < 1000; ++i) {
    const long p = dist(rng);
    long q = dist(rng);
    if (q == 0) q = 1;
    const Rational value = make_rational(p, q);
    // Reduced form computed independently with std::gcd.
    long num = p;
    long den = q;
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
    CHECK(value.get_num() == num);
    CHECK(value.get_den() == den);
    CHECK(value.get_den() >= 1);
  }
  CHECK(make_rational(0, -7).get_den() == 1);
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
  CHECK(make_rational(2, 4) == make_rational(-3, -6));
}

TEST_CASE("decimal round trip") {
  const BigInt big = factorial(40) * -3;
  CHECK(parse_decimal(to_decimal(big)) == big);
  CHECK(to_fraction_string(make_rational(-6, 4)) == "-3/2");
  CHECK(to_fraction_string(Rational(5)) == "5/1");
  CHECK_THROWS_AS(parse_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal("-"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal("1e5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal(" 12"), std::invalid_argument);
}

TEST_CASE("memo tables are safe under concurrent growth") {
  std::vector<std::thread> threads;
  std::vector<BigInt> results(8);
  for (unsigned t = 0; t < 8; ++t) {
    threads.emplace_back([t, &results] {
      BigInt acc = 0;
      for (unsigned n = 0; n < 200 + 40 * t; ++n) acc += factorial(n) + binomial(n, n / 2);
      results[t] = acc;
    });
  }
  for (auto& th : threads) th.join();
  for (unsigned t = 0; t < 8; ++t) {
    BigInt acc = 0;
    for (unsigned n = 0; n < 200 + 40 * t; ++n) acc += factorial(n) + binomial(n, n / 2);
    CHECK(results[t] == acc);
  }
}
