#include <bit>

#include "doctest.h"
#include "oracles.hpp"
#include "sievekit/arith.hpp"
#include "sievekit/error.hpp"

using namespace sievekit;

TEST_SUITE("arith") {
  TEST_CASE("prime tables") {
    CHECK(primes_up_to(2).size() == 0);
    const auto t3 = primes_up_to(3);
    REQUIRE(t3.size() == 1);
    CHECK(t3.primes()[0] == 2);
    const auto t100 = primes_up_to(100);
    CHECK(t100.size() == 25);
    CHECK(t100.primes().back() == 97);
    for (Int n = 0; n < 100; ++n) CHECK(t100.is_prime(n) == oracle::is_prime(n));
    CHECK_THROWS_AS(primes_up_to(Int{2'000'000'000}), BudgetError);
  }

  TEST_CASE("segmented and single-array sieves agree to 10^7") {
    const auto a = primes_up_to(10'000'000);
    const auto b = primes_up_to_unsegmented(10'000'000);
    CHECK(a.size() == b.size());
    CHECK(a.bits() == b.bits());
    CHECK(std::equal(a.primes().begin(), a.primes().end(), b.primes().begin()));
    CHECK(a.size() == 664579);
  }

  TEST_CASE("primes pass trial division") {
    const auto t = primes_up_to(20000);
    for (Int p : t.primes()) REQUIRE(oracle::is_prime(p));
    Int count = 0;
    for (Int n = 0; n < 20000; ++n) count += oracle::is_prime(n);
    CHECK(count == static_cast<Int>(t.size()));
  }

  TEST_CASE("mobius matches the factor oracle to 10^5") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    for (Int n = 1; n <= 100000; ++n) REQUIRE(mobius(n) == oracle::mobius(n));
  }

  TEST_CASE("euler phi and binomial") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(30) == 8);
    CHECK(euler_phi(97) == 96);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(2, 3) == 0);
  }

  TEST_CASE("factored squarefree") {
    const auto d = squarefree_from_primes({3, 7, 2});
    CHECK(d.value == 42);
    CHECK(d.prime_factors == std::vector<Int>{7, 3, 2});
    CHECK(d.nu() == 3);
    CHECK(d.least_prime() == 2);
    CHECK(d.without_least().value == 21);
    CHECK(FactoredSquarefree{}.least_prime() == 0);
    CHECK(!factor_squarefree(12).has_value());
    CHECK(factor_squarefree(30)->nu() == 3);
  }

  TEST_CASE("truncated mobius: examples and closed form for squarefree m <= 10^4") {
    const auto m30 = *factor_squarefree(30);
    CHECK(truncated_mobius(m30, 0) == 1);
    CHECK(truncated_mobius(m30, 1) == -2);
    CHECK(truncated_mobius(m30, 3) == 0);
    for (Int m = 2; m <= 10000; ++m) {
      const auto f = factor_squarefree(m);
      if (!f) continue;
      for (int ell = 0; ell <= f->nu(); ++ell) {
        // Oracle: enumerate divisors as subsets of the prime divisors.
        const auto ps = oracle::prime_divisors(m);
        Int s = 0;
        for (unsigned mask = 0; mask < (1u << ps.size()); ++mask) {
          if (std::popcount(mask) <= ell) s += (std::popcount(mask) % 2 ? -1 : 1);
        }
        const Int closed = (ell % 2 ? -1 : 1) * binomial(f->nu() - 1, ell);
        REQUIRE(truncated_mobius(*f, ell) == s);
        REQUIRE(s == closed);
      }
    }
  }

  TEST_CASE("pi counts") {
    const auto t = primes_up_to(200);
    CHECK(pi_count(t, 100) == 25);
    CHECK(pi_count(t, 100, TwinCount{}) == 8);
    CHECK(pi_count(t, 100, ProgressionCount{4, 1}) == 11);
    CHECK_THROWS(pi_count(t, 199, TwinCount{}));
    CHECK_THROWS(pi_count(t, 500));
  }

  TEST_CASE("twin counts against enumeration") {
    const auto t = primes_up_to(10'002);
    CHECK(pi_count(t, 1000, TwinCount{}) == 35);
    CHECK(pi_count(t, 10000, TwinCount{}) == 205);
    CHECK(pi_count(t, 10000, TwinCount{}) == oracle::twin_pairs_below(10000));
  }

  TEST_CASE("progression counts sum to pi(x) minus primes dividing k") {
    const auto t = primes_up_to(100001);
    const Int x = 100000;
    for (Int k = 1; k <= 60; ++k) {
      Int total = 0;
      for (Int l = 0; l < k; ++l) {
        if (std::gcd(k, l) == 1 || k == 1) total += pi_count(t, x, ProgressionCount{k, l});
      }
      Int dividing = 0;
      for (Int p : oracle::prime_divisors(k)) dividing += p < x;
      CHECK(total == pi_count(t, x) - dividing);
    }
  }

  TEST_CASE("li against the exponential integral") {
    CHECK(li(2.0) == doctest::Approx(0.0));
    for (double x : {3.0, 10.0, 100.0, 1000.0, 1e5, 1e6, 1e9}) {
      CHECK(std::abs(li(x) - oracle::li_offset(x)) <= 1e-9 * std::max(1.0, oracle::li_offset(x)));
    }
  }

  TEST_CASE("remainder E") {
    const auto t = primes_up_to(100001);
    CHECK(remainder_E(t, 100, 4, 1) == doctest::Approx(11 - oracle::li_offset(100) / 2).epsilon(1e-12));
    CHECK(remainder_E(t, 10, 1, 0) == doctest::Approx(4 - oracle::li_offset(10)));
    CHECK_THROWS_AS(remainder_E(t, 100, 4, 2), DomainError);
    // Recount oracle for the class 1 mod 3.
    Int c = 0;
    for (Int p = 2; p < 100000; ++p) c += oracle::is_prime(p) && p % 3 == 1;
    const double expected = c - oracle::li_offset(1e5) / 2;
    CHECK(std::abs(remainder_E(t, 100000, 3, 1) - expected) < 0.5);
  }

  TEST_CASE("mean remainder sum") {
    const auto t = primes_up_to(10001);
    CHECK(mean_remainder_sum(t, 1000, 2) == doctest::Approx(std::abs(168 - oracle::li_offset(1000))));
    const double s = mean_remainder_sum(t, 10000, 10);
    CHECK(s > 0);
    CHECK(std::isfinite(mean_remainder_sum(t, 100, 100)));
    Budget tiny;
    tiny.max_work = 1000;
    CHECK_THROWS_AS(mean_remainder_sum(t, 10000, 100, tiny), BudgetError);
  }

  TEST_CASE("modular helpers") {
    CHECK(mod_floor(-3, 5) == 2);
    CHECK(mod_inverse(3, 7) == 5);
    for (Int m : {7, 30, 97}) {
      for (Int a = 1; a < m; ++a) {
        if (std::gcd(a, m) == 1) CHECK((a * mod_inverse(a, m)) % m == 1);
      }
    }
  }
}
