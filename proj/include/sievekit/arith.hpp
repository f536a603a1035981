#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace sievekit {

using Int = std::int64_t;

/// Work and memory caps shared by every module. The defaults are the desk
/// scale limits; callers running larger experiments pass a relaxed copy.
struct Budget {
  Int max_sieve_limit = 1'000'000'000;
  Int max_divisors = Int{1} << 25;
  Int max_work = 20'000'000'000;
};

/// Primes in [2, limit) together with a membership bitset over [0, limit).
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(Int limit, std::vector<Int> primes, std::vector<std::uint64_t> bits);

  Int limit() const { return limit_; }
  std::span<const Int> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  const std::vector<std::uint64_t>& bits() const { return bits_; }

  /// Requires 0 <= n < limit().
  bool is_prime(Int n) const;
  /// Number of primes p < x. Requires x <= limit().
  Int count_below(Int x) const;

 private:
  Int limit_ = 2;
  std::vector<Int> primes_;
  std::vector<std::uint64_t> bits_;
};

/// Segmented sieve of Eratosthenes over [2, limit).
PrimeTable primes_up_to(Int limit, const Budget& budget = {});

/// Single-array sieve of Eratosthenes; kept as an independent route for
/// cross-checking the segmented one.
PrimeTable primes_up_to_unsegmented(Int limit, const Budget& budget = {});

/// Convenience: the primes below z as a plain vector.
std::vector<Int> primes_below(Int z);

/// A squarefree positive integer with its prime factors in descending
/// order, p_1 > p_2 > ... > p_l. The least factor p(d) is the last entry.
struct FactoredSquarefree {
  Int value = 1;
  std::vector<Int> prime_factors;

  int nu() const { return static_cast<int>(prime_factors.size()); }
  /// Least prime factor; 0 for d = 1.
  Int least_prime() const { return prime_factors.empty() ? 0 : prime_factors.back(); }
  /// d / p(d). Requires d > 1.
  FactoredSquarefree without_least() const;
  /// d * p for a prime p smaller than every current factor.
  FactoredSquarefree times_smaller(Int p) const;
};

/// Builds the factored form from distinct primes (any order).
FactoredSquarefree squarefree_from_primes(std::vector<Int> primes);

/// Trial-division factorization. nullopt when n is not squarefree.
std::optional<FactoredSquarefree> factor_squarefree(Int n);

/// Trial-division factorization into (prime, exponent) pairs, ascending.
std::vector<std::pair<Int, int>> factorize(Int n);

int mobius(Int n);
Int euler_phi(Int n);
Int binomial(Int n, Int k);

/// Sum of mu(d) over d | m with nu(d) <= ell. Requires m > 1.
Int truncated_mobius(const FactoredSquarefree& m, int ell);

struct PlainCount {};
struct TwinCount {};
struct ProgressionCount {
  Int k = 1;
  Int l = 0;
};
using CountVariant = std::variant<PlainCount, TwinCount, ProgressionCount>;

/// pi(x), pi_2(x) (pairs indexed by the smaller member) or pi(x; k, l).
Int pi_count(const PrimeTable& table, Int x, const CountVariant& variant = PlainCount{});

/// Offset logarithmic integral li(x) = integral of dt / log t over [2, x].
double li(double x);

/// E(x; k, l) = pi(x; k, l) - li(x) / phi(k). k = 1 is the full sequence.
double remainder_E(const PrimeTable& table, Int x, Int k, Int l);

/// Sum over 1 <= q < Q of max over reduced classes a mod q of |E(x; q, a)|.
double mean_remainder_sum(const PrimeTable& table, Int x, Int Q, const Budget& budget = {});

/// a mod m in [0, m).
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

/// Modular inverse of a mod m; requires gcd(a, m) = 1.
Int mod_inverse(Int a, Int m);

}  // namespace sievekit
