#include "sievekit/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sievekit/error.hpp"

namespace sievekit {

namespace {

constexpr Int kSegmentSize = Int{1} << 18;

void check_limit(Int limit, const Budget& budget) {
  if (limit < 2) throw DomainError("prime table limit must be >= 2");
  if (limit > budget.max_sieve_limit) {
    throw BudgetError("prime table limit " + std::to_string(limit) + " exceeds budget " +
                      std::to_string(budget.max_sieve_limit));
  }
}

std::vector<std::uint64_t> bits_from_primes(Int limit, const std::vector<Int>& primes) {
  std::vector<std::uint64_t> bits(static_cast<std::size_t>((limit + 63) / 64), 0);
  for (Int p : primes) bits[static_cast<std::size_t>(p >> 6)] |= std::uint64_t{1} << (p & 63);
  return bits;
}

}  // namespace

PrimeTable::PrimeTable(Int limit, std::vector<Int> primes, std::vector<std::uint64_t> bits)
    : limit_(limit), primes_(std::move(primes)), bits_(std::move(bits)) {}

bool PrimeTable::is_prime(Int n) const {
  if (n < 0 || n >= limit_) throw DomainError("is_prime: argument outside table range");
  return (bits_[static_cast<std::size_t>(n >> 6)] >> (n & 63)) & 1U;
}

Int PrimeTable::count_below(Int x) const {
  if (x > limit_) throw DomainError("prime table too small: x exceeds limit");
  return std::lower_bound(primes_.begin(), primes_.end(), x) - primes_.begin();
}

PrimeTable primes_up_to_unsegmented(Int limit, const Budget& budget) {
  check_limit(limit, budget);
  std::vector<bool> composite(static_cast<std::size_t>(limit), false);
  std::vector<Int> primes;
  for (Int i = 2; i < limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (Int j = i * i; j < limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  auto bits = bits_from_primes(limit, primes);
  return PrimeTable(limit, std::move(primes), std::move(bits));
}

PrimeTable primes_up_to(Int limit, const Budget& budget) {
  check_limit(limit, budget);
  Int root = static_cast<Int>(std::sqrt(static_cast<double>(limit)));
  while (root * root < limit) ++root;
  const auto base_table = primes_up_to_unsegmented(std::max<Int>(root + 1, 2));
  const auto base = base_table.primes();

  std::vector<Int> primes;
  std::vector<std::uint8_t> segment(static_cast<std::size_t>(kSegmentSize));
  for (Int low = 2; low < limit; low += kSegmentSize) {
    const Int high = std::min(low + kSegmentSize, limit);
    std::fill(segment.begin(), segment.end(), std::uint8_t{1});
    for (Int p : base) {
      if (p * p >= high) break;
      Int start = std::max(p * p, (low + p - 1) / p * p);
      for (Int j = start; j < high; j += p) segment[static_cast<std::size_t>(j - low)] = 0;
    }
    for (Int n = low; n < high; ++n) {
      if (segment[static_cast<std::size_t>(n - low)]) primes.push_back(n);
    }
  }
  auto bits = bits_from_primes(limit, primes);
  return PrimeTable(limit, std::move(primes), std::move(bits));
}

std::vector<Int> primes_below(Int z) {
  if (z <= 2) return {};
  constexpr Int kCached = Int{1} << 16;
  if (z <= kCached) {
    static const PrimeTable cached = primes_up_to_unsegmented(kCached);
    const auto all = cached.primes();
    return {all.begin(), std::lower_bound(all.begin(), all.end(), z)};
  }
  auto table = primes_up_to(z);
  return {table.primes().begin(), table.primes().end()};
}

FactoredSquarefree FactoredSquarefree::without_least() const {
  if (prime_factors.empty()) throw DomainError("without_least: d = 1 has no least prime");
  FactoredSquarefree out = *this;
  out.value /= out.prime_factors.back();
  out.prime_factors.pop_back();
  return out;
}

FactoredSquarefree FactoredSquarefree::times_smaller(Int p) const {
  FactoredSquarefree out = *this;
  out.value *= p;
  out.prime_factors.push_back(p);
  return out;
}

FactoredSquarefree squarefree_from_primes(std::vector<Int> primes) {
  std::sort(primes.begin(), primes.end(), std::greater<>());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) {
    throw DomainError("squarefree_from_primes: repeated prime");
  }
  FactoredSquarefree out;
  for (Int p : primes) out.value *= p;
  out.prime_factors = std::move(primes);
  return out;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n < 1) throw DomainError("factorize: n must be positive");
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::optional<FactoredSquarefree> factor_squarefree(Int n) {
  std::vector<Int> primes;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return std::nullopt;
    primes.push_back(p);
  }
  return squarefree_from_primes(std::move(primes));
}

int mobius(Int n) {
  if (n < 1) throw DomainError("mobius: n must be >= 1");
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

Int euler_phi(Int n) {
  if (n < 1) throw DomainError("euler_phi: n must be >= 1");
  Int result = n;
  for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

Int binomial(Int n, Int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int r = 1;
  for (Int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Int truncated_mobius(const FactoredSquarefree& m, int ell) {
  if (m.value <= 1) throw DomainError("truncated_mobius: m must be > 1");
  if (ell < 0) throw DomainError("truncated_mobius: ell must be >= 0");
  // Enumerating the divisors with nu(d) <= ell by size class.
  Int total = 0;
  for (int j = 0; j <= std::min(ell, m.nu()); ++j) {
    total += (j % 2 == 0 ? 1 : -1) * binomial(m.nu(), j);
  }
  return total;
}

Int mod_inverse(Int a, Int m) {
  Int g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
  while (a1 != 0) {
    Int q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw DomainError("mod_inverse: arguments not coprime");
  return mod_floor(x, m);
}

Int pi_count(const PrimeTable& table, Int x, const CountVariant& variant) {
  return std::visit(
      [&](const auto& v) -> Int {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, PlainCount>) {
          return table.count_below(x);
        } else if constexpr (std::is_same_v<V, TwinCount>) {
          if (x + 2 > table.limit()) throw DomainError("prime table too small for twin count");
          Int count = 0;
          for (Int p : table.primes()) {
            if (p >= x) break;
            if (table.is_prime(p + 2)) ++count;
          }
          return count;
        } else {
          if (v.k < 1) throw DomainError("progression modulus must be >= 1");
          if (x > table.limit()) throw DomainError("prime table too small: x exceeds limit");
          const Int l = mod_floor(v.l, v.k);
          Int count = 0;
          for (Int p : table.primes()) {
            if (p >= x) break;
            if (p % v.k == l) ++count;
          }
          return count;
        }
      },
      variant);
}

double li(double x) {
  if (x < 2.0) throw DomainError("li: x must be >= 2");
  // Substituting t = e^u gives a smooth integrand e^u / u on [log 2, log x];
  // unit-length pieces keep each Kronrod panel well resolved.
  using boost::math::quadrature::gauss_kronrod;
  auto f = [](double u) { return std::exp(u) / u; };
  const double a = std::log(2.0);
  const double b = std::log(x);
  double total = 0.0;
  for (double lo = a; lo < b; lo += 1.0) {
    const double hi = std::min(lo + 1.0, b);
    total += gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-15);
  }
  return total;
}

double remainder_E(const PrimeTable& table, Int x, Int k, Int l) {
  if (k < 1) throw DomainError("remainder_E: k must be >= 1");
  if (std::gcd(k, mod_floor(l, k)) != 1) {
    throw DomainError("remainder_E: (k, l) must be coprime");
  }
  if (x < 2) throw DomainError("remainder_E: x must be >= 2");
  const Int count = pi_count(table, x, ProgressionCount{k, l});
  return static_cast<double>(count) - li(static_cast<double>(x)) / static_cast<double>(euler_phi(k));
}

double mean_remainder_sum(const PrimeTable& table, Int x, Int Q, const Budget& budget) {
  if (Q < 2) throw DomainError("mean_remainder_sum: Q must be >= 2");
  if (x < 2) throw DomainError("mean_remainder_sum: x must be >= 2");
  if (x > table.limit()) throw DomainError("prime table too small: x exceeds limit");
  const Int primes_below_x = table.count_below(x);
  if (static_cast<double>(Q) * static_cast<double>(primes_below_x + Q) >
      static_cast<double>(budget.max_work)) {
    throw BudgetError("mean_remainder_sum: Q * pi(x) work exceeds budget");
  }
  const double li_x = li(static_cast<double>(x));
  const auto primes = table.primes().first(static_cast<std::size_t>(primes_below_x));
  double total = 0.0;
  std::vector<Int> counts;
  for (Int q = 1; q < Q; ++q) {
    counts.assign(static_cast<std::size_t>(q), 0);
    for (Int p : primes) ++counts[static_cast<std::size_t>(p % q)];
    const double expected = li_x / static_cast<double>(euler_phi(q));
    double worst = 0.0;
    for (Int a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      worst = std::max(worst, std::abs(static_cast<double>(counts[static_cast<std::size_t>(a)]) - expected));
    }
    total += worst;
  }
  return total;
}

}  // namespace sievekit
