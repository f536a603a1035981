#include "sievekit/brun.hpp"

#include <cmath>

#include "sievekit/error.hpp"
#include "sievekit/legendre.hpp"

namespace sievekit {

namespace {

struct TruncatedSums {
  Rational main;          // sum mu(d) omega(d)/d X
  Rational signed_rem;    // sum mu(d) R_d
  Rational abs_rem;       // sum |R_d|
  Rational worst_rem;     // sum omega(d)(1 + |N - X|/d)
  Int divisors = 0;
};

TruncatedSums truncated_sums(const SieveProblem& problem, Int z, int cutoff, bool want_worst,
                             const Budget& budget) {
  const auto primes = primes_below(z);
  std::vector<Rational> omega_p;
  for (Int p : primes) omega_p.push_back(problem.density().omega(p));
  Rational gap;
  if (want_worst) {
    if (!problem.has_residue_form()) {
      throw DomainError("worst-case remainder needs a residue-form problem");
    }
    gap = abs(Rational(from_integer(problem.length()) - problem.X()));
  }

  TruncatedSums out;
  std::vector<Int> factors;
  auto visit = [&](auto&& self, std::size_t below, Int d, const Rational& w, int sign) -> void {
    if (++out.divisors > budget.max_divisors) throw BudgetError("pure sieve: divisor budget exceeded");
    const ClassCount cc = count_in_class(problem, FactoredSquarefree{d, factors}, budget);
    if (w == 0 && cc.count == 0) return;
    const Rational term = w / d * problem.X();
    if (sign > 0) {
      out.main += term;
      out.signed_rem += cc.remainder;
    } else {
      out.main -= term;
      out.signed_rem -= cc.remainder;
    }
    out.abs_rem += abs(cc.remainder);
    if (want_worst) out.worst_rem += w * (1 + gap / d);
    if (static_cast<int>(factors.size()) >= cutoff) return;
    for (std::size_t i = below; i-- > 0;) {
      const Int p = primes[i];
      if (d > INT64_MAX / p) throw BudgetError("pure sieve: divisor overflow");
      factors.push_back(p);
      self(self, i, d * p, w * omega_p[i], -sign);
      factors.pop_back();
    }
  };
  visit(visit, primes.size(), 1, Rational(1), 1);
  return out;
}

}  // namespace

int sifted_indicator_value(Int n, Int z) {
  for (Int p : primes_below(z)) {
    if (n % p == 0) return 0;
  }
  return 1;
}

Int truncated_indicator(Int n, const PureSieveConfig& config) {
  if (n < 1) throw DomainError("truncated_indicator requires n >= 1");
  Int k = 0;
  for (Int p : primes_below(config.z)) {
    if (n % p == 0) ++k;
  }
  // Divisors of (n, P(z)) with j prime factors number C(k, j).
  Int total = 0;
  for (Int j = 0; j <= std::min<Int>(k, config.cutoff()); ++j) total += (j % 2 ? -1 : 1) * binomial(k, j);
  return total;
}

BoundReport pure_sieve_bound(const SieveProblem& problem, const PureSieveConfig& config, bool worst_case,
                             const Budget& budget) {
  if (config.z < 2 || config.ell < 0) throw DomainError("pure sieve requires z >= 2 and ell >= 0");
  const auto sums = truncated_sums(problem, config.z, config.cutoff(), worst_case, budget);
  BoundReport r;
  r.method = "brun-pure";
  r.problem = problem.describe();
  r.z = config.z;
  r.ell = config.ell;
  r.direction = config.parity;
  r.main = to_double(sums.main);
  const Rational rem = worst_case ? sums.worst_rem : sums.abs_rem;
  r.remainder_bound = to_double(rem);
  r.bound = to_double(config.parity == Direction::upper ? Rational(sums.main + rem) : Rational(sums.main - rem));
  r.exact = exact_sift(problem, config.z, SiftRoute::automatic, budget);
  r.extras.emplace_back("truncated_count", to_double(sums.main + sums.signed_rem));
  r.extras.emplace_back("divisors", static_cast<double>(sums.divisors));
  r.extras.emplace_back("worst_case", worst_case ? 1.0 : 0.0);
  r.finalize();
  return r;
}

TwinPipelineResult twin_upper_pipeline(Int x, std::optional<double> z_override, std::optional<int> ell_override,
                                       const Budget& budget) {
  if (x < 1000) throw DomainError("twin_upper_pipeline requires x >= 1000");
  const double lx = std::log(static_cast<double>(x));
  const double llx = std::log(lx);
  TwinPipelineResult out;
  out.z = z_override.value_or(std::exp(lx / (100.0 * llx)));
  if (out.z <= 1.0) throw DomainError("twin_upper_pipeline requires z > 1");
  out.ell = ell_override.value_or(static_cast<int>(std::floor(lx / (4.0 * std::log(out.z)))));
  if (out.ell < 0) throw DomainError("ell must be non-negative");

  ProblemParams params;
  params.kind = ProblemKind::twin;
  params.x = x;
  const SieveProblem problem = build_problem(params, budget);
  // Sifting primes are those below z; z itself may be fractional.
  const Int zi = std::max<Int>(2, static_cast<Int>(std::ceil(out.z)));
  const int cutoff = 2 * out.ell;
  const auto sums = truncated_sums(problem, zi, cutoff, false, budget);

  Rational divisor_sum = 1;  // sum over d | P(z) of 4^{nu(d)}/d
  for (Int p : primes_below(zi)) divisor_sum *= 1 + make_rational(4, p);
  Rational tail = divisor_sum;
  for (int i = 0; i < cutoff; ++i) tail /= 2;

  const Rational V = density_product(problem.density(), zi);
  out.density = to_double(V);
  out.tail = to_double(tail);
  out.truncated = to_double(sums.main / problem.X());
  out.remainder = to_double(sums.abs_rem);
  // Pairs with p < z are not in S(A, z); pairs with p >= x - 2 are not in A.
  out.bound = to_double(problem.X() * (V + tail) + sums.abs_rem) + out.z + 2.0;

  const auto table = primes_up_to(x + 2, budget);
  out.exact = pi_count(table, x, TwinCount{});
  out.ratio = out.exact > 0 ? out.bound / static_cast<double>(out.exact) : INFINITY;
  out.shape = static_cast<double>(x) * (llx / lx) * (llx / lx);
  return out;
}

}  // namespace sievekit
