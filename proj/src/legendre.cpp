#include "sievekit/legendre.hpp"

#include <cmath>

#include "sievekit/error.hpp"

namespace sievekit {

namespace {

double log_density_product(const SiftingDensity& density, Int z) {
  double s = 0.0;
  for (Int p : primes_below(z)) s += std::log1p(-to_double(density.omega(p)) / static_cast<double>(p));
  return s;
}

}  // namespace

SieveDecomposition legendre_decompose(const SieveProblem& problem, Int z, const Budget& budget) {
  if (z < 2) throw DomainError("legendre_decompose requires z >= 2");
  const auto primes = primes_below(z);
  std::vector<Rational> omega_p;
  omega_p.reserve(primes.size());
  for (Int p : primes) omega_p.push_back(problem.density().omega(p));

  SieveDecomposition out;
  // Primes are taken in descending order so that the factor list stays descending.
  std::vector<Int> factors;
  auto visit = [&](auto&& self, std::size_t below, Int d, const Rational& w, int sign) -> void {
    if (++out.divisors > budget.max_divisors) {
      throw BudgetError("legendre_decompose: more than " + std::to_string(budget.max_divisors) +
                        " divisors of P(z)");
    }
    FactoredSquarefree fd{d, factors};
    const ClassCount cc = count_in_class(problem, fd, budget);
    if (w == 0 && cc.count == 0) return;
    const Rational main = w / d * problem.X();
    out.total += sign * cc.count;
    if (sign > 0) {
      out.main += main;
      out.remainder += cc.remainder;
    } else {
      out.main -= main;
      out.remainder -= cc.remainder;
    }
    for (std::size_t i = below; i-- > 0;) {
      const Int p = primes[i];
      if (d > INT64_MAX / p) throw BudgetError("legendre_decompose: divisor overflow");
      factors.push_back(p);
      self(self, i, d * p, w * omega_p[i], -sign);
      factors.pop_back();
    }
  };
  visit(visit, primes.size(), 1, Rational(1), 1);
  return out;
}

Rational density_product(const SiftingDensity& density, Int z) {
  Rational v = 1;
  for (Int p : primes_below(z)) v *= 1 - density.omega(p) / p;
  return v;
}

MertensComparison mertens_compare(Int z) {
  if (z < 10) throw DomainError("mertens_compare requires z >= 10");
  MertensComparison out;
  out.product = std::exp(log_density_product(SiftingDensity(), z));
  out.asymptotic = kExpMinusEuler / std::log(static_cast<double>(z));
  out.relative_error = std::abs(out.product / out.asymptotic - 1.0);
  return out;
}

double dimension_fit(const SiftingDensity& density, Int z1, Int z2) {
  if (!(2 < z1 && z1 < z2)) throw DomainError("dimension_fit requires 2 < z1 < z2");
  const double num = log_density_product(density, z1) - log_density_product(density, z2);
  return num / std::log(std::log(static_cast<double>(z2)) / std::log(static_cast<double>(z1)));
}

}  // namespace sievekit
