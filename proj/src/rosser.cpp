#include "sievekit/rosser.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sievekit/error.hpp"
#include "sievekit/legendre.hpp"

namespace sievekit {

namespace {

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e18; }

/// m * p^beta < D, exact when beta and D are integral.
bool scaled_below(Int m, Int p, double beta, double D) {
  if (std::isinf(D)) return D > 0;
  if (is_integral(beta) && is_integral(D)) {
    const __int128 limit = static_cast<__int128>(D);
    __int128 v = m;
    for (Int i = 0; i < static_cast<Int>(beta); ++i) {
      v *= p;
      if (v >= limit) return false;
    }
    return v < limit;
  }
  return static_cast<long double>(m) * std::pow(static_cast<long double>(p), static_cast<long double>(beta)) <
         static_cast<long double>(D);
}

Int product(const std::vector<Int>& v, std::size_t count) {
  Int m = 1;
  for (std::size_t i = 0; i < count; ++i) m *= v[i];
  return m;
}

}  // namespace

bool RosserWeights::below_level(const std::vector<Int>& descending, std::size_t j) const {
  // p_1 ... p_{j-1} * p_j^{beta + 1}
  return scaled_below(product(descending, j - 1) * descending[j - 1], descending[j - 1], beta, D);
}

bool RosserWeights::rho(const FactoredSquarefree& d) const {
  // rho(d) = eta(p_1) eta(p_1 p_2) ... eta(p_1 ... p_l).
  Int m = 1;
  for (int j = 1; j <= d.nu(); ++j) {
    const Int p = d.prime_factors[static_cast<std::size_t>(j - 1)];
    m *= p;
    const bool eta = (j % 2 == (r + 1) % 2) || scaled_below(m, p, beta, D);
    if (!eta) return false;
  }
  return true;
}

bool RosserWeights::sigma(const FactoredSquarefree& d) const {
  if (d.nu() == 0) return false;
  return rho(d.without_least()) && !rho(d);
}

bool RosserWeights::rho_closed(const FactoredSquarefree& d) const {
  for (int j = r == 0 ? 2 : 1; j <= d.nu(); j += 2) {
    if (!below_level(d.prime_factors, static_cast<std::size_t>(j))) return false;
  }
  return true;
}

bool RosserWeights::sigma_closed(const FactoredSquarefree& d) const {
  const int l = d.nu();
  if (l == 0 || l % 2 != r % 2) return false;
  return rho_closed(d.without_least()) && !below_level(d.prime_factors, static_cast<std::size_t>(l));
}

EtaChain eta_chain(const FactoredSquarefree& d, const RosserWeights& w) { return {w.rho(d), w.sigma(d)}; }

// ---------------------------------------------------------------------------

SiftOracle::SiftOracle(const SieveProblem& problem, Int z, const Budget& budget) : z_(z) {
  if (z < 2) throw DomainError("SiftOracle requires z >= 2");
  primes_ = primes_below(z);
  const int k = static_cast<int>(primes_.size());
  if (k > kSiftOracleMaxPrimes) throw BudgetError("SiftOracle: too many sifting primes");
  const std::size_t full = std::size_t{1} << k;
  std::vector<Int> histogram(full, 0);

  if (problem.has_residue_form()) {
    const Int M = problem.start();
    const Int N = problem.length();
    if (N > budget.max_sieve_limit) throw BudgetError("SiftOracle: problem too long");
    std::vector<std::uint32_t> mask(static_cast<std::size_t>(N), 0);
    for (int i = 0; i < k; ++i) {
      const Int p = primes_[static_cast<std::size_t>(i)];
      for (Int c : problem.residues().classes(p)) {
        for (Int t = M + mod_floor(c - M, p); t < M + N; t += p) mask[static_cast<std::size_t>(t - M)] |= 1u << i;
      }
    }
    for (auto m : mask) ++histogram[m];
  } else {
    for (Int e : problem.elements()) {
      std::uint32_t m = 0;
      for (int i = 0; i < k; ++i) {
        if (e % primes_[static_cast<std::size_t>(i)] == 0) m |= 1u << i;
      }
      ++histogram[m];
    }
  }

  superset_.resize(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) {
    auto& f = superset_[static_cast<std::size_t>(i)];
    f.assign(full, 0);
    const std::size_t low = (std::size_t{1} << i) - 1;
    for (std::size_t m = 0; m < full; ++m) {
      if ((m & low) == 0) f[m] = histogram[m];
    }
    for (int b = i; b < k; ++b) {
      const std::size_t bit = std::size_t{1} << b;
      for (std::size_t m = 0; m < full; ++m) {
        if (!(m & bit)) f[m] += f[m | bit];
      }
    }
  }
}

Int SiftOracle::sifted(const FactoredSquarefree& d, Int w) const {
  const auto first = static_cast<std::size_t>(std::lower_bound(primes_.begin(), primes_.end(), w) - primes_.begin());
  std::size_t mask = 0;
  for (Int p : d.prime_factors) {
    const auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) throw DomainError("SiftOracle: d must divide P(z)");
    const auto idx = static_cast<std::size_t>(it - primes_.begin());
    if (idx < first) throw DomainError("SiftOracle: prime factor of d below the sifting limit");
    mask |= std::size_t{1} << idx;
  }
  return superset_[first][mask];
}

// ---------------------------------------------------------------------------

IdentityReport buchstab_check(const SieveProblem& problem, Int z0, Int z, const Budget& budget) {
  if (!(2 <= z0 && z0 <= z)) throw DomainError("buchstab_check requires 2 <= z0 <= z");
  const SiftOracle oracle(problem, z, budget);
  IdentityReport out;
  out.lhs = from_integer(exact_sift(problem, z, SiftRoute::automatic, budget));
  Int rhs = oracle.sifted(FactoredSquarefree{}, z0);
  for (Int p : oracle.primes()) {
    if (p >= z0) rhs -= oracle.sifted(FactoredSquarefree{p, {p}}, p);
  }
  out.rhs = from_integer(rhs);
  out.holds = out.lhs == out.rhs;
  return out;
}

RosserIdentityReport rosser_identity(const SieveProblem& problem, Int z0, Int z, const RosserWeights& weights,
                                     const Budget& budget) {
  if (!(2 <= z0 && z0 <= z)) throw DomainError("rosser_identity requires 2 <= z0 <= z");
  const SiftOracle oracle(problem, z, budget);
  const auto& primes = oracle.primes();
  RosserIdentityReport out;
  out.exact = exact_sift(problem, z, SiftRoute::automatic, budget);

  // V(p) for every prime below z, and V(z).
  std::vector<Rational> V_below;  // V_below[i] = product over primes[0..i)
  std::vector<Rational> omega;
  Rational acc = 1;
  for (Int p : primes) {
    V_below.push_back(acc);
    omega.push_back(problem.density().omega(p));
    acc *= 1 - omega.back() / p;
  }
  const Rational V_z = acc;
  Rational V_z0 = 1;
  std::size_t first = 0;
  while (first < primes.size() && primes[first] < z0) {
    V_z0 *= 1 - omega[first] / primes[first];
    ++first;
  }

  Rational V0 = 0;
  Rational sigma_density = 0;
  std::vector<Int> factors;
  auto visit = [&](auto&& self, std::size_t below, Int d, const Rational& w, int mu) -> void {
    if (++out.divisors > budget.max_divisors) throw BudgetError("rosser_identity: divisor budget exceeded");
    const FactoredSquarefree fd{d, factors};
    const bool rho = weights.rho(fd);
    const bool sigma = weights.sigma(fd);
    if (rho) {
      out.rho_sum += mu * oracle.sifted(fd, z0);
      V0 += mu * w / d;
    }
    if (sigma) {
      const Int s = oracle.sifted(fd, fd.least_prime());
      out.sigma_sum += s;
      if (s > 0 && out.sigma_witness == 1) out.sigma_witness = d;
      const auto idx = static_cast<std::size_t>(std::lower_bound(primes.begin(), primes.end(), fd.least_prime()) -
                                                primes.begin());
      sigma_density += w / d * V_below[idx];
    }
    if (!rho) return;  // every extension has rho = sigma = 0
    for (std::size_t i = below; i-- > first;) {
      factors.push_back(primes[i]);
      self(self, i, d * primes[i], w * omega[i], -mu);
      factors.pop_back();
    }
  };
  visit(visit, primes.size(), 1, Rational(1), 1);

  const int sign = weights.r % 2 == 0 ? 1 : -1;
  out.identity = out.exact == out.rho_sum + sign * out.sigma_sum;
  out.one_sided = sign * (out.exact - out.rho_sum) >= 0;
  out.V_lhs = V_z;
  out.V_rhs = V_z0 * V0 + sign * sigma_density;
  out.V_identity = out.V_lhs == out.V_rhs;
  return out;
}

TruncationReport truncation_inequality_check(double D, double beta, int r, Int z) {
  if (!(beta > 1.0)) throw DomainError("truncation check requires beta > 1");
  if (static_cast<double>(z) * static_cast<double>(z) > D) throw DomainError("truncation check requires z^2 <= D");
  const RosserWeights w{D, beta, r};
  const auto primes = primes_below(z);
  const long double logD = std::log(static_cast<long double>(D));
  const long double c = (static_cast<long double>(beta) - 1) / (static_cast<long double>(beta) + 1);
  TruncationReport out;
  auto fail = [&](Int d) {
    ++out.violations;
    if (out.witnesses.size() < 8) out.witnesses.push_back(d);
  };
  std::vector<Int> factors;
  auto visit = [&](auto&& self, std::size_t below, Int d) -> void {
    const FactoredSquarefree fd{d, factors};
    const long double log_ratio = logD - std::log(static_cast<long double>(d));
    const bool rho = w.rho(fd);
    if (rho) {
      ++out.rho_members;
      if (!(0.5L * std::pow(c, fd.nu() / 2.0L) * logD < log_ratio)) fail(d);
    }
    if (w.sigma(fd)) {
      ++out.sigma_members;
      const long double lp = std::log(static_cast<long double>(fd.least_prime()));
      const long double mid = log_ratio + lp;
      const long double left = 0.5L * std::pow(c, (fd.nu() - 1) / 2.0L) * logD;
      if (!(left < mid && mid <= (static_cast<long double>(beta) + 1) * lp * (1 + 1e-15L))) fail(d);
    }
    if (!rho) return;
    for (std::size_t i = below; i-- > 0;) {
      factors.push_back(primes[i]);
      self(self, i, d * primes[i]);
      factors.pop_back();
    }
  };
  visit(visit, primes.size(), 1);
  return out;
}

// ---------------------------------------------------------------------------

SieveFunctionTable solve_sieve_functions(double tau_max, double step) {
  if (!(step > 0.0) || step > 1e-3) throw DomainError("solve_sieve_functions requires 0 < step <= 1e-3");
  if (!(tau_max > 2.0) || tau_max > 20.0) throw DomainError("solve_sieve_functions requires 2 < tau_max <= 20");
  const double inv = 1.0 / step;
  const Int per_unit = static_cast<Int>(std::llround(inv));
  if (std::abs(inv - static_cast<double>(per_unit)) > 1e-6 * inv) {
    throw DomainError("solve_sieve_functions requires 1/step to be an integer");
  }
  SieveFunctionTable t;
  t.h_ = 1.0 / static_cast<double>(per_unit);
  t.per_unit_ = per_unit;
  const Int n = static_cast<Int>(std::floor(tau_max * static_cast<double>(per_unit) + 1e-9));
  t.tau_max_ = static_cast<double>(n) * t.h_;
  t.phi0_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  t.phi1_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  const double two_e_gamma = 2.0 * kExpEuler;
  const Int two = 2 * per_unit;
  for (Int i = 1; i <= std::min(n, two); ++i) {
    t.phi1_[static_cast<std::size_t>(i)] = two_e_gamma / t.tau_at(static_cast<std::size_t>(i));
  }
  // A_r = tau phi_r, advanced by the trapezoid rule on phi_{r+1}(t - 1).
  double A0 = 0.0;
  double A1 = two_e_gamma;
  for (Int i = two + 1; i <= n; ++i) {
    const auto a = static_cast<std::size_t>(i - 1 - per_unit);
    const auto b = static_cast<std::size_t>(i - per_unit);
    A0 += 0.5 * t.h_ * (t.phi1_[a] + t.phi1_[b]);
    A1 += 0.5 * t.h_ * (t.phi0_[a] + t.phi0_[b]);
    const double tau = t.tau_at(static_cast<std::size_t>(i));
    t.phi0_[static_cast<std::size_t>(i)] = A0 / tau;
    t.phi1_[static_cast<std::size_t>(i)] = A1 / tau;
  }
  const double err = t.closed_form_error();
  if (err > 1e-6) {
    throw DomainError("solve_sieve_functions: step too coarse, closed-form mismatch " + format_number(err));
  }
  return t;
}

double SieveFunctionTable::closed_form_error() const {
  const double two_e_gamma = 2.0 * kExpEuler;
  double worst = 0.0;
  const Int n = static_cast<Int>(phi0_.size()) - 1;
  for (Int i = 2 * per_unit_ + 1; i <= std::min(n, 4 * per_unit_); ++i) {
    const double tau = tau_at(static_cast<std::size_t>(i));
    worst = std::max(worst, std::abs(phi0_[static_cast<std::size_t>(i)] - two_e_gamma * std::log(tau - 1.0) / tau));
    if (i <= 3 * per_unit_) {
      worst = std::max(worst, std::abs(phi1_[static_cast<std::size_t>(i)] - two_e_gamma / tau));
    }
  }
  return worst;
}

double SieveFunctionTable::phi(int r, double tau) const {
  if (!(tau > 0.0)) throw DomainError("phi requires tau > 0");
  if (tau <= 2.0) return r % 2 == 0 ? 0.0 : 2.0 * kExpEuler / tau;
  if (tau > tau_max_ + 1e-12) throw DomainError("phi: tau beyond the tabulated range");
  const auto& v = r % 2 == 0 ? phi0_ : phi1_;
  const double x = tau / h_;
  auto i = static_cast<std::size_t>(std::floor(x));
  if (i + 1 >= v.size()) return v.back();
  const double f = x - static_cast<double>(i);
  return v[i] * (1.0 - f) + v[i + 1] * f;
}

std::string SieveFunctionTable::to_csv() const {
  std::ostringstream out;
  out << "tau,phi0,phi1\n";
  for (std::size_t i = 1; i < phi0_.size(); ++i) {
    out << format_number(tau_at(i)) << ',' << format_number(phi0_[i]) << ',' << format_number(phi1_[i]) << '\n';
  }
  return out.str();
}

double step_halving_change(double tau_max, double step) {
  const auto coarse = solve_sieve_functions(tau_max, step);
  const auto fine = solve_sieve_functions(tau_max, step / 2.0);
  double worst = 0.0;
  for (std::size_t i = 1; i < coarse.size() && 2 * i < fine.size(); ++i) {
    worst = std::max(worst, std::abs(coarse.phi0_at(i) - fine.phi0_at(2 * i)));
    worst = std::max(worst, std::abs(coarse.phi1_at(i) - fine.phi1_at(2 * i)));
  }
  return worst;
}

// ---------------------------------------------------------------------------

BoundReport linear_sieve_bound(const SieveProblem& problem, Int z, double D, int r, const LinearSieveOptions& options,
                               const Budget& budget) {
  if (z < 2 || !(D > 1.0)) throw DomainError("linear_sieve_bound requires z >= 2 and D > 1");
  if (r != 0 && r != 1) throw DomainError("parity must be 0 or 1");
  const double tau = std::log(D) / std::log(static_cast<double>(z));
  if (tau > 19.0) throw DomainError("linear_sieve_bound: tau above the tabulated range");
  const auto table = solve_sieve_functions(std::max(4.0, std::ceil(tau) + 1.0), 1e-3);
  const double phi = table.phi(r, tau);
  const Rational V = density_product(problem.density(), z);
  const RosserWeights weights{D, options.beta, r};

  const auto primes = primes_below(z);
  std::vector<Rational> omega;
  for (Int p : primes) omega.push_back(problem.density().omega(p));
  std::optional<SiftOracle> oracle;
  if (options.z0 > 2) oracle.emplace(problem, z, budget);

  Rational remainder = 0;  // sum mu(d) rho(d) R_d
  Int rosser_sum = 0;      // sum mu(d) rho(d) |S(A_d, z0)|
  Int divisors = 0;
  std::vector<Int> factors;
  auto visit = [&](auto&& self, std::size_t below, Int d, int mu) -> void {
    if (++divisors > budget.max_divisors) throw BudgetError("linear_sieve_bound: divisor budget exceeded");
    const FactoredSquarefree fd{d, factors};
    if (!weights.rho(fd)) return;
    const ClassCount cc = count_in_class(problem, fd, budget);
    remainder += mu * cc.remainder;
    rosser_sum += mu * (oracle ? oracle->sifted(fd, options.z0) : cc.count);
    for (std::size_t i = below; i-- > 0;) {
      if (primes[i] < options.z0) break;
      factors.push_back(primes[i]);
      self(self, i, d * primes[i], -mu);
      factors.pop_back();
    }
  };
  visit(visit, primes.size(), 1, 1);

  BoundReport rep;
  rep.method = "rosser";
  rep.problem = problem.describe();
  rep.z = z;
  rep.D = D;
  rep.beta = options.beta;
  rep.parity = r;
  rep.direction = r == 1 ? Direction::upper : Direction::lower;
  rep.main = phi * to_double(V * problem.X());
  rep.remainder_bound = to_double(remainder);
  rep.bound = rep.main + rep.remainder_bound;
  rep.slack = options.slack;
  rep.exact = exact_sift(problem, z, SiftRoute::automatic, budget);
  double dim = std::nan("");
  if (z > 10) {
    try {
      dim = dimension_fit(problem.density(), 10, std::max<Int>(z, 1000));
    } catch (const DomainError&) {
    }
  } else {
    dim = dimension_fit(problem.density(), 10, 1000);
  }
  rep.extras.emplace_back("tau", tau);
  rep.extras.emplace_back("phi", phi);
  rep.extras.emplace_back("V", to_double(V));
  rep.extras.emplace_back("rosser_sum", static_cast<double>(rosser_sum));
  rep.extras.emplace_back("rosser_sum_valid",
                          (r == 1 ? rosser_sum >= rep.exact : rosser_sum <= rep.exact) ? 1.0 : 0.0);
  rep.extras.emplace_back("dimension", dim);
  rep.extras.emplace_back("dimension_warning", std::abs(dim - 1.0) > 0.3 ? 1.0 : 0.0);
  rep.extras.emplace_back("divisors", static_cast<double>(divisors));
  rep.finalize();
  return rep;
}

ParityReport parity_extremal(Int x, Int z, int r, const Budget& budget) {
  if (x > 10'000'000) throw BudgetError("parity_extremal requires x <= 10^7");
  ProblemParams params;
  params.kind = ProblemKind::parity;
  params.x = x;
  params.r = r;
  const SieveProblem B = build_problem(params, budget);
  const SiftOracle oracle(B, z, budget);
  const RosserWeights weights{static_cast<double>(x), 2.0, r};
  const auto& primes = oracle.primes();

  ParityReport out;
  out.x = x;
  out.z = z;
  out.r = r;
  out.size = B.size();
  out.exact = exact_sift(B, z, SiftRoute::product, budget);
  std::vector<Int> factors;
  auto visit = [&](auto&& self, std::size_t below, Int d, int mu) -> void {
    const FactoredSquarefree fd{d, factors};
    const bool rho = weights.rho(fd);
    if (rho) out.rosser_sum += mu * oracle.sifted(fd, 2);
    if (weights.sigma(fd)) {
      const Int s = oracle.sifted(fd, fd.least_prime());
      out.sigma_sum += s;
      if (s > 0 && out.sigma_witness == 1) out.sigma_witness = d;
    }
    if (!rho) return;
    for (std::size_t i = below; i-- > 0;) {
      factors.push_back(primes[i]);
      self(self, i, d * primes[i], -mu);
      factors.pop_back();
    }
  };
  visit(visit, primes.size(), 1, 1);
  out.identity = out.exact == out.rosser_sum;

  const double tau = std::log(static_cast<double>(x)) / std::log(static_cast<double>(z));
  if (tau <= 19.0) {
    const auto table = solve_sieve_functions(std::max(4.0, std::ceil(tau) + 1.0), 1e-3);
    out.expected = 0.5 * static_cast<double>(x) * table.phi(r, tau) * to_double(density_product(SiftingDensity(), z));
    out.ratio = out.expected > 0 ? static_cast<double>(out.exact) / out.expected : std::nan("");
  } else {
    out.expected = std::nan("");
    out.ratio = std::nan("");
  }
  return out;
}

// ---------------------------------------------------------------------------

int big_omega(Int n) {
  int k = 0;
  for (auto [p, e] : factorize(n)) k += e;
  return k;
}

namespace {

// Range tests in exact integer arithmetic.
bool at_least_tenth_root(Int p, Int N) {
  __int128 v = 1;
  for (int i = 0; i < 10; ++i) {
    v *= p;
    if (v >= N) return true;
  }
  return false;
}
bool below_cube_root(Int p, Int N) { return static_cast<__int128>(p) * p * p < N; }
bool first_range(Int p, Int N) { return at_least_tenth_root(p, N) && below_cube_root(p, N); }
bool second_range(Int p1, Int p2, Int N) {
  return !below_cube_root(p2, N) && static_cast<__int128>(p1) * p2 * p2 < N;
}

/// Number of distinct (p1, p2) with n = p1 p2 p3, p3 prime, in the ranges.
Int triple_representations(const std::vector<Int>& factors, Int N) {
  if (factors.size() != 3) return 0;
  std::vector<std::pair<Int, Int>> seen;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const std::pair<Int, Int> pq{factors[i], factors[j]};
      if (first_range(pq.first, N) && second_range(pq.first, pq.second, N) &&
          std::find(seen.begin(), seen.end(), pq) == seen.end()) {
        seen.push_back(pq);
      }
    }
  }
  return static_cast<Int>(seen.size());
}

std::vector<Int> with_multiplicity(Int n) {
  std::vector<Int> out;
  for (auto [p, e] : factorize(n)) {
    for (int i = 0; i < e; ++i) out.push_back(p);
  }
  return out;
}

}  // namespace

Rational chen_weight(Int n, Int N) {
  if (n < 1 || n >= N) throw DomainError("chen_weight requires 1 <= n < N");
  const auto factors = with_multiplicity(n);
  Int first = 0;
  for (Int p : factors) {
    if (!at_least_tenth_root(p, N)) throw DomainError("chen_weight requires n free of primes below N^{1/10}");
    if (below_cube_root(p, N)) ++first;
  }
  const Int triple = triple_representations(factors, N);
  return 1 - make_rational(first, 2) - make_rational(triple, 2);
}

ChenReport chen_decomposition(Int N, const Budget& budget) {
  if (N < 4 || N % 2 != 0) throw DomainError("chen_decomposition requires an even N >= 4");
  if (N > 10'000'000) throw BudgetError("chen_decomposition requires N <= 10^7");
  const auto table = primes_up_to(N, budget);
  // Smallest prime factor for every n < N.
  std::vector<std::int32_t> spf(static_cast<std::size_t>(N), 0);
  for (Int p : table.primes()) {
    for (Int m = p; m < N; m += p) {
      if (spf[static_cast<std::size_t>(m)] == 0) spf[static_cast<std::size_t>(m)] = static_cast<std::int32_t>(p);
    }
  }
  auto factors_of = [&](Int n) {
    std::vector<Int> f;
    while (n > 1) {
      const Int p = spf[static_cast<std::size_t>(n)];
      f.push_back(p);
      n /= p;
    }
    return f;
  };
  std::vector<Int> low;
  std::vector<Int> first;
  for (Int p : table.primes()) {
    if (!at_least_tenth_root(p, N)) {
      low.push_back(p);
    } else if (below_cube_root(p, N)) {
      first.push_back(p);
    }
  }

  ChenReport out;
  out.N = N;
  for (Int p : table.primes()) {
    const Int n = N - p;
    const auto f = factors_of(n);
    if (f.size() <= 2) ++out.lhs;
    bool sifted = true;
    for (Int q : low) {
      if (n % q == 0) {
        sifted = false;
        break;
      }
    }
    if (sifted) {
      ++out.term1;
      for (Int q : first) {
        if (n % q == 0) ++out.term2;
      }
    }
    if (triple_representations(f, N) > 0) ++out.term3;
  }
  out.rhs = from_integer(out.term1) - make_rational(out.term2, 2) - make_rational(out.term3, 2);
  out.holds = from_integer(out.lhs) >= out.rhs;

  out.singular_series = 1;
  for (auto [p, e] : factorize(N)) {
    if (p > 2) out.singular_series *= make_rational(p - 1, p - 2);
  }
  double c2 = 0.0;
  for (Int p : primes_below(1'000'000)) {
    if (p > 2) c2 += std::log1p(-1.0 / (static_cast<double>(p - 1) * static_cast<double>(p - 1)));
  }
  out.twin_constant = std::exp(c2);
  const double lN = std::log(static_cast<double>(N));
  out.shape = out.twin_constant * to_double(out.singular_series) * static_cast<double>(N) / (lN * lN);
  out.ratio = static_cast<double>(out.lhs) / out.shape;
  return out;
}

}  // namespace sievekit
