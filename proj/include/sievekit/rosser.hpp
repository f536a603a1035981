#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sievekit/arith.hpp"
#include "sievekit/problem.hpp"
#include "sievekit/rational.hpp"
#include "sievekit/report.hpp"

namespace sievekit {

/// Level D, parameter beta > 1 and parity r of the weights rho_r, sigma_r.
/// D = infinity makes every eta equal to 1.
struct RosserWeights {
  double D = std::numeric_limits<double>::infinity();
  double beta = 2.0;
  int r = 0;

  /// p_1 ... p_{j-1} p_j^{beta+1} < D, strict; exact when D and beta are integral.
  bool below_level(const std::vector<Int>& descending, std::size_t j) const;

  /// rho via the chain product of eta over the prefixes p_1 ... p_j.
  bool rho(const FactoredSquarefree& d) const;
  /// sigma(d) = rho(d / p(d)) - rho(d); 0 for d = 1.
  bool sigma(const FactoredSquarefree& d) const;
  /// Membership tests written directly from the set descriptions.
  bool rho_closed(const FactoredSquarefree& d) const;
  bool sigma_closed(const FactoredSquarefree& d) const;
};

struct EtaChain {
  bool rho = true;
  bool sigma = false;
};
EtaChain eta_chain(const FactoredSquarefree& d, const RosserWeights& w);

/// Counts |S(A_d, w)| for d | P(z) and w <= p(d), from a histogram of the
/// sets of primes below z that divide each element.
class SiftOracle {
 public:
  SiftOracle(const SieveProblem& problem, Int z, const Budget& budget = {});

  Int z() const { return z_; }
  const std::vector<Int>& primes() const { return primes_; }
  /// |S(A_d, w)|. Requires every prime of d to be >= w and < z.
  Int sifted(const FactoredSquarefree& d, Int w) const;

 private:
  Int z_;
  std::vector<Int> primes_;
  // superset_[i][mask]: elements whose prime set contains mask and avoids the first i primes.
  std::vector<std::vector<Int>> superset_;
};

inline constexpr int kSiftOracleMaxPrimes = 18;

struct IdentityReport {
  bool holds = false;
  Rational lhs;
  Rational rhs;
  std::string detail;
};

/// |S(A,z)| = |S(A,z0)| - sum_{z0 <= p < z} |S(A_p, p)|.
IdentityReport buchstab_check(const SieveProblem& problem, Int z0, Int z, const Budget& budget = {});

struct RosserIdentityReport {
  Int exact = 0;            ///< |S(A, z)|
  Int rho_sum = 0;          ///< sum mu(d) rho_r(d) |S(A_d, z0)|
  Int sigma_sum = 0;        ///< sum sigma_r(d) |S(A_d, p(d))|
  bool identity = false;    ///< exact = rho_sum + (-1)^r sigma_sum
  bool one_sided = false;   ///< (-1)^r (exact - rho_sum) >= 0
  Rational V_lhs;           ///< V(z)
  Rational V_rhs;           ///< V(z0) V_0 + (-1)^r sum sigma omega(d)/d V(p(d))
  bool V_identity = false;
  Int divisors = 0;
  Int sigma_witness = 1;    ///< a d with sigma(d) |S(A_d, p(d))| > 0, or 1
};

RosserIdentityReport rosser_identity(const SieveProblem& problem, Int z0, Int z, const RosserWeights& weights,
                                     const Budget& budget = {});

struct TruncationReport {
  Int rho_members = 0;
  Int sigma_members = 0;
  Int violations = 0;
  std::vector<Int> witnesses;  ///< first few violating d
  bool holds() const { return violations == 0; }
};

/// For d | P(z) with rho_r(d) = 1: (1/2)((beta-1)/(beta+1))^{nu/2} log D < log(D/d);
/// for sigma_r(d) = 1: (1/2)((beta-1)/(beta+1))^{(nu-1)/2} log D < log(D/d) + log p(d)
/// <= (beta+1) log p(d). Requires z^2 <= D.
TruncationReport truncation_inequality_check(double D, double beta, int r, Int z);

/// phi_0, phi_1 on the grid tau = i h, 0 < tau <= tau_max.
class SieveFunctionTable {
 public:
  double step() const { return h_; }
  double tau_max() const { return tau_max_; }
  std::size_t size() const { return phi0_.size(); }
  double tau_at(std::size_t i) const { return static_cast<double>(i) * h_; }
  double phi0_at(std::size_t i) const { return phi0_[i]; }
  double phi1_at(std::size_t i) const { return phi1_[i]; }
  /// Linear interpolation; tau in (0, tau_max].
  double phi(int r, double tau) const;
  /// Largest deviation from the closed forms on (2, 4].
  double closed_form_error() const;
  std::string to_csv() const;

  friend SieveFunctionTable solve_sieve_functions(double tau_max, double step);

 private:
  double h_ = 0.0;
  double tau_max_ = 0.0;
  Int per_unit_ = 0;
  std::vector<double> phi0_, phi1_;  // index 0 is tau = 0 and is never read
};

/// Integrates tau phi_r(tau) = 2 phi_r(2) + integral_2^tau phi_{r+1}(t-1) dt by
/// the trapezoid rule from the data tau phi_1 = 2e^gamma, phi_0 = 0 on (0, 2].
/// 1/step must be an integer; throws if the closed form on (2, 4] is missed by
/// more than 1e-6.
SieveFunctionTable solve_sieve_functions(double tau_max, double step);

/// Max over common grid points and both r of |phi_h - phi_{h/2}|.
double step_halving_change(double tau_max, double step);

struct LinearSieveOptions {
  Int z0 = 2;
  double beta = 2.0;
  double slack = 0.1;
};

/// Main term phi_r(tau) V(z) X with tau = log D / log z, plus the exact
/// sum of mu(d) R_d over rho_r(d) = 1.
BoundReport linear_sieve_bound(const SieveProblem& problem, Int z, double D, int r,
                               const LinearSieveOptions& options = {}, const Budget& budget = {});

struct ParityReport {
  Int x = 0;
  Int z = 2;
  int r = 0;
  Int size = 0;             ///< |B|
  Int exact = 0;            ///< |S(B, z)|
  Int rosser_sum = 0;       ///< sum mu(d) rho_r(d) |B_d| with beta = 2, D = x
  bool identity = false;
  Int sigma_sum = 0;        ///< leftover sum of sigma_r(d) |S(B_d, p(d))|
  Int sigma_witness = 1;
  double expected = 0.0;    ///< (x/2) phi_r(log x / log z) V(z, 1)
  double ratio = 0.0;       ///< exact / expected
};

ParityReport parity_extremal(Int x, Int z, int r, const Budget& budget = {});

/// W(n) = 1 - (1/2) #{p1 | n in range, with multiplicity}
///          - (1/2) #{(p1, p2) : n = p1 p2 p3 in the stated ranges}.
/// Requires n coprime to the primes below N^{1/10} and 1 <= n < N.
Rational chen_weight(Int n, Int N);

/// Number of prime factors with multiplicity.
int big_omega(Int n);

struct ChenReport {
  Int N = 0;
  Int lhs = 0;              ///< #{p < N : N - p has at most two prime factors}
  Int term1 = 0;            ///< |S(A, N^{1/10})|
  Int term2 = 0;            ///< sum over p1 of |S(A_{p1}, N^{1/10})|
  Int term3 = 0;            ///< #{p : N - p = p1 p2 p3 in range}
  Rational rhs;             ///< term1 - term2/2 - term3/2
  bool holds = false;
  Rational singular_series; ///< product over odd p | N of (p-1)/(p-2)
  double twin_constant = 0.0;
  double shape = 0.0;       ///< twin constant * singular series * N / log^2 N
  double ratio = 0.0;       ///< lhs / shape
};

ChenReport chen_decomposition(Int N, const Budget& budget = {});

}  // namespace sievekit
