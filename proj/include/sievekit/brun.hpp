#pragma once

#include <optional>

#include "sievekit/arith.hpp"
#include "sievekit/problem.hpp"
#include "sievekit/report.hpp"

namespace sievekit {

/// Truncation of the Mobius sum over d | (n, P(z)): nu(d) <= 2 ell for the
/// upper parity, nu(d) <= 2 ell + 1 for the lower one.
struct PureSieveConfig {
  Int z = 2;
  int ell = 0;
  Direction parity = Direction::upper;

  int cutoff() const { return parity == Direction::upper ? 2 * ell : 2 * ell + 1; }
};

/// 1 when (n, P(z)) = 1, else 0.
int sifted_indicator_value(Int n, Int z);

/// Sum of mu(d) over d | (n, P(z)) with nu(d) <= cutoff.
Int truncated_indicator(Int n, const PureSieveConfig& config);

/// Main term sum of mu(d) omega(d)/d X over d | P(z), nu(d) <= cutoff, with
/// the remainder tallied from the true R_d (or, with worst_case, from
/// omega(d)(1 + |N - X|/d), which dominates |R_d| for residue-form problems).
BoundReport pure_sieve_bound(const SieveProblem& problem, const PureSieveConfig& config, bool worst_case = false,
                             const Budget& budget = {});

struct TwinPipelineResult {
  double z = 0.0;
  int ell = 0;
  double density = 0.0;     ///< V(z, omega)
  double tail = 0.0;        ///< 2^{-2 ell} * sum over d | P(z) of 4^{nu(d)}/d
  double truncated = 0.0;   ///< exact truncated sum of mu(d) omega(d)/d
  double remainder = 0.0;   ///< sum of |R_d| over the truncated divisors
  double bound = 0.0;
  Int exact = 0;            ///< pi_2(x)
  double ratio = 0.0;       ///< bound / exact
  double shape = 0.0;       ///< x (log log x / log x)^2
};

/// Upper bound for pi_2(x) from the pure sieve with
/// z = exp(log x / (100 log log x)) and ell = floor(log x / (4 log z));
/// both may be overridden.
TwinPipelineResult twin_upper_pipeline(Int x, std::optional<double> z_override = {},
                                       std::optional<int> ell_override = {}, const Budget& budget = {});

}  // namespace sievekit
