#pragma once

#include "sievekit/arith.hpp"
#include "sievekit/problem.hpp"
#include "sievekit/rational.hpp"

namespace sievekit {

/// e^{-gamma}, gamma the Euler constant.
inline constexpr double kExpMinusEuler = 0.561459483566885;
/// e^{gamma}.
inline constexpr double kExpEuler = 1.7810724179901979;

/// |S(A,z)| = V(z,omega) X + R(A,z), both sides assembled from the
/// divisor sum over d | P(z).
struct SieveDecomposition {
  Rational main;       ///< sum of mu(d) omega(d)/d X
  Rational remainder;  ///< sum of mu(d) R_d
  Int total = 0;       ///< sum of mu(d) |A_d|
  Int divisors = 0;    ///< number of d visited
};

/// Divisors d of P(z) are visited depth first; a branch is cut once
/// omega(d) = 0 and |A_d| = 0, since every multiple then contributes nothing.
SieveDecomposition legendre_decompose(const SieveProblem& problem, Int z, const Budget& budget = {});

/// V(z, omega) = product over p < z of (1 - omega(p)/p).
Rational density_product(const SiftingDensity& density, Int z);

struct MertensComparison {
  double product = 0.0;
  double asymptotic = 0.0;
  double relative_error = 0.0;
};

/// V(z, 1) against e^{-gamma}/log z.
MertensComparison mertens_compare(Int z);

/// log(V(z1)/V(z2)) / log(log z2 / log z1).
double dimension_fit(const SiftingDensity& density, Int z1, Int z2);

}  // namespace sievekit
