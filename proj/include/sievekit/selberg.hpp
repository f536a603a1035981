#pragma once

#include <map>
#include <vector>

#include "sievekit/arith.hpp"
#include "sievekit/largesieve.hpp"
#include "sievekit/problem.hpp"
#include "sievekit/rational.hpp"
#include "sievekit/report.hpp"

namespace sievekit {

/// Squarefree d < z built from primes with |Omega(p)| > 0, ascending.
/// Primes with an empty class set never contain a sifted element, so
/// divisors through them are dropped from every sum.
std::vector<FactoredSquarefree> admissible_moduli(Int z, const ResidueSystem& residues,
                                                  const Budget& budget = {});

/// H(q) = product over p | q of |Omega(p)| / (p - |Omega(p)|).
Rational H_factor(const FactoredSquarefree& q, const ResidueSystem& residues);
Rational H_factor(Int q, const ResidueSystem& residues);

/// G(z) = sum over squarefree q < z of H(q).
Rational G_sum(Int z, const ResidueSystem& residues);

struct LambdaWeights {
  Int z = 2;
  std::vector<FactoredSquarefree> moduli;   ///< support, ascending
  std::map<Int, Rational> values;           ///< lambda(d) on the support
  Rational G;

  Rational at(Int d) const;
};

/// The minimizing weights of the quadratic form under lambda(1) = 1.
/// Construction re-derives G from the factorization identity at every d
/// and throws if it differs.
LambdaWeights optimal_lambda(Int z, const ResidueSystem& residues, const Budget& budget = {});

/// G = sum_{f | d} H(f) sum_{g < z/f, (g, d) = 1} H(g); true when it holds
/// for every admissible d < z.
bool factorization_identity_holds(Int z, const ResidueSystem& residues);

/// S = sum_{d1, d2} |Omega([d1,d2])| / [d1,d2] lambda(d1) lambda(d2).
Rational quadratic_form(const LambdaWeights& weights, const ResidueSystem& residues);

/// S through the diagonal form sum_f prod(p - |Omega(p)|)/|Omega(f)| xi(f)^2.
Rational quadratic_form_diagonal(const LambdaWeights& weights, const ResidueSystem& residues);

/// xi(f) = sum over d < z, f | d of |Omega(d)|/d lambda(d).
std::map<Int, Rational> xi_transform(const LambdaWeights& weights, const ResidueSystem& residues);

/// lambda(d) = d/|Omega(d)| sum_{g < z/d} mu(g) xi(dg).
LambdaWeights xi_inverse(const std::map<Int, Rational>& xi, Int z, const ResidueSystem& residues);

/// Builds a weight vector with the given values on the admissible support
/// (missing entries are zero); G is left at zero.
LambdaWeights make_weights(Int z, const ResidueSystem& residues, const std::map<Int, Rational>& values);

/// The dual double sum over d1, d2, h1 in Omega(d1), h2 in Omega(d2) and
/// q | (d1, d2) of Ramanujan sums c_q(h1 - h2), evaluated exactly.
Rational dual_form(const LambdaWeights& weights, const ResidueSystem& residues);

/// c_q(m) = sum over u | (q, m) of u mu(q/u).
Int ramanujan_sum(Int q, Int m);

/// Coefficients b(a/q) on the Farey points of order z - 1 (a/q with q < z).
struct DualCoefficients {
  SeparatedPoints points;
  std::vector<Complex> b;
};
DualCoefficients dual_coefficients(const LambdaWeights& weights, const ResidueSystem& residues);

/// Upper bound N S + R from the optimal weights with R summed from exact
/// class counts; `crude` replaces R by (sum_{d<z} |Omega(d)|)^2.
BoundReport selberg_upper_bound(const SieveProblem& problem, Int z, bool crude = false, const Budget& budget = {});

/// (N + z^2) / G, checked against the dual double sum and the additive
/// large sieve when the sizes allow.
BoundReport linnik_bound(const SieveProblem& problem, Int z, const Budget& budget = {});

/// Psi_q(n) = product over p | q with n in Omega(p) of (-1/H(p)).
Rational pseudo_character(const FactoredSquarefree& q, Int n, const ResidueSystem& residues);

struct PseudoCharacterMatrix {
  Int z = 2;
  Int M = 0;
  Int N = 0;
  std::vector<FactoredSquarefree> moduli;
  std::vector<double> values;  ///< row-major, rows = moduli, columns = n in [M, M + N)

  double at(std::size_t row, Int column) const { return values[row * static_cast<std::size_t>(N) + column]; }
};

inline constexpr Int kPseudoCharacterMaxZ = 100;
inline constexpr Int kPseudoCharacterMaxN = 10'000;

/// psi_q(n) = mu(q) sqrt(H(q)) Psi_q(n) for admissible q < z.
PseudoCharacterMatrix pseudo_character_matrix(Int z, const ResidueSystem& residues, Int M, Int N);

/// sum over d with n in Omega(d) of lambda(d) equals (1/G) sum_q H(q) Psi_q(n).
bool pseudo_character_identity_holds(const LambdaWeights& weights, const ResidueSystem& residues, Int n);

/// sum_q |sum_n a_n psi_q(n)|^2 <= (N - 1 + z^2) sum |a_n|^2.
InequalityCheck hybrid_check_rows(const PseudoCharacterMatrix& m, std::span<const Complex> a);
/// sum_n |sum_q b_q psi_q(n)|^2 <= (N - 1 + z^2) sum |b_q|^2.
InequalityCheck hybrid_check_columns(const PseudoCharacterMatrix& m, std::span<const Complex> b);

}  // namespace sievekit
