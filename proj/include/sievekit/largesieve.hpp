#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "sievekit/arith.hpp"

namespace sievekit {

using Complex = std::complex<double>;

/// Absolute slack added to right-hand sides before an inequality verdict.
inline constexpr double kInequalitySlack = 1e-12;

/// Points in [0, 1) with minimum circular distance delta. Farey sets also
/// carry their exact fractions, which are used for exact phase reduction.
struct SeparatedPoints {
  std::vector<double> points;
  std::vector<std::pair<Int, Int>> fractions;  ///< (a, q); empty for generic sets
  double delta = 0.0;
};

/// a/q with 1 <= q <= Q, 0 <= a < q, (a, q) = 1; delta = 1/(Q(Q-1)). Q >= 2.
SeparatedPoints farey_points(Int Q);

/// Generic points; delta is computed as the minimum circular distance.
SeparatedPoints separated_points(std::vector<double> points);

/// Minimum circular distance over all pairs, by exhaustive comparison.
double min_circular_distance(const std::vector<double>& points);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  ///< lhs / rhs, 0 when rhs = 0
  bool holds = true;
};

/// sum_r |sum_n a_n e(n theta_r)|^2 <= (N - 1 + 1/delta) sum_n |a_n|^2, with a
/// indexed over [M, M + N).
InequalityCheck additive_ls_check(const SeparatedPoints& points, Int M, std::span<const Complex> a);

/// sum_n |sum_r b_r e(n theta_r)|^2 <= (N - 1 + 1/delta) sum_r |b_r|^2.
InequalityCheck dual_ls_check(const SeparatedPoints& points, Int M, Int N, std::span<const Complex> b);

/// S(theta_r) = sum_n a_n e(n theta_r) for every point.
std::vector<Complex> exponential_sums(const SeparatedPoints& points, Int M, std::span<const Complex> a);

/// sum_m |<psi, psi_m>|^2 / sum_n |<psi_m, psi_n>| <= <psi, psi>.
InequalityCheck hilbert_ls_check(const std::vector<std::vector<Complex>>& family, std::span<const Complex> psi);

struct LinnikIdentity {
  double lhs = 0.0;          ///< sum_{a=1}^{p-1} |U(theta + a/p)|^2
  double rhs = 0.0;          ///< p sum_a |U(theta; p, a)|^2 - |U(theta)|^2
  double relative_error = 0.0;
  bool identity_holds = true;  ///< relative error <= 1e-9
  double inequality_lhs = 0.0; ///< |U(theta)|^2 |Omega(p)| / (p - |Omega(p)|)
  bool inequality_holds = true;
};

/// Evaluates both sides of the residue-class variance identity for the
/// sequence `indicator` on [M, M + N) and, given |Omega(p)|, the derived
/// lower bound for the variance.
LinnikIdentity linnik_identity_check(std::span<const Int> indicator, Int M, Int p, double theta,
                                     Int omega_size = 0);

struct Character {
  /// value(n) = e(exponent[n mod q] / order); exponent -1 marks chi(n) = 0.
  std::vector<Int> exponent;
  Int conductor = 1;
  bool primitive = false;
  Complex gauss_sum;
};

/// All Dirichlet characters mod q, built from the decomposition of
/// (Z/qZ)^* into cyclic factors.
class CharacterTable {
 public:
  static CharacterTable build(Int q);

  Int modulus() const { return q_; }
  /// Common order L: every value is an L-th root of unity.
  Int order() const { return order_; }
  const std::vector<Character>& characters() const { return characters_; }
  Complex value(std::size_t index, Int n) const;
  /// Max deviation of sum_n chi(n) conj(chi'(n)) from phi(q) [chi = chi'].
  double orthogonality_error() const;

 private:
  Int q_ = 1;
  Int order_ = 1;
  std::vector<Character> characters_;
  std::vector<Complex> roots_;  // e(k / order)
};

inline constexpr Int kCharacterModulusCap = 1000;

/// Tables for every 1 <= q < Q.
std::vector<CharacterTable> character_tables_below(Int Q);

/// sum_{q<Q} q/phi(q) sum*_chi |sum_n a_n chi(n)|^2 <= (N - 1 + Q^2) sum |a_n|^2.
/// The trivial character mod 1 is counted as primitive.
InequalityCheck multiplicative_ls_check(Int Q, Int M, std::span<const Complex> a);
InequalityCheck multiplicative_ls_check(const std::vector<CharacterTable>& tables, Int Q, Int M,
                                        std::span<const Complex> a);

/// The modulus-q term of the multiplicative sum, once through character
/// values and once through additive characters via Gauss sums; returns both.
std::pair<double, double> gauss_reduction_check(const CharacterTable& table, Int M, std::span<const Complex> a);

/// Largest eigenvalue of E^* E and of E E^* for E_{r,n} = e(n theta_r),
/// n in [M, M + N), by power iteration.
std::pair<double, double> duality_norms(const SeparatedPoints& points, Int M, Int N, int max_iterations = 20000,
                                        double tolerance = 1e-14);

}  // namespace sievekit
