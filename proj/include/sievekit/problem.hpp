#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sievekit/arith.hpp"
#include "sievekit/rational.hpp"

namespace sievekit {

enum class ProblemKind { interval, twin, goldbach, shifted_prime, progression, parity, custom };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view name);

/// Serializable problem descriptor. The schema is the flat key set
/// kind, x, y, N, k, l, r; which keys are required depends on the kind.
struct ProblemParams {
  ProblemKind kind = ProblemKind::interval;
  std::optional<Int> x, y, N, k, l, r;

  /// One `key=value` per line, keys in schema order, unset keys omitted.
  std::string to_config() const;
  /// Accepts the output of to_config(); blank lines and `#` comments are
  /// ignored. Throws ConfigError on unknown keys or malformed values.
  static ProblemParams from_config(std::string_view text);
  /// Short human-readable tag such as "twin(x=100)".
  std::string describe() const;
};

/// The affine map t -> a*t + b.
struct LinearForm {
  Int a = 1;
  Int b = 0;
};

/// Multiplicative density omega, given on primes and extended to squarefree
/// d by multiplicativity. Values are exact rationals with 0 <= omega(p) < p.
class SiftingDensity {
 public:
  using Rule = std::function<Rational(Int)>;

  SiftingDensity();
  SiftingDensity(Rule rule, double kappa);
  static SiftingDensity constant(Int c, double kappa = 1.0);

  Rational omega(Int p) const;
  Rational omega(const FactoredSquarefree& d) const;
  /// Declared dimension of the problem.
  double kappa() const { return kappa_; }

 private:
  Rule rule_;
  double kappa_ = 1.0;
};

/// Forbidden residue classes Omega(p) for each prime. A prime with an empty
/// class set does not take part in the sieve.
class ResidueSystem {
 public:
  using Generator = std::function<std::vector<Int>(Int p)>;

  explicit ResidueSystem(Generator generator);
  /// Omega(p) = {0} for every p.
  static ResidueSystem zero_class();
  /// Omega(p) = roots mod p of the product of the forms.
  static ResidueSystem from_forms(std::vector<LinearForm> forms);
  /// Explicit table; primes missing from the map are inert.
  static ResidueSystem from_map(std::map<Int, std::vector<Int>> classes);

  /// Sorted distinct residues in [0, p). Throws DomainError if |Omega(p)| >= p.
  std::vector<Int> classes(Int p) const;
  Int size(Int p) const { return static_cast<Int>(classes(p).size()); }
  /// |Omega(d)| = product of |Omega(p)| over p | d.
  Int size(const FactoredSquarefree& d) const;
  bool contains(Int p, Int n) const;
  /// Residues mod d lying in Omega(p) for every p | d, assembled by CRT.
  std::vector<Int> classes_mod(const FactoredSquarefree& d) const;

 private:
  Generator generator_;
};

/// A finite sequence A together with its density omega, scale X and (for
/// affine problems) the residue form over an index interval [M, M+N).
///
/// Affine problems store their elements as the products of linear forms
/// evaluated at t in [M, M+N); the residue form sifts t directly through
/// Omega. Non-affine problems store the elements explicitly.
class SieveProblem {
 public:
  static SieveProblem from_forms(ProblemParams params, Int start, Int length, std::vector<LinearForm> forms,
                                 Rational X, double kappa);
  static SieveProblem from_residues(ProblemParams params, Int start, Int length, ResidueSystem residues,
                                    Rational X);
  static SieveProblem from_elements(ProblemParams params, std::vector<Int> elements, SiftingDensity density,
                                    Rational X);

  ProblemKind kind() const { return params_.kind; }
  const ProblemParams& params() const { return params_; }
  const Rational& X() const { return X_; }
  const SiftingDensity& density() const { return density_; }

  bool has_residue_form() const { return residues_.has_value(); }
  /// Throws DomainError for non-affine problems.
  const ResidueSystem& residues() const;
  Int start() const { return start_; }
  Int length() const { return length_; }
  const std::vector<LinearForm>& forms() const { return forms_; }
  const std::vector<Int>& elements() const { return elements_; }

  /// |A|.
  Int size() const;
  std::string describe() const { return params_.describe(); }

 private:
  SieveProblem() = default;

  ProblemParams params_;
  Rational X_;
  SiftingDensity density_;
  std::optional<ResidueSystem> residues_;
  Int start_ = 0;
  Int length_ = 0;
  std::vector<LinearForm> forms_;
  std::vector<Int> elements_;
};

SieveProblem build_problem(const ProblemParams& params, const Budget& budget = {});

/// The integers in [M, M+N) with omega = 1 and X = N.
SieveProblem make_interval(Int M, Int N);
/// The interval [M, M+N) sifted through an arbitrary residue system, X = N.
SieveProblem make_residue_problem(Int M, Int N, ResidueSystem residues);
SieveProblem make_custom(std::vector<Int> elements, SiftingDensity density, Rational X);

/// Number of t in [M, M+N) whose residue mod `modulus` is in `residues`.
Int count_in_residue_set(Int M, Int N, Int modulus, const std::vector<Int>& residues);

struct ClassCount {
  Int count = 0;
  /// R_d = |A_d| - (omega(d)/d) X.
  Rational remainder;
};

/// |A_d| and R_d for squarefree d.
ClassCount count_in_class(const SieveProblem& problem, const FactoredSquarefree& d,
                          const Budget& budget = {});

enum class SiftRoute {
  automatic,  ///< residue form when available, divisibility otherwise
  residue,    ///< t in Omega(p) tests over the index interval
  product     ///< divisibility of the element value by each p < z
};

/// |S(A, z)|: elements with no prime factor below z (or, in the residue
/// form, whose index avoids Omega(p) for every p < z).
Int exact_sift(const SieveProblem& problem, Int z, SiftRoute route = SiftRoute::automatic,
               const Budget& budget = {});

/// Survivor indicator over the index interval [M, M+N) of an affine problem.
std::vector<std::uint8_t> sifted_indicator(const SieveProblem& problem, Int z);

}  // namespace sievekit
