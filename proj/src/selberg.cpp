#include "sievekit/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sievekit/error.hpp"

namespace sievekit {

namespace {

/// |Omega(p)| for the primes below z, looked up once.
struct ClassSizes {
  std::vector<Int> primes;
  std::map<Int, Int> size;

  ClassSizes(Int z, const ResidueSystem& residues) {
    for (Int p : primes_below(z)) {
      primes.push_back(p);
      size[p] = residues.size(p);
    }
  }
  Int of(const FactoredSquarefree& d) const {
    Int s = 1;
    for (Int p : d.prime_factors) s *= size.at(p);
    return s;
  }
  Rational H(const FactoredSquarefree& d) const {
    Rational h = 1;
    for (Int p : d.prime_factors) {
      const Int w = size.at(p);
      h *= make_rational(w, p - w);
    }
    return h;
  }
};

FactoredSquarefree lcm_of(const FactoredSquarefree& a, const FactoredSquarefree& b) {
  std::vector<Int> primes;
  std::set_union(a.prime_factors.begin(), a.prime_factors.end(), b.prime_factors.begin(), b.prime_factors.end(),
                 std::back_inserter(primes), std::greater<>());
  FactoredSquarefree out;
  out.prime_factors = std::move(primes);
  for (Int p : out.prime_factors) out.value *= p;
  return out;
}

std::vector<FactoredSquarefree> moduli_from(Int z, const ClassSizes& sizes, const Budget& budget) {
  std::vector<FactoredSquarefree> out;
  std::vector<Int> factors;
  // Descending prime order keeps every factor list descending.
  auto visit = [&](auto&& self, std::size_t below, Int d) -> void {
    out.push_back(FactoredSquarefree{d, factors});
    if (static_cast<Int>(out.size()) > budget.max_divisors) throw BudgetError("admissible moduli exceed budget");
    for (std::size_t i = below; i-- > 0;) {
      const Int p = sizes.primes[i];
      if (sizes.size.at(p) == 0 || d * p >= z) continue;
      factors.push_back(p);
      self(self, i, d * p);
      factors.pop_back();
    }
  };
  visit(visit, sizes.primes.size(), 1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

Int count_for(const SieveProblem& problem, const FactoredSquarefree& m) {
  return count_in_residue_set(problem.start(), problem.length(), m.value, problem.residues().classes_mod(m));
}

void require_residue_form(const SieveProblem& problem, std::string_view method) {
  if (!problem.has_residue_form()) {
    throw DomainError(std::string(method) + " needs an interval with a residue system; " + problem.describe() +
                      " has none");
  }
}

}  // namespace

std::vector<FactoredSquarefree> admissible_moduli(Int z, const ResidueSystem& residues, const Budget& budget) {
  if (z < 2) throw DomainError("moduli require z >= 2");
  return moduli_from(z, ClassSizes(z, residues), budget);
}

Rational H_factor(const FactoredSquarefree& q, const ResidueSystem& residues) {
  Rational h = 1;
  for (Int p : q.prime_factors) {
    const Int w = residues.size(p);
    h *= make_rational(w, p - w);
  }
  return h;
}

Rational H_factor(Int q, const ResidueSystem& residues) {
  const auto f = factor_squarefree(q);
  if (!f) throw DomainError("H_factor requires squarefree q");
  return H_factor(*f, residues);
}

Rational G_sum(Int z, const ResidueSystem& residues) {
  const ClassSizes sizes(z, residues);
  Rational G = 0;
  for (const auto& q : moduli_from(z, sizes, Budget{})) G += sizes.H(q);
  return G;
}

Rational LambdaWeights::at(Int d) const {
  auto it = values.find(d);
  return it == values.end() ? Rational(0) : it->second;
}

bool factorization_identity_holds(Int z, const ResidueSystem& residues) {
  const ClassSizes sizes(z, residues);
  const auto D = moduli_from(z, sizes, Budget{});
  std::vector<Rational> H;
  for (const auto& q : D) H.push_back(sizes.H(q));
  Rational G = std::accumulate(H.begin(), H.end(), Rational(0));
  for (const auto& d : D) {
    Rational total = 0;
    for (std::size_t i = 0; i < D.size(); ++i) {
      const auto& f = D[i];
      if (d.value % f.value != 0) continue;
      Rational inner = 0;
      for (std::size_t j = 0; j < D.size(); ++j) {
        if (D[j].value * f.value < z && std::gcd(D[j].value, d.value) == 1) inner += H[j];
      }
      total += H[i] * inner;
    }
    if (total != G) return false;
  }
  return true;
}

LambdaWeights optimal_lambda(Int z, const ResidueSystem& residues, const Budget& budget) {
  if (z < 2) throw DomainError("optimal_lambda requires z >= 2");
  const ClassSizes sizes(z, residues);
  LambdaWeights w;
  w.z = z;
  w.moduli = moduli_from(z, sizes, budget);
  const auto& D = w.moduli;
  if (static_cast<double>(D.size()) * static_cast<double>(D.size()) > static_cast<double>(budget.max_work)) {
    throw BudgetError("optimal_lambda: support too large");
  }
  std::vector<Rational> H;
  for (const auto& q : D) H.push_back(sizes.H(q));
  w.G = std::accumulate(H.begin(), H.end(), Rational(0));

  for (const auto& d : D) {
    Rational inner = 0;
    Rational check = 0;
    for (std::size_t j = 0; j < D.size(); ++j) {
      const Int g = D[j].value;
      if (std::gcd(g, d.value) != 1) continue;
      if (g * d.value < z) inner += H[j];
    }
    // G = sum over f | d of H(f) * sum_{g < z/f, (g, d) = 1} H(g).
    for (std::size_t i = 0; i < D.size() && D[i].value <= d.value; ++i) {
      if (d.value % D[i].value != 0) continue;
      Rational s = 0;
      for (std::size_t j = 0; j < D.size(); ++j) {
        if (D[j].value * D[i].value < z && std::gcd(D[j].value, d.value) == 1) s += H[j];
      }
      check += H[i] * s;
    }
    if (check != w.G) throw Error("optimal_lambda: factorization identity fails at d = " + std::to_string(d.value));
    Rational lam = inner / w.G;
    for (Int p : d.prime_factors) lam *= make_rational(p, p - sizes.size.at(p));
    if (d.nu() % 2 == 1) lam = -lam;
    w.values[d.value] = lam;
  }
  return w;
}

LambdaWeights make_weights(Int z, const ResidueSystem& residues, const std::map<Int, Rational>& values) {
  LambdaWeights w;
  w.z = z;
  w.moduli = admissible_moduli(z, residues);
  for (const auto& d : w.moduli) {
    auto it = values.find(d.value);
    w.values[d.value] = it == values.end() ? Rational(0) : it->second;
  }
  return w;
}

Rational quadratic_form(const LambdaWeights& weights, const ResidueSystem& residues) {
  const ClassSizes sizes(weights.z, residues);
  Rational S = 0;
  for (const auto& d1 : weights.moduli) {
    const Rational& l1 = weights.values.at(d1.value);
    if (l1 == 0) continue;
    for (const auto& d2 : weights.moduli) {
      const Rational& l2 = weights.values.at(d2.value);
      if (l2 == 0) continue;
      const auto m = lcm_of(d1, d2);
      S += make_rational(sizes.of(m), m.value) * l1 * l2;
    }
  }
  return S;
}

std::map<Int, Rational> xi_transform(const LambdaWeights& weights, const ResidueSystem& residues) {
  const ClassSizes sizes(weights.z, residues);
  std::map<Int, Rational> xi;
  for (const auto& f : weights.moduli) {
    Rational s = 0;
    for (const auto& d : weights.moduli) {
      if (d.value % f.value == 0) s += make_rational(sizes.of(d), d.value) * weights.values.at(d.value);
    }
    xi[f.value] = s;
  }
  return xi;
}

LambdaWeights xi_inverse(const std::map<Int, Rational>& xi, Int z, const ResidueSystem& residues) {
  const ClassSizes sizes(z, residues);
  LambdaWeights w;
  w.z = z;
  w.moduli = moduli_from(z, sizes, Budget{});
  for (const auto& d : w.moduli) {
    Rational s = 0;
    for (const auto& e : w.moduli) {
      // e = d g with g squarefree and coprime to d.
      if (e.value % d.value != 0) continue;
      const Int g = e.value / d.value;
      auto it = xi.find(e.value);
      if (it == xi.end()) continue;
      if (mobius(g) > 0) {
        s += it->second;
      } else {
        s -= it->second;
      }
    }
    w.values[d.value] = s * make_rational(d.value, sizes.of(d));
  }
  return w;
}

Rational quadratic_form_diagonal(const LambdaWeights& weights, const ResidueSystem& residues) {
  const ClassSizes sizes(weights.z, residues);
  const auto xi = xi_transform(weights, residues);
  Rational S = 0;
  for (const auto& f : weights.moduli) {
    Int prod = 1;
    for (Int p : f.prime_factors) prod *= p - sizes.size.at(p);
    const Rational& x = xi.at(f.value);
    S += make_rational(prod, sizes.of(f)) * x * x;
  }
  return S;
}

Int ramanujan_sum(Int q, Int m) {
  if (q < 1) throw DomainError("ramanujan_sum requires q >= 1");
  const Int g = std::gcd(q, mod_floor(m, q) == 0 ? q : mod_floor(m, q));
  Int s = 0;
  for (Int u = 1; u <= g; ++u) {
    if (g % u == 0) s += u * mobius(q / u);
  }
  return s;
}

Rational dual_form(const LambdaWeights& weights, const ResidueSystem& residues) {
  const auto& D = weights.moduli;
  std::vector<std::vector<Int>> classes;
  for (const auto& d : D) classes.push_back(residues.classes_mod(d));
  Rational total = 0;
  for (std::size_t i = 0; i < D.size(); ++i) {
    const Rational& l1 = weights.values.at(D[i].value);
    if (l1 == 0) continue;
    for (std::size_t j = 0; j < D.size(); ++j) {
      const Rational& l2 = weights.values.at(D[j].value);
      if (l2 == 0) continue;
      const Int g = std::gcd(D[i].value, D[j].value);
      std::vector<Int> qs;
      for (Int q = 1; q <= g; ++q) {
        if (g % q == 0) qs.push_back(q);
      }
      Int inner = 0;
      for (Int h1 : classes[i]) {
        for (Int h2 : classes[j]) {
          for (Int q : qs) inner += ramanujan_sum(q, h1 - h2);
        }
      }
      total += l1 * l2 * make_rational(inner, D[i].value * D[j].value);
    }
  }
  return total;
}

DualCoefficients dual_coefficients(const LambdaWeights& weights, const ResidueSystem& residues) {
  DualCoefficients out;
  const Int z = weights.z;
  if (z < 3) {
    out.points.points = {0.0};
    out.points.fractions = {{0, 1}};
    out.points.delta = 1.0;
  } else {
    out.points = farey_points(z - 1);
  }
  out.b.assign(out.points.points.size(), Complex{});
  std::vector<std::vector<Int>> classes;
  std::vector<double> lam;
  for (const auto& d : weights.moduli) {
    classes.push_back(residues.classes_mod(d));
    lam.push_back(to_double(weights.values.at(d.value)));
  }
  for (std::size_t r = 0; r < out.b.size(); ++r) {
    const auto [a, q] = out.points.fractions[r];
    Complex s;
    for (std::size_t i = 0; i < weights.moduli.size(); ++i) {
      const Int d = weights.moduli[i].value;
      if (d % q != 0 || lam[i] == 0.0) continue;
      Complex inner;
      for (Int h : classes[i]) {
        const long double t = -2.0L * std::acos(-1.0L) * static_cast<long double>(mod_floor(a * (h % q), q)) / q;
        inner += Complex(static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t)));
      }
      s += lam[i] / static_cast<double>(d) * inner;
    }
    out.b[r] = s;
  }
  return out;
}

BoundReport selberg_upper_bound(const SieveProblem& problem, Int z, bool crude, const Budget& budget) {
  require_residue_form(problem, "selberg_upper_bound");
  const auto& residues = problem.residues();
  const LambdaWeights w = optimal_lambda(z, residues, budget);
  const ClassSizes sizes(z, residues);
  const Int N = problem.length();

  // Group lambda(d1) lambda(d2) by [d1, d2].
  std::map<Int, std::pair<FactoredSquarefree, Rational>> by_lcm;
  for (const auto& d1 : w.moduli) {
    for (const auto& d2 : w.moduli) {
      const auto m = lcm_of(d1, d2);
      auto [it, fresh] = by_lcm.try_emplace(m.value, m, Rational(0));
      it->second.second += w.values.at(d1.value) * w.values.at(d2.value);
    }
  }
  Rational S = 0;
  Rational R = 0;
  for (const auto& [value, entry] : by_lcm) {
    const auto& [m, c] = entry;
    if (c == 0) continue;
    const Rational density = make_rational(sizes.of(m), m.value);
    S += c * density;
    R += c * (from_integer(count_for(problem, m)) - density * N);
  }
  if (S * w.G != 1) throw Error("selberg_upper_bound: quadratic form differs from 1/G");

  BoundReport r;
  r.method = "selberg";
  r.problem = problem.describe();
  r.z = z;
  r.direction = Direction::upper;
  const Rational main = N / w.G;
  r.main = to_double(main);
  if (crude) {
    Int omega_sum = 0;
    for (const auto& d : w.moduli) omega_sum += sizes.of(d);
    r.remainder_bound = static_cast<double>(omega_sum) * static_cast<double>(omega_sum);
    r.bound = r.main + r.remainder_bound;
  } else {
    r.remainder_bound = to_double(R);
    r.bound = to_double(main + R);
  }
  r.exact = exact_sift(problem, z, SiftRoute::residue, budget);
  double lam_max = 0.0;
  for (const auto& [d, v] : w.values) lam_max = std::max(lam_max, std::abs(to_double(v)));
  r.extras.emplace_back("G", to_double(w.G));
  r.extras.emplace_back("N", static_cast<double>(N));
  r.extras.emplace_back("support", static_cast<double>(w.moduli.size()));
  r.extras.emplace_back("max_abs_lambda", lam_max);
  r.extras.emplace_back("crude", crude ? 1.0 : 0.0);
  r.finalize();
  return r;
}

BoundReport linnik_bound(const SieveProblem& problem, Int z, const Budget& budget) {
  require_residue_form(problem, "linnik_bound");
  if (z < 2) throw DomainError("linnik_bound requires z >= 2");
  const auto& residues = problem.residues();
  const Int N = problem.length();
  const Rational G = G_sum(z, residues);
  BoundReport r;
  r.method = "linnik";
  r.problem = problem.describe();
  r.z = z;
  r.direction = Direction::upper;
  r.main = to_double(N / G);
  r.remainder_bound = to_double(z * z / G);
  r.bound = to_double((N + z * z) / G);
  r.exact = exact_sift(problem, z, SiftRoute::residue, budget);
  r.extras.emplace_back("G", to_double(G));

  // Farey sums of the sifted indicator against |S|^2 G and the large sieve.
  const double farey_cost = static_cast<double>(z) * static_cast<double>(N) + static_cast<double>(z) * z * z;
  if (z >= 3 && farey_cost <= static_cast<double>(budget.max_work) / 100.0) {
    const auto alive = sifted_indicator(problem, z);
    std::vector<Complex> a(alive.begin(), alive.end());
    const auto points = farey_points(z - 1);
    const auto check = additive_ls_check(points, problem.start(), a);
    const double S = static_cast<double>(r.exact);
    const double lhs = S * S * to_double(G);
    r.extras.emplace_back("farey_sum", check.lhs);
    r.extras.emplace_back("sifted_square_times_G", lhs);
    r.extras.emplace_back("farey_ls_rhs", check.rhs);
    r.extras.emplace_back("primal_ok",
                          (lhs <= check.lhs * (1 + kInequalitySlack) + kInequalitySlack && check.holds) ? 1.0 : 0.0);
  }
  // Dual route: the Farey double sum of b(a/q) equals the quadratic form.
  if (z <= 50 && static_cast<double>(N) * z * z <= static_cast<double>(budget.max_work) / 100.0) {
    const auto w = optimal_lambda(z, residues, budget);
    const Rational dual = dual_form(w, residues);
    const bool exact_match = dual * G == 1 && quadratic_form(w, residues) == dual;
    const auto coeffs = dual_coefficients(w, residues);
    const auto ls = dual_ls_check(coeffs.points, problem.start(), N, coeffs.b);
    double b_energy = 0.0;
    for (const auto& b : coeffs.b) b_energy += std::norm(b);
    const double rel = std::abs(b_energy * to_double(G) - 1.0);
    const bool chain = ls.holds && static_cast<double>(r.exact) <= ls.lhs * (1 + 1e-9) + 1e-9 && rel <= 1e-9;
    r.extras.emplace_back("dual_form_matches", exact_match ? 1.0 : 0.0);
    r.extras.emplace_back("dual_energy_rel_error", rel);
    r.extras.emplace_back("dual_ls_lhs", ls.lhs);
    r.extras.emplace_back("dual_ls_rhs", ls.rhs);
    r.extras.emplace_back("dual_ok", (exact_match && chain) ? 1.0 : 0.0);
  }
  r.finalize();
  return r;
}

Rational pseudo_character(const FactoredSquarefree& q, Int n, const ResidueSystem& residues) {
  Rational v = 1;
  for (Int p : q.prime_factors) {
    if (residues.contains(p, n)) {
      const Int w = residues.size(p);
      v *= make_rational(-(p - w), w);
    }
  }
  return v;
}

PseudoCharacterMatrix pseudo_character_matrix(Int z, const ResidueSystem& residues, Int M, Int N) {
  if (z > kPseudoCharacterMaxZ || N > kPseudoCharacterMaxN) {
    throw BudgetError("pseudo_character_matrix: z <= 100 and N <= 10^4 required");
  }
  if (N < 0) throw DomainError("pseudo_character_matrix requires N >= 0");
  const ClassSizes sizes(z, residues);
  PseudoCharacterMatrix m;
  m.z = z;
  m.M = M;
  m.N = N;
  m.moduli = moduli_from(z, sizes, Budget{});
  std::map<Int, std::vector<Int>> classes;
  for (Int p : sizes.primes) classes[p] = residues.classes(p);
  m.values.resize(m.moduli.size() * static_cast<std::size_t>(N));
  for (std::size_t row = 0; row < m.moduli.size(); ++row) {
    const auto& q = m.moduli[row];
    const double scale = (q.nu() % 2 ? -1.0 : 1.0) * std::sqrt(to_double(sizes.H(q)));
    for (Int i = 0; i < N; ++i) {
      double psi = 1.0;
      for (Int p : q.prime_factors) {
        const auto& c = classes[p];
        if (std::binary_search(c.begin(), c.end(), mod_floor(M + i, p))) {
          psi *= -static_cast<double>(p - sizes.size.at(p)) / static_cast<double>(sizes.size.at(p));
        }
      }
      m.values[row * static_cast<std::size_t>(N) + static_cast<std::size_t>(i)] = scale * psi;
    }
  }
  return m;
}

bool pseudo_character_identity_holds(const LambdaWeights& weights, const ResidueSystem& residues, Int n) {
  Rational lhs = 0;
  Rational rhs = 0;
  for (const auto& d : weights.moduli) {
    bool inside = true;
    for (Int p : d.prime_factors) inside = inside && residues.contains(p, n);
    if (inside) lhs += weights.values.at(d.value);
    rhs += H_factor(d, residues) * pseudo_character(d, n, residues);
  }
  return lhs * weights.G == rhs;
}

InequalityCheck hybrid_check_rows(const PseudoCharacterMatrix& m, std::span<const Complex> a) {
  if (static_cast<Int>(a.size()) != m.N) throw DomainError("hybrid_check_rows: length mismatch");
  double lhs = 0.0, energy = 0.0;
  for (const auto& v : a) energy += std::norm(v);
  for (std::size_t row = 0; row < m.moduli.size(); ++row) {
    Complex s;
    for (Int i = 0; i < m.N; ++i) s += a[static_cast<std::size_t>(i)] * m.at(row, i);
    lhs += std::norm(s);
  }
  const double rhs = (static_cast<double>(m.N) - 1.0 + static_cast<double>(m.z * m.z)) * energy;
  InequalityCheck c{lhs, rhs, rhs > 0 ? lhs / rhs : 0.0, lhs <= rhs * (1 + kInequalitySlack) + kInequalitySlack};
  return c;
}

InequalityCheck hybrid_check_columns(const PseudoCharacterMatrix& m, std::span<const Complex> b) {
  if (b.size() != m.moduli.size()) throw DomainError("hybrid_check_columns: length mismatch");
  double lhs = 0.0, energy = 0.0;
  for (const auto& v : b) energy += std::norm(v);
  for (Int i = 0; i < m.N; ++i) {
    Complex s;
    for (std::size_t row = 0; row < m.moduli.size(); ++row) s += b[row] * m.at(row, i);
    lhs += std::norm(s);
  }
  const double rhs = (static_cast<double>(m.N) - 1.0 + static_cast<double>(m.z * m.z)) * energy;
  InequalityCheck c{lhs, rhs, rhs > 0 ? lhs / rhs : 0.0, lhs <= rhs * (1 + kInequalitySlack) + kInequalitySlack};
  return c;
}

}  // namespace sievekit
