#include "sievekit/largesieve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

#include "sievekit/error.hpp"

namespace sievekit {

namespace {

constexpr long double kTwoPi = 2.0L * std::numbers::pi_v<long double>;

/// e(k/q) for k in [0, q).
std::vector<Complex> roots_of_unity(Int q) {
  std::vector<Complex> out(static_cast<std::size_t>(q));
  for (Int k = 0; k < q; ++k) {
    const long double t = kTwoPi * static_cast<long double>(k) / static_cast<long double>(q);
    out[static_cast<std::size_t>(k)] = Complex(static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t)));
  }
  return out;
}

/// e(n theta) with the phase reduced mod 1 in extended precision.
Complex phase(Int n, long double theta) {
  long double x = static_cast<long double>(n) * theta;
  x -= std::floor(x);
  const long double t = kTwoPi * x;
  return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
}

/// A_q(b) = sum of a_n over n = b (mod q), n = M + i.
std::vector<Complex> residue_sums(Int q, Int M, std::span<const Complex> a) {
  std::vector<Complex> out(static_cast<std::size_t>(q));
  Int b = mod_floor(M, q);
  for (const Complex& v : a) {
    out[static_cast<std::size_t>(b)] += v;
    if (++b == q) b = 0;
  }
  return out;
}

double energy(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& x : v) s += std::norm(x);
  return s;
}

InequalityCheck verdict(double lhs, double rhs) {
  InequalityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.ratio = rhs > 0 ? lhs / rhs : 0.0;
  c.holds = lhs <= rhs * (1.0 + kInequalitySlack) + kInequalitySlack;
  return c;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  Complex s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

}  // namespace

SeparatedPoints farey_points(Int Q) {
  if (Q < 2) throw DomainError("farey_points requires Q >= 2");
  SeparatedPoints out;
  for (Int q = 1; q <= Q; ++q) {
    for (Int a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      out.fractions.emplace_back(a, q);
      out.points.push_back(static_cast<double>(a) / static_cast<double>(q));
    }
  }
  out.delta = 1.0 / static_cast<double>(Q * (Q - 1));
  return out;
}

double min_circular_distance(const std::vector<double>& points) {
  double best = 1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      double d = std::abs(points[i] - points[j]);
      d -= std::floor(d);
      best = std::min({best, d, 1.0 - d});
    }
  }
  return best;
}

SeparatedPoints separated_points(std::vector<double> points) {
  for (double& p : points) p -= std::floor(p);
  SeparatedPoints out;
  out.delta = min_circular_distance(points);
  if (points.size() > 1 && out.delta <= 0.0) throw DomainError("points are not separated");
  out.points = std::move(points);
  return out;
}

std::vector<Complex> exponential_sums(const SeparatedPoints& points, Int M, std::span<const Complex> a) {
  std::vector<Complex> out(points.points.size());
  if (!points.fractions.empty()) {
    // Group by denominator: S(b/q) = sum_c A_q(c) e(bc/q).
    std::map<Int, std::pair<std::vector<Complex>, std::vector<Complex>>> cache;
    for (std::size_t r = 0; r < points.fractions.size(); ++r) {
      const auto [num, q] = points.fractions[r];
      auto it = cache.find(q);
      if (it == cache.end()) it = cache.emplace(q, std::make_pair(residue_sums(q, M, a), roots_of_unity(q))).first;
      const auto& [sums, roots] = it->second;
      Complex s;
      Int k = 0;
      const Int step = mod_floor(num, q);
      for (Int c = 0; c < q; ++c) {
        s += sums[static_cast<std::size_t>(c)] * roots[static_cast<std::size_t>(k)];
        k += step;
        if (k >= q) k -= q;
      }
      out[r] = s;
    }
    return out;
  }
  for (std::size_t r = 0; r < points.points.size(); ++r) {
    Complex s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * phase(M + static_cast<Int>(i), points.points[r]);
    out[r] = s;
  }
  return out;
}

InequalityCheck additive_ls_check(const SeparatedPoints& points, Int M, std::span<const Complex> a) {
  const auto sums = exponential_sums(points, M, a);
  const double N = static_cast<double>(a.size());
  const double rhs = (N - 1.0 + 1.0 / points.delta) * energy(a);
  return verdict(energy(sums), a.empty() ? 0.0 : rhs);
}

InequalityCheck dual_ls_check(const SeparatedPoints& points, Int M, Int N, std::span<const Complex> b) {
  if (b.size() != points.points.size()) throw DomainError("dual_ls_check: one coefficient per point required");
  std::vector<Complex> values(static_cast<std::size_t>(N));
  if (!points.fractions.empty()) {
    // T(n) = sum_q B_q(n mod q), B_q(c) = sum_a b_{a/q} e(ac/q).
    std::map<Int, std::vector<Complex>> by_q;
    std::map<Int, std::vector<Complex>> roots;
    for (std::size_t r = 0; r < b.size(); ++r) {
      const auto [num, q] = points.fractions[r];
      auto& B = by_q[q];
      if (B.empty()) {
        B.assign(static_cast<std::size_t>(q), Complex{});
        roots[q] = roots_of_unity(q);
      }
      const auto& w = roots[q];
      Int k = 0;
      const Int step = mod_floor(num, q);
      for (Int c = 0; c < q; ++c) {
        B[static_cast<std::size_t>(c)] += b[r] * w[static_cast<std::size_t>(k)];
        k += step;
        if (k >= q) k -= q;
      }
    }
    for (const auto& [q, B] : by_q) {
      Int c = mod_floor(M, q);
      for (Int i = 0; i < N; ++i) {
        values[static_cast<std::size_t>(i)] += B[static_cast<std::size_t>(c)];
        if (++c == q) c = 0;
      }
    }
  } else {
    for (std::size_t r = 0; r < b.size(); ++r) {
      for (Int i = 0; i < N; ++i) values[static_cast<std::size_t>(i)] += b[r] * phase(M + i, points.points[r]);
    }
  }
  const double rhs = (static_cast<double>(N) - 1.0 + 1.0 / points.delta) * energy(b);
  return verdict(energy(values), N == 0 ? 0.0 : rhs);
}

InequalityCheck hilbert_ls_check(const std::vector<std::vector<Complex>>& family, std::span<const Complex> psi) {
  for (const auto& v : family) {
    if (v.size() != psi.size()) throw DomainError("hilbert_ls_check: dimension mismatch");
    if (energy(v) == 0.0) throw DomainError("hilbert_ls_check: zero vector in family");
  }
  double lhs = 0.0;
  for (const auto& vm : family) {
    double denom = 0.0;
    for (const auto& vn : family) denom += std::abs(inner(vm, vn));
    lhs += std::norm(inner(psi, vm)) / denom;
  }
  return verdict(lhs, energy(psi));
}

LinnikIdentity linnik_identity_check(std::span<const Int> indicator, Int M, Int p, double theta, Int omega_size) {
  if (p < 2) throw DomainError("linnik_identity_check requires a prime p");
  if (omega_size < 0 || omega_size >= p) throw DomainError("linnik_identity_check requires 0 <= |Omega(p)| < p");
  auto U = [&](long double t) {
    Complex s;
    for (std::size_t i = 0; i < indicator.size(); ++i) {
      if (indicator[i] != 0) s += static_cast<double>(indicator[i]) * phase(M + static_cast<Int>(i), t);
    }
    return s;
  };
  std::vector<Complex> by_class(static_cast<std::size_t>(p));
  for (std::size_t i = 0; i < indicator.size(); ++i) {
    if (indicator[i] == 0) continue;
    const Int n = M + static_cast<Int>(i);
    by_class[static_cast<std::size_t>(mod_floor(n, p))] += static_cast<double>(indicator[i]) * phase(n, theta);
  }
  LinnikIdentity out;
  for (Int a = 1; a < p; ++a) {
    out.lhs += std::norm(U(static_cast<long double>(theta) + static_cast<long double>(a) / p));
  }
  const double class_energy = energy(by_class);
  const double u0 = std::norm(U(theta));
  out.rhs = static_cast<double>(p) * class_energy - u0;
  const double scale = std::max({std::abs(out.lhs), std::abs(out.rhs), static_cast<double>(p) * class_energy});
  out.relative_error = scale > 0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
  out.identity_holds = out.relative_error <= 1e-9;
  out.inequality_lhs = u0 * static_cast<double>(omega_size) / static_cast<double>(p - omega_size);
  out.inequality_holds = out.inequality_lhs <= out.lhs * (1.0 + kInequalitySlack) + kInequalitySlack * scale;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct CyclicFactor {
  Int modulus;                // prime power p^e
  Int order;                  // order of the generator
  std::vector<Int> log;       // log[n mod modulus]; -1 for non-units
};

Int power_mod(Int b, Int e, Int m) {
  __int128 r = 1 % m, x = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<Int>(r);
}

std::vector<CyclicFactor> cyclic_decomposition(Int p, int e) {
  Int pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  std::vector<CyclicFactor> out;
  if (p == 2) {
    if (e == 1) return out;
    // (Z/2^e)^* = <-1> x <5>; for e = 2 the second factor is trivial.
    CyclicFactor sign{pe, 2, std::vector<Int>(static_cast<std::size_t>(pe), -1)};
    CyclicFactor five{pe, e >= 3 ? pe / 4 : 1, std::vector<Int>(static_cast<std::size_t>(pe), -1)};
    Int x = 1;
    for (Int k = 0; k < five.order; ++k) {
      sign.log[static_cast<std::size_t>(x)] = 0;
      five.log[static_cast<std::size_t>(x)] = k;
      const Int neg = pe - x;
      sign.log[static_cast<std::size_t>(neg)] = 1;
      five.log[static_cast<std::size_t>(neg)] = k;
      x = x * 5 % pe;
    }
    out.push_back(std::move(sign));
    if (five.order > 1) out.push_back(std::move(five));
    return out;
  }
  const Int phi = pe / p * (p - 1);
  std::vector<Int> phi_primes;
  for (auto [r, _] : factorize(phi)) phi_primes.push_back(r);
  Int g = 2;
  for (;; ++g) {
    if (g % p == 0) continue;
    bool primitive = true;
    for (Int r : phi_primes) {
      if (power_mod(g, phi / r, pe) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  CyclicFactor f{pe, phi, std::vector<Int>(static_cast<std::size_t>(pe), -1)};
  Int x = 1;
  for (Int k = 0; k < phi; ++k) {
    f.log[static_cast<std::size_t>(x)] = k;
    x = x * g % pe;
  }
  out.push_back(std::move(f));
  return out;
}

}  // namespace

CharacterTable CharacterTable::build(Int q) {
  if (q < 1) throw DomainError("character_table requires q >= 1");
  if (q > kCharacterModulusCap) throw BudgetError("character_table: modulus above cap");
  CharacterTable t;
  t.q_ = q;
  std::vector<CyclicFactor> factors;
  for (auto [p, e] : factorize(q)) {
    for (auto& f : cyclic_decomposition(p, e)) factors.push_back(std::move(f));
  }
  Int L = 1;
  for (const auto& f : factors) L = std::lcm(L, f.order);
  t.order_ = L;
  t.roots_ = roots_of_unity(L);

  std::vector<bool> unit(static_cast<std::size_t>(q));
  for (Int n = 0; n < q; ++n) unit[static_cast<std::size_t>(n)] = std::gcd(n, q) == 1;

  // Enumerate exponent tuples k_j in [0, order_j).
  std::vector<Int> k(factors.size(), 0);
  const auto qroots = roots_of_unity(q);
  std::vector<Int> divisors;
  for (Int d = 1; d <= q; ++d) {
    if (q % d == 0) divisors.push_back(d);
  }
  while (true) {
    Character chi;
    chi.exponent.assign(static_cast<std::size_t>(q), -1);
    for (Int n = 0; n < q; ++n) {
      if (!unit[static_cast<std::size_t>(n)]) continue;
      Int v = 0;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        const auto& f = factors[j];
        v += k[j] * f.log[static_cast<std::size_t>(n % f.modulus)] * (L / f.order);
      }
      chi.exponent[static_cast<std::size_t>(n)] = v % L;
    }
    // Conductor: least d | q such that chi is trivial on units n = 1 (mod d).
    for (Int d : divisors) {
      bool induced = true;
      for (Int n = 1; n < q && induced; n += d) {
        if (unit[static_cast<std::size_t>(n)] && chi.exponent[static_cast<std::size_t>(n)] != 0) induced = false;
      }
      if (induced) {
        chi.conductor = d;
        break;
      }
    }
    chi.primitive = chi.conductor == q;
    Complex g;
    for (Int a = 0; a < q; ++a) {
      const Int v = chi.exponent[static_cast<std::size_t>(a)];
      if (v >= 0) g += t.roots_[static_cast<std::size_t>(v)] * qroots[static_cast<std::size_t>(a)];
    }
    chi.gauss_sum = g;
    t.characters_.push_back(std::move(chi));

    std::size_t j = 0;
    while (j < factors.size() && ++k[j] == factors[j].order) k[j++] = 0;
    if (j == factors.size()) break;
  }
  return t;
}

Complex CharacterTable::value(std::size_t index, Int n) const {
  const Int v = characters_.at(index).exponent[static_cast<std::size_t>(mod_floor(n, q_))];
  return v < 0 ? Complex{} : roots_[static_cast<std::size_t>(v)];
}

double CharacterTable::orthogonality_error() const {
  const double phi = static_cast<double>(euler_phi(q_));
  double worst = 0.0;
  for (std::size_t i = 0; i < characters_.size(); ++i) {
    for (std::size_t j = 0; j < characters_.size(); ++j) {
      Complex s;
      for (Int n = 0; n < q_; ++n) s += value(i, n) * std::conj(value(j, n));
      worst = std::max(worst, std::abs(s - Complex(i == j ? phi : 0.0)));
    }
  }
  return worst;
}

std::vector<CharacterTable> character_tables_below(Int Q) {
  std::vector<CharacterTable> out;
  for (Int q = 1; q < Q; ++q) out.push_back(CharacterTable::build(q));
  return out;
}

InequalityCheck multiplicative_ls_check(const std::vector<CharacterTable>& tables, Int Q, Int M,
                                        std::span<const Complex> a) {
  if (Q < 2) throw DomainError("multiplicative_ls_check requires Q >= 2");
  if (static_cast<Int>(tables.size()) < Q - 1) throw DomainError("multiplicative_ls_check: missing tables");
  double lhs = 0.0;
  for (Int q = 1; q < Q; ++q) {
    const auto& table = tables[static_cast<std::size_t>(q - 1)];
    const auto sums = residue_sums(q, M, a);
    double inner_sum = 0.0;
    for (std::size_t i = 0; i < table.characters().size(); ++i) {
      if (!table.characters()[i].primitive) continue;
      Complex s;
      for (Int b = 0; b < q; ++b) s += sums[static_cast<std::size_t>(b)] * table.value(i, b);
      inner_sum += std::norm(s);
    }
    lhs += static_cast<double>(q) / static_cast<double>(euler_phi(q)) * inner_sum;
  }
  const double N = static_cast<double>(a.size());
  const double rhs = (N - 1.0 + static_cast<double>(Q * Q)) * energy(a);
  return verdict(lhs, a.empty() ? 0.0 : rhs);
}

InequalityCheck multiplicative_ls_check(Int Q, Int M, std::span<const Complex> a) {
  return multiplicative_ls_check(character_tables_below(Q), Q, M, a);
}

std::pair<double, double> gauss_reduction_check(const CharacterTable& table, Int M, std::span<const Complex> a) {
  const Int q = table.modulus();
  const auto sums = residue_sums(q, M, a);
  const auto roots = roots_of_unity(q);
  // S(b/q) for every b mod q.
  std::vector<Complex> S(static_cast<std::size_t>(q));
  for (Int b = 0; b < q; ++b) {
    for (Int c = 0; c < q; ++c) S[static_cast<std::size_t>(b)] += sums[static_cast<std::size_t>(c)] * roots[static_cast<std::size_t>(b * c % q)];
  }
  double direct = 0.0, additive = 0.0;
  for (std::size_t i = 0; i < table.characters().size(); ++i) {
    if (!table.characters()[i].primitive) continue;
    Complex s, t;
    for (Int b = 0; b < q; ++b) {
      s += sums[static_cast<std::size_t>(b)] * table.value(i, b);
      t += std::conj(table.value(i, b)) * S[static_cast<std::size_t>(b)];
    }
    direct += std::norm(s);
    additive += std::norm(t) / static_cast<double>(q);
  }
  const double w = static_cast<double>(q) / static_cast<double>(euler_phi(q));
  return {w * direct, w * additive};
}

std::pair<double, double> duality_norms(const SeparatedPoints& points, Int M, Int N, int max_iterations,
                                        double tolerance) {
  const std::size_t R = points.points.size();
  const std::size_t n = static_cast<std::size_t>(N);
  if (R == 0 || n == 0) return {0.0, 0.0};
  if (static_cast<double>(R) * static_cast<double>(n) > 4e6) throw BudgetError("duality_norms: matrix too large");
  std::vector<Complex> E(R * n);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!points.fractions.empty()) {
        const auto [a, q] = points.fractions[r];
        const Int k = mod_floor(mod_floor(M + static_cast<Int>(i), q) * a, q);
        const long double t = kTwoPi * static_cast<long double>(k) / q;
        E[r * n + i] = Complex(static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t)));
      } else {
        E[r * n + i] = phase(M + static_cast<Int>(i), points.points[r]);
      }
    }
  }
  auto apply = [&](const std::vector<Complex>& x, bool adjoint) {
    std::vector<Complex> y(adjoint ? n : R);
    for (std::size_t r = 0; r < R; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        if (adjoint) {
          y[i] += std::conj(E[r * n + i]) * x[r];
        } else {
          y[r] += E[r * n + i] * x[i];
        }
      }
    }
    return y;
  };
  // Rayleigh ratio |Ax|^2/|x|^2 under power iteration on A^* A.
  auto top = [&](bool on_points) {
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> g;
    std::vector<Complex> x(on_points ? R : n);
    for (auto& v : x) v = Complex(g(rng), g(rng));
    double last = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
      const double norm_x = std::sqrt(energy(x));
      for (auto& v : x) v /= norm_x;
      const auto y = apply(x, on_points);
      const double value = energy(y);
      x = apply(y, !on_points);
      if (it > 0 && std::abs(value - last) <= tolerance * value) return value;
      last = value;
    }
    return last;
  };
  return {top(false), top(true)};
}

}  // namespace sievekit
