#include "sievekit/problem.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "sievekit/error.hpp"

namespace sievekit {

namespace {

constexpr std::pair<ProblemKind, std::string_view> kKindNames[] = {
    {ProblemKind::interval, "interval"},     {ProblemKind::twin, "twin"},
    {ProblemKind::goldbach, "goldbach"},     {ProblemKind::shifted_prime, "shifted_prime"},
    {ProblemKind::progression, "progression"}, {ProblemKind::parity, "parity"},
    {ProblemKind::custom, "custom"},
};

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int require(const std::optional<Int>& v, std::string_view key, ProblemKind kind) {
  if (!v) {
    throw ConfigError("problem '" + std::string(to_string(kind)) + "' requires parameter '" +
                      std::string(key) + "'");
  }
  return *v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Int parse_integer(std::string_view key, std::string_view text) {
  // Accept plain integers and integral scientific notation such as 1e4.
  Int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) return value;
  double d = 0.0;
  auto [dptr, dec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (dec == std::errc() && dptr == text.data() + text.size() && d == static_cast<double>(static_cast<Int>(d))) {
    return static_cast<Int>(d);
  }
  throw ConfigError("parameter '" + std::string(key) + "' is not an integer: '" + std::string(text) + "'");
}

Int checked_product(Int a, Int b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r > INT64_MAX || r < INT64_MIN) throw BudgetError("integer overflow in residue arithmetic");
  return static_cast<Int>(r);
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  for (auto [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "custom";
}

ProblemKind parse_problem_kind(std::string_view name) {
  for (auto [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ConfigError("unknown problem kind '" + std::string(name) + "'");
}

std::string ProblemParams::to_config() const {
  std::ostringstream out;
  out << "kind=" << to_string(kind) << '\n';
  auto emit = [&](std::string_view key, const std::optional<Int>& v) {
    if (v) out << key << '=' << *v << '\n';
  };
  emit("x", x);
  emit("y", y);
  emit("N", N);
  emit("k", k);
  emit("l", l);
  emit("r", r);
  return out.str();
}

ProblemParams ProblemParams::from_config(std::string_view text) {
  ProblemParams params;
  bool saw_kind = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed config line '" + line + "'");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "kind") {
      params.kind = parse_problem_kind(value);
      saw_kind = true;
    } else if (key == "x") {
      params.x = parse_integer(key, value);
    } else if (key == "y") {
      params.y = parse_integer(key, value);
    } else if (key == "N") {
      params.N = parse_integer(key, value);
    } else if (key == "k") {
      params.k = parse_integer(key, value);
    } else if (key == "l") {
      params.l = parse_integer(key, value);
    } else if (key == "r") {
      params.r = parse_integer(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (!saw_kind) throw ConfigError("config is missing 'kind'");
  return params;
}

std::string ProblemParams::describe() const {
  std::ostringstream out;
  out << to_string(kind) << '(';
  bool first = true;
  auto emit = [&](std::string_view key, const std::optional<Int>& v) {
    if (!v) return;
    if (!first) out << ',';
    out << key << '=' << *v;
    first = false;
  };
  emit("x", x);
  emit("y", y);
  emit("N", N);
  emit("k", k);
  emit("l", l);
  emit("r", r);
  out << ')';
  return out.str();
}

// ---------------------------------------------------------------------------

SiftingDensity::SiftingDensity() : SiftingDensity([](Int) { return from_integer(1); }, 1.0) {}

SiftingDensity::SiftingDensity(Rule rule, double kappa) : rule_(std::move(rule)), kappa_(kappa) {}

SiftingDensity SiftingDensity::constant(Int c, double kappa) {
  return SiftingDensity([c](Int) { return from_integer(c); }, kappa);
}

Rational SiftingDensity::omega(Int p) const {
  Rational w = rule_(p);
  if (w < 0 || w >= p) {
    throw DomainError("density violates 0 <= omega(p) < p at p = " + std::to_string(p));
  }
  return w;
}

Rational SiftingDensity::omega(const FactoredSquarefree& d) const {
  Rational w = 1;
  for (Int p : d.prime_factors) w *= omega(p);
  return w;
}

// ---------------------------------------------------------------------------

ResidueSystem::ResidueSystem(Generator generator) : generator_(std::move(generator)) {}

ResidueSystem ResidueSystem::zero_class() {
  return ResidueSystem([](Int) { return std::vector<Int>{0}; });
}

ResidueSystem ResidueSystem::from_forms(std::vector<LinearForm> forms) {
  return ResidueSystem([forms = std::move(forms)](Int p) {
    std::vector<Int> roots;
    for (const auto& f : forms) {
      const Int a = mod_floor(f.a, p);
      const Int b = mod_floor(f.b, p);
      if (a == 0) {
        if (b == 0) {
          for (Int t = 0; t < p; ++t) roots.push_back(t);
        }
        continue;
      }
      roots.push_back(mod_floor(-b * mod_inverse(a, p) % p, p));
    }
    return roots;
  });
}

ResidueSystem ResidueSystem::from_map(std::map<Int, std::vector<Int>> classes) {
  return ResidueSystem([classes = std::move(classes)](Int p) {
    auto it = classes.find(p);
    return it == classes.end() ? std::vector<Int>{} : it->second;
  });
}

std::vector<Int> ResidueSystem::classes(Int p) const {
  std::vector<Int> out = generator_(p);
  for (Int& r : out) r = mod_floor(r, p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (static_cast<Int>(out.size()) >= p) {
    throw DomainError("residue system removes every class mod " + std::to_string(p));
  }
  return out;
}

Int ResidueSystem::size(const FactoredSquarefree& d) const {
  Int total = 1;
  for (Int p : d.prime_factors) total *= size(p);
  return total;
}

bool ResidueSystem::contains(Int p, Int n) const {
  const auto c = classes(p);
  return std::binary_search(c.begin(), c.end(), mod_floor(n, p));
}

std::vector<Int> ResidueSystem::classes_mod(const FactoredSquarefree& d) const {
  std::vector<Int> residues{0};
  Int modulus = 1;
  for (Int p : d.prime_factors) {
    const auto c = classes(p);
    std::vector<Int> next;
    next.reserve(residues.size() * c.size());
    // x = r (mod modulus), x = s (mod p)  =>  x = r + modulus * ((s - r) * inv(modulus) mod p)
    const Int inv = mod_inverse(modulus % p, p);
    for (Int r : residues) {
      for (Int s : c) {
        const Int k = mod_floor((s - r % p) % p * inv % p, p);
        next.push_back(r + checked_product(modulus, k));
      }
    }
    residues = std::move(next);
    modulus = checked_product(modulus, p);
  }
  std::sort(residues.begin(), residues.end());
  return residues;
}

// ---------------------------------------------------------------------------

SieveProblem SieveProblem::from_forms(ProblemParams params, Int start, Int length, std::vector<LinearForm> forms,
                                      Rational X, double kappa) {
  if (length < 0) throw DomainError("problem length must be non-negative");
  SieveProblem p;
  p.params_ = std::move(params);
  p.X_ = std::move(X);
  p.start_ = start;
  p.length_ = length;
  p.forms_ = forms;
  p.residues_ = ResidueSystem::from_forms(std::move(forms));
  auto residues = *p.residues_;
  p.density_ = SiftingDensity([residues](Int q) { return from_integer(residues.size(q)); }, kappa);
  return p;
}

SieveProblem SieveProblem::from_residues(ProblemParams params, Int start, Int length, ResidueSystem residues,
                                         Rational X) {
  if (length < 0) throw DomainError("problem length must be non-negative");
  SieveProblem p;
  p.params_ = std::move(params);
  p.X_ = std::move(X);
  p.start_ = start;
  p.length_ = length;
  p.residues_ = residues;
  p.density_ = SiftingDensity([residues](Int q) { return from_integer(residues.size(q)); }, 1.0);
  return p;
}

SieveProblem SieveProblem::from_elements(ProblemParams params, std::vector<Int> elements, SiftingDensity density,
                                         Rational X) {
  SieveProblem p;
  p.params_ = std::move(params);
  p.X_ = std::move(X);
  p.density_ = std::move(density);
  p.elements_ = std::move(elements);
  return p;
}

const ResidueSystem& SieveProblem::residues() const {
  if (!residues_) throw DomainError("problem " + describe() + " has no residue form");
  return *residues_;
}

Int SieveProblem::size() const {
  return residues_ ? length_ : static_cast<Int>(elements_.size());
}

// ---------------------------------------------------------------------------

SieveProblem make_interval(Int M, Int N) {
  ProblemParams params;
  params.kind = ProblemKind::interval;
  params.x = M + N;
  params.y = N;
  return SieveProblem::from_forms(params, M, N, {LinearForm{1, 0}}, from_integer(N), 1.0);
}

SieveProblem make_residue_problem(Int M, Int N, ResidueSystem residues) {
  ProblemParams params;
  params.kind = ProblemKind::custom;
  params.x = M + N;
  params.y = N;
  return SieveProblem::from_residues(params, M, N, std::move(residues), from_integer(N));
}

SieveProblem make_custom(std::vector<Int> elements, SiftingDensity density, Rational X) {
  ProblemParams params;
  params.kind = ProblemKind::custom;
  return SieveProblem::from_elements(params, std::move(elements), std::move(density), std::move(X));
}

SieveProblem build_problem(const ProblemParams& params, const Budget& budget) {
  switch (params.kind) {
    case ProblemKind::interval: {
      const Int x = require(params.x, "x", params.kind);
      const Int y = require(params.y, "y", params.kind);
      if (y < 1 || x - y < 0) throw DomainError("interval requires 1 <= y <= x");
      // A = {n : x - y <= n < x}
      return SieveProblem::from_forms(params, x - y, y, {LinearForm{1, 0}}, from_integer(y), 1.0);
    }
    case ProblemKind::twin: {
      const Int x = require(params.x, "x", params.kind);
      if (x < 4) throw DomainError("twin problem requires x >= 4");
      // A = {n(n+2) : 1 <= n < x - 2}, X = x
      return SieveProblem::from_forms(params, 1, x - 3, {LinearForm{1, 0}, LinearForm{1, 2}}, from_integer(x),
                                      2.0);
    }
    case ProblemKind::goldbach: {
      const Int N = require(params.N, "N", params.kind);
      if (N < 6 || N % 2 != 0) throw DomainError("goldbach problem requires an even N >= 6");
      // A = {n(N-n) : 3 <= n <= N-3}, X = N
      return SieveProblem::from_forms(params, 3, N - 5, {LinearForm{1, 0}, LinearForm{-1, N}}, from_integer(N),
                                      2.0);
    }
    case ProblemKind::progression: {
      const Int x = require(params.x, "x", params.kind);
      const Int k = require(params.k, "k", params.kind);
      const Int l = require(params.l, "l", params.kind);
      const Int y = params.y.value_or(x);
      if (k < 1) throw DomainError("progression modulus k must be >= 1");
      if (std::gcd(k, mod_floor(l, k)) != 1) throw DomainError("progression requires (k, l) = 1");
      if (y < 1 || x - y < 0) throw DomainError("progression requires 1 <= y <= x");
      const Int low = x - y;
      const Int first = low + mod_floor(l - low, k);
      const Int count = first < x ? (x - 1 - first) / k + 1 : 0;
      ProblemParams stored = params;
      stored.y = y;
      // A = {n : x - y <= n < x, n = l (mod k)}, indexed by n = first + k t.
      return SieveProblem::from_forms(stored, 0, count, {LinearForm{k, first}}, make_rational(y, k), 1.0);
    }
    case ProblemKind::shifted_prime: {
      const Int x = require(params.x, "x", params.kind);
      if (x < 4) throw DomainError("shifted_prime problem requires x >= 4");
      const auto table = primes_up_to(x, budget);
      std::vector<Int> elements;
      for (Int p : table.primes()) {
        if (p >= 3) elements.push_back(p + 2);
      }
      SiftingDensity density(
          [](Int p) { return p == 2 ? from_integer(0) : make_rational(p, p - 1); }, 1.0);
      return SieveProblem::from_elements(params, std::move(elements), std::move(density),
                                         from_double(li(static_cast<double>(x))));
    }
    case ProblemKind::parity: {
      const Int x = require(params.x, "x", params.kind);
      const Int r = require(params.r, "r", params.kind);
      if (r != 0 && r != 1) throw DomainError("parity problem requires r in {0, 1}");
      if (x < 2) throw DomainError("parity problem requires x >= 2");
      if (x > budget.max_sieve_limit) throw BudgetError("parity problem x exceeds budget");
      // Omega(n) by a smallest-prime-factor sieve; 1 has parity 0.
      std::vector<std::uint8_t> big_omega(static_cast<std::size_t>(x), 0);
      std::vector<Int> rest(static_cast<std::size_t>(x));
      std::iota(rest.begin(), rest.end(), Int{0});
      for (Int p = 2; p < x; ++p) {
        if (rest[static_cast<std::size_t>(p)] != p || big_omega[static_cast<std::size_t>(p)] != 0) continue;
        for (Int m = p; m < x; m += p) {
          auto& v = rest[static_cast<std::size_t>(m)];
          while (v % p == 0) {
            v /= p;
            ++big_omega[static_cast<std::size_t>(m)];
          }
        }
      }
      std::vector<Int> elements;
      for (Int n = 1; n < x; ++n) {
        if (big_omega[static_cast<std::size_t>(n)] % 2 == r) elements.push_back(n);
      }
      return SieveProblem::from_elements(params, std::move(elements), SiftingDensity::constant(1, 1.0),
                                         make_rational(x, 2));
    }
    case ProblemKind::custom:
      throw ConfigError("custom problems are built with make_custom or make_residue_problem");
  }
  throw ConfigError("unhandled problem kind");
}

Int count_in_residue_set(Int M, Int N, Int modulus, const std::vector<Int>& residues) {
  if (N <= 0) return 0;
  Int total = 0;
  for (Int r : residues) {
    total += floor_div(M + N - 1 - r, modulus) - floor_div(M - 1 - r, modulus);
  }
  return total;
}

ClassCount count_in_class(const SieveProblem& problem, const FactoredSquarefree& d, const Budget& budget) {
  ClassCount out;
  if (problem.has_residue_form()) {
    const Int classes = problem.residues().size(d);
    if (classes > budget.max_divisors) throw BudgetError("count_in_class: |Omega(d)| exceeds budget");
    out.count = count_in_residue_set(problem.start(), problem.length(), d.value, problem.residues().classes_mod(d));
  } else {
    for (Int e : problem.elements()) {
      if (e % d.value == 0) ++out.count;
    }
  }
  out.remainder = from_integer(out.count) - problem.density().omega(d) / from_integer(d.value) * problem.X();
  return out;
}

std::vector<std::uint8_t> sifted_indicator(const SieveProblem& problem, Int z) {
  const auto& residues = problem.residues();
  const Int M = problem.start();
  const Int N = problem.length();
  std::vector<std::uint8_t> alive(static_cast<std::size_t>(std::max<Int>(N, 0)), 1);
  for (Int p : primes_below(z)) {
    for (Int r : residues.classes(p)) {
      for (Int t = M + mod_floor(r - M, p); t < M + N; t += p) alive[static_cast<std::size_t>(t - M)] = 0;
    }
  }
  return alive;
}

Int exact_sift(const SieveProblem& problem, Int z, SiftRoute route, const Budget& budget) {
  if (z < 2) throw DomainError("exact_sift requires z >= 2");
  if (route == SiftRoute::automatic) {
    route = problem.has_residue_form() ? SiftRoute::residue : SiftRoute::product;
  }
  const auto primes = primes_below(z);
  if (static_cast<double>(problem.size()) * static_cast<double>(primes.size() + 1) >
      static_cast<double>(budget.max_work)) {
    throw BudgetError("exact_sift: enumeration exceeds budget");
  }
  if (route == SiftRoute::residue) {
    const auto alive = sifted_indicator(problem, z);
    return std::count(alive.begin(), alive.end(), std::uint8_t{1});
  }

  auto survives = [&](__int128 value) {
    for (Int p : primes) {
      if (value % p == 0) return false;
    }
    return true;
  };
  Int count = 0;
  if (problem.has_residue_form()) {
    if (problem.forms().empty()) throw DomainError("product route needs an affine problem with explicit forms");
    for (Int t = problem.start(); t < problem.start() + problem.length(); ++t) {
      __int128 value = 1;
      for (const auto& f : problem.forms()) value *= static_cast<__int128>(f.a) * t + f.b;
      if (survives(value)) ++count;
    }
  } else {
    for (Int e : problem.elements()) {
      if (survives(e)) ++count;
    }
  }
  return count;
}

}  // namespace sievekit
