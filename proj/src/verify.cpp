#include "sievekit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "sievekit/brun.hpp"
#include "sievekit/error.hpp"
#include "sievekit/largesieve.hpp"
#include "sievekit/legendre.hpp"
#include "sievekit/rosser.hpp"
#include "sievekit/selberg.hpp"

namespace sievekit {

namespace {

struct Context {
  VerifyBudget budget;
  std::mt19937_64 rng;
  VerifyResult* out;
  std::string suite;

  bool full() const { return budget == VerifyBudget::full; }

  void record(std::string name, bool passed, std::string detail = {}) {
    out->checks.push_back({suite, std::move(name), passed, std::move(detail)});
  }

  // Runs `body`, turning library errors into a failed check.
  void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, detail] = body();
      record(name, ok, std::move(detail));
    } catch (const std::exception& e) {
      record(name, false, std::string("exception: ") + e.what());
    }
  }
};

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
  return s;
}

std::vector<SieveProblem> affine_suite(Int scale) {
  std::vector<SieveProblem> out;
  out.push_back(make_interval(1, scale));
  ProblemParams p;
  p.kind = ProblemKind::twin;
  p.x = scale;
  out.push_back(build_problem(p));
  p = {};
  p.kind = ProblemKind::goldbach;
  p.N = scale;
  out.push_back(build_problem(p));
  p = {};
  p.kind = ProblemKind::progression;
  p.x = scale;
  p.k = 10;
  p.l = 3;
  out.push_back(build_problem(p));
  return out;
}

std::vector<SieveProblem> full_kind_suite(Int scale) {
  auto out = affine_suite(scale);
  ProblemParams p;
  p.kind = ProblemKind::shifted_prime;
  p.x = scale;
  out.push_back(build_problem(p));
  p = {};
  p.kind = ProblemKind::parity;
  p.x = scale;
  p.r = 1;
  out.push_back(build_problem(p));
  return out;
}

ResidueSystem random_residues(std::mt19937_64& rng, Int z) {
  std::map<Int, std::vector<Int>> classes;
  for (Int p : primes_below(z)) {
    const Int choices[3] = {1, 2, p / 2};
    const Int k = std::clamp<Int>(choices[std::uniform_int_distribution<int>(0, 2)(rng)], 1, p - 1);
    std::vector<Int> all(static_cast<std::size_t>(p));
    for (Int i = 0; i < p; ++i) all[static_cast<std::size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(k));
    std::sort(all.begin(), all.end());
    classes[p] = std::move(all);
  }
  return ResidueSystem::from_map(std::move(classes));
}

std::vector<Complex> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& c : v) c = {g(rng), g(rng)};
  return v;
}

void legendre_suite(Context& c) {
  const Int scale = c.full() ? 100000 : 5000;
  c.check("decomposition equals exact sift, every kind, z <= 30", [&] {
    std::vector<std::string> bad;
    for (const auto& problem : full_kind_suite(scale)) {
      for (Int z = 2; z <= 30; ++z) {
        const auto d = legendre_decompose(problem, z);
        if (d.total != exact_sift(problem, z) || d.main + d.remainder != d.total) {
          bad.push_back(problem.describe() + " z=" + std::to_string(z));
        }
      }
    }
    return std::make_pair(bad.empty(), join(bad));
  });
  c.check("density product non-increasing in z", [&] {
    Rational last = 1;
    const auto density = affine_suite(100)[1].density();
    for (Int z = 2; z < 500; ++z) {
      const Rational v = density_product(density, z);
      if (v > last) return std::make_pair(false, "z=" + std::to_string(z));
      last = v;
    }
    return std::make_pair(true, std::string{});
  });
}

void brun_suite(Context& c) {
  const Int n_max = c.full() ? 100000 : 5000;
  c.check("pointwise sandwich", [&] {
    for (Int z = 2; z <= 30; ++z) {
      for (Int n = 1; n <= n_max; ++n) {
        const int exact = sifted_indicator_value(n, z);
        for (int ell = 0; ell <= 5; ++ell) {
          if (truncated_indicator(n, {z, ell, Direction::upper}) < exact ||
              truncated_indicator(n, {z, ell, Direction::lower}) > exact) {
            return std::make_pair(false, "n=" + std::to_string(n) + " z=" + std::to_string(z));
          }
        }
      }
    }
    return std::make_pair(true, std::string{});
  });
  c.check("pure sieve verdicts", [&] {
    std::vector<std::string> bad;
    for (const auto& problem : affine_suite(c.full() ? 20000 : 3000)) {
      for (Int z : {7, 20}) {
        for (int ell = 0; ell <= 2; ++ell) {
          for (auto dir : {Direction::upper, Direction::lower}) {
            if (!pure_sieve_bound(problem, {z, ell, dir}).valid) bad.push_back(problem.describe());
          }
        }
      }
    }
    return std::make_pair(bad.empty(), join(bad));
  });
  c.check("twin pipeline bound", [&] {
    const auto r = twin_upper_pipeline(c.full() ? 100000 : 10000);
    return std::make_pair(r.bound >= static_cast<double>(r.exact), "ratio=" + format_number(r.ratio));
  });
}

void selberg_suite(Context& c) {
  const int trials = c.full() ? 40 : 6;
  c.check("optimal weights: S = 1/G, |lambda| <= 1, diagonal form, dual form", [&] {
    for (int t = 0; t < trials; ++t) {
      const Int z = std::uniform_int_distribution<Int>(2, c.full() ? 30 : 15)(c.rng);
      const auto residues = random_residues(c.rng, z);
      const auto w = optimal_lambda(z, residues);
      const Rational S = quadratic_form(w, residues);
      bool ok = S * w.G == 1 && quadratic_form_diagonal(w, residues) == S;
      for (const auto& [d, v] : w.values) ok = ok && abs(v) <= 1;
      if (z <= 20) ok = ok && dual_form(w, residues) == S;
      if (!ok) return std::make_pair(false, "z=" + std::to_string(z));
    }
    return std::make_pair(true, std::string{});
  });
  c.check("Selberg and Linnik bounds dominate exact counts", [&] {
    for (int t = 0; t < trials; ++t) {
      const Int z = std::uniform_int_distribution<Int>(2, 25)(c.rng);
      const Int M = std::uniform_int_distribution<Int>(0, 1000)(c.rng);
      const Int N = std::uniform_int_distribution<Int>(50, c.full() ? 5000 : 1000)(c.rng);
      const auto problem = make_residue_problem(M, N, random_residues(c.rng, z));
      if (!selberg_upper_bound(problem, z).valid || !linnik_bound(problem, z).valid) {
        return std::make_pair(false, "z=" + std::to_string(z) + " N=" + std::to_string(N));
      }
    }
    return std::make_pair(true, std::string{});
  });
  c.check("Linnik example N=100, z=5", [&] {
    const auto r = linnik_bound(make_residue_problem(1, 100, ResidueSystem::zero_class()), 5);
    return std::make_pair(r.bound == 50.0 && r.exact == 33, "bound=" + format_number(r.bound));
  });
}

void largesieve_suite(Context& c) {
  const int trials = c.full() ? 2000 : 100;
  c.check("additive, dual and multiplicative inequalities on random data", [&] {
    const auto tables = character_tables_below(20);
    for (int t = 0; t < trials; ++t) {
      const Int Q = std::uniform_int_distribution<Int>(2, 20)(c.rng);
      const Int N = std::uniform_int_distribution<Int>(1, 200)(c.rng);
      const Int M = std::uniform_int_distribution<Int>(-100, 100)(c.rng);
      const auto pts = farey_points(Q);
      const auto a = random_vector(c.rng, static_cast<std::size_t>(N));
      if (!additive_ls_check(pts, M, a).holds ||
          !dual_ls_check(pts, M, N, random_vector(c.rng, pts.points.size())).holds ||
          !multiplicative_ls_check(tables, Q, M, a).holds) {
        return std::make_pair(false, "trial " + std::to_string(t));
      }
    }
    return std::make_pair(true, std::string{});
  });
  c.check("character orthogonality", [&] {
    for (Int q = 1; q <= (c.full() ? 300 : 60); ++q) {
      if (CharacterTable::build(q).orthogonality_error() > 1e-9) return std::make_pair(false, "q=" + std::to_string(q));
    }
    return std::make_pair(true, std::string{});
  });
  c.check("duality norms agree", [&] {
    const auto [a, b] = duality_norms(farey_points(8), 0, 40);
    return std::make_pair(std::abs(a - b) <= 1e-6 * std::max(a, b), format_number(a) + " vs " + format_number(b));
  });
}

void rosser_suite(Context& c) {
  const Int scale = c.full() ? 100000 : 5000;
  c.check("Rosser identity and sandwich, every kind", [&] {
    std::vector<std::string> bad;
    for (const auto& problem : full_kind_suite(scale)) {
      for (Int z : {10, 30}) {
        for (int r : {0, 1}) {
          const auto rep = rosser_identity(problem, 2, z, {1000.0, 2.0, r});
          if (!rep.identity || !rep.one_sided || !rep.V_identity) bad.push_back(problem.describe());
        }
      }
    }
    return std::make_pair(bad.empty(), join(bad));
  });
  c.check("chain and closed-form weights agree", [&] {
    for (double beta : {1.5, 2.0, 3.0}) {
      for (int r : {0, 1}) {
        const RosserWeights w{1e4, beta, r};
        for (Int d = 1; d < (c.full() ? 100000 : 10000); ++d) {
          const auto f = factor_squarefree(d);
          if (f && (w.rho(*f) != w.rho_closed(*f) || w.sigma(*f) != w.sigma_closed(*f))) {
            return std::make_pair(false, "d=" + std::to_string(d));
          }
        }
      }
    }
    return std::make_pair(true, std::string{});
  });
  c.check("sieve function closed forms", [&] {
    const auto t = solve_sieve_functions(10.0, 1e-3);
    const double e1 = std::abs(t.phi(1, 2.0) - kExpEuler);
    const double e0 = std::abs(t.phi(0, 3.0) - 2.0 * kExpEuler * std::log(2.0) / 3.0);
    return std::make_pair(e1 < 1e-6 && e0 < 1e-6, format_number(std::max(e0, e1)));
  });
  c.check("Chen inequality", [&] {
    for (Int N = 10000; N <= (c.full() ? 10200 : 10010); N += 2) {
      if (!chen_decomposition(N).holds) return std::make_pair(false, "N=" + std::to_string(N));
    }
    return std::make_pair(true, std::string{});
  });
}

}  // namespace

VerifyBudget parse_verify_budget(std::string_view name) {
  if (name == "small") return VerifyBudget::small;
  if (name == "full") return VerifyBudget::full;
  throw ConfigError("unknown budget '" + std::string(name) + "' (expected small or full)");
}

bool VerifyResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::vector<VerifyCheck> VerifyResult::failures() const {
  std::vector<VerifyCheck> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c);
  }
  return out;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"legendre", "brun", "selberg", "largesieve", "rosser"};
  return names;
}

VerifyResult run_verify(std::string_view suite, VerifyBudget budget, std::uint64_t seed) {
  const std::map<std::string, void (*)(Context&), std::less<>> table{{"legendre", legendre_suite},
                                                                     {"brun", brun_suite},
                                                                     {"selberg", selberg_suite},
                                                                     {"largesieve", largesieve_suite},
                                                                     {"rosser", rosser_suite}};
  if (suite != "all" && !table.contains(suite)) {
    throw ConfigError("unknown suite '" + std::string(suite) + "'");
  }
  VerifyResult result;
  Context ctx{budget, std::mt19937_64(seed), &result, {}};
  for (const auto& name : verify_suites()) {
    if (suite != "all" && suite != name) continue;
    ctx.suite = name;
    table.at(name)(ctx);
  }
  return result;
}

}  // namespace sievekit
