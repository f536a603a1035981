// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "oracles.hpp"
#include "sievekit/sievekit.hpp"

using namespace sievekit;

namespace {

// Pinned tolerances and limits.
constexpr double kIdentityRelTol = 1e-9;        // complex-valued variance identity
constexpr double kCrossCheckRelTol = 1e-9;      // fast sums against direct summation
constexpr double kDualityRelTol = 1e-6;         // Rayleigh ratios of E*E and EE*
constexpr double kSieveFunctionTol = 1e-6;      // phi values against closed forms
constexpr double kStepHalvingLimit = 4e-6;      // 4x the sieve-function tolerance
constexpr double kBrunTitchmarshRatio = 2.5;    // calibration value
constexpr double kIdentityRuntime = 300.0;      // seconds
constexpr double kLargeSieveRuntime = 120.0;    // seconds
constexpr int kLargeSieveTrials = 10000;
constexpr int kBoundConfigurations = 200;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

SieveProblem make(ProblemKind kind, std::initializer_list<std::pair<const char*, Int>> kv) {
  ProblemParams p;
  p.kind = kind;
  for (const auto& [k, v] : kv) {
    const std::string key = k;
    if (key == "x") p.x = v;
    if (key == "y") p.y = v;
    if (key == "N") p.N = v;
    if (key == "k") p.k = v;
    if (key == "l") p.l = v;
    if (key == "r") p.r = v;
  }
  return build_problem(p);
}

std::vector<SieveProblem> identity_problems() {
  std::vector<SieveProblem> out;
  out.push_back(make_interval(1, 1000000));
  out.push_back(make_interval(123457, 100000));
  out.push_back(make(ProblemKind::twin, {{"x", 100000}}));
  out.push_back(make(ProblemKind::goldbach, {{"N", 100000}}));
  out.push_back(make(ProblemKind::progression, {{"x", 100000}, {"k", 3}, {"l", 2}}));
  out.push_back(make(ProblemKind::progression, {{"x", 100000}, {"k", 10}, {"l", 7}}));
  return out;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  Int checks = 0;
  for (const auto& problem : identity_problems()) {
    const std::string name = problem.describe();
    for (Int z = 2; z <= 30; ++z) {
      const Int exact = exact_sift(problem, z, SiftRoute::product);
      const auto d = legendre_decompose(problem, z);
      if (d.total != exact || d.main + d.remainder != d.total ||
          d.main != density_product(problem.density(), z) * problem.X()) {
        o.fail("Legendre identity " + name + " z=" + std::to_string(z));
      }
      if (!buchstab_check(problem, 2, z).holds) o.fail("Buchstab " + name + " z=" + std::to_string(z));
      for (double D : {static_cast<double>(z * z), 1e3, 1e5}) {
        for (int r : {0, 1}) {
          const auto rep = rosser_identity(problem, 2, z, {D, 2.0, r});
          if (rep.exact != exact || !rep.identity || !rep.V_identity) {
            o.fail("Rosser identity " + name + " z=" + std::to_string(z));
          }
          ++checks;
        }
      }
      checks += 2;
    }
    // Variance identity over residue classes for the survivors at z = 30.
    const auto alive = sifted_indicator(problem, 30);
    const std::vector<Int> ind(alive.begin(), alive.end());
    for (Int p : oracle::primes_below(30)) {
      for (double theta : {0.0, 0.1, 0.61803398874989485}) {
        const Int omega = problem.has_residue_form() ? problem.residues().size(p) : 0;
        const auto v = linnik_identity_check(ind, problem.start(), p, theta, omega);
        if (!v.identity_holds || v.relative_error > kIdentityRelTol) o.fail("variance identity " + name);
        if (omega > 0 && !v.inequality_holds) o.fail("variance inequality " + name);
        ++checks;
      }
    }
  }
  // Parity extremal sets at the configuration x = 1e5, z = 10.
  for (int r : {0, 1}) {
    const auto rep = parity_extremal(100000, 10, r);
    Int exact = 0;
    for (Int n = 1; n < 100000; ++n) {
      if (oracle::total_prime_factors(n) % 2 == r) exact += oracle::coprime_to_primes_below(n, 10);
    }
    if (!rep.identity || rep.exact != exact) o.fail("parity identity r=" + std::to_string(r));
    ++checks;
  }
  std::string broken;
  for (Int z = 11; z <= 30; ++z) {
    if (!parity_extremal(100000, z, 0).identity) broken += (broken.empty() ? "" : " ") + std::to_string(z);
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= kIdentityRuntime) o.fail("runtime");
  o.detail << checks << " identity checks; " << elapsed << " s; parity identity (x=1e5, r=0) not exact for z in {"
           << broken << "}";
  return o;
}

Outcome criterion2() {
  Outcome o;
  Int points = 0;
  for (Int z = 2; z <= 30; ++z) {
    for (Int n = 1; n <= 100000; ++n) {
      const int exact = oracle::coprime_to_primes_below(n, z) ? 1 : 0;
      for (int ell = 0; ell <= 5; ++ell) {
        if (truncated_indicator(n, {z, ell, Direction::upper}) < exact ||
            truncated_indicator(n, {z, ell, Direction::lower}) > exact) {
          o.fail("Brun sandwich n=" + std::to_string(n));
        }
        ++points;
      }
    }
  }
  auto problems = identity_problems();
  problems.push_back(make(ProblemKind::shifted_prime, {{"x", 100000}}));
  problems.push_back(make(ProblemKind::parity, {{"x", 100000}, {"r", 0}}));
  problems.push_back(make(ProblemKind::parity, {{"x", 100000}, {"r", 1}}));
  Int rosser = 0;
  for (const auto& problem : problems) {
    for (Int z : {5, 10, 17, 23, 30}) {
      const Int exact = exact_sift(problem, z, SiftRoute::product);
      for (double D : {static_cast<double>(z * z), 1e3, 1e4, 1e5}) {
        const Int lower = rosser_identity(problem, 2, z, {D, 2.0, 0}).rho_sum;
        const Int upper = rosser_identity(problem, 2, z, {D, 2.0, 1}).rho_sum;
        if (lower > exact || upper < exact) o.fail("Rosser sandwich " + problem.describe());
        ++rosser;
      }
    }
  }
  std::mt19937_64 rng(2);
  int configs = 0;
  for (; configs < kBoundConfigurations; ++configs) {
    const Int z = std::uniform_int_distribution<Int>(2, 30)(rng);
    const Int M = std::uniform_int_distribution<Int>(0, 100000)(rng);
    const Int N = std::uniform_int_distribution<Int>(10, 20000)(rng);
    const auto map = gen::residue_map(rng, z);
    const auto problem = make_residue_problem(M, N, ResidueSystem::from_map(map));
    Int survivors = 0;
    for (Int t = M; t < M + N; ++t) {
      bool hit = false;
      for (const auto& [p, cls] : map) hit = hit || std::binary_search(cls.begin(), cls.end(), t % p);
      survivors += !hit;
    }
    const auto s = selberg_upper_bound(problem, z);
    const auto l = linnik_bound(problem, z);
    if (s.bound < static_cast<double>(survivors) || l.bound < static_cast<double>(survivors)) {
      o.fail("Selberg/Linnik z=" + std::to_string(z) + " N=" + std::to_string(N));
    }
  }
  o.detail << points << " Brun points, " << rosser << " Rosser pairs, " << configs << " Selberg/Linnik configurations";
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto& zero = ResidueSystem::zero_class();
  const auto problem = make_residue_problem(1, 100, zero);
  const auto r = linnik_bound(problem, 5);
  Int oracle_count = 0;
  for (Int n = 1; n <= 100; ++n) oracle_count += oracle::gcd(n, 6) == 1;
  const Rational exact_bound = (100 + 25) / G_sum(5, zero);
  if (exact_bound != 50 || r.bound != 50.0 || r.exact != 33 || oracle_count != 33) o.fail("Linnik example");
  std::mt19937_64 rng(3);
  int systems = 0;
  Int weights = 0;
  for (Int z = 2; z <= 30; ++z) {
    for (int t = 0; t < 3; ++t) {
      const auto residues = t == 0 ? zero : ResidueSystem::from_map(gen::residue_map(rng, z));
      const auto w = optimal_lambda(z, residues);
      if (quadratic_form(w, residues) * w.G != 1) o.fail("S != 1/G at z=" + std::to_string(z));
      for (const auto& [d, v] : w.values) {
        if (abs(v) > 1) o.fail("|lambda| > 1 at z=" + std::to_string(z));
        ++weights;
      }
      ++systems;
    }
  }
  o.detail << "Linnik N=100 z=5: bound " << r.bound << " vs exact " << r.exact << "; S*G = 1 on " << systems
           << " systems; " << weights << " weights within [-1, 1]";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto tables = character_tables_below(50);
  std::vector<SeparatedPoints> farey(51);
  for (Int Q = 2; Q <= 50; ++Q) farey[static_cast<std::size_t>(Q)] = farey_points(Q);
  std::mt19937_64 rng(4);
  double worst = 0.0;
  int cross = 0;
  for (int t = 0; t < kLargeSieveTrials; ++t) {
    const Int Q = std::uniform_int_distribution<Int>(2, 50)(rng);
    const Int N = std::uniform_int_distribution<Int>(1, 1000)(rng);
    const Int M = std::uniform_int_distribution<Int>(-1000, 1000)(rng);
    const auto& pts = farey[static_cast<std::size_t>(Q)];
    const auto a = gen::complex_vector(rng, static_cast<std::size_t>(N));
    const auto b = gen::complex_vector(rng, pts.points.size());
    const auto add = additive_ls_check(pts, M, a);
    const auto dual = dual_ls_check(pts, M, N, b);
    const auto mult = multiplicative_ls_check(tables, Q, M, a);
    const auto dim = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 20)(rng));
    const auto count = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 20)(rng));
    std::vector<std::vector<Complex>> family;
    for (std::size_t i = 0; i < count; ++i) family.push_back(gen::complex_vector(rng, dim));
    const auto hilbert = hilbert_ls_check(family, gen::complex_vector(rng, dim));
    if (!add.holds || !dual.holds || !mult.holds || !hilbert.holds) o.fail("trial " + std::to_string(t));
    worst = std::max({worst, add.ratio, dual.ratio, mult.ratio, hilbert.ratio});
    if (t % 250 == 0) {
      // Direct summation of the additive left side.
      double lhs = 0.0;
      for (double theta : pts.points) {
        Complex s = 0.0;
        for (Int n = 0; n < N; ++n) {
          s += a[static_cast<std::size_t>(n)] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(M + n) * theta);
        }
        lhs += std::norm(s);
      }
      if (std::abs(lhs - add.lhs) > kCrossCheckRelTol * std::max(1.0, lhs)) o.fail("additive cross-check");
      ++cross;
    }
  }
  double duality_err = 0.0;
  for (Int Q : {5, 12, 20}) {
    const auto& pts = farey[static_cast<std::size_t>(Q)];
    const Int N = 60;
    const auto [ee, ee_star] = duality_norms(pts, 0, N);
    Eigen::MatrixXcd E(static_cast<Eigen::Index>(pts.points.size()), N);
    for (std::size_t r = 0; r < pts.points.size(); ++r) {
      for (Int n = 0; n < N; ++n) {
        E(static_cast<Eigen::Index>(r), n) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(n) * pts.points[r]);
      }
    }
    const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(E.adjoint() * E).eigenvalues().maxCoeff();
    duality_err = std::max({duality_err, std::abs(ee - ee_star) / top, std::abs(ee - top) / top});
  }
  if (duality_err > kDualityRelTol) o.fail("duality");
  const double elapsed = seconds_since(t0);
  if (elapsed >= kLargeSieveRuntime) o.fail("runtime");
  o.detail << kLargeSieveTrials << " trials, max ratio " << worst << ", " << cross << " direct cross-checks, duality rel err "
           << duality_err << ", " << elapsed << " s";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto table = solve_sieve_functions(10.0, 1e-3);
  const double e1 = std::abs(table.phi(1, 2.0) - kExpEuler);
  const double e0 = std::abs(table.phi(0, 3.0) - 2.0 * kExpEuler * std::log(2.0) / 3.0);
  if (e1 > kSieveFunctionTol || e0 > kSieveFunctionTol) o.fail("closed forms");
  const double c1 = step_halving_change(10.0, 1e-3);
  const double c2 = step_halving_change(10.0, 5e-4);
  if (c1 > kStepHalvingLimit) o.fail("step halving");
  o.detail << "|phi1(2) - e^gamma| = " << e1 << ", |phi0(3) - closed form| = " << e0 << ", step-halving change " << c1
           << " (next halving " << c2 << ", ratio " << c1 / c2 << ")";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Int x = 1000000;
  const auto table = primes_up_to(x + 1);
  Budget lean;
  lean.max_work = 1e8;  // skips the optional Farey diagnostics
  double worst_ratio = 0.0;
  Int worst_k = 0;
  Int progressions = 0;
  for (Int k = 1; k <= 100; ++k) {
    // z minimizing (N + z^2)/G for the progression mod k; G depends on k only.
    const Int N = x / k;
    const auto probe = make(ProblemKind::progression, {{"x", x}, {"k", k}, {"l", 1}});
    Int best_z = 2;
    double best = std::numeric_limits<double>::infinity();
    for (Int z = 2; z * z <= 4 * N; z = std::max(z + 1, z * 21 / 20)) {
      const double v = (static_cast<double>(N) + static_cast<double>(z * z)) / to_double(G_sum(z, probe.residues()));
      if (v < best) {
        best = v;
        best_z = z;
      }
    }
    for (Int l = 0; l < k; ++l) {
      if (oracle::gcd(k, l) != 1) continue;
      const auto problem = make(ProblemKind::progression, {{"x", x}, {"k", k}, {"l", l}});
      const auto r = linnik_bound(problem, best_z, lean);
      const Int pi = pi_count(table, x, ProgressionCount{k, l});
      const double shape = static_cast<double>(x) / (static_cast<double>(euler_phi(k)) * std::log(static_cast<double>(x) / k));
      const double ratio = r.bound / shape;
      if (r.bound < static_cast<double>(pi)) o.fail("bound below pi(x;k,l) at k=" + std::to_string(k));
      if (ratio > kBrunTitchmarshRatio) o.fail("ratio at k=" + std::to_string(k) + " l=" + std::to_string(l));
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_k = k;
      }
      ++progressions;
    }
  }
  o.detail << progressions << " progressions, max ratio " << worst_ratio << " (k=" << worst_k << "), limit "
           << kBrunTitchmarshRatio;
  return o;
}

Outcome criterion7() {
  Outcome o;
  double twin_constant = 1.0;
  for (Int p : primes_below(1000000)) {
    if (p > 2) twin_constant *= 1.0 - 1.0 / (static_cast<double>(p - 1) * static_cast<double>(p - 1));
  }
  std::vector<double> ratios;
  for (Int x : {10000, 100000, 1000000}) {
    const auto problem = make(ProblemKind::twin, {{"x", x}});
    const double lx = std::log(static_cast<double>(x));
    double best = std::numeric_limits<double>::infinity();
    Int best_z = 0;
    for (double alpha : {0.25, 0.3, 0.35, 0.4, 0.45, 0.5}) {
      const Int z = static_cast<Int>(std::pow(static_cast<double>(x), alpha));
      const auto r = selberg_upper_bound(problem, z);
      if (!r.valid) o.fail("Selberg twin bound below exact count");
      if (r.bound < best) {
        best = r.bound;
        best_z = z;
      }
    }
    ratios.push_back(best / (static_cast<double>(x) / (lx * lx)));
    o.detail << "x=" << x << " z=" << best_z << " ratio " << ratios.back() << "; ";
  }
  if (!(ratios[0] > ratios[1] && ratios[1] > ratios[2])) o.fail("not monotone");
  o.detail << "reference 16*C2 = " << 16.0 * twin_constant;
  return o;
}

Outcome criterion8() {
  Outcome o;
  int count = 0;
  std::vector<Int> targets;
  for (Int N = 10000; N <= 10200; N += 2) targets.push_back(N);
  targets.push_back(30030);
  for (Int N : targets) {
    const auto r = chen_decomposition(N);
    if (!r.holds || r.rhs != from_integer(r.term1) - make_rational(r.term2, 2) - make_rational(r.term3, 2)) {
      o.fail("Chen inequality N=" + std::to_string(N));
    }
    ++count;
  }
  const Int N = 1000000;
  Int positive = 0;
  for (Int n = 1; n < N; ++n) {
    if (n % 2 == 0 || n % 3 == 0) continue;  // primes below N^{1/10}
    if (chen_weight(n, N) > 0) {
      ++positive;
      if (oracle::total_prime_factors(n) > 2) o.fail("W(n) > 0 for n=" + std::to_string(n));
    }
  }
  o.detail << count << " even N checked; " << positive << " n < 1e6 with W(n) > 0, all with at most two prime factors";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto table = primes_up_to(1000001);
  o.detail << "asymptotic constants not asserted; mean remainder sum trend:";
  for (Int x : {10000, 100000, 1000000}) {
    const Int Q = static_cast<Int>(std::sqrt(static_cast<double>(x)) / std::log(static_cast<double>(x)));
    const double s = mean_remainder_sum(table, x, Q);
    if (!std::isfinite(s)) o.fail("non-finite sum");
    o.detail << " x=" << x << " Q=" << Q << " sum/(x/log^2 x)="
             << s / (static_cast<double>(x) / std::pow(std::log(static_cast<double>(x)), 2));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::printf("criterion %zu %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
