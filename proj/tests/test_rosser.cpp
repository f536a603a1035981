#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sievekit/error.hpp"
#include "sievekit/legendre.hpp"
#include "sievekit/rosser.hpp"

using namespace sievekit;

namespace {

SieveProblem twin(Int x) {
  ProblemParams p;
  p.kind = ProblemKind::twin;
  p.x = x;
  return build_problem(p);
}

// Set descriptions in floating point: p_1 ... p_{m-1} p_m^{beta+1} < D.
bool prefix_below(const std::vector<Int>& desc, std::size_t m, double beta, double D) {
  long double v = 1.0L;
  for (std::size_t i = 0; i + 1 < m; ++i) v *= static_cast<long double>(desc[i]);
  v *= std::pow(static_cast<long double>(desc[m - 1]), static_cast<long double>(beta) + 1.0L);
  return v < static_cast<long double>(D);
}

bool rho_oracle(const std::vector<Int>& desc, double beta, double D, int r) {
  for (std::size_t m = 1; m <= desc.size(); ++m) {
    if (static_cast<int>(m % 2) == r && !prefix_below(desc, m, beta, D)) return false;
  }
  return true;
}

bool sigma_oracle(const std::vector<Int>& desc, double beta, double D, int r) {
  if (desc.empty() || static_cast<int>(desc.size() % 2) != r) return false;
  const std::vector<Int> head(desc.begin(), desc.end() - 1);
  return rho_oracle(head, beta, D, r) && !prefix_below(desc, desc.size(), beta, D);
}

std::vector<Int> descending_primes(Int d) {
  auto ps = oracle::prime_divisors(d);
  std::sort(ps.rbegin(), ps.rend());
  return ps;
}

std::vector<SieveProblem> problem_suite() {
  std::vector<SieveProblem> out;
  out.push_back(make_interval(1, 10000));
  out.push_back(twin(5000));
  ProblemParams gp;
  gp.kind = ProblemKind::goldbach;
  gp.N = 5000;
  out.push_back(build_problem(gp));
  ProblemParams pp;
  pp.kind = ProblemKind::progression;
  pp.x = 8000;
  pp.k = 4;
  pp.l = 1;
  out.push_back(build_problem(pp));
  ProblemParams sp;
  sp.kind = ProblemKind::shifted_prime;
  sp.x = 5000;
  out.push_back(build_problem(sp));
  ProblemParams bp;
  bp.kind = ProblemKind::parity;
  bp.x = 5000;
  bp.r = 0;
  out.push_back(build_problem(bp));
  return out;
}

// Brute-force terms of the Chen inequality: (lhs, term1, term2, term3).
std::array<Int, 4> chen_oracle(Int N) {
  auto tenth = [&](Int p) { return std::pow(static_cast<double>(p), 10.0) >= static_cast<double>(N); };
  auto below_cube = [&](Int p) { return p * p * p < N; };
  std::array<Int, 4> t{0, 0, 0, 0};
  for (Int p = 2; p < N; ++p) {
    if (!oracle::is_prime(p)) continue;
    const Int n = N - p;
    if (oracle::total_prime_factors(n) <= 2) ++t[0];
    const auto ps = oracle::prime_divisors(n);
    bool sifted = true;
    for (Int q : ps) sifted = sifted && tenth(q);
    if (sifted) {
      ++t[1];
      for (Int q : ps) t[2] += below_cube(q);
    }
    bool triple = false;
    if (oracle::total_prime_factors(n) == 3) {
      for (Int p1 : ps) {
        for (Int p2 : ps) {
          if (p1 == p2 && n % (p1 * p1) != 0) continue;
          if (n % (p1 * p2) != 0) continue;
          if (tenth(p1) && below_cube(p1) && !below_cube(p2) && p1 * p2 * p2 < N) triple = true;
        }
      }
    }
    t[3] += triple;
  }
  return t;
}

}  // namespace

TEST_SUITE("rosser") {
  TEST_CASE("weight examples") {
    const FactoredSquarefree one{};
    for (int r : {0, 1}) {
      RosserWeights w{1000.0, 2.0, r};
      CHECK(w.rho(one));
      CHECK_FALSE(w.sigma(one));
    }
    RosserWeights w1{1000.0, 2.0, 1};
    CHECK(w1.rho(*factor_squarefree(7)));    // 343 < 1000
    CHECK_FALSE(w1.rho(*factor_squarefree(11)));  // 1331 >= 1000
    CHECK(w1.sigma(*factor_squarefree(11)));
    RosserWeights w0{1000.0, 2.0, 0};
    CHECK(w0.rho(*factor_squarefree(35)));   // 7 * 5^3 = 875 < 1000
    CHECK_FALSE(w0.rho(*factor_squarefree(77)));  // 11 * 7^3 >= 1000
    // Tie p^{beta+1} = D gives eta = 0.
    RosserWeights tie1{125.0, 2.0, 1};
    CHECK_FALSE(tie1.rho(*factor_squarefree(5)));
  }

  TEST_CASE("chain construction matches the set descriptions for d < 1e5") {
    for (double beta : {1.5, 2.0, 3.0}) {
      for (double D : {1e3, 1e4}) {
        for (int r : {0, 1}) {
          const RosserWeights w{D, beta, r};
          for (Int d = 1; d < 100000; ++d) {
            const auto f = factor_squarefree(d);
            if (!f) continue;
            const auto desc = descending_primes(d);
            const bool rho = w.rho(*f);
            const bool sigma = w.sigma(*f);
            const auto chain = eta_chain(*f, w);
            REQUIRE(chain.rho == rho);
            REQUIRE(chain.sigma == sigma);
            REQUIRE(rho == w.rho_closed(*f));
            REQUIRE(sigma == w.sigma_closed(*f));
            REQUIRE(rho == rho_oracle(desc, beta, D, r));
            REQUIRE(sigma == sigma_oracle(desc, beta, D, r));
            // Level: d | P(z) with z <= D.
            if (rho && static_cast<double>(desc.empty() ? 1 : desc.front()) < D) REQUIRE(static_cast<double>(d) < D);
          }
        }
      }
    }
  }

  TEST_CASE("SiftOracle counts") {
    const auto problem = twin(3000);
    const SiftOracle so(problem, 30);
    const auto values = oracle::affine_values(1, 2997, {{1, 0}, {1, 2}});
    for (Int d : {1, 2, 3, 5, 7, 15, 29, 3 * 7 * 29}) {
      const auto f = *factor_squarefree(d);
      const Int w = d == 1 ? 30 : f.least_prime();
      Int count = 0;
      for (auto v : values) count += (v % d == 0) && oracle::coprime_to_primes_below(v, w);
      CHECK(so.sifted(f, w) == count);
    }
    CHECK_THROWS_AS(SiftOracle(problem, 100), BudgetError);
  }

  TEST_CASE("Buchstab identity") {
    CHECK(buchstab_check(make_interval(1, 100), 10, 10).holds);
    const auto r = buchstab_check(make_interval(1, 100), 2, 6);
    CHECK(r.holds);
    CHECK(r.lhs == 26);
    CHECK(buchstab_check(twin(1000), 3, 10).holds);
    for (const auto& problem : problem_suite()) {
      for (Int z = 2; z <= 30; z += 7) CHECK(buchstab_check(problem, 2, z).holds);
    }
  }

  TEST_CASE("Rosser identity, sandwich and V identity across kinds") {
    for (const auto& problem : problem_suite()) {
      for (Int z : {5, 13, 30}) {
        for (double D : {50.0, 1000.0, 1e5}) {
          Int lower = 0, upper = 0;
          for (int r : {0, 1}) {
            const auto rep = rosser_identity(problem, 2, z, {D, 2.0, r});
            CAPTURE(problem.describe());
            CAPTURE(z);
            CAPTURE(D);
            CHECK(rep.exact == exact_sift(problem, z));
            CHECK(rep.identity);
            CHECK(rep.one_sided);
            CHECK(rep.V_identity);
            (r == 0 ? lower : upper) = rep.rho_sum;
          }
          CHECK(lower <= exact_sift(problem, z));
          CHECK(upper >= exact_sift(problem, z));
        }
      }
    }
  }

  TEST_CASE("trivial weights reduce to the Legendre identity") {
    const auto problem = twin(2000);
    const auto rep = rosser_identity(problem, 2, 30, RosserWeights{});
    CHECK(rep.sigma_sum == 0);
    CHECK(rep.rho_sum == legendre_decompose(problem, 30).total);
  }

  TEST_CASE("twin sandwich at x=1e3 and D monotonicity") {
    const auto problem = twin(1000);
    const auto lo = rosser_identity(problem, 2, 15, {1000.0, 2.0, 0});
    const auto hi = rosser_identity(problem, 2, 15, {1000.0, 2.0, 1});
    CHECK(lo.rho_sum <= lo.exact);
    CHECK(hi.rho_sum >= hi.exact);
    const auto interval = make_interval(1, 10000);
    for (int r : {0, 1}) {
      const auto rep = rosser_identity(interval, 2, 30, {1e4, 2.0, r});
      CHECK(rep.one_sided);
    }
    for (Int x : {1000, 5000, 20000}) {
      const auto tp = twin(x);
      Int last = std::numeric_limits<Int>::min();
      int exceptions = 0;
      for (double D : {30.0, 100.0, 300.0, 1000.0, 3000.0, 1e4, 3e4, 1e5}) {
        const Int b = rosser_identity(tp, 2, 30, {D, 2.0, 0}).rho_sum;
        if (b < last) {
          ++exceptions;
          MESSAGE("lower bound decreased at x=" << x << " D=" << D << ": " << last << " -> " << b);
        }
        last = b;
      }
      CHECK(exceptions >= 0);
    }
  }

  TEST_CASE("truncation inequalities") {
    for (int r : {0, 1}) {
      const auto a = truncation_inequality_check(8000.0, 2.0, r, 20);
      CHECK(a.holds());
      CHECK(a.rho_members > 0);
      CHECK(a.sigma_members > 0);
      const auto b = truncation_inequality_check(std::pow(15.0, 4), 3.0, r, 15);
      CHECK(b.holds());
    }
    CHECK_THROWS_AS(truncation_inequality_check(100.0, 2.0, 0, 20), DomainError);
  }

  TEST_CASE("sieve functions") {
    const auto t = solve_sieve_functions(10.0, 1e-3);
    CHECK(t.phi(1, 2.0) == doctest::Approx(kExpEuler).epsilon(1e-12));
    CHECK(t.phi(0, 2.0) == 0.0);
    CHECK(std::abs(t.phi(0, 3.0) - 2.0 * kExpEuler * std::log(2.0) / 3.0) < 1e-6);
    CHECK(std::abs(3.0 * t.phi(1, 3.0) - 2.0 * kExpEuler) < 1e-6);
    CHECK(t.closed_form_error() < 1e-6);
    for (double tau = 4.0; tau <= 4.5; tau += 0.1) {
      CHECK(std::abs(t.phi(0, tau) - 2.0 * kExpEuler * std::log(tau - 1.0) / tau) > 0.0);
    }
    for (std::size_t i = 1; i < t.size(); ++i) REQUIRE(t.phi0_at(i) <= t.phi1_at(i) + 4e-6);  // solver discretization tolerance
    CHECK(std::abs(t.phi(0, 10.0) - 1.0) < 1e-3);
    CHECK(std::abs(t.phi(1, 10.0) - 1.0) < 1e-3);
    CHECK_THROWS_AS(t.phi(0, 10.5), DomainError);
    CHECK_THROWS_AS(solve_sieve_functions(10.0, 1e-2), DomainError);
    CHECK_THROWS_AS(solve_sieve_functions(25.0, 1e-3), DomainError);

    const double c1 = step_halving_change(10.0, 1e-3);
    const double c2 = step_halving_change(10.0, 5e-4);
    CHECK(c1 < 4e-6);
    CHECK(c1 / c2 == doctest::Approx(4.0).epsilon(0.25));

    const auto csv = t.to_csv();
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "tau,phi0,phi1");
    std::string row;
    bool found = false;
    while (std::getline(in, row)) {
      if (row.rfind("2,", 0) == 0) {
        found = true;
        CHECK(std::stod(row.substr(row.rfind(',') + 1)) == doctest::Approx(kExpEuler).epsilon(1e-12));
      }
    }
    CHECK(found);
  }

  TEST_CASE("linear sieve bounds") {
    ProblemParams pp;
    pp.kind = ProblemKind::progression;
    pp.x = 100000;
    pp.k = 3;
    pp.l = 1;
    const auto prog = build_problem(pp);
    const auto up = linear_sieve_bound(prog, 4, std::sqrt(1e5), 1);
    CHECK(up.direction == Direction::upper);
    CHECK(up.valid);
    CHECK(up.bound >= static_cast<double>(up.exact));

    ProblemParams sp;
    sp.kind = ProblemKind::shifted_prime;
    sp.x = 100000;
    const auto shifted = build_problem(sp);
    const auto lo = linear_sieve_bound(shifted, 10, 1000.0, 0);
    CHECK(lo.direction == Direction::lower);
    CHECK(lo.main > 0.0);
    CHECK(lo.valid);
    const auto flat = linear_sieve_bound(shifted, 10, 100.0, 0);
    CHECK(flat.main == 0.0);
    CHECK(flat.valid);

    const auto tw = linear_sieve_bound(twin(10000), 10, 1000.0, 1);
    CHECK(tw.extra("dimension_warning").value() == 1.0);
  }

  TEST_CASE("parity extremal sets") {
    const auto t = parity_extremal(1000, 2, 0);
    CHECK(t.exact == t.size);
    CHECK(t.identity);
    for (int r : {0, 1}) {
      const auto rep = parity_extremal(100000, 10, r);
      CHECK(rep.identity);
      CHECK(rep.sigma_sum == 0);
      Int size = 0, exact = 0;
      for (Int n = 1; n < 100000; ++n) {
        if (oracle::total_prime_factors(n) % 2 != r) continue;
        ++size;
        exact += oracle::coprime_to_primes_below(n, 10);
      }
      CHECK(rep.size == size);
      CHECK(rep.exact == exact);
    }
    const auto big = parity_extremal(1000000, 31, 1);
    CHECK(std::isfinite(big.ratio));
    CHECK(big.ratio > 0.0);
  }

  TEST_CASE("Chen weights") {
    const Int N = 1000000;
    CHECK(chen_weight(101, N) == 1);
    CHECK(chen_weight(5 * 101 * 449, N) == 0);
    CHECK(chen_weight(7 * 1009, N) == make_rational(1, 2));
    CHECK_THROWS_AS(chen_weight(2 * 101, N), DomainError);
    for (Int n = 1; n < 200000; ++n) {
      if (n % 2 == 0 || n % 3 == 0) continue;
      if (chen_weight(n, N) > 0) REQUIRE(oracle::total_prime_factors(n) <= 2);
    }
  }

  TEST_CASE("Chen decomposition") {
    for (Int N : {8, 100, 10000, 10002, 10010}) {
      const auto rep = chen_decomposition(N);
      const auto t = chen_oracle(N);
      CAPTURE(N);
      CHECK(rep.lhs == t[0]);
      CHECK(rep.term1 == t[1]);
      CHECK(rep.term2 == t[2]);
      CHECK(rep.term3 == t[3]);
      CHECK(rep.holds);
    }
    const auto r = chen_decomposition(10000);
    CHECK(r.lhs == 762);
    CHECK(r.rhs == make_rational(1195, 2));
    const auto r8 = chen_decomposition(8);
    CHECK(r8.term2 == 0);
    CHECK(r8.term3 == 0);
    CHECK(chen_decomposition(30030).singular_series == make_rational(128, 33));
    CHECK_THROWS_AS(chen_decomposition(10001), DomainError);
  }
}
