#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sievekit/sievekit.hpp"

using namespace sievekit;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

/// Integers given on the command line may use exponent notation ("1e4").
Int parse_int(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != text.size() || v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw ConfigError("not an integer: '" + text + "'");
  }
  return static_cast<Int>(v);
}

struct Output {
  std::string format = "csv";
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << text;
  }
  bool is_json() const { return format == "json"; }
};

/// Rows of named numeric/string cells rendered as CSV or a JSON array.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

  std::string render(const Output& out) const {
    if (out.is_json()) {
      json arr = json::array();
      for (const auto& row : rows_) {
        json obj;
        for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = row[i];
        arr.push_back(obj);
      }
      return arr.dump(2) + "\n";
    }
    std::string s;
    for (std::size_t i = 0; i < columns_.size(); ++i) s += (i ? "," : "") + columns_[i];
    s += "\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ",";
        s += row[i].is_string() ? row[i].get<std::string>() : row[i].dump();
      }
      s += "\n";
    }
    return s;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

json num(double v) {
  if (!std::isfinite(v)) return format_number(v);
  return json::parse(format_number(v));
}

struct ProblemOptions {
  std::string kind = "interval";
  std::string x, y, N, k, l, r;
  std::string file;

  void attach(CLI::App* app) {
    app->add_option("--problem", kind, "interval|twin|goldbach|shifted_prime|progression|parity");
    app->add_option("--x", x, "upper end x");
    app->add_option("--y", y, "interval length y");
    app->add_option("--N", N, "Goldbach target N");
    app->add_option("--k", k, "progression modulus");
    app->add_option("--l", l, "progression residue");
    app->add_option("--r", r, "parity class of Omega(n) for the parity problem");
    app->add_option("--problem-file", file, "problem descriptor file (key=value lines)");
  }

  ProblemParams params() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw ConfigError("cannot read problem file '" + file + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      return ProblemParams::from_config(ss.str());
    }
    std::string text = "kind=" + kind + "\n";
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) text += std::string(key) + "=" + v + "\n";
    };
    put("x", x);
    put("y", y);
    put("N", N);
    put("k", k);
    put("l", l);
    put("r", r);
    return ProblemParams::from_config(text);
  }
};

std::vector<Int> z_values(const std::vector<std::string>& zs) {
  std::vector<Int> out;
  for (const auto& z : zs) out.push_back(parse_int(z));
  if (out.empty()) throw ConfigError("at least one --z is required");
  return out;
}

std::string render_reports(const std::vector<BoundReport>& reports, const Output& out) {
  if (out.is_json()) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  std::string s = csv_header() + "\n";
  for (const auto& r : reports) s += to_csv_row(r) + "\n";
  return s;
}

BoundReport legendre_report(const SieveProblem& problem, Int z) {
  const auto d = legendre_decompose(problem, z);
  BoundReport r;
  r.method = "legendre";
  r.problem = problem.describe();
  r.z = z;
  r.main = to_double(d.main);
  r.remainder_bound = std::abs(to_double(d.remainder));
  r.bound = to_double(d.main + d.remainder);
  r.exact = exact_sift(problem, z);
  r.extras.emplace_back("remainder", to_double(d.remainder));
  r.extras.emplace_back("divisors", static_cast<double>(d.divisors));
  r.finalize();
  return r;
}

struct BoundOptions {
  std::string method = "selberg";
  std::vector<std::string> z;
  int ell = 1;
  std::string parity = "upper";
  double D = 0.0;
  double beta = 2.0;
  double slack = 0.1;
  bool worst_case = false;
  bool crude = false;
};

int run_bound(const ProblemOptions& po, const BoundOptions& bo, const Output& out) {
  const auto problem = build_problem(po.params());
  if (bo.parity != "upper" && bo.parity != "lower") throw ConfigError("--parity must be upper or lower");
  const Direction dir = bo.parity == "upper" ? Direction::upper : Direction::lower;
  std::vector<BoundReport> reports;
  for (Int z : z_values(bo.z)) {
    if (bo.method == "legendre") {
      reports.push_back(legendre_report(problem, z));
    } else if (bo.method == "brun-pure") {
      reports.push_back(pure_sieve_bound(problem, {z, bo.ell, dir}, bo.worst_case));
    } else if (bo.method == "selberg") {
      reports.push_back(selberg_upper_bound(problem, z, bo.crude));
    } else if (bo.method == "linnik") {
      reports.push_back(linnik_bound(problem, z));
    } else if (bo.method == "rosser") {
      const double D = bo.D > 0.0 ? bo.D : static_cast<double>(z * z);
      LinearSieveOptions opts;
      opts.beta = bo.beta;
      opts.slack = bo.slack;
      reports.push_back(linear_sieve_bound(problem, z, D, dir == Direction::upper ? 1 : 0, opts));
    } else {
      throw ConfigError("unknown method '" + bo.method + "'");
    }
  }
  out.write(render_reports(reports, out));
  return 0;
}

int run_sift(const ProblemOptions& po, const std::vector<std::string>& zs, const Output& out) {
  const auto problem = build_problem(po.params());
  Table t({"problem", "z", "size", "sifted", "main", "remainder"});
  for (Int z : z_values(zs)) {
    const Int sifted = exact_sift(problem, z);
    const Rational main = density_product(problem.density(), z) * problem.X();
    t.add({problem.describe(), z, problem.size(), sifted, num(to_double(main)),
           num(to_double(from_integer(sifted) - main))});
  }
  out.write(t.render(out));
  return 0;
}

struct LsieveOptions {
  std::string Q = "10";
  std::string N = "100";
  std::string M = "1";
  int trials = 100;
  std::string check = "all";
};

int run_lsieve(const LsieveOptions& lo, std::uint64_t seed, const Output& out) {
  const Int Q = parse_int(lo.Q), N = parse_int(lo.N), M = parse_int(lo.M);
  if (N < 1 || lo.trials < 1) throw ConfigError("--N and --trials must be positive");
  const bool all = lo.check == "all";
  if (!all && lo.check != "additive" && lo.check != "dual" && lo.check != "multiplicative") {
    throw ConfigError("--check must be additive, dual, multiplicative or all");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto random_vector = [&](std::size_t n) {
    std::vector<Complex> v(n);
    for (auto& c : v) c = {g(rng), g(rng)};
    return v;
  };
  const auto pts = farey_points(Q);
  const auto tables = (all || lo.check == "multiplicative") ? character_tables_below(Q) : std::vector<CharacterTable>{};
  struct Summary {
    int trials = 0;
    int violations = 0;
    double max_ratio = 0.0;
    void add(const InequalityCheck& c) {
      ++trials;
      violations += !c.holds;
      max_ratio = std::max(max_ratio, c.ratio);
    }
  };
  std::map<std::string, Summary> summary;
  for (int t = 0; t < lo.trials; ++t) {
    const auto a = random_vector(static_cast<std::size_t>(N));
    if (all || lo.check == "additive") summary["additive"].add(additive_ls_check(pts, M, a));
    if (all || lo.check == "dual") summary["dual"].add(dual_ls_check(pts, M, N, random_vector(pts.points.size())));
    if (all || lo.check == "multiplicative") summary["multiplicative"].add(multiplicative_ls_check(tables, Q, M, a));
  }
  Table table({"check", "Q", "M", "N", "trials", "violations", "max_ratio", "seed"});
  for (const auto& [name, s] : summary) {
    table.add({name, Q, M, N, s.trials, s.violations, num(s.max_ratio), seed});
  }
  out.write(table.render(out));
  return 0;
}

int run_sievefun(double tau_max, double step, const Output& out) {
  const auto t = solve_sieve_functions(tau_max, step);
  if (!out.is_json()) {
    out.write(t.to_csv());
    return 0;
  }
  json arr = json::array();
  for (std::size_t i = 1; i < t.size(); ++i) {
    arr.push_back({{"tau", num(t.tau_at(i))}, {"phi0", num(t.phi0_at(i))}, {"phi1", num(t.phi1_at(i))}});
  }
  out.write(arr.dump(2) + "\n");
  return 0;
}

int run_chen(const std::string& from, const std::string& to, const Output& out) {
  const Int lo = parse_int(from);
  const Int hi = to.empty() ? lo : parse_int(to);
  if (lo % 2 != 0 || hi < lo) throw ConfigError("chen needs an even --N-min <= --N-max");
  Table t({"N", "lhs", "term1", "term2", "term3", "rhs", "holds", "singular_series", "shape", "ratio"});
  for (Int N = lo; N <= hi; N += 2) {
    const auto r = chen_decomposition(N);
    t.add({N, r.lhs, r.term1, r.term2, r.term3, num(to_double(r.rhs)), r.holds ? "true" : "false",
           num(to_double(r.singular_series)), num(r.shape), num(r.ratio)});
  }
  out.write(t.render(out));
  return 0;
}

int run_verify_command(const std::string& suite, const std::string& budget, std::uint64_t seed, const Output& out) {
  const auto result = run_verify(suite, parse_verify_budget(budget), seed);
  Table t({"suite", "check", "status", "detail"});
  for (const auto& c : result.checks) {
    std::string detail = c.detail;
    std::replace(detail.begin(), detail.end(), ',', ' ');
    t.add({c.suite, c.name, c.passed ? "pass" : "fail", detail});
  }
  out.write(t.render(out));
  if (!result.passed()) {
    std::cerr << "verify: " << result.failures().size() << " failing check(s)\n";
    for (const auto& f : result.failures()) std::cerr << "  " << f.suite << "/" << f.name << ": " << f.detail << "\n";
    return kExitVerifyFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sieve-method bounds, identities and inequality checks"};
  app.set_config("--config", "", "read options from an INI/TOML file");
  app.set_version_flag("--version", SIEVEKIT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  std::uint64_t seed = 0;
  app.add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out.path, "write the report to a file instead of stdout");
  app.add_option("--seed", seed, "seed for randomized checks");

  ProblemOptions sift_problem;
  std::vector<std::string> sift_z;
  auto* sift = app.add_subcommand("sift", "exact sifted counts");
  sift_problem.attach(sift);
  sift->add_option("--z", sift_z, "sifting limit(s)")->required();

  ProblemOptions bound_problem;
  BoundOptions bo;
  auto* bound = app.add_subcommand("bound", "sieve bounds against exact counts");
  bound_problem.attach(bound);
  bound->add_option("--method", bo.method, "legendre|brun-pure|selberg|linnik|rosser")
      ->check(CLI::IsMember({"legendre", "brun-pure", "selberg", "linnik", "rosser"}));
  bound->add_option("--z", bo.z, "sifting limit(s)")->required();
  bound->add_option("--ell", bo.ell, "truncation parameter for brun-pure");
  bound->add_option("--parity", bo.parity, "upper or lower");
  bound->add_option("--D", bo.D, "level for rosser (default z^2)");
  bound->add_option("--beta", bo.beta, "beta for rosser");
  bound->add_option("--slack", bo.slack, "relative slack for the rosser verdict");
  bound->add_flag("--worst-case", bo.worst_case, "brun-pure: tally omega(d)-style remainders");
  bound->add_flag("--crude", bo.crude, "selberg: crude remainder bound");

  LsieveOptions lo;
  auto* lsieve = app.add_subcommand("lsieve", "randomized large-sieve inequality checks");
  lsieve->add_option("--Q", lo.Q, "Farey order / modulus bound");
  lsieve->add_option("--N", lo.N, "sequence length");
  lsieve->add_option("--M", lo.M, "sequence start");
  lsieve->add_option("--trials", lo.trials, "number of random trials");
  lsieve->add_option("--check", lo.check, "additive|dual|multiplicative|all");

  double tau_max = 10.0, step = 1e-3;
  auto* sievefun = app.add_subcommand("sievefun", "tabulate the linear sieve functions");
  sievefun->add_option("--tau-max", tau_max, "largest tau");
  sievefun->add_option("--step", step, "grid step");

  std::string chen_from = "10000", chen_to;
  auto* chen = app.add_subcommand("chen", "weighted-sieve decomposition for even N");
  chen->add_option("--N-min,--N", chen_from, "first even N");
  chen->add_option("--N-max", chen_to, "last even N");

  std::string suite = "all", budget = "small";
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--suite", suite, "all or a module name");
  verify->add_option("--budget", budget, "small or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*sift) return run_sift(sift_problem, sift_z, out);
    if (*bound) return run_bound(bound_problem, bo, out);
    if (*lsieve) return run_lsieve(lo, seed, out);
    if (*sievefun) return run_sievefun(tau_max, step, out);
    if (*chen) return run_chen(chen_from, chen_to, out);
    if (*verify) return run_verify_command(suite, budget, seed, out);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
