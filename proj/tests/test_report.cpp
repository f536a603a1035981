#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sievekit/report.hpp"
#include "sievekit/selberg.hpp"

using namespace sievekit;

namespace {

std::vector<std::string> split_csv(const std::string& row) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("verdicts") {
    BoundReport r;
    r.direction = Direction::upper;
    r.bound = 10.0;
    r.exact = 10;
    r.finalize();
    CHECK(r.valid);
    CHECK(r.margin == 0.0);
    r.exact = 11;
    r.finalize();
    CHECK_FALSE(r.valid);
    r.slack = 0.1;
    r.finalize();
    CHECK(r.valid);
    r.direction = Direction::lower;
    r.slack = 0.0;
    r.bound = 12.0;
    r.finalize();
    CHECK_FALSE(r.valid);
    CHECK(r.margin == -1.0);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(50.0) == "50");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_number(1e20) == "1e+20");
    CHECK(format_number(std::nan("")) == "nan");
  }

  TEST_CASE("CSV and JSON carry identical numbers") {
    const auto problem = make_residue_problem(1, 100, ResidueSystem::zero_class());
    const auto r = linnik_bound(problem, 5);
    const auto header = split_csv(csv_header());
    const auto row = split_csv(to_csv_row(r));
    REQUIRE(header.size() == row.size());
    CHECK(header.front() == "method");
    CHECK(header.back() == "extras");
    const auto j = to_json(r);
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& key = header[i];
      CAPTURE(key);
      if (key == "extras") {
        std::istringstream in(row[i]);
        std::string kv;
        std::size_t n = 0;
        while (std::getline(in, kv, ';')) {
          const auto eq = kv.find('=');
          const auto name = kv.substr(0, eq);
          CHECK(j["extras"][name].get<double>() == std::stod(kv.substr(eq + 1)));
          ++n;
        }
        CHECK(n == j["extras"].size());
      } else if (j[key].is_number()) {
        CHECK(j[key].get<double>() == std::stod(row[i]));
      } else if (j[key].is_null()) {
        CHECK(row[i].empty());
      } else {
        CHECK(j[key].get<std::string>() == row[i]);
      }
    }
    CHECK(j["verdict"] == "valid");
    CHECK(j["bound"].get<double>() == 50.0);
  }

  TEST_CASE("CSV quoting") {
    BoundReport r;
    r.method = "m";
    r.problem = "progression(x=10,k=3,l=1)";
    r.finalize();
    const auto fields = split_csv(to_csv_row(r));
    CHECK(fields.size() == split_csv(csv_header()).size());
    CHECK(fields[1] == "progression(x=10,k=3,l=1)");
  }
}
