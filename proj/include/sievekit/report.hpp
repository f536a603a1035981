#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sievekit/arith.hpp"

namespace sievekit {

enum class Direction { upper, lower };

std::string_view to_string(Direction d);

/// One bound evaluated against the exact sifted count.
struct BoundReport {
  std::string method;
  std::string problem;
  Int z = 0;
  std::optional<double> D;
  std::optional<double> beta;
  std::optional<int> ell;
  std::optional<int> parity;
  Direction direction = Direction::upper;

  double main = 0.0;
  double remainder_bound = 0.0;
  double bound = 0.0;
  Int exact = 0;
  /// Relative allowance applied before the verdict; 0 for rigorous bounds.
  double slack = 0.0;
  double margin = 0.0;
  bool valid = false;

  std::vector<std::pair<std::string, double>> extras;

  /// Recomputes margin and verdict from bound, exact, slack and direction.
  void finalize();
  std::optional<double> extra(std::string_view key) const;
};

/// 15 significant digits, shortest exponent form.
std::string format_number(double v);

std::string csv_header();
std::string to_csv_row(const BoundReport& r);
nlohmann::json to_json(const BoundReport& r);

}  // namespace sievekit
