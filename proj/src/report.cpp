#include "sievekit/report.hpp"

#include <cmath>
#include <cstdio>

namespace sievekit {

std::string_view to_string(Direction d) { return d == Direction::upper ? "upper" : "lower"; }

void BoundReport::finalize() {
  const double e = static_cast<double>(exact);
  if (direction == Direction::upper) {
    margin = bound - e;
    valid = bound * (1.0 + slack) >= e;
  } else {
    margin = e - bound;
    valid = bound * (1.0 - slack) <= e;
  }
}

std::optional<double> BoundReport::extra(std::string_view key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace {

template <class T>
std::string opt_field(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string csv_header() {
  return "method,problem,z,D,beta,ell,parity,direction,main,remainder_bound,bound,exact,slack,margin,verdict,extras";
}

std::string to_csv_row(const BoundReport& r) {
  std::string extras;
  for (const auto& [k, v] : r.extras) {
    if (!extras.empty()) extras += ';';
    extras += k + '=' + format_number(v);
  }
  std::string row;
  row += csv_escape(r.method) + ',' + csv_escape(r.problem) + ',' + std::to_string(r.z) + ',';
  row += opt_field(r.D) + ',' + opt_field(r.beta) + ',' + opt_field(r.ell) + ',' + opt_field(r.parity) + ',';
  row += std::string(to_string(r.direction)) + ',';
  row += format_number(r.main) + ',' + format_number(r.remainder_bound) + ',' + format_number(r.bound) + ',';
  row += std::to_string(r.exact) + ',' + format_number(r.slack) + ',' + format_number(r.margin) + ',';
  row += std::string(r.valid ? "valid" : "violated") + ',' + csv_escape(extras);
  return row;
}

nlohmann::json to_json(const BoundReport& r) {
  // Numbers go through format_number so that JSON and CSV carry the same digits.
  auto num = [](double v) -> nlohmann::json {
    if (!std::isfinite(v)) return format_number(v);
    return nlohmann::json::parse(format_number(v));
  };
  nlohmann::json j;
  j["method"] = r.method;
  j["problem"] = r.problem;
  j["z"] = r.z;
  j["D"] = r.D ? num(*r.D) : nlohmann::json(nullptr);
  j["beta"] = r.beta ? num(*r.beta) : nlohmann::json(nullptr);
  j["ell"] = r.ell ? nlohmann::json(*r.ell) : nlohmann::json(nullptr);
  j["parity"] = r.parity ? nlohmann::json(*r.parity) : nlohmann::json(nullptr);
  j["direction"] = std::string(to_string(r.direction));
  j["main"] = num(r.main);
  j["remainder_bound"] = num(r.remainder_bound);
  j["bound"] = num(r.bound);
  j["exact"] = r.exact;
  j["slack"] = num(r.slack);
  j["margin"] = num(r.margin);
  j["verdict"] = r.valid ? "valid" : "violated";
  nlohmann::json extras = nlohmann::json::object();
  for (const auto& [k, v] : r.extras) extras[k] = num(v);
  j["extras"] = extras;
  return j;
}

}  // namespace sievekit
