#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <type_traits>
#include <variant>

#include "monopole/cli.hpp"

namespace monopole::cli {

namespace {

using Labels = std::vector<std::pair<std::string, LabelValue>>;

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string format_label(const LabelValue& v, int digits) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return format_number(std::get<double>(v), digits);
}

template <typename Pairs>
nlohmann::ordered_json to_object(const Pairs& pairs) {
  auto obj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : pairs) {
    if constexpr (std::is_same_v<Pairs, Labels>) {
      std::visit([&obj, &k = k](const auto& x) { obj[k] = x; }, v);
    } else {
      obj[k] = v;
    }
  }
  return obj;
}

// Column order is the order of first appearance over the rows.
template <typename Pairs>
std::vector<std::string> union_keys(const std::vector<Row>& rows, Pairs Row::*member) {
  std::vector<std::string> keys;
  for (const auto& r : rows) {
    for (const auto& kv : r.*member) {
      if (std::find(keys.begin(), keys.end(), kv.first) == keys.end()) keys.push_back(kv.first);
    }
  }
  return keys;
}

template <typename Pairs>
auto lookup(const Pairs& pairs, const std::string& key) -> std::optional<typename Pairs::value_type::second_type> {
  for (const auto& [k, v] : pairs) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

double Row::abs_diff() const { return std::abs(value - oracle); }

double Row::rel_diff() const { return oracle == 0 ? abs_diff() : abs_diff() / std::abs(oracle); }

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["command"] = {{"name", report.command}, {"argv", report.argv}, {"timestamp", report.timestamp}};
  auto params = to_object(report.params);
  for (const auto& [k, v] : report.settings) params[k] = v;
  j["params"] = params;
  auto results = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["labels"] = to_object(r.labels);
    row["value"] = r.value;
    row["oracle"] = r.oracle;
    row["abs_diff"] = r.abs_diff();
    row["rel_diff"] = r.rel_diff();
    row["tolerance"] = r.tolerance;
    row["oracle_id"] = r.oracle_id;
    for (const auto& [k, v] : r.extra) row[k] = v;
    results.push_back(row);
  }
  j["results"] = results;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed},
                      {"oracle_id", c.oracle_id}});
  }
  j["checks"] = checks;
  // doubles are written in shortest round-trip form (at most 17 digits)
  return j.dump(2) + '\n';
}

std::string to_csv(const Report& report) {
  const auto label_keys = union_keys(report.rows, &Row::labels);
  const auto extra_keys = union_keys(report.rows, &Row::extra);
  std::ostringstream os;
  for (const auto& k : label_keys) os << "labels." << k << ',';
  os << "value,oracle,abs_diff,rel_diff,tolerance,oracle_id";
  for (const auto& k : extra_keys) os << ',' << k;
  os << '\n';
  for (const auto& r : report.rows) {
    for (const auto& k : label_keys) {
      if (auto v = lookup(r.labels, k)) os << csv_field(format_label(*v, 17));
      os << ',';
    }
    os << format_number(r.value, 17) << ',' << format_number(r.oracle, 17) << ','
       << format_number(r.abs_diff(), 17) << ',' << format_number(r.rel_diff(), 17) << ','
       << format_number(r.tolerance, 17) << ',' << csv_field(r.oracle_id);
    for (const auto& k : extra_keys) {
      os << ',';
      if (auto v = lookup(r.extra, k)) os << format_number(*v, 17);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_plain(const Report& report) {
  std::ostringstream os;
  os << "# " << report.command << "  (monopole_spectra " << kVersion << ", " << report.timestamp << ")\n";
  os << "#";
  for (const auto& [k, v] : report.params) os << ' ' << k << '=' << format_number(v, 6);
  for (const auto& [k, v] : report.settings) os << ' ' << k << '=' << v;
  os << '\n';

  const auto label_keys = union_keys(report.rows, &Row::labels);
  const auto extra_keys = union_keys(report.rows, &Row::extra);
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header(label_keys);
  for (const char* h : {"value", "oracle", "rel_diff"}) header.emplace_back(h);
  header.insert(header.end(), extra_keys.begin(), extra_keys.end());
  table.push_back(header);
  for (const auto& r : report.rows) {
    std::vector<std::string> line;
    for (const auto& k : label_keys) {
      auto v = lookup(r.labels, k);
      line.push_back(v ? format_label(*v, 6) : "");
    }
    line.push_back(format_number(r.value, 6));
    line.push_back(format_number(r.oracle, 6));
    line.push_back(format_number(r.rel_diff(), 2));
    for (const auto& k : extra_keys) {
      auto v = lookup(r.extra, k);
      line.push_back(v ? format_number(*v, 6) : "");
    }
    table.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  if (report.rows.empty()) {
    os << "(no rows)\n";
  } else {
    for (const auto& line : table) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        os << (c ? "  " : "") << std::string(width[c] - line[c].size(), ' ') << line[c];
      }
      os << '\n';
    }
  }
  for (const auto& c : report.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << format_number(c.measured, 3)
       << " <= " << format_number(c.tolerance, 3) << "  [" << c.oracle_id << "]\n";
  }
  return os.str();
}

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::kJson: return to_json(report);
    case Format::kCsv: return to_csv(report);
    case Format::kPlain: return to_plain(report);
  }
  return {};
}

}  // namespace monopole::cli
