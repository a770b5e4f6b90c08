#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "monopole/cli.hpp"
#include "monopole/errors.hpp"

using namespace monopole;
using namespace monopole::cli;

namespace {

struct Output {
  int code = 0;
  std::string out;
  std::string err;
};

Output run_in_process(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("monopole_cli_" + std::to_string(::getpid()) + "_" + name);
}

// Runs the installed binary through the shell; stdout is captured in a file.
Output run_binary(const std::string& args, const std::string& env = "") {
  const auto out_path = scratch("stdout");
  const auto err_path = scratch("stderr");
  const std::string cmd = env + " \"" MONOPOLE_SPECTRA_BIN "\" " + args + " >" + out_path.string() + " 2>" +
                          err_path.string();
  const int status = std::system(cmd.c_str());
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  Output o{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out_path), slurp(err_path)};
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return o;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

TEST_CASE("parsing fills the run configuration") {
  std::ostringstream sink;
  const auto cfg = parse_command_line({"spectrum", "kepler5d", "--c0", "2", "--J", "0.5", "--p-max", "5",
                                       "--format", "csv"},
                                      sink);
  REQUIRE(cfg);
  CHECK(cfg->command == "spectrum");
  CHECK(cfg->target == "kepler5d");
  CHECK(cfg->params.c0 == 2);
  CHECK(cfg->J == 0.5);
  CHECK(cfg->p_max == 5);
  CHECK(cfg->format == Format::kCsv);
  CHECK(cfg->mesh == 2000);

  const auto v = parse_command_line({"verify", "ode", "--picture", "cylindrical", "--mesh", "4000"}, sink);
  REQUIRE(v);
  CHECK(v->command == "verify");
  CHECK(v->picture == "cylindrical");
  CHECK(v->mesh == 4000);
}

TEST_CASE("help and version print and stop") {
  std::ostringstream out;
  CHECK_FALSE(parse_command_line({"--version"}, out));
  CHECK(out.str() == std::string(kVersion) + "\n");
  std::ostringstream help;
  CHECK_FALSE(parse_command_line({"--help"}, help));
  CHECK(help.str().find("spectrum") != std::string::npos);
}

TEST_CASE("malformed command lines are usage errors") {
  std::ostringstream sink;
  CHECK_THROWS_AS(parse_command_line({"spectrum", "kepler6d"}, sink), UsageError);
  CHECK_THROWS_AS(parse_command_line({"spectrum"}, sink), UsageError);
  CHECK_THROWS_AS(parse_command_line({"verify", "ode", "--picture", "spiral"}, sink), UsageError);
  CHECK_THROWS_AS(parse_command_line({"spectrum", "osc8d", "--omega", "abc"}, sink), UsageError);
  CHECK_THROWS_AS(parse_command_line({"spectrum", "osc8d", "--format", "xml"}, sink), UsageError);
  CHECK_THROWS_AS(parse_command_line({}, sink), UsageError);
}

TEST_CASE("configuration file values yield to explicit flags") {
  const auto path = scratch("config.ini");
  {
    std::ofstream f(path);
    f << "c0 = 3\nhbar = 0.5\np-max = 1\n";
  }
  std::ostringstream sink;
  const auto cfg = parse_command_line({"spectrum", "kepler5d", "--config", path.string(), "--c0", "2"}, sink);
  std::filesystem::remove(path);
  REQUIRE(cfg);
  CHECK(cfg->params.c0 == 2);
  CHECK(cfg->params.hbar == 0.5);
  CHECK(cfg->p_max == 1);
}

TEST_CASE("validation mirrors library preconditions") {
  std::ostringstream sink;
  auto parsed = [&](std::vector<std::string> args) { return *parse_command_line(args, sink); };
  CHECK_NOTHROW(parsed({"spectrum", "kepler5d"}).validate());
  CHECK_THROWS_AS(parsed({"spectrum", "kepler5d", "--c0", "0"}).validate(), InvalidParameter);
  CHECK_THROWS_AS(parsed({"spectrum", "kepler5d", "--hbar", "-1"}).validate(), InvalidParameter);
  CHECK_THROWS_AS(parsed({"spectrum", "kepler5d", "--J", "0.3"}).validate(), InvalidParameter);
  CHECK_THROWS_AS(parsed({"spectrum", "kepler5d", "--c1", "-1"}).validate(), InvalidParameter);
  CHECK_THROWS_AS(parsed({"spectrum", "osc8d", "--omega", "0"}).validate(), InvalidParameter);
  CHECK_THROWS_AS(parsed({"verify", "ode", "--mesh", "100"}).validate(), InvalidParameter);
  CHECK_THROWS_AS(parsed({"verify", "ode", "--levels", "0"}).validate(), InvalidParameter);
  CHECK_THROWS_AS(parsed({"verify", "algebra", "--p", "0"}).validate(), InvalidParameter);
  CHECK_THROWS_AS(parsed({"spectrum", "kepler5d", "--c0", "nan"}).validate(), InvalidParameter);
}

TEST_CASE("thread budget follows the environment") {
  ::setenv("MONOPOLE_SPECTRA_THREADS", "3", 1);
  CHECK(thread_budget() == 3);
  ::setenv("MONOPOLE_SPECTRA_THREADS", "0", 1);
  CHECK(thread_budget() >= 1);
  ::setenv("MONOPOLE_SPECTRA_THREADS", "many", 1);
  CHECK(thread_budget() >= 1);
  ::setenv("MONOPOLE_SPECTRA_THREADS", "4", 1);
  std::vector<int> slots(100, 0);
  parallel_for(slots.size(), [&](std::size_t i) { slots[i] = static_cast<int>(i * i); });
  for (std::size_t i = 0; i < slots.size(); ++i) CHECK(slots[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw InvalidParameter("seven"); }),
                  InvalidParameter);
  ::unsetenv("MONOPOLE_SPECTRA_THREADS");
}

TEST_CASE("Kepler spectrum JSON envelope") {
  const auto o = run_in_process({"spectrum", "kepler5d", "--format", "json"});
  REQUIRE(o.code == kSuccess);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j["version"] == kVersion);
  CHECK(j["command"]["name"] == "spectrum kepler5d");
  CHECK(j["command"]["argv"].size() == 4);
  CHECK(j["command"]["timestamp"].get<std::string>().size() == 20);
  CHECK(j["params"]["c0"] == 1.0);
  const auto& rows = j["results"];
  REQUIRE(rows.size() == 4);
  const double expected[] = {-0.125, -1.0 / 18, -1.0 / 32, -1.0 / 50};
  for (int p = 0; p < 4; ++p) {
    CAPTURE(p);
    const auto& r = rows[p];
    CHECK(r["labels"]["p"] == double(p));
    CHECK(r["value"].get<double>() == doctest::Approx(expected[p]).epsilon(1e-12));
    for (const char* key : {"oracle", "abs_diff", "rel_diff", "tolerance", "oracle_id"}) CHECK(r.contains(key));
    CHECK(r["rel_diff"].get<double>() <= r["tolerance"].get<double>());
  }
  CHECK(rows[0]["degeneracy"] == 0.0);
  CHECK(rows[1]["degeneracy"].get<double>() > 0);
  for (const auto& c : j["checks"]) {
    CHECK(c["passed"] == true);
    for (const char* key : {"name", "measured", "tolerance", "oracle_id"}) CHECK(c.contains(key));
  }
}

TEST_CASE("CSV carries the JSON values losslessly") {
  const std::vector<std::string> base{"spectrum", "kepler5d", "--c0", "1.3", "--hbar", "0.7", "--p-max", "6"};
  auto json_args = base, csv_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const auto j = nlohmann::json::parse(run_in_process(json_args).out);
  std::istringstream csv(run_in_process(csv_args).out);
  std::string line;
  std::getline(csv, line);
  const auto header = split_line(line);
  const auto col = [&](const std::string& name) {
    return std::find(header.begin(), header.end(), name) - header.begin();
  };
  REQUIRE(col("value") < static_cast<long>(header.size()));
  CHECK(header.front() == "labels.p");
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    const auto f = split_line(line);
    REQUIRE(i < j["results"].size());
    const auto& r = j["results"][i++];
    CHECK(std::strtod(f[col("value")].c_str(), nullptr) == r["value"].get<double>());
    CHECK(std::strtod(f[col("oracle")].c_str(), nullptr) == r["oracle"].get<double>());
    CHECK(std::strtod(f[col("rel_diff")].c_str(), nullptr) == r["rel_diff"].get<double>());
  }
  CHECK(i == j["results"].size());
}

TEST_CASE("oscillator spectrum rows") {
  const auto o = run_in_process({"spectrum", "osc8d", "--format", "json"});
  REQUIRE(o.code == kSuccess);
  const auto j = nlohmann::json::parse(o.out);
  std::vector<double> energies;
  for (const auto& r : j["results"]) energies.push_back(r["value"]);
  CHECK(std::find(energies.begin(), energies.end(), 4.0) != energies.end());
  CHECK(std::find(energies.begin(), energies.end(), 6.0) != energies.end());
  CHECK(std::find(energies.begin(), energies.end(), 8.0) != energies.end());
}

TEST_CASE("plain output and empty ranges") {
  const auto o = run_in_process({"spectrum", "kepler5d", "--p-min", "5", "--p-max", "4"});
  CHECK(o.code == kSuccess);
  CHECK(o.out.find("(no rows)") != std::string::npos);
  const auto v = run_in_process({"verify", "algebra", "--p", "2"});
  CHECK(v.code == kSuccess);
  CHECK(v.out.find("PASS") != std::string::npos);
  CHECK(v.out.find("FAIL") == std::string::npos);
}

TEST_CASE("--output writes the report to a file") {
  const auto path = scratch("report.json");
  const auto o = run_in_process({"spectrum", "kepler5d", "--format", "json", "--output", path.string()});
  CHECK(o.code == kSuccess);
  CHECK(o.out.empty());
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["results"].size() == 4);
  std::filesystem::remove(path);
  const auto bad = run_in_process({"spectrum", "kepler5d", "--output", "/nonexistent-dir/x.json"});
  CHECK(bad.code == kInvalidInput);
}

TEST_CASE("binary exit codes") {
  CHECK(run_binary("spectrum kepler5d").code == kSuccess);
  CHECK(run_binary("--version").out == std::string(kVersion) + "\n");
  const auto bad_target = run_binary("spectrum kepler6d");
  CHECK(bad_target.code == kInvalidInput);
  CHECK(bad_target.err.find("error") != std::string::npos);
  CHECK(run_binary("spectrum kepler5d --c0 -1").code == kInvalidInput);
  CHECK(run_binary("verify ode --mesh 10").code == kInvalidInput);
  const auto diverged = run_binary("verify ode --picture kepler-radial --levels 40");
  CHECK(diverged.code == kConvergenceFailure);
  CHECK(diverged.err.find("convergence") != std::string::npos);
  CHECK(run_binary("verify ode --picture kepler-radial --Lambda 0 --levels 3 --mesh 4000").code == kSuccess);
}

TEST_CASE("results do not depend on the thread count") {
  auto strip = [](std::string s) {
    auto j = nlohmann::json::parse(s);
    j["command"].erase("timestamp");
    return j.dump();
  };
  for (const char* args : {"verify duality --grid full --format json", "verify residuals --format json"}) {
    CAPTURE(args);
    const auto one = run_binary(args, "MONOPOLE_SPECTRA_THREADS=1");
    const auto four = run_binary(args, "MONOPOLE_SPECTRA_THREADS=4");
    REQUIRE(one.code == kSuccess);
    REQUIRE(four.code == kSuccess);
    CHECK(strip(one.out) == strip(four.out));
  }
}
