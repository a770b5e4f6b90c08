#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "monopole/cli.hpp"
#include "monopole/errors.hpp"

namespace monopole::cli {

namespace {

const std::vector<std::string> kSpectrumTargets{"kepler5d", "osc8d"};
const std::vector<std::string> kVerifyTargets{"algebra", "ode", "duality", "residuals"};
const std::vector<std::string> kPictures{"kepler-radial", "kepler-angular", "osc-radial",
                                         "osc-angular",   "cylindrical",    "parabolic"};

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

bool finite_all(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

void RunConfig::validate() const {
  require(finite_all({params.c0, params.c1, params.c2, params.hbar, l4, T, K, J, L, omega, lambda1, lambda2,
                      Lambda, Gamma}),
          "all numeric parameters must be finite");
  require(params.hbar > 0, "hbar must be strictly positive");
  require(params.c1 >= 0 && params.c2 >= 0, "c1 and c2 must be non-negative");
  require(lambda1 >= 0 && lambda2 >= 0, "lambda1 and lambda2 must be non-negative");
  require(l4 >= 0, "l4 must be non-negative");
  for (auto [v, name] : {std::pair{T, "T"}, {K, "K"}, {J, "J"}, {L, "L"}}) require_half_integer(v, name);
  require(levels >= 0, "levels must be non-negative");
  require(mesh >= 2000, "mesh must be at least 2000 intervals");

  if (command == "spectrum") {
    require(std::find(kSpectrumTargets.begin(), kSpectrumTargets.end(), target) != kSpectrumTargets.end(),
            "spectrum target must be kepler5d or osc8d");
    if (target == "kepler5d") {
      require(params.c0 > 0, "c0 must be strictly positive");
      require(p_min >= 0, "p-min must be non-negative");
    } else {
      require(omega > 0, "omega must be strictly positive");
    }
    return;
  }
  require(command == "verify", "unknown command '" + command + "'");
  require(std::find(kVerifyTargets.begin(), kVerifyTargets.end(), target) != kVerifyTargets.end(),
          "verify target must be one of algebra, ode, duality, residuals");
  require(params.c0 > 0, "c0 must be strictly positive");
  if (target == "algebra") require(p >= 1, "p must be at least 1");
  if (target == "ode") {
    require(std::find(kPictures.begin(), kPictures.end(), picture) != kPictures.end(),
            "unknown picture '" + picture + "'");
    require(levels >= 1, "levels must be at least 1");
    require(Lambda >= 0 && Gamma >= 0, "separation constants must be non-negative");
    require(omega > 0, "omega must be strictly positive");
  }
  if (target == "duality" || target == "residuals") {
    require(grid == "small" || grid == "full", "grid must be small or full");
  }
}

std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  cfg.argv = args;
  CLI::App app{"Spectra and verification reports for the deformed 5D Kepler-monopole system", "monopole_spectra"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key = value file; explicit flags override it");
  app.fallthrough();
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "Level tables");
  spectrum->add_option("target", cfg.target, "kepler5d or osc8d")->required()->check(CLI::IsMember(kSpectrumTargets));
  auto* verify = app.add_subcommand("verify", "Verification reports");
  verify->add_option("target", cfg.target, "algebra, ode, duality or residuals")
      ->required()
      ->check(CLI::IsMember(kVerifyTargets));

  app.add_option("--c0", cfg.params.c0, "Coulomb strength")->capture_default_str();
  app.add_option("--c1", cfg.params.c1, "first non-central coupling")->capture_default_str();
  app.add_option("--c2", cfg.params.c2, "second non-central coupling")->capture_default_str();
  app.add_option("--hbar", cfg.params.hbar)->capture_default_str();
  app.add_option("--l4", cfg.l4, "so(4) label")->capture_default_str();
  app.add_option("--T", cfg.T, "su(2) label, or the first cylindrical/Euler label")->capture_default_str();
  app.add_option("--K", cfg.K, "second oscillator label")->capture_default_str();
  app.add_option("--J", cfg.J)->capture_default_str();
  app.add_option("--L", cfg.L)->capture_default_str();
  app.add_option("--p", cfg.p, "unirrep label for verify algebra")->capture_default_str();
  app.add_option("--p-min", cfg.p_min)->capture_default_str();
  app.add_option("--p-max", cfg.p_max)->capture_default_str();
  app.add_option("--omega", cfg.omega)->capture_default_str();
  app.add_option("--lambda1", cfg.lambda1)->capture_default_str();
  app.add_option("--lambda2", cfg.lambda2)->capture_default_str();
  app.add_option("--levels", cfg.levels)->capture_default_str();
  app.add_option("--picture", cfg.picture)->capture_default_str()->check(CLI::IsMember(kPictures));
  app.add_option("--Lambda", cfg.Lambda, "Kepler separation constant")->capture_default_str();
  app.add_option("--Gamma", cfg.Gamma, "8D separation constant")->capture_default_str();
  app.add_option("--mesh", cfg.mesh, "coarse mesh intervals")->capture_default_str();
  app.add_option("--grid", cfg.grid)->capture_default_str()->check(CLI::IsMember({"small", "full"}));
  std::string format = "plain";
  app.add_option("--format", format)->capture_default_str()->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--output", cfg.output, "write the report here instead of stdout");

  // CLI11 consumes arguments back to front
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  cfg.command = spectrum->parsed() ? "spectrum" : "verify";
  cfg.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kPlain;
  return cfg;
}

unsigned thread_budget() {
  if (const char* env = std::getenv("MONOPOLE_SPECTRA_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) return static_cast<unsigned>(std::min(cap, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; !failed && (i = next++) < count;) {
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace monopole::cli
