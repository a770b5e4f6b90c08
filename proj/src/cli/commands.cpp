#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "monopole/algebra_core.hpp"
#include "monopole/cli.hpp"
#include "monopole/duality.hpp"
#include "monopole/errors.hpp"
#include "monopole/fock_rep.hpp"
#include "monopole/ode_spectra.hpp"
#include "monopole/special_functions.hpp"

namespace monopole::cli {

namespace {

constexpr double kSpectrumTol = 1e-12;
constexpr double kAlgebraTol = 1e-9;
constexpr double kCasimirScalarTol = 1e-8;
constexpr double kCalibrationTol = 1e-8;
constexpr double kOdeTol = 1e-6;
constexpr double kIdentityTol = 1e-12;
constexpr double kRoundTripTol = 2 * std::numeric_limits<double>::epsilon();
constexpr double kResidualTol = 1e-7;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Report envelope(const RunConfig& cfg) {
  Report r;
  r.command = cfg.command + " " + cfg.target;
  r.argv = cfg.argv;
  r.timestamp = utc_timestamp();
  r.params = {{"c0", cfg.params.c0}, {"c1", cfg.params.c1}, {"c2", cfg.params.c2}, {"hbar", cfg.params.hbar}};
  return r;
}

Check worst_row_check(const std::string& name, const std::vector<Row>& rows, double tol, const std::string& oracle) {
  double worst = 0;
  for (const auto& row : rows) worst = std::max(worst, row.rel_diff());
  return {name, worst, tol, worst <= tol, oracle};
}

QuantumNumbers<double> sector(const RunConfig& cfg) { return {cfg.l4, cfg.T}; }

// Admissible lambda for labels z1, z2: lambda - z1 - z2 a non-negative integer.
std::vector<int> admissible_lambdas(double z1, double z2, int max_lambda) {
  std::vector<int> out;
  for (int lambda = 0; lambda <= max_lambda; ++lambda) {
    const double k = lambda - z1 - z2;
    if (k >= -1e-12 && std::abs(k - std::round(k)) < 1e-12) out.push_back(lambda);
  }
  return out;
}

Report spectrum_kepler(const RunConfig& cfg) {
  Report r = envelope(cfg);
  r.params.insert(r.params.end(), {{"l4", cfg.l4}, {"T", cfg.T}, {"J", cfg.J}, {"L", cfg.L}});
  r.settings = {{"p_range", std::to_string(cfg.p_min) + ".." + std::to_string(cfg.p_max)}};
  const auto qn = sector(cfg);
  const auto m = aux_exponents(cfg.params, qn);
  const int count = std::max(0, cfg.p_max - cfg.p_min + 1);
  std::vector<Row> rows(count);
  double worst_boundary = 0;
  std::vector<double> boundary(count, 0);
  parallel_for(count, [&](std::size_t i) {
    const int p = cfg.p_min + static_cast<int>(i);
    const auto sol = solve_unirrep(p, cfg.params, qn);
    boundary[i] = boundary_residual(sol, cfg.params, qn);
    Row& row = rows[i];
    row.labels = {{"p", double(p)}};
    row.value = sol.E;
    row.oracle = energy_level(p, m, cfg.params);
    row.tolerance = kSpectrumTol;
    row.oracle_id = "closed-form algebraic spectrum";
    row.extra = {{"dimension", double(p + 1)},
                 {"degeneracy", p >= 1 ? double(degeneracy_count(p, cfg.J, cfg.L)) : 0.0}};
  });
  for (double b : boundary) worst_boundary = std::max(worst_boundary, b);
  r.rows = std::move(rows);
  r.checks.push_back(worst_row_check("unirrep energy vs closed form", r.rows, kSpectrumTol,
                                     "closed-form algebraic spectrum"));
  r.checks.push_back({"structure function zeros at x = 0, p + 1", worst_boundary, kAlgebraTol,
                      worst_boundary <= kAlgebraTol, "Phi(0) = Phi(p+1) = 0"});
  return r;
}

// eps such that the dual Kepler point sits on the algebraic level p, for the
// oscillator at frequency omega: E is quadratic in c0 = eps/4, so a unit-eps
// evaluation fixes the scale.
double dual_algebraic_epsilon(double p, const DeltaExponents<double>& d, const RunConfig& cfg) {
  const ModelParams<double> kepler{1, cfg.lambda1 / 2, cfg.lambda2 / 2, cfg.params.hbar};
  const double E = algebraic_energy(p, {d.delta1, d.delta2}, kepler);
  const double omega_at_c0 = oscillator_from_kepler({1, E, kepler.c1, kepler.c2}).omega;
  return 4 * cfg.omega / omega_at_c0;
}

Report spectrum_oscillator(const RunConfig& cfg) {
  Report r = envelope(cfg);
  r.params = {{"omega", cfg.omega},     {"lambda1", cfg.lambda1}, {"lambda2", cfg.lambda2},
              {"T", cfg.T},             {"K", cfg.K},             {"hbar", cfg.params.hbar}};
  r.settings = {{"levels", std::to_string(cfg.levels)}};
  const double hbar = cfg.params.hbar;
  const auto d = delta_exponents(DeltaVariant::kOscillator, cfg.lambda1, cfg.lambda2, cfg.T, cfg.K, hbar);
  const int lambda_min = static_cast<int>(std::lround(std::ceil(cfg.T + cfg.K - 1e-12)));
  if (std::abs(lambda_min - cfg.T - cfg.K) > 1e-12) {
    throw InvalidParameter("T + K must be an integer for the Euler labels to exist");
  }
  for (int level = 0; level < cfg.levels; ++level) {
    for (int n = level; n >= 0; --n) {
      const int lambda = lambda_min + level - n;
      Row row;
      row.labels = {{"n", double(n)}, {"lambda", double(lambda)}};
      row.value = euler_energy(n, lambda, cfg.T, cfg.K, cfg.omega, cfg.lambda1, cfg.lambda2, hbar);
      row.oracle = dual_algebraic_epsilon(n + lambda + 1, d, cfg);
      row.tolerance = kSpectrumTol;
      row.oracle_id = "algebraic spectrum through the duality map";
      row.extra = {{"degeneracy", double(level + 1)}};
      r.rows.push_back(row);
    }
  }
  r.checks.push_back(worst_row_check("Euler spectrum vs dual algebraic spectrum", r.rows, kSpectrumTol,
                                     "algebraic spectrum through the duality map"));
  return r;
}

// Rows of an unclaimed realization are diagnostics and carry no tolerance.
void add_algebra_rows(Report& r, const std::string& realization, const AlgebraReport<double>& a, bool claimed) {
  auto add = [&](const std::string& quantity, double value, double oracle, double tol, const std::string& id) {
    Row row;
    row.labels = {{"quantity", quantity}, {"realization", realization}};
    row.value = value;
    row.oracle = oracle;
    row.tolerance = tol;
    row.oracle_id = id;
    r.rows.push_back(row);
  };
  const std::string id = claimed ? "algebraic identity" : "diagnostic";
  const auto tol = [&](double t) { return claimed ? t : kNaN; };
  add("[A,B] - C", a.residual_q1, 0, tol(kAlgebraTol), id);
  add("[A,C] relation", a.residual_q2, 0, tol(kAlgebraTol), id);
  add("[B,C] relation", a.residual_q3, 0, tol(kAlgebraTol), id);
  add("[A,C] relation, uncalibrated", a.residual_q2_raw, 0, tol(kAlgebraTol), id);
  add("[B,C] relation, uncalibrated", a.residual_q3_raw, 0, tol(kAlgebraTol), id);
  add("[A,C] relation, swapped c1 - c2", a.residual_q2_swapped_sign, 0, kNaN, "diagnostic");
  add("Casimir off-diagonal", a.casimir_offdiag, 0, tol(kAlgebraTol), id);
  add("Casimir scalar mismatch", a.casimir_scalar_mismatch, 0, tol(kCasimirScalarTol), id);
  add("rho calibration", a.rho_calibration.value_or(kNaN), 1, tol(kCalibrationTol),
      claimed ? "closed realization scale" : "diagnostic");
}

Report verify_algebra_cmd(const RunConfig& cfg) {
  Report r = envelope(cfg);
  r.params.insert(r.params.end(), {{"l4", cfg.l4}, {"T", cfg.T}, {"p", double(cfg.p)}});
  const auto qn = sector(cfg);
  const auto sol = solve_unirrep(cfg.p, cfg.params, qn);
  const auto rep = build_rep(sol, qn, cfg.params);
  const auto closed = verify_algebra(build_generators(rep, cfg.params, qn, Realization::closed()), rep, cfg.params, qn);
  add_algebra_rows(r, "closed", closed, true);
  const auto printed =
      verify_algebra(build_generators(rep, cfg.params, qn, Realization::printed()), rep, cfg.params, qn);
  add_algebra_rows(r, "printed", printed, false);

  auto check = [&](const std::string& name, double value, double tol, const std::string& id) {
    r.checks.push_back({name, value, tol, value <= tol, id});
  };
  check("[A,B] = C", closed.residual_q1, kAlgebraTol, "algebraic identity");
  check("[A,C] closes", closed.residual_q2, kAlgebraTol, "algebraic identity");
  check("[B,C] closes", closed.residual_q3, kAlgebraTol, "algebraic identity");
  check("Casimir is central", closed.casimir_offdiag, kAlgebraTol, "algebraic identity");
  check("Casimir equals its scalar form", closed.casimir_scalar_mismatch, kCasimirScalarTol, "scalar Casimir");
  check("rho calibration is 1", closed.rho_calibration ? std::abs(*closed.rho_calibration - 1) : kNaN,
        kCalibrationTol, "closed realization scale");
  return r;
}

Report verify_ode_cmd(const RunConfig& cfg) {
  Report r = envelope(cfg);
  r.settings = {{"picture", cfg.picture}, {"mesh", std::to_string(cfg.mesh)}, {"levels", std::to_string(cfg.levels)}};
  const auto& P = cfg.params;
  const int n = cfg.levels;
  auto table = [&](const EigenResult& e, auto oracle, const std::string& id) {
    for (int k = 0; k < n; ++k) {
      Row row;
      row.labels = {{"level", double(k)}};
      row.value = e.richardson_estimate[k];
      row.oracle = oracle(k);
      row.tolerance = kOdeTol;
      row.oracle_id = id;
      row.extra = {{"fine_mesh", e.eigenvalues[k]}};
      r.rows.push_back(row);
    }
  };
  if (cfg.picture == "kepler-radial") {
    r.params.push_back({"Lambda", cfg.Lambda});
    table(kepler_radial_spectrum(cfg.Lambda, P, n, cfg.mesh), [&](int k) { return kepler_radial_level(k, cfg.Lambda, P); },
          "closed-form Coulomb levels");
  } else if (cfg.picture == "kepler-angular") {
    r.params.insert(r.params.end(), {{"J", cfg.J}, {"L", cfg.L}});
    table(kepler_angular_spectrum(cfg.J, cfg.L, P, n, cfg.mesh),
          [&](int k) { return kepler_angular_level(k, cfg.J, cfg.L, P); }, "Jacobi separation constants");
  } else if (cfg.picture == "osc-radial") {
    r.params.insert(r.params.end(), {{"Gamma", cfg.Gamma}, {"omega", cfg.omega}});
    table(oscillator_radial_spectrum(cfg.Gamma, cfg.omega, P.hbar, n, cfg.mesh),
          [&](int k) { return oscillator_radial_level(k, cfg.Gamma, cfg.omega, P.hbar); },
          "closed-form oscillator levels");
  } else if (cfg.picture == "osc-angular") {
    r.params.insert(r.params.end(),
                    {{"T", cfg.T}, {"K", cfg.K}, {"lambda1", cfg.lambda1}, {"lambda2", cfg.lambda2}});
    table(oscillator_angular_spectrum(cfg.T, cfg.K, cfg.lambda1, cfg.lambda2, P.hbar, n, cfg.mesh),
          [&](int k) { return oscillator_angular_level(k, cfg.T, cfg.K, cfg.lambda1, cfg.lambda2, P.hbar); },
          "Jacobi separation constants");
  } else if (cfg.picture == "cylindrical") {
    r.params.insert(r.params.end(), {{"T", cfg.T}, {"lambda1", cfg.lambda1}, {"omega", cfg.omega}});
    table(cylindrical_spectrum(cfg.T, cfg.lambda1, cfg.omega, P.hbar, n, cfg.mesh),
          [&](int k) { return cylindrical_level(k, cfg.T, cfg.lambda1, cfg.omega, P.hbar); },
          "closed-form 2D oscillator levels");
  } else {
    r.params.insert(r.params.end(), {{"J", cfg.J}, {"L", cfg.L}});
    int max_total = 0;
    while ((max_total + 1) * (max_total + 2) / 2 < n) ++max_total;
    const auto levels = parabolic_quantization(cfg.J, cfg.L, P, max_total, {}, cfg.mesh);
    for (int k = 0; k < n; ++k) {
      const auto& lv = levels[k];
      const auto o = parabolic_level(lv.n1, lv.n2, cfg.J, cfg.L, P);
      Row row;
      row.labels = {{"n1", double(lv.n1)}, {"n2", double(lv.n2)}, {"quantity", std::string("E")}};
      row.value = lv.E;
      row.oracle = o.E;
      row.tolerance = kOdeTol;
      row.oracle_id = "closed-form parabolic quantization";
      r.rows.push_back(row);
      row.labels.back().second = std::string("separation");
      row.value = lv.separation;
      row.oracle = o.separation;
      r.rows.push_back(row);
    }
  }
  r.checks.push_back(worst_row_check("lowest levels vs closed form", r.rows, kOdeTol, r.rows.front().oracle_id));
  return r;
}

struct Grid {
  int max_label;
  std::vector<double> z;
  std::vector<double> couplings;
};

Grid duality_grid(const std::string& name) {
  if (name == "full") return {5, {0, 0.5, 1}, {0, 0.5, 1.5}};
  return {2, {0, 0.5}, {0, 1.5}};
}

Report verify_duality_cmd(const RunConfig& cfg) {
  Report r = envelope(cfg);
  r.settings = {{"grid", cfg.grid}};
  const Grid g = duality_grid(cfg.grid);
  struct Point {
    double z1, z2, c1, c2;
  };
  std::vector<Point> points;
  for (double z1 : g.z)
    for (double z2 : g.z)
      for (double c1 : g.couplings)
        for (double c2 : g.couplings) points.push_back({z1, z2, c1, c2});

  std::vector<std::vector<Row>> per_point(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Point& pt = points[i];
    const ModelParams<double> params{cfg.params.c0, pt.c1, pt.c2, cfg.params.hbar};
    auto emit = [&](Picture picture, const PictureLabels& labels, bool hyperspherical_labels) {
      const auto rep = spectrum_identity_check(picture, labels, params);
      Row row;
      row.labels = {{"picture", to_string(picture)}};
      if (hyperspherical_labels) {
        row.labels.insert(row.labels.end(), {{"n", double(labels.n)}, {"lambda", double(labels.lambda)}});
      } else {
        row.labels.insert(row.labels.end(), {{"n1", double(labels.n1)}, {"n2", double(labels.n2)}});
      }
      row.labels.insert(row.labels.end(), {{"z1", pt.z1}, {"z2", pt.z2}, {"c1", pt.c1}, {"c2", pt.c2}});
      row.value = rep.picture_energy;
      row.oracle = rep.algebraic_energy;
      row.tolerance = kIdentityTol;
      row.oracle_id = "algebraic spectrum at the identified p";
      row.extra = {{"p", rep.p}};
      per_point[i].push_back(row);
    };
    for (Picture picture : {Picture::kHyperspherical, Picture::kEuler}) {
      for (int n = 0; n <= g.max_label; ++n) {
        for (int lambda : admissible_lambdas(pt.z1, pt.z2, g.max_label)) {
          emit(picture, {n, lambda, 0, 0, pt.z1, pt.z2}, true);
        }
      }
    }
    for (Picture picture : {Picture::kParabolic, Picture::kCylindrical}) {
      for (int n1 = 0; n1 <= g.max_label; ++n1) {
        for (int n2 = 0; n2 <= g.max_label; ++n2) emit(picture, {0, 0, n1, n2, pt.z1, pt.z2}, false);
      }
    }
  });
  for (auto& rows : per_point) r.rows.insert(r.rows.end(), rows.begin(), rows.end());
  r.checks.push_back(worst_row_check("picture spectra vs algebraic spectrum", r.rows, kIdentityTol,
                                     "algebraic spectrum at the identified p"));

  double worst_trip = 0;
  for (double c0 : {0.25, 1.0, 3.0}) {
    for (double E : {-1.0 / 8, -1.0 / 18, -0.7}) {
      for (double c : g.couplings) {
        const KeplerPoint k{c0, E, c, 2 * c};
        const KeplerPoint back = kepler_from_oscillator(oscillator_from_kepler(k));
        for (auto [a, b] : {std::pair{back.c0, k.c0}, {back.E, k.E}, {back.c1, k.c1}, {back.c2, k.c2}}) {
          worst_trip = std::max(worst_trip, b == 0 ? std::abs(a) : std::abs(a - b) / std::abs(b));
        }
      }
    }
  }
  r.checks.push_back({"duality round trip", worst_trip, kRoundTripTol, worst_trip <= kRoundTripTol,
                      "identity map"});

  const auto matches = delta_matching(g.z, {0, 1, 2}, {0, 0.5, 1}, g.couplings, cfg.params.hbar);
  const auto matched = std::count_if(matches.begin(), matches.end(), [](const DeltaMatch& m) { return m.matched; });
  const auto admissible =
      std::count_if(matches.begin(), matches.end(), [](const DeltaMatch& m) { return m.admissible; });
  r.settings.push_back({"delta_m_tuples", std::to_string(matched) + " matched of " + std::to_string(admissible) +
                                              " admissible (" + std::to_string(matches.size()) + " enumerated)"});
  return r;
}

Report verify_residuals_cmd(const RunConfig& cfg) {
  Report r = envelope(cfg);
  r.settings = {{"grid", cfg.grid}, {"points", std::to_string(ResidualGrid{}.points)}};
  const Grid g = duality_grid(cfg.grid);
  const double hbar = cfg.params.hbar;
  const double c0 = cfg.params.c0;

  std::vector<std::function<Row()>> jobs;
  auto label = [](Row& row, std::initializer_list<std::pair<std::string, LabelValue>> l) {
    row.labels.insert(row.labels.end(), l.begin(), l.end());
  };
  for (double z1 : g.z) {
    for (double z2 : g.z) {
      for (double c : g.couplings) {
        for (int lambda : admissible_lambdas(z1, z2, g.max_label + 1)) {
          for (auto picture : {AngularPicture::kKeplerHyperspherical, AngularPicture::kOscillatorEuler}) {
            jobs.push_back([=] {
              AngularQuery q{picture, lambda, z1, z2, c, 2 * c, hbar, ClosedFormConvention::kCorrected};
              Row row;
              label(row, {{"equation", picture == AngularPicture::kKeplerHyperspherical ? "kepler-angular"
                                                                                          : "osc-angular"},
                          {"n", double(lambda)}, {"z1", z1}, {"z2", z2}, {"c1", c}, {"c2", 2 * c}});
              row.value = angular_residual(q);
              return row;
            });
          }
        }
        for (int n = 0; n <= g.max_label; ++n) {
          jobs.push_back([=] {
            const ModelParams<double> P{c0, c, 2 * c, hbar};
            RadialQuery q;
            q.picture = RadialPicture::kKepler;
            q.n = n;
            q.separation = kepler_angular_level(0, z1, z2, P);
            q.c0 = c0;
            q.hbar = hbar;
            Row row;
            label(row, {{"equation", "kepler-radial"}, {"n", double(n)}, {"z1", z1}, {"z2", z2}, {"c1", c},
                        {"c2", 2 * c}});
            row.value = radial_residual(q);
            return row;
          });
          jobs.push_back([=] {
            RadialQuery q;
            q.picture = RadialPicture::kOscillator8D;
            q.n = n;
            q.separation = oscillator_angular_level(0, z1, z2, c, 2 * c, hbar);
            q.hbar = hbar;
            q.omega = cfg.omega;
            Row row;
            label(row, {{"equation", "osc-radial"}, {"n", double(n)}, {"z1", z1}, {"z2", z2}, {"c1", c},
                        {"c2", 2 * c}});
            row.value = radial_residual(q);
            return row;
          });
          for (auto picture : {RadialPicture::kParabolicMu, RadialPicture::kParabolicNu}) {
            jobs.push_back([=] {
              RadialQuery q;
              q.picture = picture;
              q.n = n;
              q.n2 = g.max_label - n;
              q.z1 = z1;
              q.z2 = z2;
              q.coupling1 = c;
              q.coupling2 = 2 * c;
              q.c0 = c0;
              q.hbar = hbar;
              Row row;
              label(row, {{"equation", picture == RadialPicture::kParabolicMu ? "parabolic-mu" : "parabolic-nu"},
                          {"n", double(n)}, {"z1", z1}, {"z2", z2}, {"c1", c}, {"c2", 2 * c}});
              row.value = radial_residual(q);
              return row;
            });
          }
        }
      }
    }
    for (double c : g.couplings) {
      for (int n = 0; n <= g.max_label; ++n) {
        jobs.push_back([=] {
          RadialQuery q;
          q.picture = RadialPicture::kCylindrical;
          q.n = n;
          q.z1 = z1;
          q.coupling1 = 2 * c;
          q.hbar = hbar;
          q.omega = cfg.omega;
          Row row;
          label(row, {{"equation", "cylindrical"}, {"n", double(n)}, {"z1", z1}, {"c1", 2 * c}});
          row.value = radial_residual(q);
          return row;
        });
      }
    }
  }
  for (int n = 0; n <= g.max_label; ++n) {
    for (double b : {0.5, 1.0, 2.5}) {
      jobs.push_back([=] {
        Row row;
        label(row, {{"equation", "kummer"}, {"n", double(n)}, {"b", b}});
        row.value = kummer_ode_residual(n, b, 4.0 * (n + b) + 10);
        return row;
      });
    }
  }
  r.rows.resize(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    r.rows[i] = jobs[i]();
    r.rows[i].tolerance = kResidualTol;
    r.rows[i].oracle_id = "closed-form solution";
  });
  r.checks.push_back(worst_row_check("closed-form solutions satisfy their ODEs", r.rows, kResidualTol,
                                     "closed-form solution"));
  return r;
}

}  // namespace

Report cmd_spectrum(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.target == "kepler5d") return spectrum_kepler(cfg);
  return spectrum_oscillator(cfg);
}

Report cmd_verify(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.target == "algebra") return verify_algebra_cmd(cfg);
  if (cfg.target == "ode") return verify_ode_cmd(cfg);
  if (cfg.target == "duality") return verify_duality_cmd(cfg);
  return verify_residuals_cmd(cfg);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    auto parsed = parse_command_line(args, out);
    if (!parsed) return kSuccess;
    cfg = *parsed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kInvalidInput;
  }

  Report report;
  try {
    report = cfg.command == "spectrum" ? cmd_spectrum(cfg) : cmd_verify(cfg);
  } catch (const ConvergenceFailure& e) {
    err << "convergence failure: " << e.what() << '\n';
    return kConvergenceFailure;
  } catch (const NoIntersection& e) {
    err << "convergence failure: " << e.what() << '\n';
    return kConvergenceFailure;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariantViolation;
  }

  const std::string text = render(report, cfg.format);
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output);
    if (!(file << text)) {
      err << "cannot write " << cfg.output << '\n';
      return kInvalidInput;
    }
  }
  if (!report.all_passed()) {
    for (const auto& c : report.checks) {
      if (!c.passed) err << "check failed: " << c.name << " (" << c.measured << " > " << c.tolerance << ")\n";
    }
    return kInvariantViolation;
  }
  return kSuccess;
}

}  // namespace monopole::cli
