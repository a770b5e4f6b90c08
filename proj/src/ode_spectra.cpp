#include "monopole/ode_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "monopole/errors.hpp"

namespace monopole {
namespace {

const double kLog1e14 = std::log(1e14);

void require_levels(int levels) {
  if (levels < 1) throw InvalidParameter("at least one level must be requested");
}

void require_mesh(int mesh) {
  if (mesh < 3) throw InvalidParameter("mesh must have at least 3 intervals");
}

// Largest r > nu^2 with r^nu e^{-r/nu} at 1e-14 of its peak (hydrogenic envelope, a0 = 1).
double coulomb_cutoff(double nu) {
  const double target = nu * std::log(nu * nu) - nu - kLog1e14;
  auto f = [&](double r) { return nu * std::log(r) - r / nu - target; };
  double lo = nu * nu;
  double hi = 2 * lo + 10;
  while (f(hi) > 0) hi *= 2;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return hi;
}

// Gaussian-envelope cutoff for -chi'' + w^2 t^2 chi = ..., in units of 1/sqrt(w):
// turning point of level nu (sqrt(2 * nu) for lambda = 2 w nu) plus the 1e-14 decay length.
double oscillator_cutoff(double nu) { return std::sqrt(2 * nu) + std::sqrt(2 * kLog1e14) + 2; }

double index_eigenvalue(const SturmLiouvilleProblem& p, int index, int intervals, double rel_tol = 0) {
  return p.transform.map(eigenvalue_bisection(p.discretize(intervals), index, rel_tol));
}

}  // namespace

double PotentialTerms::operator()(double t) const {
  double v = constant + inv_x / t + inv_x2 / (t * t) + x * t + x2 * t * t;
  if (inv_sin2 != 0) {
    const double s = std::sin(t);
    v += inv_sin2 / (s * s);
  }
  if (inv_sin2_half != 0) {
    const double s = std::sin(t / 2);
    v += inv_sin2_half / (s * s);
  }
  if (inv_cos2_half != 0) {
    const double c = std::cos(t / 2);
    v += inv_cos2_half / (c * c);
  }
  return v;
}

void SturmLiouvilleProblem::validate() const {
  if (!(x_min > 0)) throw InvalidParameter("x_min must be positive");
  if (!(x_max > x_min)) throw InvalidParameter("empty domain");
  if (mesh_size < 3) throw InvalidParameter("mesh_size must be at least 3");
  if (transform.map.scale == 0) throw InvalidParameter("degenerate eigenvalue map");
}

SymTridiagonal SturmLiouvilleProblem::discretize(int intervals) const {
  require_mesh(intervals);
  const double h = (x_max - x_min) / intervals;
  const int n = intervals - 1;
  SymTridiagonal t;
  t.diag.resize(n);
  t.off = Eigen::VectorXd::Constant(n - 1, -1 / (h * h));
  for (int i = 0; i < n; ++i) t.diag(i) = 2 / (h * h) + potential(x_min + h * (i + 1));
  return t;
}

EigenResult solve(const SturmLiouvilleProblem& problem, int levels, const SolverOptions& options) {
  problem.validate();
  require_levels(levels);
  EigenResult out;
  out.mesh_size = problem.mesh_size;
  out.tolerance = options.tolerance;
  const auto coarse = lowest_eigenvalues_bisection(problem.discretize(problem.mesh_size), levels);
  if (!options.richardson) {
    for (int i = 0; i < levels; ++i) {
      const double v = problem.transform.map(coarse(i));
      out.eigenvalues.push_back(v);
      out.richardson_estimate.push_back(v);
      out.converged.push_back(true);
    }
    return out;
  }
  const auto fine = lowest_eigenvalues_bisection(problem.discretize(2 * problem.mesh_size), levels);
  bool all = true;
  // a zero level (Lambda_0 = 0) is judged against the magnitude of the top level
  const auto& map = problem.transform.map;
  const double floor = std::abs((4 * map(fine(levels - 1)) - map(coarse(levels - 1))) / 3);
  for (int i = 0; i < levels; ++i) {
    const double f = map(fine(i));
    const double c = map(coarse(i));
    const double r = (4 * f - c) / 3;
    out.eigenvalues.push_back(f);
    out.richardson_estimate.push_back(r);
    const bool ok = std::abs(f - r) <= options.tolerance * std::max(std::abs(r), floor);
    out.converged.push_back(ok);
    all = all && ok;
  }
  if (!all && options.throw_on_failure) {
    std::ostringstream os;
    os << "Richardson estimate differs from the fine-mesh value by more than " << options.tolerance
       << " (" << problem.transform.substitution << ")";
    throw ConvergenceFailure(os.str());
  }
  return out;
}

std::vector<double> convergence_order(const SturmLiouvilleProblem& problem, int levels) {
  problem.validate();
  const int n = problem.mesh_size;
  const auto a = lowest_eigenvalues_bisection(problem.discretize(n), levels);
  const auto b = lowest_eigenvalues_bisection(problem.discretize(2 * n), levels);
  const auto c = lowest_eigenvalues_bisection(problem.discretize(4 * n), levels);
  std::vector<double> order;
  for (int i = 0; i < levels; ++i) order.push_back(std::log2(std::abs((a(i) - b(i)) / (b(i) - c(i)))));
  return order;
}

int count_below(const SturmLiouvilleProblem& problem, double threshold, int intervals) {
  problem.validate();
  const auto& map = problem.transform.map;
  if (map.scale > 0) return sturm_count(problem.discretize(intervals), map.inverse(threshold));
  const auto t = problem.discretize(intervals);
  return static_cast<int>(t.size()) - sturm_count(t, map.inverse(threshold));
}

SturmLiouvilleProblem kepler_radial_problem(double Lambda, const ModelParams<double>& params, int levels,
                                            int mesh) {
  params.validate();
  require_levels(levels);
  const double hb2 = params.hbar * params.hbar;
  const double a0 = hb2 / params.c0;
  const double nu = (levels - 1) + separation_exponent(Lambda) + 2;
  SturmLiouvilleProblem p;
  p.potential.inv_x2 = Lambda + 2;
  p.potential.inv_x = -2 * params.c0 / hb2;
  p.x_max = a0 * coulomb_cutoff(nu);
  p.x_min = 1e-6 * a0;
  p.transform = {"R = chi / r^2, eigenvalue 2E/hbar^2", {hb2 / 2, 0}};
  p.mesh_size = mesh;
  return p;
}

namespace {

SturmLiouvilleProblem angular_problem(double A, double B, int mesh) {
  // F = chi / sin^{3/2}(theta)
  SturmLiouvilleProblem p;
  p.potential.inv_sin2 = 0.75;
  p.potential.inv_sin2_half = A;
  p.potential.inv_cos2_half = B;
  p.potential.constant = -2.25;
  p.x_min = 1e-6 * std::numbers::pi;
  p.x_max = std::numbers::pi - p.x_min;
  p.mesh_size = mesh;
  return p;
}

}  // namespace

SturmLiouvilleProblem kepler_angular_problem(double J, double L, const ModelParams<double>& params, int mesh) {
  params.validate();
  require_half_integer(J, "J");
  require_half_integer(L, "L");
  const double hb2 = params.hbar * params.hbar;
  auto p = angular_problem(L * (L + 1) + params.c2 / hb2, J * (J + 1) + params.c1 / hb2, mesh);
  p.transform = {"F = chi / sin^{3/2}(theta), eigenvalue Lambda", {1, 0}};
  return p;
}

SturmLiouvilleProblem oscillator_radial_problem(double Gamma, double omega, double hbar, int levels, int mesh) {
  if (!(omega > 0) || !(hbar > 0)) throw InvalidParameter("omega and hbar must be strictly positive");
  require_levels(levels);
  const double kappa = omega / hbar;
  const double nu = (levels - 1) + separation_exponent(Gamma / 4) + 2;
  SturmLiouvilleProblem p;
  p.potential.inv_x2 = Gamma + 35.0 / 4;
  p.potential.x2 = kappa * kappa;
  // lambda = 2 eps / hbar^2 = 2 kappa (2 nu): level nu sits at oscillator index 2 nu
  p.x_max = oscillator_cutoff(2 * nu) / std::sqrt(kappa);
  p.x_min = 1e-6 / std::sqrt(kappa);
  p.transform = {"R = chi / u^{7/2}, eigenvalue 2 eps/hbar^2", {hbar * hbar / 2, 0}};
  p.mesh_size = mesh;
  return p;
}

SturmLiouvilleProblem oscillator_angular_problem(double T, double K, double lambda1, double lambda2,
                                                 double hbar, int mesh) {
  require_half_integer(T, "T");
  require_half_integer(K, "K");
  if (lambda1 < 0 || lambda2 < 0) throw InvalidParameter("couplings must be non-negative");
  if (!(hbar > 0)) throw InvalidParameter("hbar must be strictly positive");
  const double hb2 = hbar * hbar;
  auto p = angular_problem(K * (K + 1) + lambda2 / (2 * hb2), T * (T + 1) + lambda1 / (2 * hb2), mesh);
  p.transform = {"F = chi / sin^{3/2}(theta), eigenvalue Gamma / 4", {4, 0}};
  return p;
}

namespace {

// -chi'' + [(4A + 3/4)/t^2 + w^2 t^2] chi = sigma chi with x = t^2/4
SturmLiouvilleProblem quarter_oscillator(double A, double w, double tau, int levels, int mesh) {
  SturmLiouvilleProblem p;
  p.potential.inv_x2 = 4 * A + 0.75;
  p.potential.x2 = w * w;
  // sigma = 4 w (n + tau + 1): oscillator index 2 (n + tau + 1)
  p.x_max = oscillator_cutoff(2 * ((levels - 1) + tau + 1)) / std::sqrt(w);
  p.x_min = 1e-6 / std::sqrt(w);
  p.mesh_size = mesh;
  return p;
}

}  // namespace

SturmLiouvilleProblem cylindrical_problem(double z, double lambda, double omega, double hbar, int levels,
                                          int mesh) {
  require_half_integer(z, "z");
  if (lambda < 0) throw InvalidParameter("couplings must be non-negative");
  if (!(omega > 0) || !(hbar > 0)) throw InvalidParameter("omega and hbar must be strictly positive");
  require_levels(levels);
  const double delta = delta_exponent(DeltaVariant::kOscillator, lambda, z, hbar);
  auto p = quarter_oscillator(z * (z + 1) + lambda / (2 * hbar * hbar), 0.25, (delta + z) / 2, levels, mesh);
  p.transform = {"x = t^2/4, f = chi / t^{3/2}, eigenvalue eps/(2 hbar omega)", {2 * hbar * omega, 0}};
  return p;
}

SturmLiouvilleProblem parabolic_problem(double z, double coupling, double kappa, double hbar, int levels,
                                        int mesh) {
  require_half_integer(z, "z");
  if (!(kappa > 0)) throw InvalidParameter("kappa must be strictly positive");
  require_levels(levels);
  const double delta = delta_exponent(DeltaVariant::kKepler, coupling, z, hbar);
  auto p = quarter_oscillator(z * (z + 1) + coupling / (hbar * hbar), kappa / 4, (delta + z) / 2, levels, mesh);
  p.transform = {"mu = t^2/4, f = chi / t^{3/2}, eigenvalue c0/(2 hbar^2) +- hbar Lt/2", {1, 0}};
  return p;
}

EigenResult kepler_radial_spectrum(double Lambda, const ModelParams<double>& params, int levels, int mesh,
                                   const SolverOptions& options) {
  return solve(kepler_radial_problem(Lambda, params, levels, mesh), levels, options);
}

EigenResult kepler_angular_spectrum(double J, double L, const ModelParams<double>& params, int levels,
                                    int mesh, const SolverOptions& options) {
  return solve(kepler_angular_problem(J, L, params, mesh), levels, options);
}

EigenResult oscillator_radial_spectrum(double Gamma, double omega, double hbar, int levels, int mesh,
                                       const SolverOptions& options) {
  return solve(oscillator_radial_problem(Gamma, omega, hbar, levels, mesh), levels, options);
}

EigenResult oscillator_angular_spectrum(double T, double K, double lambda1, double lambda2, double hbar,
                                        int levels, int mesh, const SolverOptions& options) {
  return solve(oscillator_angular_problem(T, K, lambda1, lambda2, hbar, mesh), levels, options);
}

EigenResult cylindrical_spectrum(double z, double lambda, double omega, double hbar, int levels, int mesh,
                                 const SolverOptions& options) {
  return solve(cylindrical_problem(z, lambda, omega, hbar, levels, mesh), levels, options);
}

namespace {

struct PairSolution {
  double kappa = 0;
  double sigma1 = 0;
  double sigma2 = 0;
};

// Root of sigma1_{n1}(kappa) + sigma2_{n2}(kappa) = c0/hbar^2 on one mesh. The
// scan runs on the log-spaced grid unless `bracket` (a relative half-width
// around `guess`) already encloses the root.
PairSolution quantize_pair(int n1, int n2, double J, double L, const ModelParams<double>& params,
                           const KappaScan& scan, int intervals, double guess = 0, double bracket = 0) {
  const double hb2 = params.hbar * params.hbar;
  const double target = params.c0 / hb2;
  auto sides = [&](double kappa, double rel_tol) {
    const auto mu = parabolic_problem(J, params.c1, kappa, params.hbar, n1 + 1, intervals);
    const auto nu = parabolic_problem(L, params.c2, kappa, params.hbar, n2 + 1, intervals);
    return PairSolution{kappa, index_eigenvalue(mu, n1, intervals, rel_tol),
                        index_eigenvalue(nu, n2, intervals, rel_tol)};
  };
  auto mismatch = [&](const PairSolution& s) { return s.sigma1 + s.sigma2 - target; };
  auto refine = [&](PairSolution a, PairSolution b) {
    double fa = mismatch(a);
    for (int it = 0; it < 200 && b.kappa - a.kappa > 1e-13 * b.kappa; ++it) {
      PairSolution m = sides(std::sqrt(a.kappa * b.kappa), 0);
      const double fm = mismatch(m);
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return std::abs(fa) < std::abs(mismatch(b)) ? a : b;
  };

  if (guess > 0 && bracket > 0) {
    const PairSolution a = sides(guess * (1 - bracket), 0);
    const PairSolution b = sides(guess * (1 + bracket), 0);
    if ((mismatch(a) < 0) != (mismatch(b) < 0)) return refine(a, b);
  }
  // the scan only needs the sign of the mismatch
  constexpr double kScanTol = 1e-9;
  const double ratio = std::pow(scan.hi / scan.lo, 1.0 / std::max(scan.steps - 1, 1));
  PairSolution a = sides(scan.lo * target, kScanTol);
  for (int i = 1; i < scan.steps; ++i) {
    PairSolution b = sides(a.kappa * ratio, kScanTol);
    if ((mismatch(a) < 0) != (mismatch(b) < 0)) return refine(sides(a.kappa, 0), sides(b.kappa, 0));
    a = b;
  }
  std::ostringstream os;
  os << "no parabolic quantization for (n1, n2) = (" << n1 << ", " << n2 << ") with kappa in ["
     << scan.lo * target << ", " << scan.hi * target << "]";
  throw NoIntersection(os.str());
}

int factor_nodes(double z, double coupling, const PairSolution& s, double sigma, const ModelParams<double>& params,
                 int levels, int intervals) {
  const auto p = parabolic_problem(z, coupling, s.kappa, params.hbar, levels, intervals);
  return node_count(eigenvector(p.discretize(intervals), p.transform.map.inverse(sigma)));
}

}  // namespace

std::vector<ParabolicLevel> parabolic_quantization(double J, double L, const ModelParams<double>& params,
                                                   int max_total, const KappaScan& scan, int mesh,
                                                   const SolverOptions& options) {
  params.validate();
  require_half_integer(J, "J");
  require_half_integer(L, "L");
  require_mesh(mesh);
  if (!(scan.lo > 0) || !(scan.hi > scan.lo) || scan.steps < 2) throw InvalidParameter("invalid kappa scan");
  std::vector<ParabolicLevel> out;
  for (int total = 0; total <= max_total; ++total) {
    for (int n1 = total; n1 >= 0; --n1) {
      const int n2 = total - n1;
      const PairSolution coarse = quantize_pair(n1, n2, J, L, params, scan, mesh);
      PairSolution best = coarse;
      double kappa = coarse.kappa;
      double lt_coarse = (coarse.sigma1 - coarse.sigma2) / params.hbar;
      double lt = lt_coarse;
      if (options.richardson) {
        best = quantize_pair(n1, n2, J, L, params, scan, 2 * mesh, coarse.kappa, 1e-3);
        kappa = (4 * best.kappa - coarse.kappa) / 3;
        lt = (4 * (best.sigma1 - best.sigma2) / params.hbar - lt_coarse) / 3;
        if (relative_error(best.kappa, kappa) > options.tolerance && options.throw_on_failure) {
          throw ConvergenceFailure("parabolic kappa not converged under mesh doubling");
        }
      }
      const int fine = options.richardson ? 2 * mesh : mesh;
      ParabolicLevel level;
      level.n1 = factor_nodes(J, params.c1, best, best.sigma1, params, n1 + 1, fine);
      level.n2 = factor_nodes(L, params.c2, best, best.sigma2, params, n2 + 1, fine);
      if (level.n1 != n1 || level.n2 != n2) {
        std::ostringstream os;
        os << "node count (" << level.n1 << ", " << level.n2 << ") disagrees with level index (" << n1 << ", "
           << n2 << ")";
        throw ConvergenceFailure(os.str());
      }
      level.kappa = kappa;
      level.separation = lt;
      level.E = -params.hbar * params.hbar * kappa * kappa / 2;
      out.push_back(level);
    }
  }
  std::sort(out.begin(), out.end(), [](const ParabolicLevel& a, const ParabolicLevel& b) {
    return a.n1 + a.n2 != b.n1 + b.n2 ? a.n1 + a.n2 < b.n1 + b.n2 : a.n1 < b.n1;
  });
  return out;
}

double kepler_radial_level(int n, double Lambda, const ModelParams<double>& params) {
  const double d = n + separation_exponent(Lambda) + 2;
  return -params.c0 * params.c0 / (2 * params.hbar * params.hbar * d * d);
}

double kepler_angular_level(int k, double J, double L, const ModelParams<double>& params) {
  const auto d = delta_exponents(DeltaVariant::kKepler, params.c1, params.c2, J, L, params.hbar);
  return angular_separation(k, d, J, L);
}

double oscillator_radial_level(int n, double Gamma, double omega, double hbar) {
  return 2 * hbar * omega * (n + separation_exponent(Gamma / 4) + 2);
}

double oscillator_angular_level(int k, double T, double K, double lambda1, double lambda2, double hbar) {
  const auto d = delta_exponents(DeltaVariant::kOscillator, lambda1, lambda2, T, K, hbar);
  return 4 * angular_separation(k, d, T, K);
}

double cylindrical_level(int n, double z, double lambda, double omega, double hbar) {
  const double delta = delta_exponent(DeltaVariant::kOscillator, lambda, z, hbar);
  return 2 * hbar * omega * (n + (delta + z) / 2 + 1);
}

ParabolicLevel parabolic_level(int n1, int n2, double J, double L, const ModelParams<double>& params) {
  const double hb2 = params.hbar * params.hbar;
  const auto d = delta_exponents(DeltaVariant::kKepler, params.c1, params.c2, J, L, params.hbar);
  const double t1 = (d.delta1 + J) / 2;
  const double t2 = (d.delta2 + L) / 2;
  ParabolicLevel out;
  out.n1 = n1;
  out.n2 = n2;
  out.kappa = params.c0 / (hb2 * (n1 + n2 + t1 + t2 + 2));
  out.E = -hb2 * out.kappa * out.kappa / 2;
  out.separation = 2 * (out.kappa * (n1 + t1 + 1) - params.c0 / (2 * hb2)) / params.hbar;
  return out;
}

double relative_error(double value, double oracle) {
  const double diff = std::abs(value - oracle);
  return oracle != 0 ? diff / std::abs(oracle) : diff;
}

}  // namespace monopole
