#pragma once

// Finite-difference eigenvalue solvers for the separated ODEs. Every problem
// is first brought to the Liouville form -chi'' + V(x) chi = lambda chi on
// (x_min, x_max) with Dirichlet ends, discretized with the three-point
// stencil on a uniform mesh, and the eigenvalues mapped back to the physical
// quantity (E, Lambda, Gamma, eps) by an affine map.

#include <string>
#include <vector>

#include "monopole/model.hpp"
#include "monopole/special_functions.hpp"
#include "monopole/tridiagonal.hpp"

namespace monopole {

/// V(x) as a sum of the power terms and the angular terms used below.
struct PotentialTerms {
  double inv_x = 0;
  double inv_x2 = 0;
  double x = 0;
  double x2 = 0;
  double constant = 0;
  double inv_sin2 = 0;       ///< 1 / sin^2 x
  double inv_sin2_half = 0;  ///< 1 / sin^2(x/2)
  double inv_cos2_half = 0;  ///< 1 / cos^2(x/2)

  double operator()(double t) const;
};

/// physical = scale * lambda + shift
struct EigenvalueMap {
  double scale = 1;
  double shift = 0;

  double operator()(double lambda) const { return scale * lambda + shift; }
  double inverse(double value) const { return (value - shift) / scale; }
};

struct Transform {
  std::string substitution;
  EigenvalueMap map;
};

struct SturmLiouvilleProblem {
  PotentialTerms potential;
  double x_min = 0;
  double x_max = 1;
  Transform transform;
  int mesh_size = 2000;  ///< intervals on the coarse mesh; Richardson adds 2 * mesh_size

  void validate() const;
  SymTridiagonal discretize(int intervals) const;
};

struct SolverOptions {
  bool richardson = true;
  /// |fine - richardson| relative to max(|richardson|, |top level|), per level
  double tolerance = 1e-3;
  bool throw_on_failure = true;
};

struct EigenResult {
  std::vector<double> eigenvalues;  ///< on the finest mesh, ascending
  int mesh_size = 0;                ///< coarse intervals
  std::vector<double> richardson_estimate;
  std::vector<bool> converged;
  double tolerance = 0;
};

EigenResult solve(const SturmLiouvilleProblem& problem, int levels, const SolverOptions& options = {});

/// log2 of successive error ratios over meshes (N, 2N, 4N), per level.
std::vector<double> convergence_order(const SturmLiouvilleProblem& problem, int levels);

/// Number of eigenvalues below a physical threshold on the given mesh.
int count_below(const SturmLiouvilleProblem& problem, double threshold, int intervals);

// Problem builders. `levels` sizes the truncated domain so the highest level
// requested has decayed below 1e-14 of its peak.

SturmLiouvilleProblem kepler_radial_problem(double Lambda, const ModelParams<double>& params, int levels,
                                            int mesh);
SturmLiouvilleProblem kepler_angular_problem(double J, double L, const ModelParams<double>& params,
                                             int mesh);
SturmLiouvilleProblem oscillator_radial_problem(double Gamma, double omega, double hbar, int levels,
                                                int mesh);
SturmLiouvilleProblem oscillator_angular_problem(double T, double K, double lambda1, double lambda2,
                                                 double hbar, int mesh);
SturmLiouvilleProblem cylindrical_problem(double z, double lambda, double omega, double hbar, int levels,
                                          int mesh);
/// One factor of the parabolic pair at fixed kappa; eigenvalue is the
/// constant sigma = c0/(2 hbar^2) +- hbar Lt/2 of that factor.
SturmLiouvilleProblem parabolic_problem(double z, double coupling, double kappa, double hbar, int levels,
                                        int mesh);

EigenResult kepler_radial_spectrum(double Lambda, const ModelParams<double>& params, int levels,
                                   int mesh = 2000, const SolverOptions& options = {});
EigenResult kepler_angular_spectrum(double J, double L, const ModelParams<double>& params, int levels,
                                    int mesh = 2000, const SolverOptions& options = {});
EigenResult oscillator_radial_spectrum(double Gamma, double omega, double hbar, int levels, int mesh = 2000,
                                       const SolverOptions& options = {});
EigenResult oscillator_angular_spectrum(double T, double K, double lambda1, double lambda2, double hbar,
                                        int levels, int mesh = 2000, const SolverOptions& options = {});
EigenResult cylindrical_spectrum(double z, double lambda, double omega, double hbar, int levels,
                                 int mesh = 2000, const SolverOptions& options = {});

struct ParabolicLevel {
  int n1 = 0;
  int n2 = 0;
  double kappa = 0;
  double separation = 0;  ///< Lt
  double E = 0;
};

struct KappaScan {
  double lo = 1e-3;  ///< in units of c0 / hbar^2
  double hi = 1e3;
  int steps = 60;    ///< log-spaced scan points
};

/// Quantizes the parabolic pair for every (n1, n2) with n1 + n2 <= max_total:
/// scans kappa for a sign change of sigma1(kappa) + sigma2(kappa) - c0/hbar^2,
/// bisects it, and labels each level by the node counts of the two factors.
/// Rows are sorted by (n1 + n2, n1).
std::vector<ParabolicLevel> parabolic_quantization(double J, double L, const ModelParams<double>& params,
                                                   int max_total, const KappaScan& scan = {},
                                                   int mesh = 2000, const SolverOptions& options = {});

// Closed-form levels of the same problems.

double kepler_radial_level(int n, double Lambda, const ModelParams<double>& params);
double kepler_angular_level(int k, double J, double L, const ModelParams<double>& params);
double oscillator_radial_level(int n, double Gamma, double omega, double hbar);
double oscillator_angular_level(int k, double T, double K, double lambda1, double lambda2, double hbar);
double cylindrical_level(int n, double z, double lambda, double omega, double hbar);
ParabolicLevel parabolic_level(int n1, int n2, double J, double L, const ModelParams<double>& params);

/// |value - oracle| / |oracle|, or the absolute difference when the oracle is 0.
double relative_error(double value, double oracle);

}  // namespace monopole
