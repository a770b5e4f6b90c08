#pragma once

// Closed-form layer of the quadratic-algebra construction: auxiliary
// exponents, the structure function in its expanded and factored forms,
// the finite-dimensional unirrep constraints, and the analytic spectra.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "monopole/errors.hpp"
#include "monopole/model.hpp"

namespace monopole {

template <typename Scalar = double>
struct AuxExponents {
  Scalar m1 = 0;
  Scalar m2 = 0;
};

template <typename Scalar = double>
struct UnirrepSolution {
  int p = 0;  ///< the representation has dimension p + 1
  Scalar u = 0;
  Scalar E = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> phi_interior;  ///< Phi_raw(x), x = 1..p

  int dim() const { return p + 1; }
};

/// Which root of the structure function is placed at x = 0.
enum class RootPairing {
  kPhysical,  ///< u = (1 + m1 + m2) / 2
  kPlusMinus,  ///< u = (1 + m1 - m2) / 2
  kMinusPlus,  ///< u = (1 - m1 + m2) / 2
  kMinusMinus,  ///< u = (1 - m1 - m2) / 2
};

/// Radicands of m1 and m2, in that order.
template <typename Scalar>
std::array<Scalar, 2> aux_radicands(const ModelParams<Scalar>& params,
                                    const QuantumNumbers<Scalar>& qn) {
  const Scalar l2 = params.casimir_so4(qn.l4);
  const Scalar t2 = params.casimir_su2(qn.T);
  return {1 + 2 * params.c1 + l2 + 2 * t2, 1 + 2 * params.c2 + l2 - 2 * t2};
}

template <typename Scalar>
AuxExponents<Scalar> aux_exponents(const ModelParams<Scalar>& params,
                                   const QuantumNumbers<Scalar>& qn) {
  using std::sqrt;
  const auto [r1, r2] = aux_radicands(params, qn);
  if (r1 < 0 || r2 < 0) {
    std::ostringstream os;
    os << "negative radicand: m1^2 = " << r1 << ", m2^2 = " << r2 << " (l4 = " << qn.l4
       << ", T = " << qn.T << ")";
    throw NegativeRadicand(os.str());
  }
  return {sqrt(r1), sqrt(r2)};
}

/// Scalar that replaces the Hamiltonian in the algebra relations. The algebra
/// is written with hbar = 1, so the energy enters as hbar^2 E.
template <typename Scalar>
Scalar algebra_energy(Scalar E, const ModelParams<Scalar>& params) {
  return params.hbar * params.hbar * E;
}

/// Structure function in its expanded degree-6 form, with H, L^2 and T^2
/// replaced by their eigenvalues on the Fock states.
template <typename Scalar>
Scalar structure_function_raw(Scalar x, Scalar u, Scalar E, const ModelParams<Scalar>& params,
                              const QuantumNumbers<Scalar>& qn) {
  const Scalar H = algebra_energy(E, params);
  const Scalar L2 = params.casimir_so4(qn.l4);
  const Scalar T2 = params.casimir_su2(qn.T);
  const Scalar c0 = params.c0, c1 = params.c1, c2 = params.c2;
  const Scalar y = x + u;
  const Scalar s = (1 - 2 * y) * (1 - 2 * y);
  const Scalar first = 2 * c0 * c0 + H * s;
  const Scalar second = 4 * c1 * c1 + 4 * c2 * c2 + s * (4 * y * (y - 1) - 4 * L2 - 3) -
                        4 * c1 * (2 * c2 + s - 4 * T2) + 16 * T2 * T2 - 4 * c2 * (s + 4 * T2);
  return Scalar(98304) * first * second;
}

/// The six roots, in x + u, of the factored structure function.
template <typename Scalar>
std::array<Scalar, 6> structure_function_roots(Scalar E, const AuxExponents<Scalar>& m,
                                               const ModelParams<Scalar>& params) {
  using std::sqrt;
  if (!(E < 0)) throw NonNegativeEnergy("the factored structure function needs E < 0");
  const Scalar w = params.c0 / (params.hbar * sqrt(-2 * E));
  const Scalar half = Scalar(1) / 2;
  return {half - w,
          half + w,
          half * (1 + m.m1 + m.m2),
          half * (1 + m.m1 - m.m2),
          half * (1 - m.m1 + m.m2),
          half * (1 - m.m1 - m.m2)};
}

/// Monic product of the six linear factors (x + u - root).
template <typename Scalar>
Scalar structure_function_factored(Scalar x, Scalar u, Scalar E, const AuxExponents<Scalar>& m,
                                   const ModelParams<Scalar>& params) {
  Scalar product = 1;
  for (const Scalar root : structure_function_roots(E, m, params)) product *= x + u - root;
  return product;
}

/// raw = factored * this, from the leading coefficients 98304 * 4H * 16.
template <typename Scalar>
Scalar raw_to_factored_scale(Scalar E, const ModelParams<Scalar>& params) {
  return Scalar(6291456) * algebra_energy(E, params);
}

template <typename Scalar>
Scalar energy_level(int p, const AuxExponents<Scalar>& m, const ModelParams<Scalar>& params) {
  if (p < 0) throw InvalidParameter("p must be non-negative");
  const Scalar d = Scalar(p) + 1 + (m.m1 + m.m2) / 2;
  return -params.c0 * params.c0 / (2 * params.hbar * params.hbar * d * d);
}

/// |Phi_raw| scale used for the boundary and positivity tolerances.
template <typename Scalar>
Scalar structure_function_scale(const UnirrepSolution<Scalar>& sol,
                                const ModelParams<Scalar>& params,
                                const QuantumNumbers<Scalar>& qn) {
  using std::abs;
  Scalar scale = abs(structure_function_raw(Scalar(sol.p + 1) / 2, sol.u, sol.E, params, qn));
  if (sol.phi_interior.size() > 0) scale = std::max(scale, sol.phi_interior.cwiseAbs().maxCoeff());
  return scale;
}

/// max(|Phi(0)|, |Phi(p+1)|) relative to the interior scale.
template <typename Scalar>
Scalar boundary_residual(const UnirrepSolution<Scalar>& sol, const ModelParams<Scalar>& params,
                         const QuantumNumbers<Scalar>& qn) {
  using std::abs;
  const Scalar at0 = abs(structure_function_raw(Scalar(0), sol.u, sol.E, params, qn));
  const Scalar top = abs(structure_function_raw(Scalar(sol.p + 1), sol.u, sol.E, params, qn));
  return std::max(at0, top) / structure_function_scale(sol, params, qn);
}

/// Solves Phi(0) = Phi(p+1) = 0 with Phi > 0 in between for (u, E).
/// The physical pairing places (1+m1+m2)/2 at x = 0 and 1/2 + c0/(hbar sqrt(-2E))
/// at x = p+1; the other pairings exist for exhaustive searches and are
/// rejected when they fail positivity.
template <typename Scalar>
UnirrepSolution<Scalar> solve_unirrep(int p, const ModelParams<Scalar>& params,
                                      const QuantumNumbers<Scalar>& qn,
                                      RootPairing pairing = RootPairing::kPhysical) {
  params.validate();
  qn.validate();
  if (p < 0) throw InvalidParameter("p must be non-negative");
  const AuxExponents<Scalar> m = aux_exponents(params, qn);

  UnirrepSolution<Scalar> sol;
  sol.p = p;
  switch (pairing) {
    case RootPairing::kPhysical: sol.u = (1 + m.m1 + m.m2) / 2; break;
    case RootPairing::kPlusMinus: sol.u = (1 + m.m1 - m.m2) / 2; break;
    case RootPairing::kMinusPlus: sol.u = (1 - m.m1 + m.m2) / 2; break;
    case RootPairing::kMinusMinus: sol.u = (1 - m.m1 - m.m2) / 2; break;
  }
  // p + 1 + u = 1/2 + c0 / (hbar sqrt(-2E))
  const Scalar w = Scalar(p) + sol.u + Scalar(1) / 2;
  if (!(w > 0)) {
    throw PositivityViolation("root pairing leaves no negative-energy solution");
  }
  sol.E = -params.c0 * params.c0 / (2 * params.hbar * params.hbar * w * w);

  sol.phi_interior.resize(p);
  for (int x = 1; x <= p; ++x) {
    sol.phi_interior(x - 1) = structure_function_raw(Scalar(x), sol.u, sol.E, params, qn);
  }
  const Scalar margin = Scalar(1e-12) * structure_function_scale(sol, params, qn);
  for (int x = 1; x <= p; ++x) {
    if (!(sol.phi_interior(x - 1) > margin)) {
      std::ostringstream os;
      os << "Phi(" << x << ") = " << sol.phi_interior(x - 1) << " is not positive for p = " << p;
      throw PositivityViolation(os.str());
    }
  }
  return sol;
}

template <typename Scalar = double>
struct So6Casimirs {
  Scalar K1 = 0;
  Scalar K2 = 0;
  Scalar K3 = 0;
};

template <typename Scalar>
So6Casimirs<Scalar> so6_casimir_eigenvalues(const So6Labels<Scalar>& mu) {
  require_half_integer(mu.mu1, "mu1");
  require_half_integer(mu.mu2, "mu2");
  require_half_integer(mu.mu3, "mu3");
  if (!(mu.mu1 >= mu.mu2 && mu.mu2 >= mu.mu3)) {
    throw OrderingViolation("so(6) labels must satisfy mu1 >= mu2 >= mu3");
  }
  const Scalar a = mu.mu1 * (mu.mu1 + 4);
  const Scalar b = mu.mu2 * (mu.mu2 + 2);
  const Scalar c = mu.mu3 * mu.mu3;
  return {a + b + c, 48 * (mu.mu1 + 2) * (mu.mu2 + 1) * mu.mu3, a * a + 6 * a + b * b + c * c - 2 * c};
}

/// Undeformed Yang-Coulomb monopole levels. Note the first power of c0, kept
/// as in the source formula even though the deformed spectrum carries c0^2.
template <typename Scalar>
Scalar ycm_energy(int n, const ModelParams<Scalar>& params) {
  if (n < 0) throw InvalidParameter("n must be non-negative");
  const Scalar d = Scalar(n) / 2 + 2;
  return -params.c0 / (2 * params.hbar * params.hbar * d * d);
}

/// Number of hyperspherical fillings (n >= 0, integer lambda >= J + L) with
/// n + lambda + 1 = p.
template <typename Scalar>
std::int64_t degeneracy_count(int p, Scalar J, Scalar L) {
  using std::ceil;
  if (p < 1) throw InvalidParameter("degeneracy_count needs p >= 1");
  require_half_integer(J, "J");
  require_half_integer(L, "L");
  const auto lambda_min = static_cast<std::int64_t>(ceil(J + L - Scalar(1e-12)));
  return std::max<std::int64_t>(0, p - lambda_min);
}

}  // namespace monopole
