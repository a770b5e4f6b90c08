#pragma once

// Finite-dimensional matrix realization of the deformed oscillator algebra
//
//   [N, b+] = b+,  [N, b] = -b,  b b+ = Phi(N + 1),  b+ b = Phi(N)
//
// and of the generators A = (N + u)^2 - 9/4, B = diag(N) + b+ rho(N) + rho(N) b,
// C = [A, B], together with numerical checks of the quadratic relations
//
//   [A, C] = 2{A, B} + 8B - 2c0(c1 - c2) - 4c0 T^2
//   [B, C] = -2B^2 + 8HA - 4L^2 H + (16 - 4c1 - 4c2) H + 2c0^2
//
// and of the cubic Casimir.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "monopole/algebra_core.hpp"
#include "monopole/errors.hpp"
#include "monopole/model.hpp"

namespace monopole {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Eigenvalues of the central elements H, L^2 and T^2 on the representation.
/// H is stored in algebra units (hbar^2 E).
template <typename Scalar = double>
struct CentralValues {
  Scalar H = 0;
  Scalar L2 = 0;
  Scalar T2 = 0;
};

template <typename Scalar>
CentralValues<Scalar> central_values(Scalar E, const ModelParams<Scalar>& params,
                                     const QuantumNumbers<Scalar>& qn) {
  return {algebra_energy(E, params), params.casimir_so4(qn.l4), params.casimir_su2(qn.T)};
}

/// Off-diagonal weight of B.
///  - kPrinted: B_{n,n+1} = rho(n) sqrt(Phi(n+1)), rho = 1/(3 2^20 y (1+y) (1+2y^2)).
///  - kClosed:  B_{n,n+1} = sqrt(rho(n) Phi(n+1)), rho = 1/(3 2^20 y (1+y) (1+2y)^2).
/// Only the closed form satisfies [B, C] for every p.
enum class RhoForm { kPrinted, kClosed };

/// Diagonal part of B.
///  - kPrinted: (c0(c1-c2) + c0 T^2) / (y^2 - 1/4)
///  - kClosed:  (c0(c1-c2)/2 + c0 T^2) / (y^2 - 1/4), forced by the diagonal of [A, C].
enum class DiagonalForm { kPrinted, kClosed };

struct Realization {
  RhoForm rho = RhoForm::kClosed;
  DiagonalForm diagonal = DiagonalForm::kClosed;

  static constexpr Realization printed() { return {RhoForm::kPrinted, DiagonalForm::kPrinted}; }
  static constexpr Realization closed() { return {RhoForm::kClosed, DiagonalForm::kClosed}; }
};

template <typename Scalar = double>
struct DeformedOscillatorRep {
  int dim = 1;
  VectorX<Scalar> number_diag;  ///< 0, 1, ..., p
  VectorX<Scalar> ladder_sub;   ///< sqrt(Phi(n)), n = 1..p
  Scalar u = 0;
  CentralValues<Scalar> central;

  MatrixX<Scalar> number() const { return number_diag.asDiagonal(); }

  /// b |n> = sqrt(Phi(n)) |n-1>
  MatrixX<Scalar> lowering() const {
    MatrixX<Scalar> b = MatrixX<Scalar>::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) b(n - 1, n) = ladder_sub(n - 1);
    return b;
  }

  MatrixX<Scalar> raising() const { return lowering().transpose(); }
};

template <typename Scalar = double>
struct GeneratorMatrices {
  MatrixX<Scalar> A;
  MatrixX<Scalar> B;
  MatrixX<Scalar> C;
};

/// Structure constants of the two quadratic relations written as
///   [A, C] = gamma {A, B} + epsilon B + zeta
///   [B, C] = -gamma B^2 + d A + eta
template <typename Scalar = double>
struct QuadraticAlgebraConstants {
  Scalar gamma = 2;
  Scalar epsilon = 8;
  Scalar zeta = 0;
  Scalar d = 0;
  Scalar eta = 0;
};

/// Sign convention for the constant of [A, C]: c1 - c2 as printed, or c2 - c1.
enum class ConstantSign { kAsPrinted, kSwapped };

template <typename Scalar>
QuadraticAlgebraConstants<Scalar> structure_constants(
    const ModelParams<Scalar>& params, const CentralValues<Scalar>& cv,
    ConstantSign sign = ConstantSign::kAsPrinted) {
  const Scalar c0 = params.c0, c1 = params.c1, c2 = params.c2;
  const Scalar diff = sign == ConstantSign::kAsPrinted ? c1 - c2 : c2 - c1;
  QuadraticAlgebraConstants<Scalar> k;
  k.zeta = -2 * c0 * diff - 4 * c0 * cv.T2;
  k.d = 8 * cv.H;
  k.eta = -4 * cv.L2 * cv.H + (16 - 4 * c1 - 4 * c2) * cv.H + 2 * c0 * c0;
  return k;
}

template <typename Scalar>
Scalar max_abs(const MatrixX<Scalar>& m) {
  return m.size() == 0 ? Scalar(0) : m.cwiseAbs().maxCoeff();
}

template <typename Scalar>
DeformedOscillatorRep<Scalar> build_rep(const UnirrepSolution<Scalar>& sol,
                                        const QuantumNumbers<Scalar>& qn,
                                        const ModelParams<Scalar>& params) {
  using std::sqrt;
  DeformedOscillatorRep<Scalar> rep;
  rep.dim = sol.p + 1;
  rep.u = sol.u;
  rep.central = central_values(sol.E, params, qn);
  rep.number_diag = VectorX<Scalar>::LinSpaced(rep.dim, 0, Scalar(sol.p));
  rep.ladder_sub.resize(sol.p);
  for (int n = 1; n <= sol.p; ++n) {
    const Scalar phi = structure_function_raw(Scalar(n), sol.u, sol.E, params, qn);
    if (!(phi > 0)) {
      std::ostringstream os;
      os << "Phi(" << n << ") = " << phi << " <= 0; no unitary representation";
      throw PositivityViolation(os.str());
    }
    rep.ladder_sub(n - 1) = sqrt(phi);
  }
  return rep;
}

/// Diagonal part of B at y = n + u.
template <typename Scalar>
Scalar diagonal_part(Scalar y, const ModelParams<Scalar>& params, const CentralValues<Scalar>& cv,
                     DiagonalForm form) {
  const Scalar diff = params.c1 - params.c2;
  const Scalar numerator = form == DiagonalForm::kPrinted
                               ? params.c0 * diff + params.c0 * cv.T2
                               : params.c0 * diff / 2 + params.c0 * cv.T2;
  return numerator / (y * y - Scalar(1) / 4);
}

/// Factor multiplying sqrt(Phi(n+1)) in B_{n,n+1}, at y = n + u.
template <typename Scalar>
Scalar offdiagonal_weight(Scalar y, RhoForm form) {
  using std::sqrt;
  const Scalar base = Scalar(3) * Scalar(1 << 20) * y * (1 + y);
  if (form == RhoForm::kPrinted) return 1 / (base * (1 + 2 * y * y));
  return 1 / sqrt(base * (1 + 2 * y) * (1 + 2 * y));
}

template <typename Scalar>
GeneratorMatrices<Scalar> build_generators(const DeformedOscillatorRep<Scalar>& rep,
                                           const ModelParams<Scalar>& params,
                                           const QuantumNumbers<Scalar>& /*qn*/,
                                           Realization realization = Realization::closed(),
                                           Scalar rho_scale = 1) {
  using std::abs;
  const int dim = rep.dim;
  GeneratorMatrices<Scalar> gen;
  gen.A = MatrixX<Scalar>::Zero(dim, dim);
  gen.B = MatrixX<Scalar>::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    const Scalar y = rep.number_diag(n) + rep.u;
    if (abs(y * y - Scalar(1) / 4) <= std::numeric_limits<Scalar>::epsilon() * 16) {
      std::ostringstream os;
      os << "(n + u)^2 = 1/4 at n = " << n;
      throw DiagonalPole(os.str());
    }
    gen.A(n, n) = y * y - Scalar(9) / 4;
    gen.B(n, n) = diagonal_part(y, params, rep.central, realization.diagonal);
  }
  for (int n = 0; n + 1 < dim; ++n) {
    const Scalar y = rep.number_diag(n) + rep.u;
    const Scalar entry = rho_scale * offdiagonal_weight(y, realization.rho) * rep.ladder_sub(n);
    gen.B(n, n + 1) = entry;
    gen.B(n + 1, n) = entry;
  }
  gen.C = gen.A * gen.B - gen.B * gen.A;
  return gen;
}

namespace detail {

template <typename Scalar>
MatrixX<Scalar> commutator(const MatrixX<Scalar>& x, const MatrixX<Scalar>& y) {
  return x * y - y * x;
}

template <typename Scalar>
MatrixX<Scalar> anticommutator(const MatrixX<Scalar>& x, const MatrixX<Scalar>& y) {
  return x * y + y * x;
}

template <typename Scalar>
Scalar relative_residual(const MatrixX<Scalar>& lhs, const MatrixX<Scalar>& rhs) {
  const Scalar scale = std::max({max_abs(lhs), max_abs(rhs), std::numeric_limits<Scalar>::min()});
  return max_abs<Scalar>(lhs - rhs) / scale;
}

template <typename Scalar>
MatrixX<Scalar> with_rho_scale(const MatrixX<Scalar>& B, Scalar s) {
  MatrixX<Scalar> out = s * B;
  out.diagonal() = B.diagonal();
  return out;
}

}  // namespace detail

/// Residual of [A, C] relation (max-abs norm relative to the larger side).
template <typename Scalar>
Scalar residual_q2(const GeneratorMatrices<Scalar>& gen, const QuadraticAlgebraConstants<Scalar>& k) {
  using detail::anticommutator;
  using detail::commutator;
  const auto I = MatrixX<Scalar>::Identity(gen.A.rows(), gen.A.cols());
  const MatrixX<Scalar> lhs = commutator(gen.A, gen.C);
  const MatrixX<Scalar> rhs = k.gamma * anticommutator(gen.A, gen.B) + k.epsilon * gen.B + k.zeta * I;
  return detail::relative_residual<Scalar>(lhs, rhs);
}

/// Residual of [B, C] relation.
template <typename Scalar>
Scalar residual_q3(const GeneratorMatrices<Scalar>& gen, const QuadraticAlgebraConstants<Scalar>& k) {
  using detail::commutator;
  const auto I = MatrixX<Scalar>::Identity(gen.A.rows(), gen.A.cols());
  const MatrixX<Scalar> lhs = commutator(gen.B, gen.C);
  const MatrixX<Scalar> rhs = -k.gamma * gen.B * gen.B + k.d * gen.A + k.eta * I;
  return detail::relative_residual<Scalar>(lhs, rhs);
}

/// Least-squares scale s on the off-diagonal of B minimizing the [B, C]
/// residual. With B = D + s O the residual is R0 + s R1 + s^2 R2 where R1 sits
/// on the first off-diagonals and R0, R2 on the even ones, so the optimum in
/// t = s^2 is closed form. Empty when p = 0 or the optimum is t <= 0.
template <typename Scalar>
std::optional<Scalar> fit_rho_scale(const GeneratorMatrices<Scalar>& gen,
                                    const QuadraticAlgebraConstants<Scalar>& k) {
  using detail::commutator;
  using std::sqrt;
  const auto n = gen.A.rows();
  if (n < 2) return std::nullopt;
  const auto I = MatrixX<Scalar>::Identity(n, n);
  const MatrixX<Scalar> D = gen.B.diagonal().asDiagonal();
  const MatrixX<Scalar> O = gen.B - D;
  const MatrixX<Scalar> AO = commutator(gen.A, O);
  const MatrixX<Scalar> R0 = k.gamma * D * D - k.d * gen.A - k.eta * I;
  const MatrixX<Scalar> R1 = commutator(D, AO) + k.gamma * (D * O + O * D);
  const MatrixX<Scalar> R2 = commutator(O, AO) + k.gamma * O * O;
  const Scalar r2 = R2.squaredNorm();
  if (!(r2 > 0)) return std::nullopt;
  const Scalar t = -(R0.cwiseProduct(R2).sum() + R1.squaredNorm() / 2) / r2;
  if (!(t > 0)) return std::nullopt;
  return sqrt(t);
}

/// Which coefficients the cubic Casimir is assembled with.
///  - kDerived: from the structure constants of the two quadratic relations,
///      K = C^2 - gamma{A, B^2} + (gamma^2 - epsilon) B^2 - 2 zeta B + d A^2 + 2 eta A.
///  - kPrinted: A coefficient 2{(16 - 8c1 - 8c2)H - 4L^2 H + 2c0^2} and
///      B coefficient -2{4c0(c2 - c1) - 4c0 T^2}.
enum class CasimirForm { kDerived, kPrinted };

template <typename Scalar>
MatrixX<Scalar> casimir_matrix(const GeneratorMatrices<Scalar>& gen, const ModelParams<Scalar>& params,
                               const CentralValues<Scalar>& cv, CasimirForm form = CasimirForm::kDerived) {
  using detail::anticommutator;
  const auto k = structure_constants(params, cv);
  const MatrixX<Scalar> B2 = gen.B * gen.B;
  Scalar b_coef = -2 * k.zeta;
  Scalar a_coef = 2 * k.eta;
  if (form == CasimirForm::kPrinted) {
    const Scalar c0 = params.c0, c1 = params.c1, c2 = params.c2;
    b_coef = -2 * (4 * c0 * (c2 - c1) - 4 * c0 * cv.T2);
    a_coef = 2 * ((16 - 8 * c1 - 8 * c2) * cv.H - 4 * cv.L2 * cv.H + 2 * c0 * c0);
  }
  return gen.C * gen.C - k.gamma * anticommutator<Scalar>(gen.A, B2) +
         (k.gamma * k.gamma - k.epsilon) * B2 + b_coef * gen.B + k.d * gen.A * gen.A + a_coef * gen.A;
}

/// Scalar value the Casimir takes on the representation.
template <typename Scalar>
Scalar casimir_scalar(const ModelParams<Scalar>& params, const CentralValues<Scalar>& cv) {
  const Scalar c0 = params.c0, c1 = params.c1, c2 = params.c2;
  const Scalar H = cv.H, L2 = cv.L2, T2 = cv.T2;
  return -8 * H * T2 * T2 + 16 * L2 * H - 8 * (c1 - c2) * T2 * H -
         2 * ((c1 - c2) * (c1 - c2) + 8 * (2 - c1 - c2)) * H + 4 * c0 * c0 * L2 +
         4 * c0 * c0 * (c1 + c2 - 1);
}

template <typename Scalar = double>
struct CasimirCheck {
  Scalar offdiag = 0;          ///< max off-diagonal / max |diagonal|
  Scalar scalar_mismatch = 0;  ///< max |K_nn - K_scalar| / max(|K_scalar|, max |K_nn|)
};

template <typename Scalar>
CasimirCheck<Scalar> casimir_check(const GeneratorMatrices<Scalar>& gen,
                                   const DeformedOscillatorRep<Scalar>& rep,
                                   const ModelParams<Scalar>& params,
                                   const QuantumNumbers<Scalar>& /*qn*/, Scalar rho_scale = 1,
                                   CasimirForm form = CasimirForm::kDerived) {
  using std::abs;
  GeneratorMatrices<Scalar> scaled = gen;
  if (rho_scale != Scalar(1)) {
    scaled.B = detail::with_rho_scale<Scalar>(gen.B, rho_scale);
    scaled.C = detail::commutator(scaled.A, scaled.B);
  }
  const MatrixX<Scalar> K = casimir_matrix(scaled, params, rep.central, form);
  const VectorX<Scalar> diag = K.diagonal();
  MatrixX<Scalar> off = K;
  off.diagonal().setZero();
  const Scalar target = casimir_scalar(params, rep.central);
  const Scalar diag_scale = std::max(diag.cwiseAbs().maxCoeff(), std::numeric_limits<Scalar>::min());
  CasimirCheck<Scalar> out;
  out.offdiag = max_abs(off) / diag_scale;
  out.scalar_mismatch = (diag.array() - target).abs().maxCoeff() / std::max(abs(target), diag_scale);
  return out;
}

template <typename Scalar = double>
struct AlgebraReport {
  Scalar residual_q1 = 0;
  // Calibrated residuals (rho scaled by rho_calibration when available).
  Scalar residual_q2 = 0;
  Scalar residual_q3 = 0;
  // As built (rho scale 1).
  Scalar residual_q2_raw = 0;
  Scalar residual_q3_raw = 0;
  /// [A, C] residual with the constant's c1 - c2 swapped, at the calibrated scale.
  Scalar residual_q2_swapped_sign = 0;
  Scalar casimir_offdiag = 0;
  Scalar casimir_scalar_mismatch = 0;
  std::optional<Scalar> rho_calibration;
};

template <typename Scalar>
AlgebraReport<Scalar> verify_algebra(const GeneratorMatrices<Scalar>& gen,
                                     const DeformedOscillatorRep<Scalar>& rep,
                                     const ModelParams<Scalar>& params,
                                     const QuantumNumbers<Scalar>& qn) {
  const auto k = structure_constants(params, rep.central);
  const auto k_swapped = structure_constants(params, rep.central, ConstantSign::kSwapped);
  AlgebraReport<Scalar> report;
  const MatrixX<Scalar> AB = detail::commutator(gen.A, gen.B);
  report.residual_q1 = max_abs<Scalar>(AB - gen.C) / std::max(max_abs(gen.C), std::numeric_limits<Scalar>::min());
  report.residual_q2_raw = residual_q2(gen, k);
  report.residual_q3_raw = residual_q3(gen, k);

  report.rho_calibration = fit_rho_scale(gen, k);
  const Scalar s = report.rho_calibration.value_or(Scalar(1));
  GeneratorMatrices<Scalar> calibrated = gen;
  calibrated.B = detail::with_rho_scale<Scalar>(gen.B, s);
  calibrated.C = detail::commutator(calibrated.A, calibrated.B);
  report.residual_q2 = residual_q2(calibrated, k);
  report.residual_q3 = residual_q3(calibrated, k);
  report.residual_q2_swapped_sign = residual_q2(calibrated, k_swapped);

  const auto cas = casimir_check(gen, rep, params, qn, s);
  report.casimir_offdiag = cas.offdiag;
  report.casimir_scalar_mismatch = cas.scalar_mismatch;
  return report;
}

}  // namespace monopole
