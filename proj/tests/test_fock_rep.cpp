#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

#include "monopole/fock_rep.hpp"

using namespace monopole;

namespace {

struct Built {
  UnirrepSolution<double> sol;
  DeformedOscillatorRep<double> rep;
  GeneratorMatrices<double> gen;
};

Built build(int p, const ModelParams<double>& P, const QuantumNumbers<double>& q,
            Realization realization = Realization::closed()) {
  Built b;
  b.sol = solve_unirrep(p, P, q);
  b.rep = build_rep(b.sol, q, P);
  b.gen = build_generators(b.rep, P, q, realization);
  return b;
}

const ModelParams<double> kFree{1, 0, 0, 1};
const QuantumNumbers<double> kGround{0, 0};
const ModelParams<double> kDeformed{1, 0.5, 1.5, 1};
const QuantumNumbers<double> kSector{1, 0.5};

double norm(const MatrixX<double>& m) { return max_abs(m); }

}  // namespace

TEST_CASE("one-dimensional representation") {
  const auto b = build(0, kFree, kGround);
  CHECK(b.rep.dim == 1);
  CHECK(b.gen.A.rows() == 1);
  CHECK(b.gen.A(0, 0) == 0.0);  // (3/2)^2 - 9/4
  CHECK(b.rep.ladder_sub.size() == 0);
  const auto cas = casimir_check(b.gen, b.rep, kFree, kGround);
  CHECK(cas.offdiag == 0.0);
}

TEST_CASE("ladder operators") {
  const auto b1 = build(1, kFree, kGround);
  REQUIRE(b1.rep.ladder_sub.size() == 1);
  CHECK(b1.rep.ladder_sub(0) == doctest::Approx(std::sqrt(20971520.0)).epsilon(1e-14));
  CHECK(b1.rep.ladder_sub(0) == doctest::Approx(4579.47).epsilon(1e-6));

  const auto b = build(5, kDeformed, kSector);
  const MatrixX<double> lo = b.rep.lowering();
  const MatrixX<double> hi = b.rep.raising();
  CHECK(norm(lo.col(0)) == 0.0);
  CHECK(norm(hi.col(5)) == 0.0);
  // b^dagger b = Phi(N), b b^dagger = Phi(N + 1), with Phi(0) = Phi(p + 1) = 0
  const MatrixX<double> btb = hi * lo;
  const MatrixX<double> bbt = lo * hi;
  for (int n = 0; n <= 5; ++n) {
    const double phi_n = n == 0 ? 0.0 : structure_function_raw(double(n), b.sol.u, b.sol.E, kDeformed, kSector);
    const double phi_n1 = n == 5 ? 0.0 : structure_function_raw(n + 1.0, b.sol.u, b.sol.E, kDeformed, kSector);
    CHECK(btb(n, n) == doctest::Approx(phi_n).epsilon(1e-12));
    CHECK(bbt(n, n) == doctest::Approx(phi_n1).epsilon(1e-12));
  }
  CHECK(norm(MatrixX<double>(btb - MatrixX<double>(btb.diagonal().asDiagonal()))) == 0.0);
  CHECK(b.rep.number().diagonal()(5) == 5.0);
}

TEST_CASE("generator structure") {
  const auto b = build(2, kFree, kGround);
  CHECK(b.gen.A(0, 0) == 0.0);
  CHECK(b.gen.A(1, 1) == 4.0);
  CHECK(b.gen.A(2, 2) == 10.0);
  // no deformation: diagonal part of B vanishes
  CHECK(norm(MatrixX<double>(b.gen.B.diagonal().asDiagonal())) == 0.0);

  const auto d = build(6, kDeformed, kSector);
  CHECK(norm(MatrixX<double>(d.gen.C + d.gen.C.transpose())) == 0.0);
  CHECK(norm(MatrixX<double>(d.gen.B - d.gen.B.transpose())) == 0.0);
  CHECK(norm(MatrixX<double>(d.gen.A - MatrixX<double>(d.gen.A.diagonal().asDiagonal()))) == 0.0);
  for (int n = 0; n <= 6; ++n) {
    const double y = n + d.sol.u;
    CHECK(d.gen.A(n, n) == doctest::Approx(y * y - 2.25).epsilon(1e-15));
  }
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j)
      if (std::abs(i - j) > 1) CHECK(d.gen.B(i, j) == 0.0);

  // unitarity: B has a real spectrum
  Eigen::EigenSolver<MatrixX<double>> es(d.gen.B);
  CHECK(es.eigenvalues().imag().cwiseAbs().maxCoeff() <= 1e-12 * es.eigenvalues().real().cwiseAbs().maxCoeff());
}

TEST_CASE("diagonal pole and positivity errors") {
  DeformedOscillatorRep<double> rep;
  rep.dim = 2;
  rep.u = 0.5;
  rep.number_diag = Eigen::Vector2d(0, 1);
  rep.ladder_sub = Eigen::VectorXd::Constant(1, 1.0);
  rep.central = central_values(-0.1, kDeformed, kSector);
  CHECK_THROWS_AS(build_generators(rep, kDeformed, kSector), DiagonalPole);

  UnirrepSolution<double> bad;
  bad.p = 2;
  bad.u = -1.2;
  bad.E = -0.5;
  CHECK_THROWS_AS(build_rep(bad, kGround, kFree), PositivityViolation);
}

TEST_CASE("closed realization satisfies the quadratic algebra") {
  for (int p = 1; p <= 12; ++p) {
    const auto b = build(p, kDeformed, kSector);
    const auto r = verify_algebra(b.gen, b.rep, kDeformed, kSector);
    CHECK(r.residual_q1 <= 1e-14);
    CHECK(r.residual_q2_raw <= 1e-12);
    CHECK(r.residual_q3_raw <= 1e-12);
    REQUIRE(r.rho_calibration.has_value());
    CHECK(*r.rho_calibration == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.residual_q2 <= 1e-12);
    CHECK(r.residual_q3 <= 1e-12);
    CHECK(r.casimir_offdiag <= 1e-12);
    CHECK(r.casimir_scalar_mismatch <= 1e-12);
  }
  const auto b1 = build(1, kFree, kGround);
  const auto r1 = verify_algebra(b1.gen, b1.rep, kFree, kGround);
  CHECK(r1.residual_q2 <= 1e-10);
  CHECK(r1.residual_q3 <= 1e-10);
}

TEST_CASE("constant sign of the [A, C] relation is not symmetric") {
  const auto b = build(4, kDeformed, kSector);
  const auto r = verify_algebra(b.gen, b.rep, kDeformed, kSector);
  CHECK(r.residual_q2 <= 1e-12);
  CHECK(r.residual_q2_swapped_sign >= 1e-3);
}

TEST_CASE("calibration does not drift with p") {
  double first = 0;
  for (int p = 1; p <= 6; ++p) {
    const auto b = build(p, kDeformed, kSector);
    const auto s = fit_rho_scale(b.gen, structure_constants(kDeformed, b.rep.central));
    REQUIRE(s.has_value());
    if (p == 1) first = *s;
    CHECK(*s == doctest::Approx(first).epsilon(1e-8));
  }
}

TEST_CASE("printed realization does not close for any single scale") {
  double s_low = 0, s_high = 0;
  for (int p : {1, 12}) {
    const auto b = build(p, kDeformed, kSector, Realization::printed());
    const auto r = verify_algebra(b.gen, b.rep, kDeformed, kSector);
    CHECK(r.residual_q3_raw >= 0.5);
    REQUIRE(r.rho_calibration.has_value());
    (p == 1 ? s_low : s_high) = *r.rho_calibration;
    if (p > 1) CHECK(r.residual_q3 >= 1e-3);
  }
  CHECK(std::abs(s_high / s_low - 1) >= 0.1);
}

TEST_CASE("Casimir commutes with the generators") {
  for (int p : {1, 3, 8, 12}) {
    const auto b = build(p, kDeformed, kSector);
    const MatrixX<double> K = casimir_matrix(b.gen, kDeformed, b.rep.central);
    const double kn = norm(K);
    CHECK(norm(detail::commutator(K, b.gen.A)) <= 1e-9 * kn * norm(b.gen.A));
    CHECK(norm(detail::commutator(K, b.gen.B)) <= 1e-9 * kn * norm(b.gen.B));
    for (int n = 0; n <= p; ++n) {
      CHECK(K(n, n) == doctest::Approx(casimir_scalar(kDeformed, b.rep.central)).epsilon(1e-10));
    }
  }
  const auto z = build(1, kFree, kGround);
  const MatrixX<double> K = casimir_matrix(z.gen, kFree, z.rep.central);
  CHECK(K(0, 0) == doctest::Approx(K(1, 1)).epsilon(1e-9));
}

TEST_CASE("printed Casimir coefficients are not central with unequal couplings") {
  const auto b = build(5, kDeformed, kSector);
  const auto printed = casimir_check(b.gen, b.rep, kDeformed, kSector, 1.0, CasimirForm::kPrinted);
  CHECK(printed.offdiag >= 1e-6);
  const auto derived = casimir_check(b.gen, b.rep, kDeformed, kSector);
  CHECK(derived.offdiag <= 1e-12);
}

TEST_CASE("grid-wide closure") {
  int admissible = 0;
  for (double c0 : {0.5, 1.0, 2.0})
    for (double c1 : {0.0, 0.5, 1.5})
      for (double c2 : {0.0, 0.5, 1.5})
        for (double l4 : {0.0, 1.0, 2.0})
          for (double T : {0.0, 0.5, 1.0}) {
            const ModelParams<double> P{c0, c1, c2, 1};
            const QuantumNumbers<double> q{l4, T};
            const auto [r1, r2] = aux_radicands(P, q);
            if (r1 < 0 || r2 < 0) continue;
            ++admissible;
            for (int p : {1, 5, 12}) {
              const auto b = build(p, P, q);
              const auto r = verify_algebra(b.gen, b.rep, P, q);
              CHECK(r.residual_q2 <= 1e-9);
              CHECK(r.residual_q3 <= 1e-9);
              CHECK(r.rho_calibration.value_or(0) == doctest::Approx(1.0).epsilon(1e-8));
            }
          }
  CHECK(admissible >= 100);
}

TEST_CASE("long double instantiation") {
  const ModelParams<long double> P{1, 0.5L, 1.5L, 1};
  const QuantumNumbers<long double> q{1, 0.5L};
  const auto sol = solve_unirrep(6, P, q);
  const auto rep = build_rep(sol, q, P);
  const auto gen = build_generators(rep, P, q);
  const auto r = verify_algebra(gen, rep, P, q);
  CHECK(static_cast<double>(r.residual_q2) <= 1e-15);
  CHECK(static_cast<double>(r.residual_q3) <= 1e-15);
}
