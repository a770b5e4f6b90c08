#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "monopole/special_functions.hpp"

using namespace monopole;

namespace {

// Gauss-Legendre rule from the eigen-decomposition of the Jacobi matrix.
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = k / std::sqrt(4.0 * k * k - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes = es.eigenvalues();
  weights = 2 * es.eigenvectors().row(0).transpose().array().square();
}

struct TermSum {
  double value;
  double scale;  ///< sum of |terms|, the conditioning of the sum
};

// P_n^(a,b)(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s)
TermSum jacobi_sum(int n, long double a, long double b, long double x) {
  auto binom = [](long double top, int k) {
    long double c = 1;
    for (int j = 0; j < k; ++j) c *= (top - j) / (j + 1);
    return c;
  };
  long double sum = 0, scale = 0;
  for (int s = 0; s <= n; ++s) {
    const long double term =
        binom(n + a, n - s) * binom(n + b, s) * std::pow((x - 1) / 2, s) * std::pow((x + 1) / 2, n - s);
    sum += term;
    scale += std::abs(term);
  }
  return {static_cast<double>(sum), static_cast<double>(scale)};
}

double kummer_sum(int n, double b, double x) {
  double term = 1, sum = 1;
  for (int j = 0; j < n; ++j) {
    term *= (-n + j) * x / ((b + j) * (j + 1));
    sum += term;
  }
  return sum;
}

double order_between(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace

TEST_CASE("Jacobi polynomials") {
  CHECK(jacobi_p(0, 0.3, 1.7, 0.2) == 1.0);
  CHECK(jacobi_p(1, 1.0, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(jacobi_p(2, -1.0, 0.0, 0.1), DomainError);
  CHECK_THROWS_AS(jacobi_p(2, 0.0, -1.5, 0.1), DomainError);
  CHECK_THROWS_AS(jacobi_p(-1, 0.0, 0.0, 0.1), DomainError);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> par(-0.9, 6), xs(-1, 1);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 9;
    const double a = par(rng), b = par(rng), x = xs(rng);
    const auto ref = jacobi_sum(n, a, b, x);
    CHECK(std::abs(jacobi_p(n, a, b, x) - ref.value) <= 1e-12 * std::max(1.0, ref.scale));
  }
}

TEST_CASE("Jacobi orthogonality by quadrature") {
  Eigen::VectorXd x, w;
  gauss_legendre(12, x, w);
  const double a = 1, b = 2;
  double cross = 0, self = 0;
  for (int i = 0; i < x.size(); ++i) {
    const double weight = std::pow(1 - x(i), a) * std::pow(1 + x(i), b);
    cross += w(i) * weight * jacobi_p(2, a, b, x(i)) * jacobi_p(3, a, b, x(i));
    self += w(i) * weight * jacobi_p(3, a, b, x(i)) * jacobi_p(3, a, b, x(i));
  }
  CHECK(std::abs(cross) <= 1e-10);
  CHECK(self > 0.1);
}

TEST_CASE("polynomial Kummer function") {
  CHECK(kummer_poly(0, 2.5, 3.0) == 1.0);
  CHECK(kummer_poly(1, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(kummer_poly(2, 3.0, 2.0)) <= 1e-15);
  CHECK_THROWS_AS(kummer_poly(3, -1.0, 1.0), ParameterPole);
  CHECK_NOTHROW(kummer_poly(1, -1.0, 1.0));
  for (int n = 0; n < 8; ++n)
    for (double b : {0.5, 2.0, 4.7})
      for (double x : {0.1, 1.0, 7.5}) {
        CHECK(kummer_poly(n, b, x) == doctest::Approx(kummer_sum(n, b, x)).epsilon(1e-12));
      }
}

TEST_CASE("Kummer equation is satisfied") {
  // derivative oracle: d/dx 1F1(-n; b; x) = (-n/b) 1F1(-n+1; b+1; x)
  for (int n = 1; n <= 6; ++n) {
    for (double b : {0.5, 1.0, 2.5}) {
      for (double x : {0.3, 1.7, 5.0}) {
        const double d1 = -n / b * kummer_poly(n - 1, b + 1, x);
        const double d2 = n * (n - 1) / (b * (b + 1)) * kummer_poly(n - 2 < 0 ? 0 : n - 2, b + 2, x) * (n >= 2);
        const double lhs = x * d2 + (b - x) * d1 + n * kummer_poly(n, b, x);
        CHECK(std::abs(lhs) <= 1e-9 * (1 + std::abs(n * kummer_poly(n, b, x))));
      }
      CHECK(kummer_ode_residual(n, b, 4.0 * (n + b) + 10) <= 1e-9);
    }
  }
}

TEST_CASE("delta exponents") {
  for (double z : {0.0, 0.5, 1.0, 2.5}) {
    CHECK(delta_exponent(DeltaVariant::kKepler, 0.0, z, 1.0) == doctest::Approx(z).epsilon(1e-15));
    CHECK(delta_exponent(DeltaVariant::kOscillator, 0.0, z, 0.7) == doctest::Approx(z).epsilon(1e-15));
  }
  CHECK(delta_exponent(DeltaVariant::kKepler, 2.0, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(delta_exponent(DeltaVariant::kOscillator, 4.0, 0.5, 1.0) ==
        doctest::Approx(std::sqrt(12.0) - 1.5).epsilon(1e-15));
  CHECK(delta_exponent(DeltaVariant::kOscillator, 4.0, 0.5, 1.0) == doctest::Approx(1.9641).epsilon(1e-4));
  for (auto v : {DeltaVariant::kKepler, DeltaVariant::kOscillator}) {
    double prev = -1;
    for (double c = 0; c < 5; c += 0.25) {
      const double d = delta_exponent(v, c, 0.5, 1.0);
      CHECK(d > prev);
      CHECK(d >= 0);
      prev = d;
    }
  }
  CHECK_THROWS_AS(delta_exponent(DeltaVariant::kKepler, -1.0, 0.0, 1.0), InvalidParameter);
  const auto d = delta_exponents(DeltaVariant::kKepler, 1.0, 1.0, 0.0, 0.0, 1.0);
  CHECK(d.delta1 == doctest::Approx(std::sqrt(5.0) - 1).epsilon(1e-15));
  CHECK(separation_exponent(4.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(separation_exponent(-3.0), DomainError);
}

TEST_CASE("angular closed forms satisfy their equations") {
  AngularQuery trivial;
  CHECK(angular_residual(trivial) <= 1e-12);

  AngularQuery kepler;
  kepler.lambda = 1;
  kepler.coupling1 = kepler.coupling2 = 1;
  CHECK(angular_residual(kepler) <= 1e-7);

  AngularQuery euler;
  euler.picture = AngularPicture::kOscillatorEuler;
  euler.lambda = 1;
  euler.z1 = euler.z2 = 0.5;
  euler.coupling1 = euler.coupling2 = 1;
  CHECK(angular_residual(euler) <= 1e-7);

  for (auto picture : {AngularPicture::kKeplerHyperspherical, AngularPicture::kOscillatorEuler})
    for (double z1 : {0.0, 0.5, 1.0})
      for (double z2 : {0.0, 0.5, 1.0})
        for (int lambda = 2; lambda <= 6; ++lambda) {
          AngularQuery q{picture, lambda, z1, z2, 0.7, 1.9, 0.8, ClosedFormConvention::kCorrected};
          if (std::abs((lambda - z1 - z2) - std::round(lambda - z1 - z2)) > 1e-12) {
            CHECK_THROWS_AS(angular_residual(q), IndexError);
            continue;
          }
          CHECK(angular_residual(q) <= 1e-7);
        }
  AngularQuery low = kepler;
  low.z1 = low.z2 = 1;
  CHECK_THROWS_AS(angular_residual(low), IndexError);
}

TEST_CASE("printed angular parameters fail once J + L > 0") {
  AngularQuery q;
  q.lambda = 3;
  q.z1 = 0.5;
  q.z2 = 0.5;
  q.coupling1 = 0.7;
  q.coupling2 = 1.3;
  CHECK(angular_residual(q) <= 1e-7);
  q.convention = ClosedFormConvention::kPrinted;
  CHECK(angular_residual(q) >= 1e-3);
}

TEST_CASE("radial closed forms satisfy their equations") {
  RadialQuery k;
  CHECK(radial_residual(k) <= 1e-8);
  RadialQuery osc;
  osc.picture = RadialPicture::kOscillator8D;
  CHECK(radial_residual(osc) <= 1e-8);
  RadialQuery cyl;
  cyl.picture = RadialPicture::kCylindrical;
  cyl.n = 1;
  CHECK(radial_residual(cyl) <= 1e-8);

  for (auto picture : {RadialPicture::kKepler, RadialPicture::kOscillator8D, RadialPicture::kParabolicMu,
                       RadialPicture::kParabolicNu, RadialPicture::kCylindrical}) {
    for (int n = 0; n <= 4; ++n) {
      RadialQuery q;
      q.picture = picture;
      q.n = n;
      q.n2 = 4 - n;
      q.separation = 5.3;
      q.z1 = 0.5;
      q.z2 = 1;
      q.coupling1 = 0.7;
      q.coupling2 = 1.1;
      q.c0 = 1.3;
      q.hbar = 0.8;
      q.omega = 1.7;
      CHECK(radial_residual(q) <= 1e-7);
    }
  }
}

TEST_CASE("printed parabolic exponent does not solve the equation") {
  RadialQuery q;
  q.picture = RadialPicture::kParabolicMu;
  q.n = 2;
  q.n2 = 1;
  q.z1 = 0.5;
  q.z2 = 1;
  q.coupling1 = 0.7;
  q.coupling2 = 1.1;
  CHECK(radial_residual(q) <= 1e-7);
  q.convention = ClosedFormConvention::kPrinted;
  CHECK(radial_residual(q) >= 1e-3);
}

TEST_CASE("residuals converge at stencil order") {
  AngularQuery a;
  a.lambda = 4;
  a.z1 = a.z2 = 0.5;
  a.coupling1 = 1.5;
  a.coupling2 = 0.3;
  CHECK(angular_residual_order(a, 101) == doctest::Approx(4.0).epsilon(0.2));
  CHECK(angular_residual_order(a, 201) == doctest::Approx(4.0).epsilon(0.2));

  // the smooth factor must have degree above 4 or the stencil is exact
  RadialQuery r;
  r.picture = RadialPicture::kOscillator8D;
  r.n = 3;
  r.z1 = 0.5;
  r.coupling1 = 1;
  ResidualGrid coarse, fine;
  coarse.points = 401;
  fine.points = 801;
  CHECK(order_between(radial_residual(r, coarse), radial_residual(r, fine)) == doctest::Approx(4.0).epsilon(0.2));
}
