#pragma once

// Jacobi and truncated confluent hypergeometric polynomials, the delta
// exponents of the separated wavefunctions, and residual checks of the
// closed-form solutions against the separated ODEs.

#include <cmath>
#include <sstream>

#include "monopole/errors.hpp"
#include "monopole/model.hpp"

namespace monopole {

/// P_n^{(a,b)}(x) by the three-term recurrence in n.
template <typename Scalar>
Scalar jacobi_p(int n, Scalar a, Scalar b, Scalar x) {
  if (!(a > -1) || !(b > -1)) {
    std::ostringstream os;
    os << "Jacobi parameters must exceed -1 (a = " << a << ", b = " << b << ")";
    throw DomainError(os.str());
  }
  if (n < 0) throw DomainError("Jacobi degree must be non-negative");
  if (n == 0) return Scalar(1);
  Scalar prev = 1;
  Scalar cur = ((a + b + 2) * x + (a - b)) / 2;
  for (int k = 2; k <= n; ++k) {
    const Scalar s = 2 * k + a + b;
    const Scalar c0 = 2 * k * (k + a + b) * (s - 2);
    const Scalar c1 = (s - 1) * (s * (s - 2) * x + a * a - b * b);
    const Scalar c2 = 2 * (k + a - 1) * (k + b - 1) * s;
    const Scalar next = (c1 * cur - c2 * prev) / c0;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// 1F1(-n; b; x) as the finite sum of n + 1 terms.
template <typename Scalar>
Scalar kummer_poly(int n, Scalar b, Scalar x) {
  if (n < 0) throw DomainError("Kummer degree must be non-negative");
  for (int j = 0; j < n; ++j) {
    if (b + Scalar(j) == 0) {
      std::ostringstream os;
      os << "1F1(-" << n << "; " << b << "; x) has a pole: b + " << j << " = 0";
      throw ParameterPole(os.str());
    }
  }
  Scalar term = 1;
  Scalar sum = 1;
  for (int j = 0; j < n; ++j) {
    term *= (Scalar(j) - Scalar(n)) / (b + Scalar(j)) * x / Scalar(j + 1);
    sum += term;
  }
  return sum;
}

/// Kepler exponents carry 4c/hbar^2 with labels (J, L); oscillator exponents
/// carry 2 lambda/hbar^2 with labels (T, K).
enum class DeltaVariant { kKepler, kOscillator };

template <typename Scalar = double>
struct DeltaExponents {
  Scalar delta1 = 0;
  Scalar delta2 = 0;
  DeltaVariant variant = DeltaVariant::kKepler;
};

template <typename Scalar>
Scalar delta_exponent(DeltaVariant variant, Scalar coupling, Scalar z, Scalar hbar) {
  using std::sqrt;
  if (coupling < 0) throw InvalidParameter("couplings must be non-negative");
  if (!(hbar > 0)) throw InvalidParameter("hbar must be strictly positive");
  const Scalar weight = variant == DeltaVariant::kKepler ? Scalar(4) : Scalar(2);
  return -1 + sqrt(weight * coupling / (hbar * hbar) + (2 * z + 1) * (2 * z + 1)) - z;
}

template <typename Scalar>
DeltaExponents<Scalar> delta_exponents(DeltaVariant variant, Scalar coupling1, Scalar coupling2,
                                       Scalar z1, Scalar z2, Scalar hbar) {
  return {delta_exponent(variant, coupling1, z1, hbar), delta_exponent(variant, coupling2, z2, hbar),
          variant};
}

/// Exponent s of the radial power law for separation constant s(s + 3).
template <typename Scalar>
Scalar separation_exponent(Scalar separation) {
  using std::sqrt;
  if (separation < Scalar(-9) / 4) throw DomainError("separation constant below -9/4");
  return (-3 + sqrt(9 + 4 * separation)) / 2;
}

/// (k + a + b)(k + a + b + 3) with a = (delta1 + z1)/2, b = (delta2 + z2)/2
/// and k = lambda - z1 - z2 the Jacobi degree.
template <typename Scalar>
Scalar angular_separation(int k, const DeltaExponents<Scalar>& d, Scalar z1, Scalar z2) {
  const Scalar s = Scalar(k) + (d.delta1 + z1 + d.delta2 + z2) / 2;
  return s * (s + 3);
}

// Residual checks. Each builds the closed-form solution y = w * G, with the
// singular prefactor w differentiated analytically and the smooth factor G
// by the fourth-order centered stencil, applies the ODE and returns
// max |residual| / max |y| over the grid interior.

struct ResidualGrid {
  int points = 2001;
  double margin = 1e-3;  ///< distance kept from the singular endpoints, in the natural variable
  int skip = 5;          ///< stencil-adjacent points dropped at each end
};

/// Which closed form is substituted into the angular equation.
///  - kCorrected: Jacobi parameters (delta2 + z2 + 1, delta1 + z1 + 1), separation
///    constant from angular_separation.
///  - kPrinted: Jacobi parameters (delta2 + z2, delta1 + z1), separation
///    constant (lambda + dbar)(lambda + dbar + 3).
enum class ClosedFormConvention { kCorrected, kPrinted };

enum class AngularPicture { kKeplerHyperspherical, kOscillatorEuler };

struct AngularQuery {
  AngularPicture picture = AngularPicture::kKeplerHyperspherical;
  int lambda = 0;
  double z1 = 0;  ///< J or T
  double z2 = 0;  ///< L or K
  double coupling1 = 0;  ///< c1 or lambda1
  double coupling2 = 0;  ///< c2 or lambda2
  double hbar = 1;
  ClosedFormConvention convention = ClosedFormConvention::kCorrected;
};

double angular_residual(const AngularQuery& query, const ResidualGrid& grid = {});

enum class RadialPicture { kKepler, kOscillator8D, kParabolicMu, kParabolicNu, kCylindrical };

/// Closed-form radial solutions, each with the quantization its picture prints:
///  - kKepler:      e^{-kr/2} (kr)^s 1F1(-n; 2s+4; kr), Lambda = s(s+3), k = 2c0/(hbar^2 (n+s+2))
///  - kOscillator8D: e^{-ku^2/2} (ku^2)^s 1F1(-n; 2s+4; ku^2), Gamma = 4s(s+3), k = omega/hbar
///  - kParabolicMu/Nu: e^{-kmu/2} (kmu)^t 1F1(-n_i; 2t+2; kmu), t = (delta_i + z_i)/2,
///      k = c0/(hbar^2 (n1+n2+t1+t2+2))
///  - kCylindrical: e^{-x/2} x^t 1F1(-n; 2t+2; x), eps = 2 hbar omega (n+t+1)
struct RadialQuery {
  RadialPicture picture = RadialPicture::kKepler;
  int n = 0;               ///< radial quantum number (n1 in the parabolic pair)
  int n2 = 0;              ///< second parabolic quantum number
  double separation = 0;   ///< Lambda (Kepler) or Gamma (8D)
  double z1 = 0;           ///< J, or the T / K label of a cylindrical sector
  double z2 = 0;           ///< L
  double coupling1 = 0;    ///< c1, or lambda of the cylindrical sector
  double coupling2 = 0;    ///< c2
  double c0 = 1;
  double hbar = 1;
  double omega = 1;
  /// kPrinted doubles the parabolic exponent to delta_i + z_i.
  ClosedFormConvention convention = ClosedFormConvention::kCorrected;
};

double radial_residual(const RadialQuery& query, const ResidualGrid& grid = {});

/// Residual of x W'' + (b - x) W' + n W = 0 for W = 1F1(-n; b; x) on [margin, x_max].
double kummer_ode_residual(int n, double b, double x_max, const ResidualGrid& grid = {});

/// log2 of the residual ratio between `points` and 2 * points - 1 grid points.
double angular_residual_order(const AngularQuery& query, int points);

}  // namespace monopole
