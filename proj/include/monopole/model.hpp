#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "monopole/errors.hpp"

namespace monopole {

/// Couplings of the deformed 5D Kepler Hamiltonian: Coulomb strength c0,
/// the two non-central strengths c1, c2, and hbar.
template <typename Scalar = double>
struct ModelParams {
  Scalar c0 = 1;
  Scalar c1 = 0;
  Scalar c2 = 0;
  Scalar hbar = 1;

  void validate() const {
    using std::isfinite;
    if (!isfinite(c0) || !isfinite(c1) || !isfinite(c2) || !isfinite(hbar)) {
      throw InvalidParameter("model parameters must be finite");
    }
    if (!(c0 > 0)) throw InvalidParameter("c0 must be strictly positive");
    if (c1 < 0 || c2 < 0) throw InvalidParameter("c1 and c2 must be non-negative");
    if (!(hbar > 0)) throw InvalidParameter("hbar must be strictly positive");
  }

  /// Eigenvalue of T^2 for the label T, i.e. hbar^2 T(T+1).
  Scalar casimir_su2(Scalar T) const { return hbar * hbar * T * (T + 1); }
  /// Eigenvalue of L^2 for the so(4) label l4, i.e. hbar^2 l4(l4+2).
  Scalar casimir_so4(Scalar l4) const { return hbar * hbar * l4 * (l4 + 2); }
};

/// True when 2*value is a non-negative integer (to within a few ulp).
template <typename Scalar>
bool is_half_integer(Scalar value) {
  using std::abs;
  using std::round;
  if (!std::isfinite(static_cast<double>(value)) || value < 0) return false;
  const Scalar twice = 2 * value;
  return abs(twice - round(twice)) <= Scalar(1e-12) * (1 + abs(twice));
}

template <typename Scalar>
void require_half_integer(Scalar value, const char* name) {
  if (!is_half_integer(value)) {
    std::ostringstream os;
    os << name << " = " << value << " is not a non-negative half-integer";
    throw InvalidParameter(os.str());
  }
}

/// Sector labels: l4 (so(4), L^2 = hbar^2 l4(l4+2)) and T (su(2), T^2 = hbar^2 T(T+1)).
template <typename Scalar = double>
struct QuantumNumbers {
  Scalar l4 = 0;
  Scalar T = 0;

  void validate() const {
    if (!std::isfinite(static_cast<double>(l4)) || l4 < 0) {
      throw InvalidParameter("l4 must be a finite non-negative number");
    }
    require_half_integer(T, "T");
  }
};

/// so(6) highest-weight labels mu1 >= mu2 >= mu3 >= 0.
template <typename Scalar = double>
struct So6Labels {
  Scalar mu1 = 0;
  Scalar mu2 = 0;
  Scalar mu3 = 0;
};

}  // namespace monopole
