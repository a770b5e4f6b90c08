#pragma once

// Parameter map between the 5D Kepler system and the 8D singular oscillator,
//   c0 = eps / 4,  E = -omega^2 / 8,  2 c_i = lambda_i,
// and closed-form spectrum identities across the separable pictures.

#include <string>
#include <vector>

#include "monopole/algebra_core.hpp"
#include "monopole/model.hpp"
#include "monopole/special_functions.hpp"

namespace monopole {

struct KeplerPoint {
  double c0 = 1;
  double E = -0.125;
  double c1 = 0;
  double c2 = 0;
};

struct OscillatorPoint {
  double epsilon = 4;
  double omega = 1;
  double lambda1 = 0;
  double lambda2 = 0;
};

enum class DualityDirection { kKeplerFromOscillator, kOscillatorFromKepler };

struct DualityMap {
  DualityDirection direction = DualityDirection::kOscillatorFromKepler;
  KeplerPoint kepler;
  OscillatorPoint oscillator;
};

KeplerPoint kepler_from_oscillator(const OscillatorPoint& osc);
OscillatorPoint oscillator_from_kepler(const KeplerPoint& kep);

/// Records one application of the map in the given direction; the input side
/// of `map` is read and the other side overwritten.
DualityMap apply(DualityMap map);

// Closed-form spectra of each picture, as printed.

/// -c0^2 / (2 hbar^2 (p + 1 + (m1 + m2)/2)^2) for real p.
double algebraic_energy(double p, const AuxExponents<double>& m, const ModelParams<double>& params);
double hyperspherical_energy(int n, int lambda, double J, double L, const ModelParams<double>& params);
double parabolic_energy(int n1, int n2, double J, double L, const ModelParams<double>& params);
double euler_energy(int n, int lambda, double T, double K, double omega, double lambda1, double lambda2,
                    double hbar);
double cylindrical_energy(int n1, int n2, double T, double K, double omega, double lambda1, double lambda2,
                          double hbar);

enum class Picture { kHyperspherical, kParabolic, kEuler, kCylindrical };

std::string to_string(Picture picture);

struct PictureLabels {
  int n = 0;       ///< hyperspherical / Euler radial number
  int lambda = 0;  ///< hyperspherical / Euler angular number
  int n1 = 0;      ///< parabolic / cylindrical
  int n2 = 0;
  double z1 = 0;   ///< J or T
  double z2 = 0;   ///< L or K
};

struct IdentityReport {
  Picture picture = Picture::kHyperspherical;
  double p = 0;  ///< identified algebraic label (half-integer-valued in the parabolic pictures)
  double picture_energy = 0;
  double algebraic_energy = 0;
  double rel_diff = 0;
};

/// Kepler energy of the picture (through the duality map for the oscillator
/// pictures, with lambda_i = 2 c_i and eps fixed by c0 = eps/4) against the
/// algebraic spectrum at the identified p, with delta_i standing in for m_i.
IdentityReport spectrum_identity_check(Picture picture, const PictureLabels& labels,
                                       const ModelParams<double>& params);

struct DeltaMatch {
  double J = 0, L = 0, l4 = 0, T = 0;
  double c1 = 0, c2 = 0;
  double delta1 = 0, delta2 = 0;
  double m1 = 0, m2 = 0;
  bool admissible = true;  ///< false when m1^2 or m2^2 < 0
  bool matched = false;    ///< delta1 = m1 and delta2 = m2 to 1e-12 relative
};

/// Compares the Kepler delta exponents for (J, L) with the auxiliary exponents
/// for (l4, T) over the Cartesian product of the given values.
std::vector<DeltaMatch> delta_matching(const std::vector<double>& JL_values, const std::vector<double>& l4_values,
                                       const std::vector<double>& T_values, const std::vector<double>& couplings,
                                       double hbar);

}  // namespace monopole
