#include "monopole/duality.hpp"

#include <cmath>

#include "monopole/errors.hpp"

namespace monopole {

KeplerPoint kepler_from_oscillator(const OscillatorPoint& osc) {
  if (!(osc.omega > 0)) throw InvalidParameter("omega must be strictly positive");
  return {osc.epsilon / 4, -osc.omega * osc.omega / 8, osc.lambda1 / 2, osc.lambda2 / 2};
}

OscillatorPoint oscillator_from_kepler(const KeplerPoint& kep) {
  if (!(kep.E < 0)) throw NonNegativeEnergy("the duality map needs E < 0");
  return {4 * kep.c0, std::sqrt(-8 * kep.E), 2 * kep.c1, 2 * kep.c2};
}

DualityMap apply(DualityMap map) {
  if (map.direction == DualityDirection::kKeplerFromOscillator) {
    map.kepler = kepler_from_oscillator(map.oscillator);
  } else {
    map.oscillator = oscillator_from_kepler(map.kepler);
  }
  return map;
}

double algebraic_energy(double p, const AuxExponents<double>& m, const ModelParams<double>& params) {
  const double d = p + 1 + (m.m1 + m.m2) / 2;
  return -params.c0 * params.c0 / (2 * params.hbar * params.hbar * d * d);
}

double hyperspherical_energy(int n, int lambda, double J, double L, const ModelParams<double>& params) {
  const auto d = delta_exponents(DeltaVariant::kKepler, params.c1, params.c2, J, L, params.hbar);
  const double w = n + lambda + 2 + (d.delta1 + d.delta2) / 2;
  return -params.c0 * params.c0 / (2 * params.hbar * params.hbar * w * w);
}

double parabolic_energy(int n1, int n2, double J, double L, const ModelParams<double>& params) {
  const auto d = delta_exponents(DeltaVariant::kKepler, params.c1, params.c2, J, L, params.hbar);
  const double w = n1 + n2 + (d.delta1 + d.delta2 + J + L) / 2 + 2;
  return -params.c0 * params.c0 / (2 * params.hbar * params.hbar * w * w);
}

double euler_energy(int n, int lambda, double T, double K, double omega, double lambda1, double lambda2,
                    double hbar) {
  const auto d = delta_exponents(DeltaVariant::kOscillator, lambda1, lambda2, T, K, hbar);
  return 2 * hbar * omega * (n + (d.delta1 + d.delta2) / 2 + lambda + 2);
}

double cylindrical_energy(int n1, int n2, double T, double K, double omega, double lambda1, double lambda2,
                          double hbar) {
  const auto d = delta_exponents(DeltaVariant::kOscillator, lambda1, lambda2, T, K, hbar);
  return 2 * hbar * omega * (n1 + n2 + (d.delta1 + d.delta2) / 2 + (T + K) / 2 + 2);
}

std::string to_string(Picture picture) {
  switch (picture) {
    case Picture::kHyperspherical: return "hyperspherical";
    case Picture::kParabolic: return "parabolic";
    case Picture::kEuler: return "euler";
    case Picture::kCylindrical: return "cylindrical";
  }
  return "unknown";
}

namespace {

// Kepler energy of an oscillator level through the duality map. eps is linear
// in omega, so the oscillator with eps = 4 c0 has omega = 4 c0 / eps(omega = 1).
double dual_energy(double eps_at_unit_omega, const ModelParams<double>& params) {
  const OscillatorPoint osc{4 * params.c0, 4 * params.c0 / eps_at_unit_omega, 2 * params.c1, 2 * params.c2};
  return kepler_from_oscillator(osc).E;
}

}  // namespace

IdentityReport spectrum_identity_check(Picture picture, const PictureLabels& labels,
                                       const ModelParams<double>& params) {
  params.validate();
  IdentityReport r;
  r.picture = picture;
  const double hbar = params.hbar;
  const auto kd = delta_exponents(DeltaVariant::kKepler, params.c1, params.c2, labels.z1, labels.z2, hbar);
  const auto od =
      delta_exponents(DeltaVariant::kOscillator, 2 * params.c1, 2 * params.c2, labels.z1, labels.z2, hbar);
  AuxExponents<double> m{kd.delta1, kd.delta2};
  switch (picture) {
    case Picture::kHyperspherical:
      r.p = labels.n + labels.lambda + 1;
      r.picture_energy = hyperspherical_energy(labels.n, labels.lambda, labels.z1, labels.z2, params);
      break;
    case Picture::kParabolic:
      r.p = labels.n1 + labels.n2 + (labels.z1 + labels.z2) / 2 + 1;
      r.picture_energy = parabolic_energy(labels.n1, labels.n2, labels.z1, labels.z2, params);
      break;
    case Picture::kEuler:
      m = {od.delta1, od.delta2};
      r.p = labels.n + labels.lambda + 1;
      r.picture_energy = dual_energy(
          euler_energy(labels.n, labels.lambda, labels.z1, labels.z2, 1.0, 2 * params.c1, 2 * params.c2, hbar),
          params);
      break;
    case Picture::kCylindrical:
      m = {od.delta1, od.delta2};
      r.p = labels.n1 + labels.n2 + (labels.z1 + labels.z2) / 2 + 1;
      r.picture_energy = dual_energy(
          cylindrical_energy(labels.n1, labels.n2, labels.z1, labels.z2, 1.0, 2 * params.c1, 2 * params.c2, hbar),
          params);
      break;
  }
  r.algebraic_energy = algebraic_energy(r.p, m, params);
  r.rel_diff = std::abs(r.picture_energy - r.algebraic_energy) / std::abs(r.algebraic_energy);
  return r;
}

std::vector<DeltaMatch> delta_matching(const std::vector<double>& JL_values, const std::vector<double>& l4_values,
                                       const std::vector<double>& T_values, const std::vector<double>& couplings,
                                       double hbar) {
  std::vector<DeltaMatch> out;
  for (double J : JL_values)
    for (double L : JL_values)
      for (double l4 : l4_values)
        for (double T : T_values)
          for (double c1 : couplings)
            for (double c2 : couplings) {
              DeltaMatch row{J, L, l4, T, c1, c2};
              const auto d = delta_exponents(DeltaVariant::kKepler, c1, c2, J, L, hbar);
              row.delta1 = d.delta1;
              row.delta2 = d.delta2;
              const ModelParams<double> params{1, c1, c2, hbar};
              const auto [r1, r2] = aux_radicands(params, QuantumNumbers<double>{l4, T});
              row.admissible = r1 >= 0 && r2 >= 0;
              if (row.admissible) {
                row.m1 = std::sqrt(r1);
                row.m2 = std::sqrt(r2);
                row.matched = std::abs(row.delta1 - row.m1) <= 1e-12 * (1 + row.m1) &&
                              std::abs(row.delta2 - row.m2) <= 1e-12 * (1 + row.m2);
              }
              out.push_back(row);
            }
  return out;
}

}  // namespace monopole
