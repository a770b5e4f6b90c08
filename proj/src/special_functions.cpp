#include "monopole/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

namespace monopole {
namespace {

using Fn = std::function<double(double)>;

// Pieces of y = exp(g) * G and of the ODE a2 y'' + a1 y' + a0 y = 0.
struct HybridForm {
  Fn smooth;  // G
  Fn g;       // log of the prefactor
  Fn dg;
  Fn d2g;
  Fn a2;
  Fn a1;
  Fn a0;
};

double hybrid_residual(const HybridForm& f, double lo, double hi, const ResidualGrid& grid) {
  if (grid.points < 2 * grid.skip + 1 || grid.skip < 2) {
    throw InvalidParameter("residual grid too small for the five-point stencil");
  }
  const int n = grid.points;
  const double h = (hi - lo) / (n - 1);
  std::vector<double> x(n), G(n), w(n);
  double ymax = 0;
  for (int i = 0; i < n; ++i) {
    x[i] = lo + h * i;
    G[i] = f.smooth(x[i]);
    w[i] = std::exp(f.g(x[i]));
    ymax = std::max(ymax, std::abs(w[i] * G[i]));
  }
  double worst = 0;
  for (int i = grid.skip; i < n - grid.skip; ++i) {
    const double d1 = (-G[i + 2] + 8 * G[i + 1] - 8 * G[i - 1] + G[i - 2]) / (12 * h);
    const double d2 = (-G[i + 2] + 16 * G[i + 1] - 30 * G[i] + 16 * G[i - 1] - G[i - 2]) / (12 * h * h);
    const double t = x[i];
    const double g1 = f.dg(t);
    const double g2 = f.d2g(t);
    const double ypp = d2 + 2 * g1 * d1 + (g2 + g1 * g1) * G[i];
    const double yp = d1 + g1 * G[i];
    const double r = w[i] * (f.a2(t) * ypp + f.a1(t) * yp + f.a0(t) * G[i]);
    worst = std::max(worst, std::abs(r));
  }
  return ymax > 0 ? worst / ymax : worst;
}

// First point beyond `start` (stepping by `step`) where |y| < 1e-12 of its peak on [lo, start].
double decay_end(const Fn& y, double lo, double start, double step) {
  double peak = 0;
  constexpr int kSamples = 400;
  for (int i = 0; i <= kSamples; ++i) peak = std::max(peak, std::abs(y(lo + (start - lo) * i / kSamples)));
  double end = start;
  for (int i = 0; i < 100000 && std::abs(y(end)) >= 1e-12 * peak; ++i) end += step;
  return end;
}

void require_jacobi_index(int k, double lambda, double z1, double z2) {
  if (k < 0 || std::abs(lambda - z1 - z2 - k) > 1e-9) {
    std::ostringstream os;
    os << "lambda - z1 - z2 = " << lambda - z1 - z2 << " is not a non-negative integer";
    throw IndexError(os.str());
  }
}

double kepler_radial(const RadialQuery& q, const ResidualGrid& grid) {
  const double hb2 = q.hbar * q.hbar;
  const double s = separation_exponent(q.separation);
  const double b = 2 * s + 4;
  const double kappa = 2 * q.c0 / (hb2 * (q.n + s + 2));
  const double E = -kappa * kappa * hb2 / 8;
  const int n = q.n;
  HybridForm f{
      [=](double r) { return kummer_poly(n, b, kappa * r); },
      [=](double r) { return -kappa * r / 2 + s * std::log(kappa * r); },
      [=](double r) { return -kappa / 2 + s / r; },
      [=](double r) { return -s / (r * r); },
      [](double) { return 1.0; },
      [](double r) { return 4 / r; },
      [=, Lambda = q.separation, c0 = q.c0](double r) { return 2 * E / hb2 + 2 * c0 / (hb2 * r) - Lambda / (r * r); },
  };
  const double lo = grid.margin / kappa;
  const Fn y = [&](double r) { return std::exp(f.g(r)) * f.smooth(r); };
  const double hi = decay_end(y, lo, 4 * (n + s + 2) / kappa, 0.25 / kappa);
  return hybrid_residual(f, lo, hi, grid);
}

double oscillator_radial(const RadialQuery& q, const ResidualGrid& grid) {
  if (!(q.omega > 0)) throw InvalidParameter("omega must be strictly positive");
  const double hb2 = q.hbar * q.hbar;
  const double s = separation_exponent(q.separation / 4);
  const double b = 2 * s + 4;
  const double kappa = q.omega / q.hbar;
  const double eps = 2 * q.hbar * q.omega * (q.n + s + 2);
  const int n = q.n;
  HybridForm f{
      [=](double u) { return kummer_poly(n, b, kappa * u * u); },
      [=](double u) { return -kappa * u * u / 2 + s * std::log(kappa * u * u); },
      [=](double u) { return -kappa * u + 2 * s / u; },
      [=](double u) { return -kappa - 2 * s / (u * u); },
      [](double) { return 1.0; },
      [](double u) { return 7 / u; },
      [=, Gamma = q.separation, omega = q.omega](double u) {
        return -Gamma / (u * u) + 2 * eps / hb2 - omega * omega * u * u / hb2;
      },
  };
  const double scale = 1 / std::sqrt(kappa);
  const double lo = grid.margin * scale;
  const Fn y = [&](double u) { return std::exp(f.g(u)) * f.smooth(u); };
  const double hi = decay_end(y, lo, 2 * std::sqrt(n + s + 2) * scale, 0.05 * scale);
  return hybrid_residual(f, lo, hi, grid);
}

double parabolic(const RadialQuery& q, const ResidualGrid& grid, bool mu_side) {
  const double hb2 = q.hbar * q.hbar;
  const double d1 = delta_exponent(DeltaVariant::kKepler, q.coupling1, q.z1, q.hbar);
  const double d2 = delta_exponent(DeltaVariant::kKepler, q.coupling2, q.z2, q.hbar);
  const double t1 = (d1 + q.z1) / 2;
  const double t2 = (d2 + q.z2) / 2;
  const double kappa = q.c0 / (hb2 * (q.n + q.n2 + t1 + t2 + 2));
  const double E = -hb2 * kappa * kappa / 2;
  const double sigma1 = kappa * (q.n + t1 + 1);
  // sigma1 = c0/(2 hbar^2) + hbar Lt / 2
  const double Lt = 2 * (sigma1 - q.c0 / (2 * hb2)) / q.hbar;

  const int n = mu_side ? q.n : q.n2;
  const double t = mu_side ? t1 : t2;
  const double z = mu_side ? q.z1 : q.z2;
  const double c = mu_side ? q.coupling1 : q.coupling2;
  const double A = z * (z + 1) + c / hb2;
  const double shift = q.c0 / (2 * hb2) + (mu_side ? 1 : -1) * q.hbar * Lt / 2;
  const double power = q.convention == ClosedFormConvention::kPrinted ? 2 * t : t;
  const double b = 2 * t + 2;
  HybridForm f{
      [=](double m) { return kummer_poly(n, b, kappa * m); },
      [=](double m) { return -kappa * m / 2 + power * std::log(kappa * m); },
      [=](double m) { return -kappa / 2 + power / m; },
      [=](double m) { return -power / (m * m); },
      [](double m) { return m; },
      [](double) { return 2.0; },
      [=](double m) { return E * m / (2 * hb2) - A / m + shift; },
  };
  const double lo = grid.margin / kappa;
  const Fn y = [&](double m) { return std::exp(f.g(m)) * f.smooth(m); };
  const double hi = decay_end(y, lo, 4 * (n + t + 1) / kappa, 0.25 / kappa);
  return hybrid_residual(f, lo, hi, grid);
}

double cylindrical(const RadialQuery& q, const ResidualGrid& grid) {
  if (!(q.omega > 0)) throw InvalidParameter("omega must be strictly positive");
  const double hb2 = q.hbar * q.hbar;
  const double delta = delta_exponent(DeltaVariant::kOscillator, q.coupling1, q.z1, q.hbar);
  const double t = (delta + q.z1) / 2;
  const double eps = 2 * q.hbar * q.omega * (q.n + t + 1);
  const double A = q.z1 * (q.z1 + 1) + q.coupling1 / (2 * hb2);
  const double level = eps / (2 * q.hbar * q.omega);
  const double b = 2 * t + 2;
  const int n = q.n;
  HybridForm f{
      [=](double x) { return kummer_poly(n, b, x); },
      [=](double x) { return -x / 2 + t * std::log(x); },
      [=](double x) { return -0.5 + t / x; },
      [=](double x) { return -t / (x * x); },
      [](double x) { return x; },
      [](double) { return 2.0; },
      [=](double x) { return -(A / x + x / 4 - level); },
  };
  const double lo = grid.margin;
  const Fn y = [&](double x) { return std::exp(f.g(x)) * f.smooth(x); };
  const double hi = decay_end(y, lo, 4 * (n + t + 1), 0.25);
  return hybrid_residual(f, lo, hi, grid);
}

}  // namespace

double angular_residual(const AngularQuery& q, const ResidualGrid& grid) {
  const int k = q.lambda - static_cast<int>(std::lround(q.z1 + q.z2));
  require_jacobi_index(k, q.lambda, q.z1, q.z2);
  const bool kepler = q.picture == AngularPicture::kKeplerHyperspherical;
  const auto variant = kepler ? DeltaVariant::kKepler : DeltaVariant::kOscillator;
  const auto d = delta_exponents(variant, q.coupling1, q.coupling2, q.z1, q.z2, q.hbar);
  const double hb2 = q.hbar * q.hbar;
  const double weight = kepler ? 1.0 : 0.5;
  const double A = q.z2 * (q.z2 + 1) + weight * q.coupling2 / hb2;
  const double B = q.z1 * (q.z1 + 1) + weight * q.coupling1 / hb2;

  const double alpha = (d.delta1 + q.z1) / 2;
  const double beta = (d.delta2 + q.z2) / 2;
  double ja = 2 * beta + 1;
  double jb = 2 * alpha + 1;
  double Lambda = angular_separation(k, d, q.z1, q.z2);
  if (q.convention == ClosedFormConvention::kPrinted) {
    ja = 2 * beta;
    jb = 2 * alpha;
    const double shifted = q.lambda + (d.delta1 + d.delta2) / 2;
    Lambda = shifted * (shifted + 3);
  }
  // In the Euler picture the same operator carries Gamma / 4 = Lambda.
  HybridForm f{
      [=](double th) { return jacobi_p(k, ja, jb, std::cos(th)); },
      [=](double th) { return alpha * std::log1p(std::cos(th)) + beta * std::log1p(-std::cos(th)); },
      [=](double th) {
        const double x = std::cos(th), s = std::sin(th);
        return -alpha * s / (1 + x) + beta * s / (1 - x);
      },
      [=](double th) {
        const double x = std::cos(th);
        return -alpha / (1 + x) - beta / (1 - x);
      },
      [](double) { return 1.0; },
      [](double th) { return 3 / std::tan(th); },
      [=](double th) {
        const double x = std::cos(th);
        return -2 * A / (1 - x) - 2 * B / (1 + x) + Lambda;
      },
  };
  return hybrid_residual(f, grid.margin, std::numbers::pi - grid.margin, grid);
}

double radial_residual(const RadialQuery& q, const ResidualGrid& grid) {
  switch (q.picture) {
    case RadialPicture::kKepler: return kepler_radial(q, grid);
    case RadialPicture::kOscillator8D: return oscillator_radial(q, grid);
    case RadialPicture::kParabolicMu: return parabolic(q, grid, true);
    case RadialPicture::kParabolicNu: return parabolic(q, grid, false);
    case RadialPicture::kCylindrical: return cylindrical(q, grid);
  }
  throw InvalidParameter("unknown radial picture");
}

double kummer_ode_residual(int n, double b, double x_max, const ResidualGrid& grid) {
  HybridForm f{
      [=](double x) { return kummer_poly(n, b, x); },
      [](double) { return 0.0; },
      [](double) { return 0.0; },
      [](double) { return 0.0; },
      [](double x) { return x; },
      [=](double x) { return b - x; },
      [=](double) { return static_cast<double>(n); },
  };
  return hybrid_residual(f, grid.margin, x_max, grid);
}

double angular_residual_order(const AngularQuery& query, int points) {
  ResidualGrid coarse;
  coarse.points = points;
  ResidualGrid fine = coarse;
  fine.points = 2 * points - 1;
  return std::log2(angular_residual(query, coarse) / angular_residual(query, fine));
}

}  // namespace monopole
