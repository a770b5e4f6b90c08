#include "monopole/tridiagonal.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "monopole/errors.hpp"

namespace monopole {
namespace {

void require_levels(const SymTridiagonal& t, int k) {
  if (k < 0 || k > t.size()) throw InvalidParameter("requested more levels than the mesh holds");
  if (t.off.size() != std::max<Eigen::Index>(t.size() - 1, 0)) {
    throw InvalidParameter("off-diagonal length must be one less than the diagonal");
  }
}

}  // namespace

Eigen::VectorXd lowest_eigenvalues(const SymTridiagonal& t, int k) {
  require_levels(t, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(t.diag, t.off, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("tridiagonal QR did not converge");
  return solver.eigenvalues().head(k);
}

namespace {

int sturm_count_raw(const double* d, const double* e2, Eigen::Index n, double x) {
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = d[0] - x;
  for (Eigen::Index i = 0;; ++i) {
    if (q == 0) q = -tiny;
    if (q < 0) ++count;
    if (i + 1 == n) break;
    q = d[i + 1] - x - e2[i] / q;
  }
  return count;
}

}  // namespace

int sturm_count(const SymTridiagonal& t, double x) {
  if (t.size() == 0) return 0;
  const Eigen::VectorXd e2 = t.off.cwiseAbs2();
  return sturm_count_raw(t.diag.data(), e2.data(), t.size(), x);
}

double eigenvalue_bisection(const SymTridiagonal& t, int index, double rel_tol) {
  require_levels(t, index + 1);
  const Eigen::Index n = t.size();
  const Eigen::VectorXd e2 = t.off.cwiseAbs2();
  auto count = [&](double x) { return sturm_count_raw(t.diag.data(), e2.data(), n, x); };
  // Gershgorin bounds
  double a = std::numeric_limits<double>::infinity();
  double b = -a;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off(i - 1)) : 0.0) + (i + 1 < n ? std::abs(t.off(i)) : 0.0);
    a = std::min(a, t.diag(i) - r);
    b = std::max(b, t.diag(i) + r);
  }
  // grow the upper end from the lower bound; low levels sit far below 4/h^2
  for (double step = std::max(1.0, 1e-3 * (b - a)); a + step < b; step *= 4) {
    if (count(a + step) > index) {
      b = a + step;
      break;
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b || b - a <= rel_tol * std::max(std::abs(a), std::abs(b))) break;
    if (count(mid) > index) {
      b = mid;
    } else {
      a = mid;
    }
  }
  return 0.5 * (a + b);
}

Eigen::VectorXd lowest_eigenvalues_bisection(const SymTridiagonal& t, int k) {
  require_levels(t, k);
  Eigen::VectorXd out(k);
  for (int j = 0; j < k; ++j) out(j) = eigenvalue_bisection(t, j);
  return out;
}

Eigen::VectorXd eigenvector(const SymTridiagonal& t, double eigenvalue) {
  const Eigen::Index n = t.size();
  const double scale = std::max(t.diag.cwiseAbs().maxCoeff(), 1.0);
  const double shift = eigenvalue + 1e-10 * scale;
  const double tiny = 1e-300;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd c(n), d(n);
  for (int sweep = 0; sweep < 3; ++sweep) {
    // Thomas elimination on (T - shift) v_new = v
    double pivot = t.diag(0) - shift;
    if (pivot == 0) pivot = tiny;
    c(0) = n > 1 ? t.off(0) / pivot : 0.0;
    d(0) = v(0) / pivot;
    for (Eigen::Index i = 1; i < n; ++i) {
      pivot = t.diag(i) - shift - t.off(i - 1) * c(i - 1);
      if (pivot == 0) pivot = tiny;
      c(i) = i + 1 < n ? t.off(i) / pivot : 0.0;
      d(i) = (v(i) - t.off(i - 1) * d(i - 1)) / pivot;
    }
    v(n - 1) = d(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i) v(i) = d(i) - c(i) * v(i + 1);
    v /= v.cwiseAbs().maxCoeff();
  }
  return v;
}

int node_count(const Eigen::VectorXd& v) {
  const double floor = 1e-8 * v.cwiseAbs().maxCoeff();
  int nodes = 0;
  int last_sign = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) < floor) continue;
    const int sign = v(i) > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

}  // namespace monopole
