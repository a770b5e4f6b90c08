#pragma once

#include <Eigen/Dense>

namespace monopole {

/// Symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymTridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  Eigen::Index size() const { return diag.size(); }
};

/// Lowest k eigenvalues, ascending, via Eigen's implicit symmetric QR.
Eigen::VectorXd lowest_eigenvalues(const SymTridiagonal& t, int k);

/// Number of eigenvalues strictly below x (Sturm sequence).
int sturm_count(const SymTridiagonal& t, double x);

/// Eigenvalue number `index` (0-based, ascending) by Sturm-sequence bisection,
/// to full precision or until the bracket is below rel_tol of its magnitude.
double eigenvalue_bisection(const SymTridiagonal& t, int index, double rel_tol = 0);

/// Lowest k eigenvalues, ascending, by Sturm-sequence bisection.
Eigen::VectorXd lowest_eigenvalues_bisection(const SymTridiagonal& t, int k);

/// Eigenvector for an accurate eigenvalue estimate, by inverse iteration.
Eigen::VectorXd eigenvector(const SymTridiagonal& t, double eigenvalue);

/// Sign changes along v, ignoring entries below 1e-8 of max |v|.
int node_count(const Eigen::VectorXd& v);

}  // namespace monopole
