#pragma once

// Quadratic forms on the trace hyperplane 1^T x = k and their maximization.
//
// Two families arise from the adapted-frame expansion of delta:
//   r <= 2:  f(x) = (x1+x2) sum_{j>=3} x_j + sum_{3<=i<j} x_i x_j
//                 - sum_{j>=3} x_j^2
//   r >= 3:  f(x) = (x1+x2) sum_{j>=3} x_j + sum_{3<=i<j} x_i x_j
//                 - x_1^2 - sum_{j in 2..n, j != r} x_j^2
// Both are maximized on the hyperplane via the KKT system; the closed-form
// maxima are (k^2/2)(n-2)/(n+1) and (k^2/2)(2n-3)/(2n+3) respectively.

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "chen/errors.hpp"

namespace chen {

struct QuadraticForm {
  int n = 0;
  Eigen::MatrixXd A;  // symmetric, f(x) = x^T A x

  double eval(const Eigen::VectorXd& x) const { return x.dot(A * x); }
};

enum class MaxVerdict { kMaxAttained, kUnbounded, kDegenerateMax };

inline const char* to_string(MaxVerdict v) {
  switch (v) {
    case MaxVerdict::kMaxAttained:
      return "max-attained";
    case MaxVerdict::kUnbounded:
      return "unbounded";
    case MaxVerdict::kDegenerateMax:
      return "degenerate-max";
  }
  return "?";
}

struct KKTSolution {
  Eigen::VectorXd argmax;
  double multiplier = 0.0;
  double value = 0.0;
  Eigen::VectorXd projected_spectrum;  // ascending
  MaxVerdict verdict = MaxVerdict::kMaxAttained;
  std::string diagnostic;
};

namespace detail {

inline void check_form_dim(int n) {
  if (n < 3) throw InvalidInput("quadratic form requires n >= 3");
}

// Shared off-diagonal pattern: (x1+x2) sum_{j>=3} x_j + sum_{3<=i<j} x_i x_j.
inline Eigen::MatrixXd cross_pattern(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int j = 2; j < n; ++j) {
    a(0, j) = a(j, 0) = 0.5;
    a(1, j) = a(j, 1) = 0.5;
  }
  for (int i = 2; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5;
  return a;
}

}  // namespace detail

inline QuadraticForm build_f1(int n) {
  detail::check_form_dim(n);
  Eigen::MatrixXd a = detail::cross_pattern(n);
  for (int j = 2; j < n; ++j) a(j, j) = -1.0;
  return QuadraticForm{n, std::move(a)};
}

// r is 1-based. For r <= 2 the subtracted squares coincide with the f1
// pattern; for r >= 3 they sit at position 1 and every position in 2..n
// except r.
inline QuadraticForm build_fr(int n, int r) {
  detail::check_form_dim(n);
  if (r < 1 || r > n) throw InvalidInput("form index r out of range");
  if (r <= 2) return build_f1(n);
  Eigen::MatrixXd a = detail::cross_pattern(n);
  a(0, 0) = -1.0;
  for (int j = 1; j < n; ++j)
    if (j != r - 1) a(j, j) = -1.0;
  return QuadraticForm{n, std::move(a)};
}

// Orthonormal basis of the direction space {x : 1^T x = 0}, n x (n-1).
inline Eigen::MatrixXd hyperplane_basis(int n) {
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - 1);
}

inline Eigen::VectorXd projected_hessian_spectrum(const QuadraticForm& form) {
  const Eigen::MatrixXd b = hyperplane_basis(form.n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.transpose() * form.A * b);
  return es.eigenvalues();
}

// Maximizes f(x) = x^T A x subject to 1^T x = k.
//
// Stationarity is the linear system [2A, -1; 1^T, 0] [x; lambda] = [0; k].
// The restricted Hessian (the form on the hyperplane's direction space)
// decides the verdict: a positive eigenvalue means the supremum is +inf; a
// semidefinite restriction with a unique stationary point is max-attained;
// a singular-but-compatible system is degenerate-max and the minimum-norm
// stationary point is returned; a singular incompatible system has linear
// growth along a flat direction, so the supremum is again +inf.
inline KKTSolution maximize_on_hyperplane(const QuadraticForm& form, double k) {
  const int n = form.n;
  KKTSolution sol;
  sol.projected_spectrum = projected_hessian_spectrum(form);
  const double scale = std::max(form.A.cwiseAbs().maxCoeff(), 1.0);
  const double semidef_tol = 1e-10 * scale;

  if (sol.projected_spectrum.maxCoeff() > semidef_tol) {
    sol.verdict = MaxVerdict::kUnbounded;
    sol.value = std::numeric_limits<double>::infinity();
    sol.argmax = Eigen::VectorXd::Constant(n, k / n);
    sol.diagnostic = "restricted Hessian has a positive eigenvalue";
    return sol;
  }

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = 2.0 * form.A;
  m.topRightCorner(n, 1) = -Eigen::VectorXd::Ones(n);
  m.bottomLeftCorner(1, n) = Eigen::RowVectorXd::Ones(n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = k;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  Eigen::VectorXd z = cod.solve(rhs);  // minimum-norm least-squares solution
  const double residual = (m * z - rhs).norm();
  const double compat_tol = 1e-8 * std::max(1.0, scale) * std::max(1.0, std::abs(k));

  if (cod.rank() < n + 1 && residual > compat_tol) {
    sol.verdict = MaxVerdict::kUnbounded;
    sol.value = std::numeric_limits<double>::infinity();
    sol.argmax = Eigen::VectorXd::Constant(n, k / n);
    sol.diagnostic =
        "singular KKT system with incompatible right-hand side: no "
        "stationary point, linear growth along a flat direction";
    return sol;
  }

  sol.argmax = z.head(n);
  sol.multiplier = z(n);
  sol.value = sol.argmax.dot(form.A * sol.argmax);
  sol.verdict = (cod.rank() < n + 1) ? MaxVerdict::kDegenerateMax
                                     : MaxVerdict::kMaxAttained;
  return sol;
}

struct ClosedFormMax {
  double value = 0.0;
  Eigen::VectorXd argmax;
};

// r <= 2: value (k^2/2)(n-2)/(n+1), maximizer x1 = x2 = 3a/2, x_j = a,
//         a = k/(n+1) (only x1+x2 is pinned; x1 = x2 is the canonical
//         representative, and it is the minimum-norm stationary point).
// r >= 3: value (k^2/2)(2n-3)/(2n+3), maximizer x1 = x2 = 3a, x_r = 12a,
//         x_j = 4a otherwise, a = k/(4n+6).
inline ClosedFormMax closed_form_max(int n, int r, double k) {
  detail::check_form_dim(n);
  if (r < 1 || r > n) throw InvalidInput("form index r out of range");
  ClosedFormMax out;
  out.argmax = Eigen::VectorXd::Zero(n);
  if (r <= 2) {
    const double a = k / (n + 1);
    out.value = 0.5 * k * k * (n - 2) / (n + 1);
    out.argmax(0) = 1.5 * a;
    out.argmax(1) = 1.5 * a;
    for (int j = 2; j < n; ++j) out.argmax(j) = a;
  } else {
    const double a = k / (4 * n + 6);
    out.value = 0.5 * k * k * (2 * n - 3) / (2 * n + 3);
    out.argmax(0) = 3.0 * a;
    out.argmax(1) = 3.0 * a;
    for (int j = 2; j < n; ++j) out.argmax(j) = 4.0 * a;
    out.argmax(r - 1) = 12.0 * a;
  }
  return out;
}

}  // namespace chen
