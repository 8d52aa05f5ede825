#pragma once

// Fully symmetric rank-3 tensors, orthonormal frames, and their plumbing:
// canonical construction, frame rotation, mean curvature, seeded sampling.
//
// A tensor h of dimension n holds the pointwise data h^r_ij with full
// symmetry in all three indices; only the n(n+1)(n+2)/6 sorted triples are
// free. Indices are 1-based in the public accessors, matching the classical
// notation; storage is a dense n^3 array kept exactly symmetric so that the
// slice h^r (an n x n symmetric matrix) is contiguous for the hot loops.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chen/errors.hpp"
#include "chen/rng.hpp"

namespace chen {

inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kConflictTol = 1e-12;

// An orthonormal frame of R^n; rows of Q are the frame vectors.
struct OrthonormalFrame {
  Eigen::MatrixXd Q;

  int n() const { return static_cast<int>(Q.rows()); }

  static OrthonormalFrame identity(int n) {
    return OrthonormalFrame{Eigen::MatrixXd::Identity(n, n)};
  }

  static OrthonormalFrame from_matrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() < 1)
      throw InvalidInput("frame matrix must be square and non-empty");
    const double defect =
        (m * m.transpose() - Eigen::MatrixXd::Identity(m.rows(), m.rows()))
            .cwiseAbs()
            .maxCoeff();
    if (!(defect <= kOrthonormalTol))
      throw InvalidInput("frame rows are not orthonormal");
    return OrthonormalFrame{std::move(m)};
  }
};

// Orthonormal matrix with a rotation-invariant distribution: QR of a
// Gaussian matrix, columns sign-fixed by the diagonal of R. Deterministic
// per seed.
inline OrthonormalFrame random_rotation(int n, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("random_rotation requires n >= 2");
  Xoshiro256pp gen(seed);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gen.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return OrthonormalFrame{std::move(q)};
}

// Mean curvature vector H^r = (1/n) sum_i h^r_ii and its squared norm.
struct MeanCurvature {
  Eigen::VectorXd components;
  double norm_sq = 0.0;
};

// One canonical entry of a tensor document: a 1-based index triple and its
// value. Triples may arrive in any order; they are sorted on construction.
struct CubicComponent {
  std::array<int, 3> idx;
  double value;
};

class SymmetricCubic {
 public:
  SymmetricCubic() = default;

  static SymmetricCubic zero(int n) {
    check_dimension(n);
    SymmetricCubic h;
    h.n_ = n;
    h.full_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    return h;
  }

  // Builds from (triple, value) pairs. Duplicate triples (under any index
  // permutation) must agree within kConflictTol; disagreement signals
  // non-symmetric input and is rejected.
  static SymmetricCubic from_components(int n,
                                        const std::vector<CubicComponent>& raw) {
    SymmetricCubic h = zero(n);
    std::map<std::array<int, 3>, double> seen;
    for (const auto& item : raw) {
      std::array<int, 3> t = item.idx;
      for (int x : t)
        if (x < 1 || x > n)
          throw InvalidInput("component index out of range 1.." +
                             std::to_string(n));
      if (!std::isfinite(item.value))
        throw InvalidInput("component value must be finite");
      std::sort(t.begin(), t.end());
      auto it = seen.find(t);
      if (it != seen.end()) {
        if (std::abs(it->second - item.value) > kConflictTol)
          throw InvalidInput(
              "conflicting values for symmetric entries at triple (" +
              std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
              std::to_string(t[2]) + ")");
        continue;  // agreeing duplicate, collapse
      }
      seen.emplace(t, item.value);
      h.set_sym(t[0] - 1, t[1] - 1, t[2] - 1, item.value);
    }
    return h;
  }

  // Every free entry i.i.d. Gaussian(0, sigma^2), drawn in canonical
  // lexicographic order of the sorted triples. Identical (n, seed, sigma)
  // reproduce the same tensor on every platform.
  static SymmetricCubic sample(int n, std::uint64_t seed, double sigma) {
    check_dimension(n);
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
      throw InvalidInput("sigma must be finite and non-negative");
    SymmetricCubic h = zero(n);
    Xoshiro256pp gen(seed);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) h.set_sym(i, j, k, sigma * gen.gaussian());
    return h;
  }

  int n() const { return n_; }

  // 1-based accessor, invariant under all six permutations of (r, i, j).
  double value(int r, int i, int j) const {
    check_index(r);
    check_index(i);
    check_index(j);
    return full_[(static_cast<std::size_t>(r - 1) * n_ + (i - 1)) * n_ +
                 (j - 1)];
  }

  // Contiguous n x n slice h^r, 0-based r; row-major, exactly symmetric.
  const double* slice(int r) const {
    return full_.data() + static_cast<std::size_t>(r) * n_ * n_;
  }

  double frobenius_sq() const {
    double s = 0.0;
    for (double x : full_) s += x * x;
    return s;
  }

  bool is_zero() const {
    for (double x : full_)
      if (x != 0.0) return false;
    return true;
  }

  bool operator==(const SymmetricCubic& o) const {
    return n_ == o.n_ && full_ == o.full_;
  }

  // Canonical nonzero entries, sorted triples ascending.
  std::vector<CubicComponent> components() const {
    std::vector<CubicComponent> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j)
        for (int k = j; k < n_; ++k) {
          const double v =
              full_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
          if (v != 0.0) out.push_back({{i + 1, j + 1, k + 1}, v});
        }
    return out;
  }

  SymmetricCubic scaled(double factor) const {
    SymmetricCubic out = *this;
    for (double& x : out.full_) x *= factor;
    return out;
  }

  // Copy with the canonical entry at the (1-based) triple shifted by delta.
  SymmetricCubic with_entry_added(int i, int j, int k, double delta) const {
    check_index(i);
    check_index(j);
    check_index(k);
    SymmetricCubic out = *this;
    std::array<int, 3> t{i - 1, j - 1, k - 1};
    std::sort(t.begin(), t.end());
    out.set_sym(t[0], t[1], t[2], value(i, j, k) + delta);
    return out;
  }

  // Applies a frame change: h'_abc = sum_ijk Q_ai Q_bj Q_ck h_ijk. For a
  // fully symmetric tensor the result is symmetric; the canonical entry is
  // taken from the sorted-triple position so the output is exactly so.
  SymmetricCubic rotated(const OrthonormalFrame& frame) const {
    if (frame.n() != n_) throw InvalidInput("frame dimension mismatch");
    const double defect = (frame.Q * frame.Q.transpose() -
                           Eigen::MatrixXd::Identity(n_, n_))
                              .cwiseAbs()
                              .maxCoeff();
    if (!(defect <= kOrthonormalTol))
      throw InvalidInput("frame rows are not orthonormal");

    const Eigen::MatrixXd& q = frame.Q;
    std::vector<Eigen::MatrixXd> mixed(
        n_, Eigen::MatrixXd::Zero(n_, n_));  // mixed[a] = sum_i Q_ai h^i
    for (int a = 0; a < n_; ++a)
      for (int i = 0; i < n_; ++i)
        mixed[a] += q(a, i) *
                    Eigen::Map<const Eigen::MatrixXd>(slice(i), n_, n_);

    SymmetricCubic out = zero(n_);
    std::vector<Eigen::MatrixXd> turned(n_);
    for (int a = 0; a < n_; ++a) turned[a] = q * mixed[a] * q.transpose();
    for (int a = 0; a < n_; ++a)
      for (int b = a; b < n_; ++b)
        for (int c = b; c < n_; ++c) out.set_sym(a, b, c, turned[a](b, c));
    return out;
  }

 private:
  static void check_dimension(int n) {
    if (n < 3) throw InvalidInput("dimension must be at least 3");
  }

  void check_index(int x) const {
    if (x < 1 || x > n_)
      throw InvalidInput("index out of range 1.." + std::to_string(n_));
  }

  // 0-based write of all six permutations.
  void set_sym(int a, int b, int c, double v) {
    const auto at = [this](int x, int y, int z) -> double& {
      return full_[(static_cast<std::size_t>(x) * n_ + y) * n_ + z];
    };
    at(a, b, c) = v;
    at(a, c, b) = v;
    at(b, a, c) = v;
    at(b, c, a) = v;
    at(c, a, b) = v;
    at(c, b, a) = v;
  }

  int n_ = 0;
  std::vector<double> full_;
};

inline SymmetricCubic rotate(const SymmetricCubic& h,
                             const OrthonormalFrame& frame) {
  return h.rotated(frame);
}

inline MeanCurvature mean_curvature(const SymmetricCubic& h) {
  const int n = h.n();
  MeanCurvature mc;
  mc.components = Eigen::VectorXd::Zero(n);
  for (int r = 1; r <= n; ++r) {
    double trace = 0.0;
    for (int i = 1; i <= n; ++i) trace += h.value(r, i, i);
    mc.components(r - 1) = trace / n;
    mc.norm_sq += mc.components(r - 1) * mc.components(r - 1);
  }
  return mc;
}

}  // namespace chen
