#pragma once

// Intrinsic curvature of the submanifold point from (h, c):
// sectional curvature of tangent 2-planes, scalar curvature tau, minimal
// sectional curvature over the Grassmannian G(2,n), and the pinching
// invariant delta = tau - min K.
//
// K(u,v) = c/4 + sum_r [ h^r(u,u) h^r(v,v) - (h^r(u,v))^2 ] for an
// orthonormal pair (u,v); every tangent 2-plane of a Lagrangian submanifold
// is totally real, so the ambient term is the constant c/4.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "chen/errors.hpp"
#include "chen/rng.hpp"
#include "chen/tensor.hpp"

namespace chen {

struct SpaceFormParams {
  double c = 0.0;
};

struct TangentPlane {
  Eigen::VectorXd u;
  Eigen::VectorXd v;

  bool is_orthonormal(double tol = kOrthonormalTol) const {
    if (u.size() != v.size() || u.size() == 0) return false;
    return std::abs(u.norm() - 1.0) <= tol && std::abs(v.norm() - 1.0) <= tol &&
           std::abs(u.dot(v)) <= tol;
  }
};

struct MinSectionalOptions {
  int restarts = 64;          // random starts, in addition to all coordinate planes
  double grad_tol = 1e-9;     // stationarity threshold on the projected gradient
  int max_iterations = 500;   // per start
  std::uint64_t seed = 0x5EEDFACE5EEDFACEull;
};

struct MinSectionalResult {
  double value = 0.0;
  TangentPlane plane;
  bool converged = true;
};

struct CurvatureSummary {
  double tau = 0.0;
  double min_k = 0.0;
  TangentPlane argmin;
  double delta = 0.0;
  bool converged = true;
};

namespace detail {

// Allocation-free evaluation of K and its Euclidean gradient over the raw
// slice data. p and q are caller-provided workspaces of length n.
struct SectionalEvaluator {
  int n;
  double c4;
  const SymmetricCubic* h;

  double value(const double* u, const double* v, double* p, double* q) const {
    double k = c4;
    for (int r = 0; r < n; ++r) {
      const double* s = h->slice(r);
      double a = 0.0, b = 0.0, x = 0.0;
      for (int i = 0; i < n; ++i) {
        const double* row = s + static_cast<std::size_t>(i) * n;
        double pi = 0.0, qi = 0.0;
        for (int j = 0; j < n; ++j) {
          pi += row[j] * u[j];
          qi += row[j] * v[j];
        }
        p[i] = pi;
        q[i] = qi;
        a += u[i] * pi;
        b += v[i] * qi;
        x += u[i] * qi;
      }
      k += a * b - x * x;
    }
    return k;
  }

  double value_grad(const double* u, const double* v, double* gu, double* gv,
                    double* p, double* q) const {
    double k = c4;
    for (int i = 0; i < n; ++i) {
      gu[i] = 0.0;
      gv[i] = 0.0;
    }
    for (int r = 0; r < n; ++r) {
      const double* s = h->slice(r);
      double a = 0.0, b = 0.0, x = 0.0;
      for (int i = 0; i < n; ++i) {
        const double* row = s + static_cast<std::size_t>(i) * n;
        double pi = 0.0, qi = 0.0;
        for (int j = 0; j < n; ++j) {
          pi += row[j] * u[j];
          qi += row[j] * v[j];
        }
        p[i] = pi;
        q[i] = qi;
        a += u[i] * pi;
        b += v[i] * qi;
        x += u[i] * qi;
      }
      k += a * b - x * x;
      for (int i = 0; i < n; ++i) {
        gu[i] += 2.0 * (b * p[i] - x * q[i]);
        gv[i] += 2.0 * (a * q[i] - x * p[i]);
      }
    }
    return k;
  }
};

inline double dot_n(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Gram-Schmidt on the pair; false if the pair is numerically collinear.
inline bool orthonormalize_pair(double* a, double* b, int n) {
  const double na = std::sqrt(dot_n(a, a, n));
  if (na < 1e-14) return false;
  for (int i = 0; i < n; ++i) a[i] /= na;
  const double d = dot_n(a, b, n);
  for (int i = 0; i < n; ++i) b[i] -= d * a[i];
  const double nb = std::sqrt(dot_n(b, b, n));
  if (nb < 1e-14) return false;
  for (int i = 0; i < n; ++i) b[i] /= nb;
  return true;
}

// Removes the components of g along u and v (the gauge and constraint
// directions of the Grassmannian parametrization).
inline void project_tangent(const double* u, const double* v, double* g,
                            int n) {
  const double cu = dot_n(g, u, n);
  const double cv = dot_n(g, v, n);
  for (int i = 0; i < n; ++i) g[i] -= cu * u[i] + cv * v[i];
}

inline void flip_sign_canonical(double* a, int n) {
  for (int i = 0; i < n; ++i) {
    if (std::abs(a[i]) > 1e-12) {
      if (a[i] < 0.0)
        for (int j = 0; j < n; ++j) a[j] = -a[j];
      return;
    }
  }
}

inline bool lex_less(const double* au, const double* av, const double* bu,
                     const double* bv, int n) {
  for (int i = 0; i < n; ++i) {
    if (au[i] != bu[i]) return au[i] < bu[i];
  }
  for (int i = 0; i < n; ++i) {
    if (av[i] != bv[i]) return av[i] < bv[i];
  }
  return false;
}

struct DescentScratch {
  std::vector<double> gu, gv, cu, cv, ngu, ngv, bu, bv, p, q;
  void resize(int n) {
    gu.resize(n);
    gv.resize(n);
    cu.resize(n);
    cv.resize(n);
    ngu.resize(n);
    ngv.resize(n);
    bu.resize(n);
    bv.resize(n);
    p.resize(n);
    q.resize(n);
  }
};

// Projected-gradient descent with a Barzilai-Borwein step and Armijo
// backtracking; retraction by pair re-orthonormalization. Near the
// minimum the Armijo decrease falls below the floating-point resolution
// of the value, so steps that do not increase the value beyond that noise
// are accepted; this lets the gradient norm contract to the tolerance.
// Returns the lowest value seen; u, v hold its plane.
inline double descend(const SectionalEvaluator& ev, double* u, double* v,
                      const MinSectionalOptions& opts, DescentScratch& ws,
                      bool* converged) {
  const int n = ev.n;
  double* gu = ws.gu.data();
  double* gv = ws.gv.data();
  double* cu = ws.cu.data();
  double* cv = ws.cv.data();
  double* ngu = ws.ngu.data();
  double* ngv = ws.ngv.data();
  double* bu = ws.bu.data();
  double* bv = ws.bv.data();
  double* p = ws.p.data();
  double* q = ws.q.data();

  double f = ev.value_grad(u, v, gu, gv, p, q);
  project_tangent(u, v, gu, n);
  project_tangent(u, v, gv, n);
  double gsq = dot_n(gu, gu, n) + dot_n(gv, gv, n);
  double step = 1.0 / (1.0 + std::sqrt(gsq));
  *converged = false;

  double best_f = f;
  std::copy(u, u + n, bu);
  std::copy(v, v + n, bv);

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (std::sqrt(gsq) <= opts.grad_tol) {
      *converged = true;
      break;
    }

    bool accepted = false;
    double fc = f;
    const double noise = 1e-13 * std::max(1.0, std::abs(f));
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < n; ++i) {
        cu[i] = u[i] - step * gu[i];
        cv[i] = v[i] - step * gv[i];
      }
      if (orthonormalize_pair(cu, cv, n)) {
        fc = ev.value(cu, cv, p, q);
        const double need = 1e-4 * step * gsq;
        if (need > noise ? fc <= f - need : fc <= f + noise) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
      if (step < 1e-16) break;
    }
    if (!accepted) break;  // no further progress possible at fp resolution

    const double fnew = ev.value_grad(cu, cv, ngu, ngv, p, q);
    project_tangent(cu, cv, ngu, n);
    project_tangent(cu, cv, ngv, n);

    // Barzilai-Borwein step from the displacement and gradient change.
    double ss = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
      const double su = cu[i] - u[i];
      const double sv = cv[i] - v[i];
      ss += su * su + sv * sv;
      sy += su * (ngu[i] - gu[i]) + sv * (ngv[i] - gv[i]);
    }
    step = (sy > 1e-18) ? std::min(std::max(ss / sy, 1e-12), 1e8) : step * 2.0;

    for (int i = 0; i < n; ++i) {
      u[i] = cu[i];
      v[i] = cv[i];
      gu[i] = ngu[i];
      gv[i] = ngv[i];
    }
    f = fnew;
    gsq = dot_n(gu, gu, n) + dot_n(gv, gv, n);
    if (f < best_f) {
      best_f = f;
      std::copy(u, u + n, bu);
      std::copy(v, v + n, bv);
    }
  }
  std::copy(bu, bu + n, u);
  std::copy(bv, bv + n, v);
  return best_f;
}

}  // namespace detail

inline double sectional(const SymmetricCubic& h, const SpaceFormParams& c,
                        const TangentPlane& plane) {
  if (static_cast<int>(plane.u.size()) != h.n() ||
      static_cast<int>(plane.v.size()) != h.n())
    throw InvalidInput("plane dimension mismatch");
  if (!plane.is_orthonormal())
    throw InvalidInput("plane vectors must be orthonormal");
  const int n = h.n();
  std::vector<double> p(n), q(n);
  detail::SectionalEvaluator ev{n, c.c / 4.0, &h};
  return ev.value(plane.u.data(), plane.v.data(), p.data(), q.data());
}

inline double scalar_curvature(const SymmetricCubic& h,
                               const SpaceFormParams& c) {
  const int n = h.n();
  double tau = 0.5 * n * (n - 1) * (c.c / 4.0);
  for (int r = 0; r < n; ++r) {
    const double* s = h.slice(r);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double hij = s[static_cast<std::size_t>(i) * n + j];
        tau += s[static_cast<std::size_t>(i) * n + i] *
                   s[static_cast<std::size_t>(j) * n + j] -
               hij * hij;
      }
  }
  return tau;
}

// Minimal sectional curvature over all tangent 2-planes: multi-start local
// descent on G(2,n), starting from every coordinate plane plus
// opts.restarts random planes. The reduction keeps the smallest value with
// a lexicographic tie-break on the sign-canonicalized plane coordinates, so
// the result does not depend on start order.
inline MinSectionalResult min_sectional(const SymmetricCubic& h,
                                        const SpaceFormParams& c,
                                        const MinSectionalOptions& opts = {}) {
  const int n = h.n();
  detail::SectionalEvaluator ev{n, c.c / 4.0, &h};
  detail::DescentScratch ws;
  ws.resize(n);
  std::vector<double> u(n), v(n), bu(n), bv(n);
  double best = std::numeric_limits<double>::infinity();
  bool best_converged = true;
  Xoshiro256pp gen(opts.seed);

  const int coord_starts = n * (n - 1) / 2;
  const int total = coord_starts + std::max(opts.restarts, 0);
  int prepared = 0;
  for (int start = 0; start < total; ++start) {
    if (start < coord_starts) {
      int idx = start, i = 0;
      while (idx >= n - 1 - i) {
        idx -= n - 1 - i;
        ++i;
      }
      const int j = i + 1 + idx;
      std::fill(u.begin(), u.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      u[i] = 1.0;
      v[j] = 1.0;
    } else {
      do {
        for (int i = 0; i < n; ++i) u[i] = gen.gaussian();
        for (int i = 0; i < n; ++i) v[i] = gen.gaussian();
      } while (!detail::orthonormalize_pair(u.data(), v.data(), n));
    }
    ++prepared;

    bool conv = false;
    const double val = detail::descend(ev, u.data(), v.data(), opts, ws, &conv);
    detail::flip_sign_canonical(u.data(), n);
    detail::flip_sign_canonical(v.data(), n);
    const bool take =
        val < best ||
        (val == best &&
         detail::lex_less(u.data(), v.data(), bu.data(), bv.data(), n));
    if (take || prepared == 1) {
      best = val;
      bu = u;
      bv = v;
      best_converged = conv;
    }
  }

  MinSectionalResult res;
  res.value = best;
  res.plane.u = Eigen::Map<Eigen::VectorXd>(bu.data(), n);
  res.plane.v = Eigen::Map<Eigen::VectorXd>(bv.data(), n);
  res.converged = best_converged;
  return res;
}

namespace detail {

inline double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double digit = 1.0 / base;
  while (index > 0) {
    result += digit * static_cast<double>(index % base);
    index /= base;
    digit /= base;
  }
  return result;
}

// Acklam's rational approximation of the standard normal quantile.
inline double inverse_normal_cdf(double p) {
  p = std::min(std::max(p, 1e-12), 1.0 - 1e-12);
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double cc[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double qq = std::sqrt(-2.0 * std::log(p));
    return (((((cc[0] * qq + cc[1]) * qq + cc[2]) * qq + cc[3]) * qq + cc[4]) *
                qq +
            cc[5]) /
           ((((d[0] * qq + d[1]) * qq + d[2]) * qq + d[3]) * qq + 1.0);
  }
  if (p > 1.0 - plow) {
    const double qq = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((cc[0] * qq + cc[1]) * qq + cc[2]) * qq + cc[3]) * qq + cc[4]) *
                 qq +
             cc[5]) /
           ((((d[0] * qq + d[1]) * qq + d[2]) * qq + d[3]) * qq + 1.0);
  }
  const double qq = p - 0.5;
  const double rr = qq * qq;
  return (((((a[0] * rr + a[1]) * rr + a[2]) * rr + a[3]) * rr + a[4]) * rr +
          a[5]) *
         qq /
         (((((b[0] * rr + b[1]) * rr + b[2]) * rr + b[3]) * rr + b[4]) * rr +
          1.0);
}

inline constexpr int kPrimes[] = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,
    43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101,
    103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
    173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239,
    241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};

inline constexpr int kCoarseOracleBudget = 4096;

}  // namespace detail

// Deterministic brute-force upper bound on min K. For n = 3 every 2-plane
// is the orthogonal complement of a unit normal, so the unit sphere is
// gridded at `resolution` steps per angle and K is evaluated on each plane;
// refining the resolution can only lower the result, and it converges to
// min K. For n > 3 a coarse mode evaluates all coordinate planes plus a
// fixed budget of quasi-random (Halton) planes.
inline double min_sectional_oracle(const SymmetricCubic& h,
                                   const SpaceFormParams& c, int resolution) {
  const int n = h.n();
  detail::SectionalEvaluator ev{n, c.c / 4.0, &h};
  std::vector<double> p(n), q(n);
  double best = std::numeric_limits<double>::infinity();

  if (n == 3) {
    if (resolution < 1) throw InvalidInput("resolution must be positive");
    const double pi = 3.14159265358979323846;
    double w[3], u[3], v[3];
    for (int i = 0; i <= resolution; ++i) {
      const double theta = pi * i / resolution;
      const double st = std::sin(theta), ct = std::cos(theta);
      for (int j = 0; j < resolution; ++j) {
        const double phi = 2.0 * pi * j / resolution;
        w[0] = st * std::cos(phi);
        w[1] = st * std::sin(phi);
        w[2] = ct;
        int m = 0;
        if (std::abs(w[1]) < std::abs(w[m])) m = 1;
        if (std::abs(w[2]) < std::abs(w[m])) m = 2;
        double e[3] = {0.0, 0.0, 0.0};
        e[m] = 1.0;
        u[0] = w[1] * e[2] - w[2] * e[1];
        u[1] = w[2] * e[0] - w[0] * e[2];
        u[2] = w[0] * e[1] - w[1] * e[0];
        const double nu =
            std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        u[0] /= nu;
        u[1] /= nu;
        u[2] /= nu;
        v[0] = w[1] * u[2] - w[2] * u[1];
        v[1] = w[2] * u[0] - w[0] * u[2];
        v[2] = w[0] * u[1] - w[1] * u[0];
        best = std::min(best, ev.value(u, v, p.data(), q.data()));
      }
    }
    return best;
  }

  if (2 * n > static_cast<int>(std::size(detail::kPrimes)))
    throw InvalidInput("coarse oracle supports n up to 32");
  std::vector<double> u(n), v(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::fill(u.begin(), u.end(), 0.0);
      std::fill(v.begin(), v.end(), 0.0);
      u[i] = 1.0;
      v[j] = 1.0;
      best = std::min(best, ev.value(u.data(), v.data(), p.data(), q.data()));
    }
  for (int t = 1; t <= detail::kCoarseOracleBudget; ++t) {
    for (int i = 0; i < n; ++i) {
      u[i] = detail::inverse_normal_cdf(
          detail::radical_inverse(t, detail::kPrimes[2 * i]));
      v[i] = detail::inverse_normal_cdf(
          detail::radical_inverse(t, detail::kPrimes[2 * i + 1]));
    }
    if (!detail::orthonormalize_pair(u.data(), v.data(), n)) continue;
    best = std::min(best, ev.value(u.data(), v.data(), p.data(), q.data()));
  }
  return best;
}

inline CurvatureSummary chen_delta(const SymmetricCubic& h,
                                   const SpaceFormParams& c,
                                   const MinSectionalOptions& opts = {}) {
  CurvatureSummary out;
  out.tau = scalar_curvature(h, c);
  MinSectionalResult min = min_sectional(h, c, opts);
  out.min_k = min.value;
  out.argmin = std::move(min.plane);
  out.delta = out.tau - out.min_k;
  out.converged = min.converged;
  return out;
}

// Orthonormal frame whose first two rows span the given plane, completed
// deterministically by Gram-Schmidt over the coordinate directions (largest
// residual first).
inline OrthonormalFrame adapted_frame(const TangentPlane& plane) {
  if (!plane.is_orthonormal())
    throw InvalidInput("plane vectors must be orthonormal");
  const int n = static_cast<int>(plane.u.size());
  Eigen::MatrixXd q(n, n);
  q.row(0) = plane.u;
  q.row(1) = plane.v;
  int rows = 2;
  std::vector<bool> used(n, false);
  while (rows < n) {
    int pick = -1;
    double pick_norm = -1.0;
    Eigen::VectorXd pick_vec;
    for (int cand = 0; cand < n; ++cand) {
      if (used[cand]) continue;
      Eigen::VectorXd w = Eigen::VectorXd::Unit(n, cand);
      for (int pass = 0; pass < 2; ++pass)
        for (int r = 0; r < rows; ++r) w -= q.row(r).dot(w) * q.row(r).transpose();
      const double wn = w.norm();
      if (wn > pick_norm) {
        pick_norm = wn;
        pick = cand;
        pick_vec = std::move(w);
      }
    }
    used[pick] = true;
    q.row(rows++) = pick_vec / pick_norm;
  }
  return OrthonormalFrame{std::move(q)};
}

// Evaluates, on the rotated tensor h' = rotate(h, Q), the exact adapted
// frame expansion of delta:
//   (n-2)(n+1)/2 * c/4
//   + sum_r [ sum_{j>=3} (h'^r_11 + h'^r_22) h'^r_jj
//           + sum_{3<=i<j} h'^r_ii h'^r_jj
//           - sum_{j>=3} (h'^r_1j)^2 - sum_{2<=i<j} (h'^r_ij)^2 ].
// When the first two rows of Q span a minimizing plane this equals delta.
inline double delta_from_adapted_frame(const SymmetricCubic& h,
                                       const SpaceFormParams& c,
                                       const OrthonormalFrame& frame) {
  const SymmetricCubic hp = h.rotated(frame);
  const int n = hp.n();
  double total = 0.5 * (n - 2) * (n + 1) * (c.c / 4.0);
  for (int r = 0; r < n; ++r) {
    const double* s = hp.slice(r);
    const auto at = [&](int i, int j) {
      return s[static_cast<std::size_t>(i) * n + j];
    };
    const double d12 = at(0, 0) + at(1, 1);
    for (int j = 2; j < n; ++j) total += d12 * at(j, j);
    for (int i = 2; i < n; ++i)
      for (int j = i + 1; j < n; ++j) total += at(i, i) * at(j, j);
    for (int j = 2; j < n; ++j) total -= at(0, j) * at(0, j);
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j < n; ++j) total -= at(i, j) * at(i, j);
  }
  return total;
}

}  // namespace chen
