// Acceptance suite: exercises every advertised guarantee of the library end
// to end, printing one [PASS]/[FAIL] line per criterion plus the measured
// numbers behind the verdict. The process exit code is the number of failed
// criteria, so a fully green run exits 0.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "chen/chen.hpp"

namespace {

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  return std::string(buf);
}

struct Criterion {
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Dense brute-force maximization of the two n = 3 family patterns over the
// sum-k hyperplane, parameterized by (x1, x2) with x3 = k - x1 - x2. The
// box is centered on the closed-form argmax, wide enough that the true
// maximizer is interior, and fine enough that the grid best is within the
// quoted brute-force tolerance of the true maximum.
template <typename F>
double grid_best(F&& value, double cx1, double cx2, double k) {
  const double half = 2.0;
  const int steps = 1000;  // 1001 points per axis, spacing 4e-3
  const double lo1 = cx1 - half, lo2 = cx2 - half;
  const double step = 2.0 * half / steps;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double x1 = lo1 + i * step;
    for (int j = 0; j <= steps; ++j) {
      const double x2 = lo2 + j * step;
      best = std::max(best, value(x1, x2, k - x1 - x2));
    }
  }
  return best;
}

double f1_n3(double x1, double x2, double x3) {
  return (x1 + x2) * x3 - x3 * x3;
}

double f3_n3(double x1, double x2, double x3) {
  return (x1 + x2) * x3 - x1 * x1 - x2 * x2;
}

// 1. Numeric KKT maximization of the first quadratic family agrees with its
//    closed form for n = 3..8, and with an independent grid at n = 3.
Criterion criterion_1() {
  Criterion c{"closed-form maximum of the first quadratic family"};
  double worst_rel = 0.0, worst_grid = 0.0;
  bool ok = true;
  for (int n = 3; n <= 8; ++n) {
    const chen::QuadraticForm form = chen::build_f1(n);
    chen::Xoshiro256pp rng(chen::stream_seed(101, n));
    for (int i = 0; i < 100; ++i) {
      const double k = -10.0 + 20.0 * rng.uniform01();
      const chen::ClosedFormMax closed = chen::closed_form_max(n, 1, k);
      const chen::KKTSolution sol = chen::maximize_on_hyperplane(form, k);
      const double rel = std::abs(sol.value - closed.value) /
                         std::max(1.0, std::abs(closed.value));
      worst_rel = std::max(worst_rel, rel);
      ok = ok && rel <= 1e-9 && std::isfinite(sol.value);
      if (n == 3) {
        const double a = k / (n + 1);
        const double grid = grid_best(f1_n3, 1.5 * a, 1.5 * a, k);
        const double diff = std::abs(closed.value - grid);
        worst_grid = std::max(worst_grid, diff);
        ok = ok && diff <= 1e-3;
      }
    }
  }
  c.details.push_back(strf(
      "numeric vs closed value, n=3..8 x 100 k: max rel diff = %.3g (tol 1e-9)",
      worst_rel));
  c.details.push_back(
      strf("n=3 grid brute force: max |closed - grid| = %.3g (tol 1e-3)",
           worst_grid));
  c.pass = ok;
  return c;
}

// 2. Same protocol for the higher families, including the closed-form
//    argmax pattern (3, 3, 4, ..., 12 at slot r, ..., 4) * k/(4n+6).
Criterion criterion_2() {
  Criterion c{"closed-form maximum and argmax of the higher quadratic families"};
  double worst_rel = 0.0, worst_arg = 0.0, worst_grid = 0.0;
  bool ok = true;
  for (int n = 3; n <= 8; ++n) {
    for (int r = 3; r <= n; ++r) {
      const chen::QuadraticForm form = chen::build_fr(n, r);
      chen::Xoshiro256pp rng(chen::stream_seed(202, 100 * n + r));
      for (int i = 0; i < 100; ++i) {
        const double k = -10.0 + 20.0 * rng.uniform01();
        const chen::ClosedFormMax closed = chen::closed_form_max(n, r, k);
        const chen::KKTSolution sol = chen::maximize_on_hyperplane(form, k);
        const double rel = std::abs(sol.value - closed.value) /
                           std::max(1.0, std::abs(closed.value));
        worst_rel = std::max(worst_rel, rel);
        ok = ok && rel <= 1e-9;
        const double arg =
            (sol.argmax - closed.argmax).cwiseAbs().maxCoeff();
        worst_arg = std::max(worst_arg, arg);
        ok = ok && arg <= 1e-8;
        if (n == 3) {
          const double a = k / (4 * n + 6);
          const double grid = grid_best(f3_n3, 3.0 * a, 3.0 * a, k);
          const double diff = std::abs(closed.value - grid);
          worst_grid = std::max(worst_grid, diff);
          ok = ok && diff <= 1e-3;
        }
      }
    }
  }
  c.details.push_back(strf(
      "numeric vs closed value, n=3..8, r=3..n x 100 k: max rel diff = %.3g "
      "(tol 1e-9)",
      worst_rel));
  c.details.push_back(
      strf("numeric vs closed argmax: max abs diff = %.3g (tol 1e-8)",
           worst_arg));
  c.details.push_back(
      strf("n=3 grid brute force: max |closed - grid| = %.3g (tol 1e-3)",
           worst_grid));
  c.pass = ok;
  return c;
}

// 3. Every family's Hessian, projected onto the constraint hyperplane, is
//    negative semidefinite: largest projected eigenvalue <= 1e-10.
Criterion criterion_3() {
  Criterion c{"projected Hessians are negative semidefinite"};
  double worst = -std::numeric_limits<double>::infinity();
  for (int n = 3; n <= 10; ++n) {
    for (int r = 1; r <= n; ++r) {
      const Eigen::VectorXd spec =
          chen::projected_hessian_spectrum(chen::build_fr(n, r));
      worst = std::max(worst, spec.maxCoeff());
    }
  }
  c.details.push_back(strf(
      "largest projected eigenvalue over n=3..10, all r: %.3g (tol 1e-10)",
      worst));
  c.pass = worst <= 1e-10;
  return c;
}

// 4. Randomized verification of both curvature bounds: 10^4 tensors per
//    (n, c) pair, zero violations at tolerance 1e-8.
Criterion criterion_4() {
  Criterion c{"randomized bound verification finds zero violations"};
  long violations = 0;
  long total = 0;
  long nonconverged = 0;
  double worst_classic = std::numeric_limits<double>::infinity();
  double worst_improved = std::numeric_limits<double>::infinity();
  for (int n : {3, 4, 5}) {
    for (double cc : {-4.0, 0.0, 4.0}) {
      const std::uint64_t seed =
          1000 * static_cast<std::uint64_t>(n) + (cc < 0 ? 1 : cc > 0 ? 3 : 2);
      const chen::BatchSummary sum =
          chen::batch_verify(n, cc, 10000, 1.0, seed, 1e-8);
      violations += sum.violations;
      total += static_cast<long>(sum.reports.size());
      for (const chen::BoundReport& rep : sum.reports)
        if (!rep.converged) ++nonconverged;
      worst_classic = std::min(worst_classic, sum.min_classic_margin);
      worst_improved = std::min(worst_improved, sum.min_improved_margin);
    }
  }
  c.details.push_back(strf(
      "%ld samples over (n, c) in {3,4,5} x {-4,0,4}, sigma = 1: %ld "
      "violations (tol 1e-8)",
      total, violations));
  c.details.push_back(
      strf("worst classic margin = %.6g, worst improved margin = %.6g",
           worst_classic, worst_improved));
  c.details.push_back(strf("optimizer non-convergences: %ld", nonconverged));
  c.pass = violations == 0 && total == 90000;
  return c;
}

// 5. Adversarial search with a 10^3-restart budget cannot find a tensor
//    whose delta exceeds the improved bound.
Criterion criterion_5() {
  Criterion c{"adversarial search finds no bound violation"};
  chen::SearchConfig cfg;
  cfg.restarts = 1000;
  cfg.steps = 60;
  cfg.step_size = 0.5;
  cfg.seed = 1;
  cfg.tol = 1e-8;
  const chen::SearchResult res = chen::adversarial_search(3, 0.0, cfg);
  c.details.push_back(strf(
      "n=3, c=0, 1000 restarts: worst delta - improvedRHS = %.6g (tol 1e-8), "
      "%lld evaluations",
      res.worst_margin, res.evaluations));
  c.pass = res.worst_margin <= 1e-8;
  return c;
}

// 6. The zero tensor attains both bounds exactly.
Criterion criterion_6() {
  Criterion c{"zero tensor attains both bounds exactly"};
  double worst = 0.0;
  bool ok = true;
  for (int n = 3; n <= 6; ++n) {
    for (double cc : {-4.0, 0.0, 4.0}) {
      const chen::BoundReport rep =
          chen::verify_point(chen::SymmetricCubic::zero(n), {cc}, 1e-8);
      const double expected = 0.5 * (n - 2) * (n + 1) * (cc / 4.0);
      const double err = std::max(
          {std::abs(rep.delta - expected), std::abs(rep.improved_rhs - expected),
           std::abs(rep.classic_rhs - expected)});
      worst = std::max(worst, err);
      ok = ok && err <= 1e-12;
    }
  }
  c.details.push_back(strf(
      "max |value - (n-2)(n+1)/2 * c/4| over n=3..6, c in {-4,0,4}: %.3g "
      "(tol 1e-12)",
      worst));
  c.pass = ok;
  return c;
}

// 7. The improved bound dominates the classic one with equality only at
//    vanishing mean curvature; the minimality probe finds no counterexample;
//    the integer coefficient orderings are strict for n = 3..100.
Criterion criterion_7() {
  Criterion c{"improved bound dominates classic; minimality corollary holds"};
  bool ok = true;

  double worst_identity = 0.0;
  long strict_failures = 0;
  for (int n : {3, 4, 5, 6}) {
    const double gap = chen::gap_coefficient(n);
    for (int i = 0; i < 2500; ++i) {
      const chen::SymmetricCubic h =
          chen::SymmetricCubic::sample(n, chen::stream_seed(707, 10000 * n + i), 1.0);
      const double hsq = chen::mean_curvature(h).norm_sq;
      const double diff =
          chen::classic_bound(h, {4.0}) - chen::improved_bound(h, {4.0});
      if (hsq > 1e-12 && !(diff > 0.0)) ++strict_failures;
      const double identity_err =
          std::abs(diff - gap * hsq) / std::max(1.0, gap * hsq);
      worst_identity = std::max(worst_identity, identity_err);
    }
  }
  const double zero_diff =
      chen::classic_bound(chen::SymmetricCubic::zero(3), {4.0}) -
      chen::improved_bound(chen::SymmetricCubic::zero(3), {4.0});
  ok = ok && strict_failures == 0 && worst_identity <= 1e-12 &&
       std::abs(zero_diff) <= 1e-12;
  c.details.push_back(strf(
      "10^4 samples: dominance strict whenever |H|^2 > 1e-12 (%ld failures); "
      "gap identity rel err = %.3g; zero-tensor gap = %.3g",
      strict_failures, worst_identity, zero_diff));

  chen::SearchConfig cfg;
  cfg.restarts = 100;
  cfg.steps = 60;
  cfg.step_size = 0.5;
  cfg.seed = 7;
  cfg.tol = 1e-6;
  const chen::ProbeResult probe = chen::minimality_probe(3, 0.0, cfg);
  ok = ok && !probe.found;
  c.details.push_back(strf(
      "minimality probe (classic margin <= 1e-6 with |H|^2 >= 1e-3): %s; "
      "best margin at the norm floor = %.6g",
      probe.found ? "counterexample found" : "nothing found", probe.best_margin));

  long rows_checked = 0;
  bool orderings = true;
  for (const chen::CoefficientRow& row : chen::coefficient_comparison(100)) {
    orderings = orderings && row.improved_strict && row.minimal_strict &&
                row.linear_gap == 4LL * row.n - 9 && row.linear_gap > 0;
    ++rows_checked;
  }
  ok = ok && orderings && rows_checked == 98;
  c.details.push_back(strf(
      "integer coefficient orderings strict for n=3..100: %s (%ld rows)",
      orderings ? "yes" : "NO", rows_checked));

  c.pass = ok;
  return c;
}

// 8. Cross-checks of the minimum-curvature optimizer: agreement with the
//    resolution-400 sphere-grid oracle at 1e-5 on 10^3 tensors, and frame-
//    rotation invariance of delta at 1e-6 over 100 rotations.
Criterion criterion_8() {
  Criterion c{"optimizer vs grid oracle and rotation invariance"};

  std::vector<double> diffs;
  diffs.reserve(1000);
  long beyond_tol = 0;
  for (int i = 0; i < 1000; ++i) {
    const chen::SymmetricCubic h =
        chen::SymmetricCubic::sample(3, chen::stream_seed(808, i), 1.0);
    const double descent = chen::min_sectional(h, {0.0}).value;
    const double oracle = chen::min_sectional_oracle(h, {0.0}, 400);
    const double diff = std::abs(descent - oracle);
    diffs.push_back(diff);
    if (diff > 1e-5) ++beyond_tol;
  }
  std::sort(diffs.begin(), diffs.end());
  const double max_diff = diffs.back();
  const double median_diff = diffs[diffs.size() / 2];
  const bool grid_ok = beyond_tol == 0;
  c.details.push_back(strf(
      "10^3 tensors at n=3: |descent minK - grid(400) minK| median = %.3g, "
      "max = %.3g; %ld of 1000 exceed the 1e-5 tolerance",
      median_diff, max_diff, beyond_tol));
  if (!grid_ok) {
    c.details.push_back(
        "the gap is one-sided: a resolution-400 sphere grid can only "
        "overshoot the true minimum, and its plane spacing leaves it up to "
        "~1e-3 above the true minimum on this sample family");
    c.details.push_back(
        "the descent minimum itself matches an exact eigenvalue-based n=3 "
        "reference to below 1e-9 (see MinSectional.MatchesExactEigenReferenceAtN3 "
        "in the unit suite), so the disagreement measures the grid, not the "
        "optimizer");
  }

  double worst_rot = 0.0;
  for (int t = 0; t < 5; ++t) {
    const chen::SymmetricCubic h =
        chen::SymmetricCubic::sample(3, chen::stream_seed(818, t), 1.0);
    const double base = chen::chen_delta(h, {4.0}).delta;
    for (int j = 0; j < 20; ++j) {
      const chen::OrthonormalFrame q =
          chen::random_rotation(3, chen::stream_seed(819, 100 * t + j));
      const double rotated = chen::chen_delta(h.rotated(q), {4.0}).delta;
      worst_rot = std::max(worst_rot, std::abs(rotated - base));
    }
  }
  const bool rot_ok = worst_rot <= 1e-6;
  c.details.push_back(strf(
      "delta under 100 random frame rotations: max |change| = %.3g (tol 1e-6)",
      worst_rot));

  c.pass = grid_ok && rot_ok;
  return c;
}

// 9. The two pointwise proof steps behind the improved bound hold on 10^4
//    random tensors: the adapted-frame expansion reproduces delta, and
//    dropping the off-pattern squares only increases the value.
Criterion criterion_9() {
  Criterion c{"adapted-frame identity and majorization hold on random samples"};
  double worst_identity = 0.0;
  double worst_slack = std::numeric_limits<double>::infinity();
  double worst_decomp = 0.0;
  long failures = 0;
  long total = 0;
  const double cs[3] = {-4.0, 0.0, 4.0};
  const int counts[3] = {4000, 3000, 3000};
  const int ns[3] = {3, 4, 5};
  for (int t = 0; t < 3; ++t) {
    for (int i = 0; i < counts[t]; ++i) {
      const chen::SymmetricCubic h = chen::SymmetricCubic::sample(
          ns[t], chen::stream_seed(909 + ns[t], i), 1.0);
      const chen::AuditRecord rec = chen::proof_step_audit(h, {cs[i % 3]});
      worst_identity =
          std::max(worst_identity, std::abs(rec.adapted_identity - rec.delta));
      worst_slack = std::min(worst_slack,
                             rec.majorized_bound - rec.adapted_identity);
      worst_decomp = std::max(
          worst_decomp,
          std::abs(rec.quadratic_form_total - rec.majorized_bound));
      if (!rec.all_ok()) ++failures;
      ++total;
    }
  }
  c.details.push_back(strf(
      "%ld audits (n in {3,4,5}, c cycling {-4,0,4}): %ld failures", total,
      failures));
  c.details.push_back(strf(
      "max |adapted-frame expansion - delta| = %.3g (tol 1e-8)", worst_identity));
  c.details.push_back(
      strf("min majorization slack = %.3g (tol >= -1e-10)", worst_slack));
  c.details.push_back(strf(
      "max |majorized remainder - quadratic-family total| = %.3g (tol 1e-10)",
      worst_decomp));
  c.pass = failures == 0 && worst_identity <= 1e-8 && worst_slack >= -1e-10 &&
           worst_decomp <= 1e-10;
  return c;
}

// 10. The worked concrete case: a single free entry ((1,1,2), 1) at n = 3,
//     c = 0 reproduces all six reference values.
Criterion criterion_10() {
  Criterion c{"worked concrete case reproduces all reference values"};
  const chen::SymmetricCubic h =
      chen::SymmetricCubic::from_components(3, {{{1, 1, 2}, 1.0}});
  const chen::CurvatureSummary s = chen::chen_delta(h, {0.0});
  const chen::BoundReport rep = chen::verify_point(h, {0.0}, 1e-8);
  const double errs[6] = {
      std::abs(s.tau - (-1.0)),
      std::abs(s.min_k - (-1.0)),
      std::abs(s.delta - 0.0),
      std::abs(rep.mean_curv_norm_sq - 1.0 / 9.0),
      std::abs(rep.improved_rhs - 1.0 / 6.0),
      std::abs(rep.classic_rhs - 0.25),
  };
  const double worst = *std::max_element(errs, errs + 6);
  c.details.push_back(strf(
      "tau = %.12g, minK = %.12g, delta = %.3g, |H|^2 = %.12g, improvedRHS = "
      "%.12g, classicRHS = %.12g",
      s.tau, s.min_k, s.delta, rep.mean_curv_norm_sq, rep.improved_rhs,
      rep.classic_rhs));
  c.details.push_back(
      strf("max deviation from reference values = %.3g (tol 1e-9)", worst));
  c.pass = worst <= 1e-9;
  return c;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  Criterion (*const criteria[])() = {
      criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
  };
  int failed = 0;
  int index = 0;
  for (auto* fn : criteria) {
    const auto tc = std::chrono::steady_clock::now();
    const Criterion c = fn();
    ++index;
    if (!c.pass) ++failed;
    std::printf("[%s] criterion %d: %s (%.1fs)\n", c.pass ? "PASS" : "FAIL",
                index, c.title.c_str(), seconds_since(tc));
    for (const std::string& line : c.details)
      std::printf("        %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/10 criteria passed (total %.1fs)\n", 10 - failed,
              seconds_since(t0));
  return failed;
}
