// chen: command-line front end for the curvature bound toolkit.
//
// Subcommands: invariant, verify, maximize, search, probe, audit, compare.
// Exit codes: 0 all checks pass, 1 a mathematical violation was found,
// 2 usage or input error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chen/chen.hpp"

namespace {

using nlohmann::ordered_json;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string vec_text(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt12(v(i));
  }
  out += "]";
  return out;
}

ordered_json vec_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

// Resolves --output: a path opens a file, otherwise stdout is used.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw chen::InvalidInput("cannot open output file: " + path);
      os_ = &file_;
    }
  }
  std::ostream& os() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = &std::cout;
};

chen::SymmetricCubic load_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw chen::InvalidInput("cannot open input file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return chen::tensor_from_json_text(ss.str());
}

const char* yesno(bool b) { return b ? "yes" : "no"; }

// ---- invariant ----

struct InvariantArgs {
  std::string input;
  double c = 0.0;
  int restarts = 64;
  int steps = 500;
  std::string output;
  std::string format = "text";
};

int run_invariant(const InvariantArgs& a) {
  const chen::SymmetricCubic h = load_tensor(a.input);
  chen::MinSectionalOptions opts;
  opts.restarts = a.restarts;
  opts.max_iterations = a.steps;
  const chen::CurvatureSummary s = chen::chen_delta(h, {a.c}, opts);
  Output out(a.output);
  if (a.format == "json") {
    ordered_json doc;
    doc["n"] = h.n();
    doc["c"] = a.c;
    doc["tau"] = s.tau;
    doc["minK"] = s.min_k;
    doc["delta"] = s.delta;
    doc["argmin"]["u"] = vec_json(s.argmin.u);
    doc["argmin"]["v"] = vec_json(s.argmin.v);
    doc["converged"] = s.converged;
    out.os() << doc.dump() << '\n';
  } else if (a.format == "csv") {
    out.os() << "n,c,tau,minK,delta,converged\n"
             << h.n() << ',' << chen::format_g17(a.c) << ','
             << chen::format_g17(s.tau) << ',' << chen::format_g17(s.min_k)
             << ',' << chen::format_g17(s.delta) << ','
             << (s.converged ? 1 : 0) << '\n';
  } else {
    out.os() << "n = " << h.n() << ", c = " << fmt12(a.c) << '\n'
             << "tau      = " << fmt12(s.tau) << '\n'
             << "minK     = " << fmt12(s.min_k) << '\n'
             << "delta    = " << fmt12(s.delta) << '\n'
             << "argmin u = " << vec_text(s.argmin.u) << '\n'
             << "argmin v = " << vec_text(s.argmin.v) << '\n'
             << "converged = " << yesno(s.converged) << '\n';
  }
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  std::string input;
  int n = 3;
  double c = 0.0;
  int count = 1000;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string output;
  std::string format = "text";
};

ordered_json report_json(const chen::BoundReport& rep, long index,
                         std::uint64_t seed) {
  ordered_json j;
  j["index"] = index;
  j["seed"] = seed;
  j["n"] = rep.n;
  j["c"] = rep.c;
  j["delta"] = rep.delta;
  j["classicRHS"] = rep.classic_rhs;
  j["improvedRHS"] = rep.improved_rhs;
  j["classicMargin"] = rep.classic_margin;
  j["improvedMargin"] = rep.improved_margin;
  j["normHsq"] = rep.mean_curv_norm_sq;
  j["pass"] = rep.pass();
  j["converged"] = rep.converged;
  j["oracleChecked"] = rep.oracle_checked;
  return j;
}

void write_report_text(std::ostream& os, const chen::BoundReport& rep) {
  os << "n = " << rep.n << ", c = " << fmt12(rep.c) << '\n'
     << "delta           = " << fmt12(rep.delta) << '\n'
     << "classic RHS     = " << fmt12(rep.classic_rhs) << '\n'
     << "improved RHS    = " << fmt12(rep.improved_rhs) << '\n'
     << "classic margin  = " << fmt12(rep.classic_margin) << '\n'
     << "improved margin = " << fmt12(rep.improved_margin) << '\n'
     << "|H|^2           = " << fmt12(rep.mean_curv_norm_sq) << '\n'
     << "pass            = " << yesno(rep.pass()) << '\n';
}

int run_verify(const VerifyArgs& a) {
  Output out(a.output);
  if (!a.input.empty()) {
    const chen::SymmetricCubic h = load_tensor(a.input);
    const chen::BoundReport rep = chen::verify_point(h, {a.c}, a.tol);
    if (a.format == "json") {
      out.os() << report_json(rep, 0, 0).dump() << '\n';
    } else if (a.format == "csv") {
      out.os() << chen::kReportCsvHeader << '\n';
      chen::write_report_csv_row(out.os(), rep, 0);
    } else {
      write_report_text(out.os(), rep);
    }
    return rep.pass() ? 0 : 1;
  }

  const chen::BatchSummary sum =
      chen::batch_verify(a.n, a.c, a.count, a.sigma, a.seed, a.tol);
  if (a.format == "csv") {
    chen::write_reports_csv(out.os(), sum.reports, sum.sample_seeds);
  } else if (a.format == "json") {
    for (std::size_t i = 0; i < sum.reports.size(); ++i)
      out.os() << report_json(sum.reports[i], static_cast<long>(i),
                              sum.sample_seeds[i])
                      .dump()
               << '\n';
    ordered_json s;
    s["summary"] = true;
    s["n"] = sum.n;
    s["c"] = sum.c;
    s["count"] = sum.count;
    s["sigma"] = sum.sigma;
    s["seed"] = sum.seed;
    s["tol"] = sum.tol;
    s["violations"] = sum.violations;
    s["minClassicMargin"] = sum.min_classic_margin;
    s["minImprovedMargin"] = sum.min_improved_margin;
    ordered_json hist;
    for (int b = 0; b < chen::kMarginHistogramBuckets; ++b)
      hist[chen::margin_bucket_label(b)] = sum.histogram[b];
    s["improvedMarginHistogram"] = hist;
    out.os() << s.dump() << '\n';
  } else {
    out.os() << "batch: n = " << sum.n << ", c = " << fmt12(sum.c)
             << ", count = " << sum.count << ", sigma = " << fmt12(sum.sigma)
             << ", seed = " << sum.seed << ", tol = " << fmt12(sum.tol) << '\n'
             << "violations          = " << sum.violations << '\n'
             << "min classic margin  = " << fmt12(sum.min_classic_margin)
             << '\n'
             << "min improved margin = " << fmt12(sum.min_improved_margin)
             << '\n'
             << "improved-margin histogram:" << '\n';
    for (int b = 0; b < chen::kMarginHistogramBuckets; ++b) {
      char line[64];
      std::snprintf(line, sizeof(line), "  %-12s %ld",
                    chen::margin_bucket_label(b), sum.histogram[b]);
      out.os() << line << '\n';
    }
  }
  return sum.violations == 0 ? 0 : 1;
}

// ---- maximize ----

struct MaximizeArgs {
  int n = 3;
  int r = 1;
  double k = 1.0;
  double tol = 1e-8;
  std::string output;
  std::string format = "text";
};

int run_maximize(const MaximizeArgs& a) {
  const chen::ClosedFormMax closed = chen::closed_form_max(a.n, a.r, a.k);
  const chen::QuadraticForm form = chen::build_fr(a.n, a.r);
  const chen::KKTSolution numeric = chen::maximize_on_hyperplane(form, a.k);
  const double diff = numeric.value - closed.value;
  const bool agree =
      std::abs(diff) <= a.tol * std::max(1.0, std::abs(closed.value));
  Output out(a.output);
  if (a.format == "json") {
    ordered_json doc;
    doc["n"] = a.n;
    doc["r"] = a.r;
    doc["k"] = a.k;
    doc["closedValue"] = closed.value;
    doc["numericValue"] = numeric.value;
    doc["difference"] = diff;
    doc["verdict"] = chen::to_string(numeric.verdict);
    doc["agree"] = agree;
    doc["tol"] = a.tol;
    doc["closedArgmax"] = vec_json(closed.argmax);
    doc["numericArgmax"] = vec_json(numeric.argmax);
    doc["multiplier"] = numeric.multiplier;
    doc["projectedSpectrum"] = vec_json(numeric.projected_spectrum);
    if (!numeric.diagnostic.empty()) doc["diagnostic"] = numeric.diagnostic;
    out.os() << doc.dump() << '\n';
  } else if (a.format == "csv") {
    out.os() << "n,r,k,closedValue,numericValue,difference,verdict,agree\n"
             << a.n << ',' << a.r << ',' << chen::format_g17(a.k) << ','
             << chen::format_g17(closed.value) << ','
             << chen::format_g17(numeric.value) << ','
             << chen::format_g17(diff) << ',' << chen::to_string(numeric.verdict)
             << ',' << (agree ? 1 : 0) << '\n';
  } else {
    out.os() << "form: n = " << a.n << ", r = " << a.r
             << ", k = " << fmt12(a.k) << '\n'
             << "closed-form max  = " << fmt12(closed.value) << '\n'
             << "numeric KKT max  = " << fmt12(numeric.value) << '\n'
             << "difference       = " << fmt12(diff) << '\n'
             << "verdict          = " << chen::to_string(numeric.verdict)
             << '\n'
             << "closed argmax    = " << vec_text(closed.argmax) << '\n'
             << "numeric argmax   = " << vec_text(numeric.argmax) << '\n'
             << "multiplier       = " << fmt12(numeric.multiplier) << '\n'
             << "agreement        = " << yesno(agree) << " (tol "
             << fmt12(a.tol) << ")" << '\n';
  }
  return agree ? 0 : 1;
}

// ---- search ----

struct SearchArgs {
  int n = 3;
  double c = 0.0;
  int restarts = 100;
  int steps = 60;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string output;
  std::string format = "text";
};

int run_search(const SearchArgs& a) {
  chen::SearchConfig cfg;
  cfg.restarts = a.restarts;
  cfg.steps = a.steps;
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  const chen::SearchResult res = chen::adversarial_search(a.n, a.c, cfg);
  const bool pass = res.worst_margin <= a.tol;
  Output out(a.output);
  if (a.format == "json") {
    ordered_json doc;
    doc["n"] = a.n;
    doc["c"] = a.c;
    doc["restarts"] = a.restarts;
    doc["steps"] = a.steps;
    doc["seed"] = a.seed;
    doc["tol"] = a.tol;
    doc["worstMargin"] = res.worst_margin;
    doc["evaluations"] = res.evaluations;
    doc["pass"] = pass;
    doc["worstTensor"] = chen::tensor_to_json(res.worst_h);
    out.os() << doc.dump() << '\n';
  } else if (a.format == "csv") {
    out.os() << "n,c,restarts,steps,seed,worstMargin,evaluations,pass\n"
             << a.n << ',' << chen::format_g17(a.c) << ',' << a.restarts << ','
             << a.steps << ',' << a.seed << ','
             << chen::format_g17(res.worst_margin) << ',' << res.evaluations
             << ',' << (pass ? 1 : 0) << '\n';
  } else {
    out.os() << "search: n = " << a.n << ", c = " << fmt12(a.c)
             << ", restarts = " << a.restarts << ", steps = " << a.steps
             << ", seed = " << a.seed << '\n'
             << "worst margin (delta - improved RHS) = "
             << fmt12(res.worst_margin) << '\n'
             << "objective evaluations = " << res.evaluations << '\n'
             << "violation found = " << yesno(!pass) << " (tol "
             << fmt12(a.tol) << ")" << '\n';
  }
  return pass ? 0 : 1;
}

// ---- probe ----

struct ProbeArgs {
  int n = 3;
  double c = 0.0;
  int restarts = 100;
  int steps = 60;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::string output;
  std::string format = "text";
};

int run_probe(const ProbeArgs& a) {
  chen::SearchConfig cfg;
  cfg.restarts = a.restarts;
  cfg.steps = a.steps;
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  const chen::ProbeResult res = chen::minimality_probe(a.n, a.c, cfg);
  Output out(a.output);
  if (a.format == "json") {
    ordered_json doc;
    doc["n"] = a.n;
    doc["c"] = a.c;
    doc["restarts"] = a.restarts;
    doc["steps"] = a.steps;
    doc["seed"] = a.seed;
    doc["marginThreshold"] = res.margin_threshold;
    doc["normThreshold"] = res.norm_threshold;
    doc["found"] = res.found;
    doc["bestMargin"] = res.best_margin;
    doc["bestNormHsq"] = res.best_norm_h_sq;
    doc["bestTensor"] = chen::tensor_to_json(res.best_h);
    out.os() << doc.dump() << '\n';
  } else if (a.format == "csv") {
    out.os() << "n,c,restarts,steps,seed,bestMargin,bestNormHsq,found\n"
             << a.n << ',' << chen::format_g17(a.c) << ',' << a.restarts << ','
             << a.steps << ',' << a.seed << ','
             << chen::format_g17(res.best_margin) << ','
             << chen::format_g17(res.best_norm_h_sq) << ','
             << (res.found ? 1 : 0) << '\n';
  } else {
    out.os() << "probe: n = " << a.n << ", c = " << fmt12(a.c)
             << ", restarts = " << a.restarts << ", steps = " << a.steps
             << ", seed = " << a.seed << '\n'
             << "looking for: classic margin <= " << fmt12(res.margin_threshold)
             << " with |H|^2 >= " << fmt12(res.norm_threshold) << '\n'
             << "best classic margin = " << fmt12(res.best_margin) << '\n'
             << "|H|^2 at best       = " << fmt12(res.best_norm_h_sq) << '\n'
             << "counterexample found = " << yesno(res.found) << '\n';
  }
  return res.found ? 1 : 0;
}

// ---- audit ----

struct AuditArgs {
  std::string input;
  int n = 3;
  double c = 0.0;
  int count = 1000;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "text";
};

ordered_json audit_json(const chen::AuditRecord& rec, long index,
                        std::uint64_t seed) {
  ordered_json j;
  j["index"] = index;
  j["seed"] = seed;
  j["delta"] = rec.delta;
  j["adaptedIdentity"] = rec.adapted_identity;
  j["majorizedBound"] = rec.majorized_bound;
  j["quadraticFormTotal"] = rec.quadratic_form_total;
  j["identityOk"] = rec.identity_ok;
  j["majorizationOk"] = rec.majorization_ok;
  j["decompositionOk"] = rec.decomposition_ok;
  j["frameConverged"] = rec.frame_converged;
  return j;
}

void write_audit_csv_row(std::ostream& os, const chen::AuditRecord& rec,
                         long index, std::uint64_t seed) {
  os << index << ',' << seed << ',' << chen::format_g17(rec.delta) << ','
     << chen::format_g17(rec.adapted_identity) << ','
     << chen::format_g17(rec.majorized_bound) << ','
     << chen::format_g17(rec.quadratic_form_total) << ','
     << (rec.identity_ok ? 1 : 0) << ',' << (rec.majorization_ok ? 1 : 0)
     << ',' << (rec.decomposition_ok ? 1 : 0) << ','
     << (rec.frame_converged ? 1 : 0) << '\n';
}

constexpr const char* kAuditCsvHeader =
    "index,seed,delta,adaptedIdentity,majorizedBound,quadraticFormTotal,"
    "identityOk,majorizationOk,decompositionOk,frameConverged";

int run_audit(const AuditArgs& a) {
  Output out(a.output);
  std::vector<chen::AuditRecord> records;
  std::vector<std::uint64_t> seeds;
  if (!a.input.empty()) {
    const chen::SymmetricCubic h = load_tensor(a.input);
    records.push_back(chen::proof_step_audit(h, {a.c}));
    seeds.push_back(0);
  } else {
    if (a.count < 1) throw chen::InvalidInput("count must be at least 1");
    records.reserve(a.count);
    for (int i = 0; i < a.count; ++i) {
      const std::uint64_t sub =
          chen::stream_seed(a.seed, static_cast<std::uint64_t>(i));
      const chen::SymmetricCubic h =
          chen::SymmetricCubic::sample(a.n, sub, a.sigma);
      records.push_back(chen::proof_step_audit(h, {a.c}));
      seeds.push_back(sub);
    }
  }

  long failures = 0;
  double max_identity_residual = 0.0;
  double min_majorization_slack = std::numeric_limits<double>::infinity();
  double max_decomposition_residual = 0.0;
  for (const chen::AuditRecord& rec : records) {
    if (!rec.all_ok()) ++failures;
    max_identity_residual = std::max(max_identity_residual,
                                     std::abs(rec.adapted_identity - rec.delta));
    min_majorization_slack = std::min(
        min_majorization_slack, rec.majorized_bound - rec.adapted_identity);
    max_decomposition_residual =
        std::max(max_decomposition_residual,
                 std::abs(rec.quadratic_form_total - rec.majorized_bound));
  }

  if (a.format == "json") {
    for (std::size_t i = 0; i < records.size(); ++i)
      out.os() << audit_json(records[i], static_cast<long>(i), seeds[i]).dump()
               << '\n';
    ordered_json s;
    s["summary"] = true;
    s["count"] = records.size();
    s["failures"] = failures;
    s["maxIdentityResidual"] = max_identity_residual;
    s["minMajorizationSlack"] = min_majorization_slack;
    s["maxDecompositionResidual"] = max_decomposition_residual;
    out.os() << s.dump() << '\n';
  } else if (a.format == "csv") {
    out.os() << kAuditCsvHeader << '\n';
    for (std::size_t i = 0; i < records.size(); ++i)
      write_audit_csv_row(out.os(), records[i], static_cast<long>(i),
                          seeds[i]);
  } else {
    out.os() << "audited " << records.size() << " sample(s), failures = "
             << failures << '\n'
             << "max |identity residual|     = " << fmt12(max_identity_residual)
             << '\n'
             << "min majorization slack      = " << fmt12(min_majorization_slack)
             << '\n'
             << "max |decomposition residual| = "
             << fmt12(max_decomposition_residual) << '\n';
  }
  return failures == 0 ? 0 : 1;
}

// ---- compare ----

struct CompareArgs {
  int n = 100;
  std::string output;
  std::string format = "text";
};

int run_compare(const CompareArgs& a) {
  const std::vector<chen::CoefficientRow> rows =
      chen::coefficient_comparison(a.n);
  bool all_hold = true;
  for (const chen::CoefficientRow& row : rows)
    all_hold = all_hold && row.improved_strict && row.minimal_strict &&
               row.linear_gap > 0;
  Output out(a.output);
  if (a.format == "json") {
    for (const chen::CoefficientRow& row : rows) {
      ordered_json j;
      j["n"] = row.n;
      j["improvedLhs"] = row.improved_lhs;
      j["improvedRhs"] = row.improved_rhs;
      j["improvedStrict"] = row.improved_strict;
      j["minimalLhs"] = row.minimal_lhs;
      j["minimalRhs"] = row.minimal_rhs;
      j["minimalStrict"] = row.minimal_strict;
      j["linearGap"] = row.linear_gap;
      out.os() << j.dump() << '\n';
    }
    ordered_json s;
    s["summary"] = true;
    s["nMax"] = a.n;
    s["allHold"] = all_hold;
    out.os() << s.dump() << '\n';
  } else if (a.format == "csv") {
    out.os() << "n,improvedLhs,improvedRhs,improvedStrict,minimalLhs,"
                "minimalRhs,minimalStrict,linearGap\n";
    for (const chen::CoefficientRow& row : rows)
      out.os() << row.n << ',' << row.improved_lhs << ',' << row.improved_rhs
               << ',' << (row.improved_strict ? 1 : 0) << ','
               << row.minimal_lhs << ',' << row.minimal_rhs << ','
               << (row.minimal_strict ? 1 : 0) << ',' << row.linear_gap
               << '\n';
  } else {
    out.os() << "coefficient orderings for n = 3.." << a.n << '\n'
             << "    n  (n-2)(2n+3) < (2n-3)(n+1)   (2n-3)(n-1) < (n-2)(2n+3)"
                "   4n-9\n";
    for (const chen::CoefficientRow& row : rows) {
      char line[128];
      std::snprintf(line, sizeof(line),
                    "  %3d  %11lld   %11lld   %11lld   %11lld   %6lld", row.n,
                    row.improved_lhs, row.improved_rhs, row.minimal_lhs,
                    row.minimal_rhs, row.linear_gap);
      out.os() << line << '\n';
    }
    out.os() << "all orderings hold = " << yesno(all_hold) << '\n';
  }
  return all_hold ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature pinching toolkit: invariants, bounds, and audits"};
  app.require_subcommand(1);

  InvariantArgs inv;
  CLI::App* c_inv = app.add_subcommand(
      "invariant", "compute tau, minK and delta for a tensor file");
  c_inv->add_option("--input", inv.input, "JSON tensor file")->required();
  c_inv->add_option("--c", inv.c, "ambient holomorphic curvature")
      ->capture_default_str();
  c_inv->add_option("--restarts", inv.restarts, "random descent starts")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_inv->add_option("--steps", inv.steps, "max descent iterations per start")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_inv->add_option("--output", inv.output, "write results to this file");
  c_inv->add_option("--format", inv.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  VerifyArgs ver;
  CLI::App* c_ver = app.add_subcommand(
      "verify", "check both bounds on a tensor file or a sampled batch");
  c_ver->add_option("--input", ver.input,
                    "JSON tensor file (omit to run a batch)");
  c_ver->add_option("--n", ver.n, "dimension for batch sampling")
      ->check(CLI::Range(3, 64))
      ->capture_default_str();
  c_ver->add_option("--c", ver.c, "ambient holomorphic curvature")
      ->capture_default_str();
  c_ver->add_option("--count", ver.count, "batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_ver->add_option("--sigma", ver.sigma, "sampling scale")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_ver->add_option("--seed", ver.seed, "master seed")->capture_default_str();
  c_ver->add_option("--tol", ver.tol, "violation tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_ver->add_option("--output", ver.output, "write results to this file");
  c_ver->add_option("--format", ver.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  MaximizeArgs mx;
  CLI::App* c_mx = app.add_subcommand(
      "maximize", "maximize a trace-constrained quadratic form two ways");
  c_mx->add_option("--n", mx.n, "dimension")
      ->check(CLI::Range(3, 4096))
      ->capture_default_str();
  c_mx->add_option("--r", mx.r, "form index, 1-based")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_mx->add_option("--k", mx.k, "trace constraint value")
      ->capture_default_str();
  c_mx->add_option("--tol", mx.tol, "relative agreement tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_mx->add_option("--output", mx.output, "write results to this file");
  c_mx->add_option("--format", mx.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  SearchArgs se;
  CLI::App* c_se = app.add_subcommand(
      "search", "adversarially search for a bound violation");
  c_se->add_option("--n", se.n, "dimension")
      ->check(CLI::Range(3, 64))
      ->capture_default_str();
  c_se->add_option("--c", se.c, "ambient holomorphic curvature")
      ->capture_default_str();
  c_se->add_option("--restarts", se.restarts, "search restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_se->add_option("--steps", se.steps, "ascent steps per restart")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_se->add_option("--seed", se.seed, "master seed")->capture_default_str();
  c_se->add_option("--tol", se.tol, "violation tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_se->add_option("--output", se.output, "write results to this file");
  c_se->add_option("--format", se.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  ProbeArgs pr;
  CLI::App* c_pr = app.add_subcommand(
      "probe", "probe the minimality corollary for counterexamples");
  c_pr->add_option("--n", pr.n, "dimension")
      ->check(CLI::Range(3, 64))
      ->capture_default_str();
  c_pr->add_option("--c", pr.c, "ambient holomorphic curvature")
      ->capture_default_str();
  c_pr->add_option("--restarts", pr.restarts, "probe restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_pr->add_option("--steps", pr.steps, "descent steps per restart")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_pr->add_option("--seed", pr.seed, "master seed")->capture_default_str();
  c_pr->add_option("--tol", pr.tol,
                   "margin threshold; the |H|^2 floor is 1000x this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_pr->add_option("--output", pr.output, "write results to this file");
  c_pr->add_option("--format", pr.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  AuditArgs au;
  CLI::App* c_au = app.add_subcommand(
      "audit", "audit the adapted-frame decomposition step by step");
  c_au->add_option("--input", au.input,
                   "JSON tensor file (omit to audit a sampled batch)");
  c_au->add_option("--n", au.n, "dimension for batch sampling")
      ->check(CLI::Range(3, 64))
      ->capture_default_str();
  c_au->add_option("--c", au.c, "ambient holomorphic curvature")
      ->capture_default_str();
  c_au->add_option("--count", au.count, "batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_au->add_option("--sigma", au.sigma, "sampling scale")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_au->add_option("--seed", au.seed, "master seed")->capture_default_str();
  c_au->add_option("--output", au.output, "write results to this file");
  c_au->add_option("--format", au.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  CompareArgs cmp;
  CLI::App* c_cmp = app.add_subcommand(
      "compare", "exact integer comparison of the bound coefficients");
  c_cmp->add_option("--n", cmp.n, "largest dimension to tabulate")
      ->check(CLI::Range(3, 1000000))
      ->capture_default_str();
  c_cmp->add_option("--output", cmp.output, "write results to this file");
  c_cmp->add_option("--format", cmp.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_inv->parsed()) return run_invariant(inv);
    if (c_ver->parsed()) return run_verify(ver);
    if (c_mx->parsed()) return run_maximize(mx);
    if (c_se->parsed()) return run_search(se);
    if (c_pr->parsed()) return run_probe(pr);
    if (c_au->parsed()) return run_audit(au);
    if (c_cmp->parsed()) return run_compare(cmp);
  } catch (const chen::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
