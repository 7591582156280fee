#include "dyadiclab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "dyadic/covering.hpp"
#include "dyadic/error.hpp"
#include "dyadic/mfcz.hpp"
#include "dyadic/selection.hpp"
#include "dyadic/triform.hpp"
#include "dyadiclab/instances.hpp"

namespace dyadiclab {

using namespace dyadic;

namespace {

constexpr double kTol = 1e-9;

std::string flag(bool ok) { return ok ? "1" : "0"; }

ReportRow identity_row(const std::string& suite, const std::string& id, double deviation, double tol) {
  return {suite, id, deviation, tol, deviation / tol, flag(deviation <= tol)};
}

Rng suite_rng(const Config& c, const std::string& name) {
  return Rng(derive_seed(c.seed, fnv1a64(name)));
}

WalshNumber config_multiplier(const Config& c) { return WalshNumber::from_binary(c.a_bits); }

StructuredF0 config_f0(const Config& c, const GridFunction1D& f, Rng& rng) {
  if (c.mode == "fiberwise") return fiberwise_f0(f, random_choice_function(f.resolution(), rng));
  return diagonal_f0(f, config_multiplier(c));
}

std::string tid(int t) { return "trial=" + std::to_string(t); }

// Exact-identity suites ------------------------------------------------------

std::vector<ReportRow> suite_telescoping(const Config& c) {
  const int K = c.resolution;
  const std::uint64_t n = std::uint64_t{1} << K;
  std::vector<ReportRow> rows;
  for (int m = -(K - 1); m <= 0; ++m) {
    const EpsilonField eps = EpsilonField::constant(K, 1.0, 0, -m - 1);
    double dev = 0;
    for (std::uint64_t m0 = 0; m0 < n; ++m0)
      for (std::uint64_t m1 = 0; m1 < n; ++m1)
        for (std::uint64_t m2 = 0; m2 < n; ++m2)
          dev = std::max(dev, std::abs(scale_kernel(eps, m0, m1, m2) - telescoped_kernel(K, m, m0 ^ m1 ^ m2)));
    rows.push_back(identity_row("telescoping", "m=" + std::to_string(m), dev, kTol));
  }
  return rows;
}

std::vector<ReportRow> suite_bitile_sum(const Config& c) {
  Rng rng = suite_rng(c, "bitile_sum");
  const int K = c.resolution;
  std::vector<ReportRow> rows;
  for (int t = 0; t < c.trials; ++t) {
    const GridFunction2D f0 = rng.uniform_function_2d(K), f1 = rng.uniform_function_2d(K),
                         f2 = rng.uniform_function_2d(K);
    const EpsilonField eps = EpsilonField::random(K, rng);
    const double direct = lambda_direct(f0, f1, f2, eps), sum = lambda_bitile_sum(f0, f1, f2, eps);
    ReportRow r{"bitile_sum", tid(t), direct, sum, 0, ""};
    const double rel = std::abs(direct - sum) / std::max(std::abs(direct), 1e-300);
    r.ratio = rel / kTol;
    r.pass = flag(rel <= kTol || std::abs(direct - sum) <= 1e-15);
    rows.push_back(r);
  }
  return rows;
}

std::vector<ReportRow> suite_adaptedness(const Config& c) {
  Rng rng = suite_rng(c, "adaptedness");
  const int K = c.resolution;
  const std::vector<Bitile> all = all_bitiles(K);
  std::vector<ReportRow> rows;
  for (int t = 0; t < c.trials; ++t) {
    const StructuredF0 s0 = config_f0(c, rng.uniform_function_1d(K), rng);
    const GridFunction2D f1 = rng.uniform_function_2d(K), f2 = rng.uniform_function_2d(K);
    const Bitile p = all[rng.below(all.size())];
    const std::vector<Bitile> pp = random_convex_collection(K, {p}, 4, rng);
    const double lhs = lambda_bitile(p, s0.f0, f1, f2);
    const double rhs = lambda_bitile(p, proj_collection(0, pp, s0.f0, s0.mode), proj_collection(1, pp, f1, s0.mode),
                                     proj_collection(2, pp, f2, s0.mode));
    rows.push_back(identity_row("adaptedness", tid(t), std::abs(lhs - rhs), kTol));
  }
  return rows;
}

std::vector<ReportRow> suite_appendix(const Config& c) {
  Rng rng = suite_rng(c, "appendix");
  const int K = c.resolution;
  if (c.L >= K) throw UsageError("L must be below the resolution");
  std::vector<ReportRow> rows;
  for (int t = 0; t < c.trials; ++t) {
    const HaarField e = HaarField::random(K, rng);
    const GridFunction1D f = rng.uniform_function_1d(K), g = rng.uniform_function_1d(K), h = rng.uniform_function_1d(K);
    const std::vector<std::uint64_t> n = random_choice_function(K, rng);

    const MaxModSubstitution mm = max_mod_substitution(f, g, n);
    const double lmm = lambda_direct(mm.f0, mm.f1, mm.f2, lift_by_first(e));
    rows.push_back(identity_row("appendix_maxmod", tid(t), std::abs(lmm - inner(max_mod_haar(e, n, f), g)), kTol));

    const BhtSubstitution b = bht_substitution(f, g, h, c.L);
    const double lb = lambda_direct(b.f0, b.f1, b.f2, lift_bht(e, c.L));
    const BhtValues v = bht_form(e, c.L, f, g, h);
    rows.push_back(identity_row("appendix_bht", tid(t) + "/projections", std::abs(lb - v.projections), kTol));
    rows.push_back(identity_row("appendix_bht", tid(t) + "/coefficients", std::abs(lb - v.coefficients), kTol));

    rows.push_back(identity_row("appendix_endpoint", tid(t), endpoint_identity_check(e, f, g, h), kTol));
  }
  return rows;
}

std::vector<ReportRow> suite_replacement(const Config& c) {
  Rng rng = suite_rng(c, "replacement");
  const int K = c.resolution;
  ExceptionalSetParams params;
  params.p0 = c.p0;
  params.p2 = c.p2;
  std::vector<ReportRow> rows;
  for (int t = 0; t < c.trials; ++t) {
    const MfczInstance inst =
        random_mfcz_instance(K, params, c.p1, c.mode == "fiberwise", config_multiplier(c), 3, rng);
    const ReplacementReport rep =
        replacement_check(inst.forest, inst.f0, inst.f1, inst.f2, inst.good, inst.tops, inst.sets);
    const GNormReport g = g_norm_report(inst.good, inst.f2, inst.tops, c.p2, c.p0 / 2);
    ReportRow r = identity_row("replacement", tid(t), rep.max_deviation, kTol);
    if (!rep.violations.empty() || !std::isfinite(g.g_norm) || !std::isfinite(g.ratio)) r.pass = "0";
    rows.push_back(r);
  }
  return rows;
}

std::vector<ReportRow> suite_certificate(const Config& c) {
  Rng rng = suite_rng(c, "certificate");
  const int K = c.resolution;
  const std::vector<Bitile> all = all_bitiles(K);
  std::vector<ReportRow> rows;
  for (int t = 0; t < c.trials; ++t) {
    const int i = t % 3;
    const std::size_t cells = 1 + rng.below(std::size_t{1} << (2 * K));
    const GridFunction2D f = rng.random_cells(K, cells).indicator();
    ProjectionMode mode;
    if (i == 1) mode = config_f0(c, GridFunction1D(K), rng).mode;
    for (int n = 1; n <= 3; ++n) {
      const SelectionCertificate cert = select_trees(i, all, f, mode, n);
      const VerificationReport rep = verify_certificate(cert, f, i, n, mode);
      const std::string id = tid(t) + "/i=" + std::to_string(i) + "/n=" + std::to_string(n);
      rows.push_back({"certificate_size", id, rep.remainder_size, rep.size_bound,
                      rep.size_bound > 0 ? rep.remainder_size / rep.size_bound : 0.0, flag(rep.ok)});
      rows.push_back({"certificate_counting", id, rep.max_counting_ratio, 1.0, rep.max_counting_ratio, flag(rep.ok)});
    }
  }
  return rows;
}

std::vector<ReportRow> suite_lemma7r(const Config& c) {
  Rng rng = suite_rng(c, "lemma7r");
  std::vector<ReportRow> rows;
  for (int t = 0; t < c.trials; ++t) {
    int failures = 0;
    for (int k = 0; k < 100; ++k) {
      const auto [r, rp] = random_lemma7r_pair(rng);
      if (lemma7r_check(r, rp) != Lemma7R::Contained) ++failures;
    }
    rows.push_back({"lemma7r", tid(t), static_cast<double>(failures), 0.0, static_cast<double>(failures),
                    flag(failures == 0)});
  }
  return rows;
}

using SuiteFn = std::function<std::vector<ReportRow>(const Config&)>;

const std::vector<std::pair<std::string, SuiteFn>>& verify_suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"telescoping", suite_telescoping}, {"bitile_sum", suite_bitile_sum}, {"adaptedness", suite_adaptedness},
      {"appendix", suite_appendix},       {"replacement", suite_replacement}, {"certificate", suite_certificate},
      {"lemma7r", suite_lemma7r},
  };
  return suites;
}

// Constant probes --------------------------------------------------------------

struct ProbeTrial {
  double lhs = 0;
  double rhs = 0;
  std::string pass = "-";
};
using ProbeFn = std::function<ProbeTrial(const Config&, Rng&)>;

ProbeTrial probe_restricted_type(const Config& c, Rng& rng) {
  const RestrictedTrial t = restricted_type_trial(c.resolution, c.mode == "fiberwise", config_multiplier(c), rng);
  return {t.value, t.bound};
}

ProbeTrial probe_single_tree(const Config& c, Rng& rng) {
  const int K = c.resolution;
  const Tree tree = random_tree(K, rng);
  const StructuredF0 s0 = config_f0(c, rng.uniform_function_1d(K), rng);
  const GridFunction2D f1 = rng.uniform_function_2d(K), f2 = rng.uniform_function_2d(K);
  const TreeReport r = lambda_tree(tree, s0.f0, f1, f2, EpsilonField::random(K, rng), s0.mode);
  return {std::abs(r.value), r.bound};
}

ProbeTrial probe_counting(const Config& c, Rng& rng) {
  const int K = c.resolution;
  const GridFunction2D f = signed_indicator(rng.random_cells(K, 1 + rng.below(std::size_t{1} << (2 * K))), rng);
  const int n = 1 + static_cast<int>(rng.below(3));
  const SelectionCertificate cert = select_trees(0, all_bitiles(K), f, {}, n);
  double lhs = 0, rhs = 1;
  for (const CountingRow& row : cert.counting)
    if (row.bound > 0 && row.tops_area / row.bound > lhs / rhs) {
      lhs = row.tops_area;
      rhs = row.bound;
    }
  return {lhs, rhs, flag(lhs <= rhs)};
}

ProbeTrial probe_g_norm(const Config& c, Rng& rng) {
  ExceptionalSetParams params;
  params.p0 = c.p0;
  params.p2 = c.p2;
  const MfczInstance inst =
      random_mfcz_instance(c.resolution, params, c.p1, c.mode == "fiberwise", config_multiplier(c), 3, rng);
  const GNormReport g = g_norm_report(inst.good, inst.f2, inst.tops, c.p2, c.p0 / 2);
  const double e = 1 - 2 * (c.p2 - 1) / c.p2;
  return {g.g_norm * g.g_norm, g.counting_norm > 0 ? std::pow(g.counting_norm, e) : 0.0};
}

ProbeTrial probe_cover_overlap(const Config& c, Rng& rng) {
  const int K = grid_resolution(c);
  const CoverEnsemble e = random_cover_ensemble(K, "lipschitz", c.ensemble_size, c.delta, rng);
  const CoverResult res = greedy_cover(e.dense, K);
  std::vector<Parallelogram> g;
  for (std::size_t k : res.selected) g.push_back(e.dense[k]);
  const OverlapReport o = overlap_check(g, e.field, 2, 2, c.delta);
  return {o.square, o.sum_area / c.delta};
}

ProbeTrial probe_lk_weak22(const Config& c, Rng& rng) {
  const int K = grid_resolution(c);
  const CoverEnsemble e = random_cover_ensemble(K, "lipschitz", c.ensemble_size, c.delta, rng);
  const GridFunction2D f = rng.random_cells(K, 1 + rng.below(std::size_t{1} << (2 * K - 2))).indicator();
  const GridFunction2D m = lk_maximal(f, e.dense);
  return {weak_norm(m, 2), std::pow(c.delta, -0.5) * norm_p(f, 2)};
}

const std::vector<std::pair<std::string, ProbeFn>>& probes() {
  static const std::vector<std::pair<std::string, ProbeFn>> list = {
      {"restricted_type", probe_restricted_type}, {"single_tree", probe_single_tree},
      {"counting", probe_counting},               {"g_norm", probe_g_norm},
      {"cover_overlap", probe_cover_overlap},     {"lk_weak22", probe_lk_weak22},
  };
  return list;
}

std::vector<std::string> selected_names(const Config& c, const std::vector<std::string>& known) {
  if (c.suites.empty()) return known;
  for (const std::string& s : c.suites)
    if (std::find(known.begin(), known.end(), s) == known.end()) throw UsageError("unknown suite '" + s + "'");
  return c.suites;
}

std::string join_path(const std::string& dir, const std::string& file) {
  return dir.empty() ? file : dir + "/" + file;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : verify_suites()) v.push_back(name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& constant_probe_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : probes()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<ReportRow> run_verify_suite(const std::string& name, const Config& c) {
  for (const auto& [n, fn] : verify_suites())
    if (n == name) return fn(c);
  throw UsageError("unknown suite '" + name + "'");
}

std::vector<ReportRow> run_constant_probe(const std::string& name, const Config& c) {
  for (const auto& [n, fn] : probes()) {
    if (n != name) continue;
    Rng rng = suite_rng(c, "constants/" + name);
    std::vector<ReportRow> rows;
    std::vector<double> ratios;
    for (int t = 0; t < c.trials; ++t) {
      const ProbeTrial p = fn(c, rng);
      const double ratio = p.rhs > 0 ? p.lhs / p.rhs : 0.0;
      rows.push_back({name, "K=" + std::to_string(c.resolution) + "/" + tid(t), p.lhs, p.rhs, ratio, p.pass});
      ratios.push_back(ratio);
    }
    if (!ratios.empty()) {
      std::sort(ratios.begin(), ratios.end());
      const std::size_t k95 = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(ratios.size()))) - 1;
      const bool asserted = std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass != "-"; });
      const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass != "0"; });
      const std::string pass = asserted ? flag(all_pass) : "-";
      rows.push_back({name, "summary:max", 0, 0, ratios.back(), pass});
      rows.push_back({name, "summary:p95", 0, 0, ratios[k95], pass});
    }
    return rows;
  }
  throw UsageError("unknown suite '" + name + "'");
}

VerifyOutcome verify(const Config& c) {
  validate(c);
  if (c.resolution < 2) throw UsageError("resolution too small for bitiles");
  VerifyOutcome out;
  std::map<std::string, std::pair<int, int>> tally;
  const std::vector<std::string> names = selected_names(c, verify_suite_names());
  for (const std::string& name : names) {
    auto& [passed, total] = tally[name];
    for (ReportRow& r : run_verify_suite(name, c)) {
      ++total;
      if (r.pass == "0") out.ok = false;
      else ++passed;
      out.rows.push_back(std::move(r));
    }
  }
  out.csv = render_report(out.rows);
  out.summary = "dyadiclab verify\nseed=" + std::to_string(c.seed) + "\nresolution=" + std::to_string(c.resolution) +
                "\ntrials=" + std::to_string(c.trials) + "\nmode=" + c.mode + "\n";
  for (const std::string& name : names)
    out.summary += name + ": " + std::to_string(tally[name].first) + "/" + std::to_string(tally[name].second) + " passed\n";
  out.summary += std::string("result: ") + (out.ok ? "PASS" : "FAIL") + "\nreport_fnv1a64=" + hex64(fnv1a64(out.csv)) + "\n";
  return out;
}

int cmd_verify(const Config& c, const std::string& out_dir) {
  const VerifyOutcome v = verify(c);
  write_atomic(join_path(out_dir, "verify.csv"), v.csv);
  write_atomic(join_path(out_dir, "verify_summary.txt"), v.summary);
  return v.ok ? 0 : 1;
}

int cmd_constants(const Config& c, const std::string& out_dir) {
  validate(c);
  if (c.resolution < 2) throw UsageError("resolution too small for bitiles");
  std::vector<ReportRow> rows;
  bool ok = true;
  for (const std::string& name : selected_names(c, constant_probe_names()))
    for (ReportRow& r : run_constant_probe(name, c)) {
      ok = ok && r.pass != "0";
      rows.push_back(std::move(r));
    }
  write_atomic(join_path(out_dir, "constants.csv"), render_report(rows));
  return ok ? 0 : 1;
}

int cmd_transform(const TransformRequest& r) {
  const auto need = [&](std::size_t n) {
    if (r.inputs.size() != n)
      throw UsageError("operator " + r.op + " takes " + std::to_string(n) + " input file(s)");
  };
  if (r.output.empty()) throw UsageError("transform needs an output file");
  if (!(std::abs(r.eps) <= 1)) throw UsageError("eps must lie in [-1, 1]");
  std::string out;
  if (r.op == "haar") {
    need(1);
    const GridFunction1D f = to_function_1d(read_matrix_csv(r.inputs[0]), r.inputs[0]);
    out = matrix_csv(haar_multiplier(HaarField::constant(f.resolution(), r.eps), f));
  } else if (r.op == "maxmod") {
    need(2);
    const GridFunction1D f = to_function_1d(read_matrix_csv(r.inputs[0]), r.inputs[0]);
    const auto nm = read_matrix_csv(r.inputs[1]);
    if (nm.size() != 1 || nm.front().size() != f.size())
      throw InputError(r.inputs[1] + ": expected one row of " + std::to_string(f.size()) + " frequencies");
    std::vector<std::uint64_t> n;
    for (double v : nm.front()) {
      if (v < 0 || v != std::floor(v) || v >= static_cast<double>(f.size()))
        throw InputError(r.inputs[1] + ": frequencies must be integers in [0, 2^K)");
      n.push_back(static_cast<std::uint64_t>(v));
    }
    out = matrix_csv(max_mod_haar(HaarField::constant(f.resolution(), r.eps), n, f));
  } else if (r.op == "lambda") {
    need(3);
    GridFunction2D f[3];
    for (int i = 0; i < 3; ++i) f[i] = to_function_2d(read_matrix_csv(r.inputs[i]), r.inputs[i]);
    const int K = f[0].resolution();
    out = format_double(lambda_direct(f[0], f[1], f[2], EpsilonField::constant(K, r.eps, 0, K - 1))) + "\n";
  } else if (r.op == "lk") {
    need(2);
    const GridFunction2D f = to_function_2d(read_matrix_csv(r.inputs[0]), r.inputs[0]);
    std::vector<Parallelogram> rr;
    for (const auto& row : read_matrix_csv(r.inputs[1])) {
      if (row.size() != 5) throw InputError(r.inputs[1] + ": rows are left,length,base_y,slope,height");
      if (!(row[1] > 0 && row[4] > 0)) throw InputError(r.inputs[1] + ": length and height must be positive");
      rr.push_back({row[0], row[1], row[2], row[3], row[4]});
    }
    out = matrix_csv(lk_maximal(f, rr));
  } else {
    throw UsageError("unknown operator '" + r.op + "' (haar, maxmod, lambda, lk)");
  }
  write_atomic(r.output, out);
  return 0;
}

int cmd_cover(const Config& c, const std::string& out_dir) {
  validate(c);
  const int K = grid_resolution(c);
  Rng rng = suite_rng(c, "cover");
  std::vector<ReportRow> rows;
  std::string selected = "trial,field,index,left,length,base_y,slope,height\n";
  bool ok = true;
  for (int t = 0; t < c.trials; ++t)
    for (const char* field : {"constant", "linear", "lipschitz"}) {
      const CoverEnsemble e = random_cover_ensemble(K, field, c.ensemble_size, c.delta, rng);
      if (e.dense.empty()) continue;
      const CoverResult res = greedy_cover(e.dense, K);
      const bool covered = cover_violations(e.dense, res.selected, K).empty();
      ok = ok && covered;
      std::vector<Parallelogram> g;
      for (std::size_t k : res.selected) {
        const Parallelogram& p = e.dense[k];
        g.push_back(p);
        selected += std::to_string(t) + "," + field + "," + std::to_string(k) + "," + format_double(p.left) + "," +
                    format_double(p.length) + "," + format_double(p.base_y) + "," + format_double(p.slope) + "," +
                    format_double(p.height) + "\n";
      }
      const OverlapReport o = overlap_check(g, e.field, 2, 2, c.delta);
      rows.push_back({std::string("cover_") + field, tid(t), o.square, o.sum_area / c.delta, o.square_ratio, flag(covered)});
    }
  write_atomic(join_path(out_dir, "cover.csv"), render_report(rows));
  write_atomic(join_path(out_dir, "cover_selected.csv"), selected);
  return ok ? 0 : 1;
}

}  // namespace dyadiclab
