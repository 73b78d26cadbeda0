// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "structcs/bench.hpp"
#include "structcs/bounds.hpp"
#include "structcs/dependency.hpp"
#include "structcs/deterministic.hpp"
#include "structcs/error.hpp"
#include "structcs/io.hpp"
#include "structcs/linear_operator.hpp"
#include "structcs/parallel.hpp"
#include "structcs/recovery.hpp"
#include "structcs/rip.hpp"
#include "structcs/rng.hpp"
#include "structcs/sensing_matrix.hpp"

namespace structcs::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Raised when a verification step (dependency bound, isometry check, feasibility) fails.
struct VerificationFailure {
  json report;
};

struct Common {
  bool json = false;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::string config;
};

struct MatrixFlags {
  std::string kind = "iid";
  std::string spec_file;
  std::string matrix_file;
  Eigen::Index k = 1, l = 1, d = 1, e = 1;
  Eigen::Index n = 0, N = 0, rows = 0;
  Eigen::Index inner_k = 1, inner_l = 1, inner_d = 1, inner_e = 1;
  std::int64_t p = 2, r = 1;
  Eigen::Index t = 1, s = 1;
  std::string dist = "bernoulli";
};

void add_common(CLI::App* app, Common& c) {
  app->add_flag("--json", c.json, "Machine-readable JSON on stdout");
  app->add_option("--seed", c.seed, "Seed for every stochastic step");
  app->add_option("--threads", c.threads, "Worker threads (0: STRUCTCS_THREADS, else 1)");
  app->add_option("--config", c.config, "JSON file of option values; flags override it");
}

void add_matrix_flags(CLI::App* app, MatrixFlags& f, bool allow_matrix_file) {
  app->add_option("--kind", f.kind,
                  "iid, toeplitz-block, circulant-block, circulant-circulant, "
                  "circulant-circulant-block, deterministic");
  app->add_option("--spec", f.spec_file, "Matrix spec JSON (overrides the layout flags)");
  if (allow_matrix_file) app->add_option("--matrix", f.matrix_file, "Matrix file (CSV or binary)");
  app->add_option("--k", f.k, "Block columns");
  app->add_option("--l", f.l, "Block rows (deterministic: columns per block)");
  app->add_option("--d", f.d, "Rows per block");
  app->add_option("--e", f.e, "Columns per block");
  app->add_option("--n", f.n, "Rows of an iid matrix");
  app->add_option("--N", f.N, "Columns of an iid matrix");
  app->add_option("--rows", f.rows, "Keep only the first rows (0: all)");
  app->add_option("--inner-k", f.inner_k, "Inner block columns (nested circulant)");
  app->add_option("--inner-l", f.inner_l, "Inner block rows (nested circulant)");
  app->add_option("--inner-d", f.inner_d, "Inner block height (nested circulant)");
  app->add_option("--inner-e", f.inner_e, "Inner block width (nested circulant)");
  app->add_option("--p", f.p, "Prime modulus (deterministic)");
  app->add_option("--r", f.r, "Polynomial degree bound (deterministic)");
  app->add_option("--t", f.t, "Block columns (deterministic)");
  app->add_option("--s", f.s, "Block rows (deterministic)");
  app->add_option("--dist", f.dist, "gaussian, bernoulli, sparse-ternary");
}

BlockStructureSpec resolve_spec(const MatrixFlags& f, const Common& c, bool seed_given) {
  BlockStructureSpec spec;
  if (!f.spec_file.empty()) {
    std::ifstream in(f.spec_file);
    if (!in) throw InvalidArgument("cannot open spec file " + f.spec_file);
    try {
      spec = json::parse(in).get<BlockStructureSpec>();
    } catch (const json::exception& e) {
      throw FormatError(std::string("bad spec file: ") + e.what());
    }
    if (seed_given) spec.seed = c.seed;
    spec.validate();
    return spec;
  }

  const MatrixKind kind = parse_matrix_kind(f.kind);
  EntryDistribution dist{parse_distribution_kind(f.dist), 1};
  switch (kind) {
    case MatrixKind::IID:
      if (f.n < 1 || f.N < 1) throw InvalidArgument("iid needs --n and --N");
      spec = iid_spec(f.n, f.N, dist, c.seed);
      break;
    case MatrixKind::ToeplitzBlock:
      spec = toeplitz_block_spec(f.k, f.l, f.d, f.e, dist, c.seed);
      break;
    case MatrixKind::CirculantBlock:
      spec = circulant_block_spec(f.k, f.l, f.d, f.e, dist, c.seed);
      break;
    case MatrixKind::CirculantCirculant:
    case MatrixKind::CirculantCirculantBlock: {
      NestedSpec inner{f.inner_k, f.inner_l, f.inner_d, f.inner_e};
      spec = circulant_block_spec(f.k, f.l, inner.l * inner.d, inner.k * inner.e, dist, c.seed);
      spec.kind = kind;
      spec.nested = inner;
      break;
    }
    case MatrixKind::Deterministic: {
      PolySpec poly{f.p, f.r, f.t, f.s, f.l};
      validate(poly);
      spec.kind = kind;
      spec.k = poly.t;
      spec.l = poly.s;
      spec.d = poly.p * poly.p;
      spec.e = poly.block_cols;
      spec.poly = poly;
      break;
    }
  }
  spec.distribution.scale_rows = spec.full_rows();
  if (f.rows > 0) spec.rows = f.rows;
  spec.validate();
  return spec;
}

SensingMatrix materialize(const BlockStructureSpec& spec) {
  SensingMatrix m = spec.kind == MatrixKind::Deterministic ? build_devore_block(*spec.poly)
                                                           : build_structured(spec);
  if (spec.rows && *spec.rows < m.rows()) m = m.truncated(*spec.rows);
  return m;
}

std::vector<Eigen::Index> parse_index_list(const std::string& text) {
  std::vector<Eigen::Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Eigen::Index>(v));
    } catch (const std::exception&) {
      throw InvalidArgument("bad index '" + item + "' in list");
    }
  }
  return out;
}

json support_json(const SupportSet& t) {
  json a = json::array();
  for (Eigen::Index i : t.indices()) a.push_back(i);
  return a;
}

// Effective configuration: every option of the subcommand with its parsed or
// default value.
json effective_config(const CLI::App* sub) {
  auto typed = [](const std::string& v) -> json {
    if (v.empty()) return nullptr;
    const json parsed = json::parse(v, nullptr, false);
    if (!parsed.is_discarded() && (parsed.is_number() || parsed.is_boolean())) return parsed;
    return v;
  };
  json cfg = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    cfg[name] = typed(opt->count() > 0 ? opt->results().back() : opt->get_default_str());
  }
  return cfg;
}

// Turns a JSON config object into "--key value" arguments placed before the
// user's own flags, so explicit flags win (options take the last value).
std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad config file: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("config file must hold a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ',';
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      args.push_back(flag);
      args.push_back(joined);
    } else if (value.is_number()) {
      args.push_back(flag);
      args.push_back(value.dump());
    } else {
      throw FormatError("unsupported value for config key '" + key + "'");
    }
  }
  return args;
}

std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

void emit(std::ostream& out, const Common& c, const json& report, const std::string& text) {
  if (c.json)
    out << report.dump(2) << '\n';
  else
    out << text;
}

// ---------------------------------------------------------------------------

struct BuildFlags {
  MatrixFlags matrix;
  std::string out;
  std::string format = "auto";
  std::string spec_out;
  Eigen::Index verify_order = 0;
};

void run_build(const BuildFlags& f, const Common& c, bool seed_given, std::ostream& out) {
  const BlockStructureSpec spec = resolve_spec(f.matrix, c, seed_given);
  const SensingMatrix m = materialize(spec);
  json report{{"kind", std::string(to_string(spec.kind))},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"spec", spec}};
  if (!f.out.empty()) {
    const bool binary = f.format == "binary" ||
                        (f.format == "auto" && (fs::path(f.out).extension() == ".bin" ||
                                                fs::path(f.out).extension() == ".scs"));
    if (f.format != "auto" && f.format != "csv" && f.format != "binary")
      throw InvalidArgument("--format must be auto, csv or binary");
    if (binary)
      write_binary(fs::path(f.out), m.entries());
    else
      write_csv(fs::path(f.out), m.entries());
    report["out"] = f.out;
    report["format"] = binary ? "binary" : "csv";
  }
  if (!f.spec_out.empty()) {
    std::ofstream so(f.spec_out, std::ios::trunc);
    if (!so) throw InvalidArgument("cannot write " + f.spec_out);
    so << json(spec).dump(2) << '\n';
    report["spec_out"] = f.spec_out;
  }

  std::ostringstream text;
  text << to_string(spec.kind) << " matrix " << m.rows() << " x " << m.cols() << '\n';
  bool failed = false;
  if (f.verify_order > 0) {
    if (spec.kind != MatrixKind::Deterministic)
      throw InvalidArgument("--verify-order applies to --kind deterministic only");
    const Theorem3Report t3 = verify_theorem3(*spec.poly, f.verify_order, resolve_threads(c.threads));
    report["isometry_check"] = {{"order", t3.order},
                          {"pass", t3.pass},
                          {"bound", t3.bound},
                          {"worst_delta", t3.worst_delta},
                          {"worst_rowsum_delta", t3.worst_rowsum_delta},
                          {"max_pair_inner", t3.max_pair_inner},
                          {"pair_bound", t3.pair_bound},
                          {"supports", t3.supports},
                          {"worst_support", support_json(t3.worst_support)},
                          {"failure", t3.failure}};
    text << "RIP check at order " << t3.order << ": worst delta " << t3.worst_delta << " (bound "
         << t3.bound << ") over " << t3.supports << " supports: " << (t3.pass ? "pass" : "FAIL")
         << '\n';
    failed = !t3.pass;
  }
  if (failed) throw VerificationFailure{report};
  emit(out, c, report, text.str());
}

struct RipFlags {
  MatrixFlags matrix;
  Eigen::Index order = 2;
  std::string method = "exhaustive";
  std::uint64_t samples = 10000;
  std::uint64_t guard = kExhaustiveGuard;
};

void run_rip(const RipFlags& f, const Common& c, bool seed_given, std::ostream& out) {
  Eigen::MatrixXd phi;
  if (!f.matrix.matrix_file.empty())
    phi = read_matrix(fs::path(f.matrix.matrix_file));
  else
    phi = materialize(resolve_spec(f.matrix, c, seed_given)).entries();

  RipEstimate est;
  if (f.method == "exhaustive")
    est = delta_exhaustive(phi, f.order, resolve_threads(c.threads), f.guard);
  else if (f.method == "mc")
    est = delta_monte_carlo(phi, f.order, f.samples, derive_seed(c.seed, {0x726970}));
  else
    throw InvalidArgument("--method must be exhaustive or mc");

  const json report{{"order", est.order},
                    {"delta", est.delta},
                    {"method", f.method},
                    {"samples", est.samples},
                    {"worst_support", support_json(est.worst_support)},
                    {"coherence", coherence(phi)}};
  std::ostringstream text;
  text << "delta_" << est.order << " " << (f.method == "mc" ? ">= " : "= ") << est.delta
       << " over " << est.samples << " supports; worst support " << est.worst_support.to_string()
       << '\n';
  emit(out, c, report, text.str());
}

struct DepsFlags {
  MatrixFlags matrix;
  std::string support;
  Eigen::Index size = 2;
};

void run_deps(const DepsFlags& f, const Common& c, bool seed_given, std::ostream& out) {
  const BlockStructureSpec spec = resolve_spec(f.matrix, c, seed_given);
  const SensingMatrix m = materialize(spec);

  SupportSet t;
  if (!f.support.empty()) {
    t = SupportSet(parse_index_list(f.support), m.cols());
  } else {
    if (f.size < 1 || f.size > m.cols()) throw InvalidArgument("--size must lie in [1, N]");
    Rng rng(derive_seed(c.seed, {0x64657073}));
    std::vector<Eigen::Index> pool(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.cols(); ++i) pool[static_cast<std::size_t>(i)] = i;
    for (Eigen::Index i = 0; i < f.size; ++i) {
      const auto j = i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(m.cols() - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    t = SupportSet(std::vector<Eigen::Index>(pool.begin(), pool.begin() + f.size), m.cols());
  }

  const DependencyReport rep = dependency_report(m, t);
  json sizes = json::array();
  for (const auto& rows : rep.per_row) sizes.push_back(rows.size());
  const char* regime = "independent";
  switch (rep.regime) {
    case DependencyRegime::Independent: regime = "independent"; break;
    case DependencyRegime::PairCount: regime = "pair-count"; break;
    case DependencyRegime::BlockRows: regime = "block-rows"; break;
    case DependencyRegime::AllRows: regime = "all-rows"; break;
  }
  const json report{{"T", support_json(t)},
                    {"per_row", sizes},
                    {"max", rep.max_size},
                    {"bound", rep.bound},
                    {"regime", regime},
                    {"pass", rep.pass}};
  if (!rep.pass) throw VerificationFailure{report};
  std::ostringstream text;
  text << "T = " << t.to_string() << ": max |D_T,i| = " << rep.max_size << " <= bound " << rep.bound
       << " (" << regime << ")\n";
  emit(out, c, report, text.str());
}

struct BoundsFlags {
  std::int64_t m = 1, N = 1, l = 1, n = 0;
  double delta = 0.5;
  std::optional<double> c0, c2;
  std::int64_t l1 = 0, l2 = 0;
};

void run_bounds(const BoundsFlags& f, const Common& c, std::ostream& out) {
  BoundParams params = make_bound_params(f.delta, f.m, f.N, std::max<std::int64_t>(f.n, 1), f.l, f.c0, f.c2);
  const bool nested = f.l1 > 0 || f.l2 > 0;
  auto evaluate = [&](const BoundParams& p) {
    return nested ? corollary_bound(p, f.l1, f.l2) : theorem1_bound(p);
  };
  BoundResult res = evaluate(params);
  if (f.n <= 0) {
    params.n = std::max<std::int64_t>(res.n_required, 1);
    res = evaluate(params);
  }
  const json report{{"regime", std::string(to_string(res.regime))},
                    {"prob_lower", res.prob_lower},
                    {"n_required", res.n_required},
                    {"vacuous", res.vacuous},
                    {"exponent", res.exponent},
                    {"c1", res.c1},
                    {"c0", params.c0},
                    {"c2", params.c2},
                    {"n", params.n},
                    {"m", params.m},
                    {"N", params.N},
                    {"l", nested ? f.l1 * f.l2 : params.l},
                    {"delta", params.delta}};
  std::ostringstream text;
  text << to_string(res.regime) << ": n >= " << res.n_required << " gives P(RIP) >= "
       << res.prob_lower << " at n = " << params.n << (res.vacuous ? " (vacuous)" : "") << '\n';
  emit(out, c, report, text.str());
}

struct RecoverFlags {
  std::string matrix;
  std::string y;
  std::string solver = "bp";
  double tol = 1e-7;
  Eigen::Index max_iter = 20000;
  Eigen::Index sparsity = 0;
  std::string out;
};

void run_recover(const RecoverFlags& f, const Common& c, std::ostream& out) {
  if (f.matrix.empty() || f.y.empty()) throw InvalidArgument("recover needs --matrix and --y");
  const Eigen::MatrixXd phi = read_matrix(fs::path(f.matrix));
  const Eigen::VectorXd y = read_vector(fs::path(f.y));
  const LinearOperator op = LinearOperator::dense(phi);

  RecoveryResult r;
  if (f.solver == "bp") {
    r = basis_pursuit(op, y, f.tol, f.max_iter);
  } else if (f.solver == "omp") {
    r = omp(op, y, f.sparsity > 0 ? f.sparsity : phi.rows(), f.tol);
  } else {
    throw InvalidArgument("--solver must be bp or omp");
  }
  if (!f.out.empty()) write_vector_csv(fs::path(f.out), r.estimate);

  json report{{"solver", f.solver},
              {"status", to_string(r.status)},
              {"iterations", r.iterations},
              {"residual_norm", r.residual_norm},
              {"l1_norm", r.estimate.lpNorm<1>()},
              {"nonzeros", (r.estimate.array() != 0.0).count()}};
  if (!f.out.empty()) report["out"] = f.out;
  if (r.status == RecoveryStatus::Infeasible) throw VerificationFailure{report};

  std::ostringstream text;
  text << f.solver << ": " << to_string(r.status) << " after " << r.iterations
       << " iterations, residual " << r.residual_norm << '\n';
  if (f.out.empty() && !c.json) {
    for (Eigen::Index i = 0; i < r.estimate.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", r.estimate(i));
      text << buf << '\n';
    }
  }
  emit(out, c, report, text.str());
}

struct BenchFlags {
  std::string preset = "desk";
  std::string out = "bench-out";
  std::string cache;
  bool no_cache = false;
  Eigen::Index N = 0, m = 0, trials = 0, max_iter = 0;
  std::string kinds, n_grid, distribution, solver;
  double rel_tol = 0.0, solver_tol = 0.0;
};

void run_bench(const BenchFlags& f, const Common& c, const CLI::App* sub, std::ostream& out,
               std::ostream& err) {
  auto given = [&](const char* name) { return sub->count(name) > 0; };
  ExperimentConfig cfg = preset_config(f.preset);
  if (!c.config.empty()) {
    std::ifstream in(c.config);
    if (!in) throw InvalidArgument("cannot open config file " + c.config);
    try {
      json j = json::parse(in);
      if (given("--preset")) j["preset"] = f.preset;
      cfg = j.get<ExperimentConfig>();
    } catch (const json::exception& e) {
      throw FormatError(std::string("bad bench config: ") + e.what());
    }
  }
  if (given("--N")) cfg.N = f.N;
  if (given("--m")) cfg.m = f.m;
  if (given("--trials")) cfg.trials = f.trials;
  if (given("--max-iter")) cfg.max_iter = f.max_iter;
  if (given("--rel-tol")) cfg.rel_tol = f.rel_tol;
  if (given("--solver-tol")) cfg.solver_tol = f.solver_tol;
  if (given("--distribution")) cfg.distribution = parse_distribution_kind(f.distribution);
  if (given("--solver")) cfg.solver = parse_solver_kind(f.solver);
  if (given("--seed")) cfg.master_seed = c.seed;
  if (given("--threads")) cfg.threads = c.threads;
  if (given("--n-grid")) cfg.n_grid = parse_index_list(f.n_grid);
  if (given("--kinds")) {
    cfg.kinds.clear();
    std::stringstream ss(f.kinds);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) cfg.kinds.push_back(parse_bench_kind(item));
  }
  cfg.validate();
  err << json{{"subcommand", "bench"}, {"experiment", config_echo(cfg)}}.dump() << '\n';

  std::optional<fs::path> cache;
  if (!f.no_cache) cache = f.cache.empty() ? fs::path(f.out) / "cache" : fs::path(f.cache);
  const SuccessCurve curve = success_curve(cfg, cache, &err);
  write_bench_outputs(fs::path(f.out), cfg, curve);

  json points = json::array();
  for (const auto& p : curve.points)
    points.push_back({{"kind", std::string(to_string(p.kind))},
                      {"n", p.n},
                      {"successes", p.successes},
                      {"trials", p.trials},
                      {"fraction", p.fraction},
                      {"ci_lo", p.ci_lo},
                      {"ci_hi", p.ci_hi}});
  const json report{{"out", f.out},
                    {"files", {"curve.csv", "trials.csv", "config-echo.json", "plot.gp"}},
                    {"points", points}};
  std::ostringstream text;
  text << "wrote " << (fs::path(f.out) / "curve.csv").string() << " (" << curve.points.size()
       << " points)\n";
  emit(out, c, report, text.str());
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured random sensing matrices: construction, RIP, bounds and recovery",
               "structcs"};
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  Common common;

  BuildFlags build;
  auto* build_cmd = app.add_subcommand("build", "Build a sensing matrix and export it");
  add_common(build_cmd, common);
  add_matrix_flags(build_cmd, build.matrix, false);
  build_cmd->add_option("--out", build.out, "Matrix output file (.csv, or .bin/.scs for binary)");
  build_cmd->add_option("--format", build.format, "auto, csv or binary");
  build_cmd->add_option("--spec-out", build.spec_out, "Write the resolved spec JSON here");
  build_cmd->add_option("--verify-order", build.verify_order,
                        "deterministic: exhaustively check the RIP guarantee at this order");

  RipFlags rip;
  auto* rip_cmd = app.add_subcommand("rip", "Estimate the restricted isometry constant");
  add_common(rip_cmd, common);
  add_matrix_flags(rip_cmd, rip.matrix, true);
  rip_cmd->add_option("--order", rip.order, "Support size m");
  rip_cmd->add_option("--method", rip.method, "exhaustive or mc");
  rip_cmd->add_option("--samples", rip.samples, "Monte Carlo supports");
  rip_cmd->add_option("--guard", rip.guard, "Largest C(N, m) the exhaustive sweep accepts");

  DepsFlags deps;
  auto* deps_cmd = app.add_subcommand("deps", "Dependency sets of a support");
  add_common(deps_cmd, common);
  add_matrix_flags(deps_cmd, deps.matrix, false);
  deps_cmd->add_option("--support", deps.support, "Comma-separated 0-based column indices");
  deps_cmd->add_option("--size", deps.size, "Random support size when --support is absent");

  BoundsFlags bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "RIP probability bounds and sample complexity");
  add_common(bounds_cmd, common);
  bounds_cmd->add_option("--m", bounds.m, "Sparsity");
  bounds_cmd->add_option("--N", bounds.N, "Columns");
  bounds_cmd->add_option("--l", bounds.l, "Block rows");
  bounds_cmd->add_option("--n", bounds.n, "Measurements (0: the required count)");
  bounds_cmd->add_option("--delta", bounds.delta, "Isometry constant in (0, 1)");
  bounds_cmd->add_option("--c0", bounds.c0, "Concentration constant");
  bounds_cmd->add_option("--c2", bounds.c2, "Exponent constant, 0 < c2 < c0");
  bounds_cmd->add_option("--l1", bounds.l1, "Outer block rows (nested circulant)");
  bounds_cmd->add_option("--l2", bounds.l2, "Inner block rows (nested circulant)");

  RecoverFlags recover;
  auto* recover_cmd = app.add_subcommand("recover", "Recover a sparse vector from measurements");
  add_common(recover_cmd, common);
  recover_cmd->add_option("--matrix", recover.matrix, "Matrix file (CSV or binary)");
  recover_cmd->add_option("--y", recover.y, "Measurement vector (CSV, one value per line)");
  recover_cmd->add_option("--solver", recover.solver, "bp or omp");
  recover_cmd->add_option("--tol", recover.tol, "Relative feasibility tolerance");
  recover_cmd->add_option("--max-iter", recover.max_iter, "Iteration cap (bp)");
  recover_cmd->add_option("--sparsity", recover.sparsity, "Greedy steps (omp; 0: n)");
  recover_cmd->add_option("--out", recover.out, "Estimate CSV");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Monte Carlo success curves");
  add_common(bench_cmd, common);
  bench_cmd->add_option("--preset", bench.preset, "desk or full");
  bench_cmd->add_option("--out", bench.out, "Output directory");
  bench_cmd->add_option("--cache", bench.cache, "Per-cell cache directory (default OUT/cache)");
  bench_cmd->add_flag("--no-cache", bench.no_cache, "Do not read or write the cell cache");
  bench_cmd->add_option("--N", bench.N, "Signal length");
  bench_cmd->add_option("--m", bench.m, "Sparsity");
  bench_cmd->add_option("--trials", bench.trials, "Trials per grid point");
  bench_cmd->add_option("--kinds", bench.kinds, "Comma-separated: iid, toeplitz, toeplitz-block");
  bench_cmd->add_option("--n-grid", bench.n_grid, "Comma-separated measurement counts");
  bench_cmd->add_option("--distribution", bench.distribution, "gaussian, bernoulli, sparse-ternary");
  bench_cmd->add_option("--solver", bench.solver, "bp or omp");
  bench_cmd->add_option("--rel-tol", bench.rel_tol, "Exact-recovery threshold");
  bench_cmd->add_option("--solver-tol", bench.solver_tol, "Solver feasibility tolerance");
  bench_cmd->add_option("--max-iter", bench.max_iter, "Solver iteration cap");

  const CLI::App* active = nullptr;
  try {
    std::vector<std::string> args = raw_args;
    if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
        app.get_subcommand_no_throw(args.front()) == nullptr) {
      err << "unknown subcommand '" << args.front() << "'\n" << app.help();
      return kUsage;
    }
    // Config values go right after the subcommand name, ahead of user flags.
    if (!args.empty() && args.front() != "bench") {
      if (auto path = find_config(args)) {
        auto injected = config_arguments(*path);
        args.insert(args.begin() + 1, injected.begin(), injected.end());
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    for (const CLI::App* sub : app.get_subcommands()) active = sub;
    const bool seed_given = active->count("--seed") > 0;
    err << json{{"subcommand", active->get_name()}, {"config", effective_config(active)}}.dump() << '\n';

    if (active == build_cmd) run_build(build, common, seed_given, out);
    else if (active == rip_cmd) run_rip(rip, common, seed_given, out);
    else if (active == deps_cmd) run_deps(deps, common, seed_given, out);
    else if (active == bounds_cmd) run_bounds(bounds, common, out);
    else if (active == recover_cmd) run_recover(recover, common, out);
    else if (active == bench_cmd) run_bench(bench, common, bench_cmd, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kOk;
    err << app.help();
    return kUsage;
  } catch (const VerificationFailure& v) {
    if (common.json)
      out << v.report.dump(2) << '\n';
    else
      out << v.report.dump() << '\n';
    err << "verification failed\n";
    return kVerificationFailed;
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace structcs::cli
