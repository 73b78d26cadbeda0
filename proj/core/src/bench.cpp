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

#include "structcs/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "structcs/error.hpp"
#include "structcs/linear_operator.hpp"
#include "structcs/parallel.hpp"
#include "structcs/rng.hpp"
#include "structcs/sensing_matrix.hpp"

namespace structcs {

using nlohmann::json;

std::string_view to_string(BenchKind kind) {
  switch (kind) {
    case BenchKind::IID: return "iid";
    case BenchKind::Toeplitz: return "toeplitz";
    case BenchKind::ToeplitzBlock: return "toeplitz-block";
  }
  return "unknown";
}

BenchKind parse_bench_kind(std::string_view name) {
  if (name == "iid") return BenchKind::IID;
  if (name == "toeplitz") return BenchKind::Toeplitz;
  if (name == "toeplitz-block") return BenchKind::ToeplitzBlock;
  throw InvalidArgument("unknown bench kind '" + std::string(name) + "'");
}

std::string_view to_string(SolverKind kind) {
  return kind == SolverKind::BasisPursuit ? "bp" : "omp";
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "bp" || name == "basis-pursuit") return SolverKind::BasisPursuit;
  if (name == "omp") return SolverKind::Omp;
  throw InvalidArgument("unknown solver '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  if (m < 0 || m > N) throw InvalidArgument("need 0 <= m <= N");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (kinds.empty()) throw InvalidArgument("at least one matrix kind is required");
  if (n_grid.empty()) throw InvalidArgument("n_grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1 || n_grid[i] > N) throw InvalidArgument("every n must lie in [1, N]");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw InvalidArgument("n_grid must be strictly increasing");
  }
  if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be > 0");
  if (!(solver_tol > 0.0)) throw InvalidArgument("solver_tol must be > 0");
  if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
}

ExperimentConfig desk_preset() {
  ExperimentConfig c;
  c.preset = "desk";
  c.N = 512;
  c.m = 10;
  c.trials = 200;
  c.n_grid.clear();
  for (Eigen::Index n = 40; n <= 240; n += 20) c.n_grid.push_back(n);
  c.n_grid.push_back(256);
  return c;
}

ExperimentConfig full_preset() {
  ExperimentConfig c;
  c.preset = "full";
  c.N = 2048;
  c.m = 20;
  c.trials = 1000;
  c.n_grid.clear();
  for (Eigen::Index n = 40; n <= 400; n += 20) c.n_grid.push_back(n);
  return c;
}

ExperimentConfig preset_config(std::string_view name) {
  if (name == "desk") return desk_preset();
  if (name == "full") return full_preset();
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

void to_json(json& j, const ExperimentConfig& c) {
  json kinds = json::array();
  for (BenchKind k : c.kinds) kinds.push_back(std::string(to_string(k)));
  j = json{{"preset", c.preset},
           {"N", c.N},
           {"m", c.m},
           {"kinds", kinds},
           {"n_grid", c.n_grid},
           {"trials", c.trials},
           {"distribution", std::string(to_string(c.distribution))},
           {"solver", std::string(to_string(c.solver))},
           {"rel_tol", c.rel_tol},
           {"solver_tol", c.solver_tol},
           {"max_iter", c.max_iter},
           {"master_seed", c.master_seed},
           {"threads", c.threads}};
}

void from_json(const json& j, ExperimentConfig& c) {
  c = preset_config(j.value("preset", std::string("desk")));
  if (j.contains("N")) c.N = j.at("N").get<Eigen::Index>();
  if (j.contains("m")) c.m = j.at("m").get<Eigen::Index>();
  if (j.contains("kinds")) {
    c.kinds.clear();
    for (const auto& k : j.at("kinds")) c.kinds.push_back(parse_bench_kind(k.get<std::string>()));
  }
  if (j.contains("n_grid")) c.n_grid = j.at("n_grid").get<std::vector<Eigen::Index>>();
  if (j.contains("trials")) c.trials = j.at("trials").get<Eigen::Index>();
  if (j.contains("distribution"))
    c.distribution = parse_distribution_kind(j.at("distribution").get<std::string>());
  if (j.contains("solver")) c.solver = parse_solver_kind(j.at("solver").get<std::string>());
  if (j.contains("rel_tol")) c.rel_tol = j.at("rel_tol").get<double>();
  if (j.contains("solver_tol")) c.solver_tol = j.at("solver_tol").get<double>();
  if (j.contains("max_iter")) c.max_iter = j.at("max_iter").get<Eigen::Index>();
  if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("threads")) c.threads = j.at("threads").get<std::size_t>();
}

BlockShape toeplitz_block_shape(Eigen::Index n, Eigen::Index m) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  const Eigen::Index cap = 3 * m * (3 * m - 1);
  BlockShape best{1, n};
  for (Eigen::Index l = 1; l <= n; ++l) {
    if (n % l != 0) continue;
    if (l <= cap && n / l >= 8) best = {l, n / l};
  }
  return best;
}

BlockStructureSpec template_spec(BenchKind kind, const ExperimentConfig& c, Eigen::Index n,
                                 std::uint64_t seed) {
  EntryDistribution dist{c.distribution, n};
  switch (kind) {
    case BenchKind::IID: return iid_spec(n, c.N, dist, seed);
    case BenchKind::Toeplitz: return toeplitz_block_spec(c.N, n, 1, 1, dist, seed);
    case BenchKind::ToeplitzBlock: {
      const BlockShape shape = toeplitz_block_shape(n, c.m);
      return toeplitz_block_spec(c.N, shape.l, shape.d, 1, dist, seed);
    }
  }
  throw InvalidArgument("unknown bench kind");
}

SparseSignal generate_sparse_signal(Eigen::Index N, Eigen::Index m, std::uint64_t seed) {
  if (N < 0 || m < 0 || m > N) throw InvalidArgument("need 0 <= m <= N");
  Rng rng(seed);
  std::vector<Eigen::Index> pool(static_cast<std::size_t>(N));
  std::iota(pool.begin(), pool.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto j = i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(N - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  SparseSignal s;
  s.N = N;
  s.support.assign(pool.begin(), pool.begin() + m);
  std::sort(s.support.begin(), s.support.end());
  s.values.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) s.values.push_back(rng.normal());
  return s;
}

namespace {
constexpr std::uint64_t kSignalTag = 0x5167'6e61'6cULL;
constexpr std::uint64_t kMatrixTag = 0x6d61'7472'6978ULL;
}  // namespace

std::uint64_t signal_seed(const ExperimentConfig& c, Eigen::Index n, Eigen::Index trial) {
  return derive_seed(c.master_seed, {kSignalTag, static_cast<std::uint64_t>(n),
                                     static_cast<std::uint64_t>(trial)});
}

std::uint64_t matrix_seed(const ExperimentConfig& c, BenchKind kind, Eigen::Index n,
                          Eigen::Index trial) {
  return derive_seed(c.master_seed, {kMatrixTag, static_cast<std::uint64_t>(kind),
                                     static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
}

TrialOutcome run_trial_detailed(const ExperimentConfig& c, BenchKind kind, Eigen::Index n,
                                Eigen::Index trial) {
  TrialOutcome out;
  const SparseSignal signal = generate_sparse_signal(c.N, c.m, signal_seed(c, n, trial));
  const Eigen::VectorXd x = signal.to_dense();
  try {
    const SensingMatrix phi = build_structured(template_spec(kind, c, n, matrix_seed(c, kind, n, trial)));
    const LinearOperator op = LinearOperator::dense(phi.entries());
    const Eigen::VectorXd y = phi.entries() * x;
    RecoveryResult r;
    if (c.solver == SolverKind::BasisPursuit) {
      BasisPursuitOptions opt;
      opt.tol = c.solver_tol;
      opt.max_iter = c.max_iter;
      r = basis_pursuit(op, y, opt);
    } else {
      r = omp(op, y, std::min(c.m, n));
    }
    out.status = r.status;
    out.iterations = r.iterations;
    out.rel_error = (r.estimate - x).norm() / std::max(x.norm(), std::numeric_limits<double>::min());
    out.success = r.status != RecoveryStatus::Infeasible && is_exact_recovery(signal, r, c.rel_tol);
  } catch (const std::exception& e) {
    out.success = false;
    out.status = RecoveryStatus::Infeasible;
    out.rel_error = std::numeric_limits<double>::infinity();
    out.error = e.what();
  }
  return out;
}

bool run_trial(const ExperimentConfig& c, BenchKind kind, Eigen::Index n, Eigen::Index trial) {
  return run_trial_detailed(c, kind, n, trial).success;
}

std::pair<double, double> wilson_interval(Eigen::Index successes, Eigen::Index trials, double z) {
  if (trials < 1 || successes < 0 || successes > trials)
    throw InvalidArgument("need 0 <= successes <= trials and trials >= 1");
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = (p + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
  double lo = std::max(0.0, centre - half);
  double hi = std::min(1.0, centre + half);
  if (successes == 0) lo = 0.0;
  if (successes == trials) hi = 1.0;
  return {lo, hi};
}

const CurvePoint& SuccessCurve::at(BenchKind kind, Eigen::Index n) const {
  for (const auto& p : points)
    if (p.kind == kind && p.n == n) return p;
  throw InvalidArgument("no curve point for " + std::string(to_string(kind)) + " at n = " +
                        std::to_string(n));
}

namespace {

std::uint64_t double_bits(double v) {
  std::uint64_t b = 0;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

std::uint64_t cell_key(const ExperimentConfig& c, BenchKind kind, Eigen::Index n) {
  return derive_seed(c.master_seed,
                     {static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(n),
                      static_cast<std::uint64_t>(c.N), static_cast<std::uint64_t>(c.m),
                      static_cast<std::uint64_t>(c.trials), static_cast<std::uint64_t>(c.distribution),
                      static_cast<std::uint64_t>(c.solver), double_bits(c.rel_tol),
                      double_bits(c.solver_tol), static_cast<std::uint64_t>(c.max_iter)});
}

json outcome_to_json(const TrialOutcome& o) {
  return json{{"success", o.success},
              {"rel_error", std::isfinite(o.rel_error) ? json(o.rel_error) : json(nullptr)},
              {"status", to_string(o.status)},
              {"iterations", o.iterations},
              {"error", o.error}};
}

TrialOutcome outcome_from_json(const json& j) {
  TrialOutcome o;
  o.success = j.at("success").get<bool>();
  o.rel_error = j.at("rel_error").is_null() ? std::numeric_limits<double>::infinity()
                                            : j.at("rel_error").get<double>();
  const auto status = j.at("status").get<std::string>();
  o.status = status == "converged"  ? RecoveryStatus::Converged
             : status == "max-iter" ? RecoveryStatus::MaxIter
                                    : RecoveryStatus::Infeasible;
  o.iterations = j.at("iterations").get<Eigen::Index>();
  o.error = j.at("error").get<std::string>();
  return o;
}

std::optional<std::vector<TrialOutcome>> load_cell(const std::filesystem::path& file,
                                                   std::uint64_t key, Eigen::Index trials) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    if (j.at("key").get<std::uint64_t>() != key) return std::nullopt;
    std::vector<TrialOutcome> out;
    for (const auto& t : j.at("outcomes")) out.push_back(outcome_from_json(t));
    if (static_cast<Eigen::Index>(out.size()) != trials) return std::nullopt;
    return out;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void store_cell(const std::filesystem::path& file, std::uint64_t key,
                const std::vector<TrialOutcome>& outcomes) {
  json j{{"key", key}, {"outcomes", json::array()}};
  for (const auto& o : outcomes) j["outcomes"].push_back(outcome_to_json(o));
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp);
    out << j.dump();
  }
  std::filesystem::rename(tmp, file);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SuccessCurve success_curve(const ExperimentConfig& c,
                           const std::optional<std::filesystem::path>& cache_dir, std::ostream* log) {
  c.validate();
  const std::size_t threads = resolve_threads(c.threads);
  if (cache_dir) std::filesystem::create_directories(*cache_dir);

  SuccessCurve curve;
  for (BenchKind kind : c.kinds) {
    for (Eigen::Index n : c.n_grid) {
      CurvePoint point;
      point.kind = kind;
      point.n = n;
      point.trials = c.trials;

      const std::uint64_t key = cell_key(c, kind, n);
      std::optional<std::filesystem::path> file;
      if (cache_dir) {
        char name[64];
        std::snprintf(name, sizeof name, "cell-%016llx.json", static_cast<unsigned long long>(key));
        file = *cache_dir / name;
      }
      bool cached = false;
      if (file) {
        if (auto hit = load_cell(*file, key, c.trials)) {
          point.outcomes = std::move(*hit);
          cached = true;
        }
      }
      if (!cached) {
        point.outcomes.resize(static_cast<std::size_t>(c.trials));
        parallel_for(static_cast<std::size_t>(c.trials), threads, [&](std::size_t t) {
          point.outcomes[t] = run_trial_detailed(c, kind, n, static_cast<Eigen::Index>(t));
        });
        if (file) store_cell(*file, key, point.outcomes);
      }

      for (const auto& o : point.outcomes) point.successes += o.success ? 1 : 0;
      point.fraction = static_cast<double>(point.successes) / static_cast<double>(point.trials);
      std::tie(point.ci_lo, point.ci_hi) = wilson_interval(point.successes, point.trials);
      if (log) {
        *log << to_string(kind) << " n=" << n << " " << point.successes << "/" << point.trials
             << (cached ? " (cached)" : "") << '\n';
        for (std::size_t t = 0; t < point.outcomes.size(); ++t)
          if (!point.outcomes[t].error.empty())
            *log << "  trial " << t << " failed: " << point.outcomes[t].error << '\n';
        log->flush();
      }
      curve.points.push_back(std::move(point));
    }
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const SuccessCurve& curve) {
  out << "kind,n,successes,trials,fraction,ci_lo,ci_hi\n";
  for (const auto& p : curve.points)
    out << to_string(p.kind) << ',' << p.n << ',' << p.successes << ',' << p.trials << ','
        << format_double(p.fraction) << ',' << format_double(p.ci_lo) << ','
        << format_double(p.ci_hi) << '\n';
}

void write_trials_csv(std::ostream& out, const SuccessCurve& curve) {
  out << "kind,n,trial,status,iterations,rel_error,success\n";
  for (const auto& p : curve.points)
    for (std::size_t t = 0; t < p.outcomes.size(); ++t) {
      const auto& o = p.outcomes[t];
      out << to_string(p.kind) << ',' << p.n << ',' << t << ',' << to_string(o.status) << ','
          << o.iterations << ',' << (std::isfinite(o.rel_error) ? format_double(o.rel_error) : "inf")
          << ',' << (o.success ? 1 : 0) << '\n';
    }
}

void write_plot_script(std::ostream& out, const SuccessCurve& curve, const std::string& csv_name) {
  std::vector<BenchKind> kinds;
  for (const auto& p : curve.points)
    if (std::find(kinds.begin(), kinds.end(), p.kind) == kinds.end()) kinds.push_back(p.kind);

  out << "# gnuplot -persist plot.gp\n"
      << "set datafile separator ','\n"
      << "set key bottom right\n"
      << "set xlabel 'measurements n'\n"
      << "set ylabel 'empirical probability of exact recovery'\n"
      << "set yrange [-0.02:1.02]\n"
      << "set grid\n"
      << "plot \\\n";
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const std::string k(to_string(kinds[i]));
    out << "  '" << csv_name << "' every ::1 using 2:(strcol(1) eq '" << k << "' ? $5 : 1/0)"
        << ":(strcol(1) eq '" << k << "' ? $6 : 1/0):(strcol(1) eq '" << k << "' ? $7 : 1/0)"
        << " with yerrorlines title '" << k << "'" << (i + 1 < kinds.size() ? ", \\\n" : "\n");
  }
}

json config_echo(const ExperimentConfig& c) {
  json j = c;
  j["threads_effective"] = resolve_threads(c.threads);
  json layouts = json::object();
  for (BenchKind kind : c.kinds) {
    json rows = json::array();
    for (Eigen::Index n : c.n_grid) {
      const BlockStructureSpec s = template_spec(kind, c, n, 0);
      rows.push_back({{"n", n}, {"k", s.k}, {"l", s.l}, {"d", s.d}, {"e", s.e}});
    }
    layouts[std::string(to_string(kind))] = rows;
  }
  j["layouts"] = layouts;
  j["signal"] = {{"support", "uniform m-subset"}, {"values", "standard normal"}};
  return j;
}

void write_bench_outputs(const std::filesystem::path& dir, const ExperimentConfig& c,
                         const SuccessCurve& curve) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("curve.csv");
    write_curve_csv(out, curve);
  }
  {
    auto out = open("trials.csv");
    write_trials_csv(out, curve);
  }
  {
    auto out = open("plot.gp");
    write_plot_script(out, curve);
  }
  {
    auto out = open("config-echo.json");
    out << config_echo(c).dump(2) << '\n';
  }
}

}  // namespace structcs
