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

#pragma once

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structcs/distribution.hpp"
#include "structcs/recovery.hpp"
#include "structcs/structure.hpp"

namespace structcs {

enum class BenchKind { IID, Toeplitz, ToeplitzBlock };
enum class SolverKind { BasisPursuit, Omp };

std::string_view to_string(BenchKind kind);
BenchKind parse_bench_kind(std::string_view name);  // iid, toeplitz, toeplitz-block
std::string_view to_string(SolverKind kind);
SolverKind parse_solver_kind(std::string_view name);  // bp, omp

struct ExperimentConfig {
  std::string preset = "desk";
  Eigen::Index N = 512;
  Eigen::Index m = 10;
  std::vector<BenchKind> kinds{BenchKind::IID, BenchKind::Toeplitz, BenchKind::ToeplitzBlock};
  std::vector<Eigen::Index> n_grid;
  Eigen::Index trials = 200;
  DistributionKind distribution = DistributionKind::Bernoulli;
  SolverKind solver = SolverKind::BasisPursuit;
  double rel_tol = 1e-5;
  double solver_tol = 1e-7;
  Eigen::Index max_iter = 20000;
  std::uint64_t master_seed = 20240501;
  std::size_t threads = 0;  // 0: STRUCTCS_THREADS, else 1

  void validate() const;
};

// N=512, m=10, 200 trials, n in 40, 60, ..., 240, 256.
ExperimentConfig desk_preset();
// N=2048, m=20, 1000 trials, n in 40, 60, ..., 400.
ExperimentConfig full_preset();
ExperimentConfig preset_config(std::string_view name);

void to_json(nlohmann::json& j, const ExperimentConfig& config);
// Starts from the preset named in "preset" (desk when absent) and overrides
// the keys that are present.
void from_json(const nlohmann::json& j, ExperimentConfig& config);

// Block shape for the Toeplitz-block template at n measurements: the largest
// divisor l of n with l <= 3m(3m-1) and d = n / l >= 8. Falls back to l = 1,
// d = n when no divisor qualifies.
struct BlockShape {
  Eigen::Index l = 1;
  Eigen::Index d = 1;
};
BlockShape toeplitz_block_shape(Eigen::Index n, Eigen::Index m);

// Matrix layout for one kind at n measurements. Toeplitz is the scalar case
// d = e = 1; the Toeplitz-block template uses e = 1 and k = N.
BlockStructureSpec template_spec(BenchKind kind, const ExperimentConfig& config, Eigen::Index n,
                                 std::uint64_t seed);

// Uniform m-subset support (sorted), i.i.d. standard normal values.
SparseSignal generate_sparse_signal(Eigen::Index N, Eigen::Index m, std::uint64_t seed);

std::uint64_t signal_seed(const ExperimentConfig& config, Eigen::Index n, Eigen::Index trial);
std::uint64_t matrix_seed(const ExperimentConfig& config, BenchKind kind, Eigen::Index n,
                          Eigen::Index trial);

struct TrialOutcome {
  bool success = false;
  double rel_error = 0.0;
  RecoveryStatus status = RecoveryStatus::Converged;
  Eigen::Index iterations = 0;
  std::string error;  // set when the solver threw
};

TrialOutcome run_trial_detailed(const ExperimentConfig& config, BenchKind kind, Eigen::Index n,
                                Eigen::Index trial);
bool run_trial(const ExperimentConfig& config, BenchKind kind, Eigen::Index n, Eigen::Index trial);

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(Eigen::Index successes, Eigen::Index trials,
                                          double z = 1.959963984540054);

struct CurvePoint {
  BenchKind kind = BenchKind::IID;
  Eigen::Index n = 0;
  Eigen::Index successes = 0;
  Eigen::Index trials = 0;
  double fraction = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::vector<TrialOutcome> outcomes;
};

struct SuccessCurve {
  std::vector<CurvePoint> points;  // kinds in config order, then n ascending

  const CurvePoint& at(BenchKind kind, Eigen::Index n) const;
};

// Runs the full grid. With a cache directory, each finished (kind, n) cell is
// stored atomically under a key derived from the seed tuple and the
// experiment settings, and reused on the next run.
SuccessCurve success_curve(const ExperimentConfig& config,
                           const std::optional<std::filesystem::path>& cache_dir = std::nullopt,
                           std::ostream* log = nullptr);

void write_curve_csv(std::ostream& out, const SuccessCurve& curve);
void write_trials_csv(std::ostream& out, const SuccessCurve& curve);
void write_plot_script(std::ostream& out, const SuccessCurve& curve,
                       const std::string& csv_name = "curve.csv");
nlohmann::json config_echo(const ExperimentConfig& config);

// curve.csv, trials.csv, config-echo.json and plot.gp under `dir`.
void write_bench_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                         const SuccessCurve& curve);

}  // namespace structcs
