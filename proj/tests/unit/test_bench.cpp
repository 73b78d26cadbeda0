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

#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "structcs/bench.hpp"
#include "structcs/error.hpp"

using namespace structcs;

namespace {

ExperimentConfig tiny() {
  ExperimentConfig c = desk_preset();
  c.N = 64;
  c.m = 3;
  c.n_grid = {2, 24, 64};
  c.trials = 4;
  return c;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("structcs-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("presets") {
  const auto desk = desk_preset();
  CHECK(desk.N == 512);
  CHECK(desk.m == 10);
  CHECK(desk.trials == 200);
  CHECK(desk.n_grid.front() == 40);
  CHECK(desk.n_grid.back() == 256);
  const auto full = full_preset();
  CHECK(full.N == 2048);
  CHECK(full.m == 20);
  CHECK(full.trials == 1000);
  CHECK(full.n_grid.back() == 400);
  CHECK(preset_config("full").N == 2048);
  CHECK_THROWS_AS(preset_config("huge"), InvalidArgument);
}

TEST_CASE("config validation") {
  auto c = tiny();
  CHECK_NOTHROW(c.validate());
  c.m = -1;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = tiny();
  c.n_grid = {65};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = tiny();
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("config json round trip") {
  auto c = tiny();
  c.solver = SolverKind::Omp;
  c.kinds = {BenchKind::ToeplitzBlock};
  nlohmann::json j = c;
  ExperimentConfig back;
  from_json(j, back);
  CHECK(nlohmann::json(back) == j);
  ExperimentConfig partial;
  from_json(nlohmann::json{{"preset", "full"}, {"trials", 7}}, partial);
  CHECK(partial.N == 2048);
  CHECK(partial.trials == 7);
}

TEST_CASE("sparse signal generation") {
  const auto empty = generate_sparse_signal(20, 0, 1);
  CHECK(empty.support.empty());
  CHECK(empty.to_dense().isZero(0.0));
  const auto full = generate_sparse_signal(20, 20, 1);
  REQUIRE(full.support.size() == 20);
  for (Eigen::Index i = 0; i < 20; ++i) CHECK(full.support[static_cast<std::size_t>(i)] == i);
  const auto a = generate_sparse_signal(100, 7, 42);
  const auto b = generate_sparse_signal(100, 7, 42);
  CHECK(a.support == b.support);
  CHECK(a.values == b.values);
  CHECK(std::set<Eigen::Index>(a.support.begin(), a.support.end()).size() == 7);
  CHECK(std::is_sorted(a.support.begin(), a.support.end()));
  CHECK_THROWS_AS(generate_sparse_signal(5, 6, 1), InvalidArgument);
}

TEST_CASE("wilson interval") {
  const auto zero = wilson_interval(0, 10);
  CHECK(zero.first == 0.0);
  CHECK(zero.second > 0.0);
  const auto all = wilson_interval(10, 10);
  CHECK(all.second == 1.0);
  CHECK(all.first < 1.0);
  // 50/100 at z = 1.96: centre 0.5, half width 1.96 * sqrt(0.25/100) / (1 + z^2/100).
  const double z = 1.959963984540054;
  const double half = z * std::sqrt(0.25 / 100.0 + z * z / 40000.0) / (1.0 + z * z / 100.0);
  const auto mid = wilson_interval(50, 100);
  CHECK(mid.first == doctest::Approx(0.5 - half));
  CHECK(mid.second == doctest::Approx(0.5 + half));
}

TEST_CASE("toeplitz block shape") {
  const auto s = toeplitz_block_shape(240, 10);
  CHECK(s.l * s.d == 240);
  CHECK(s.d >= 8);
  CHECK(s.l <= 3 * 10 * 29);
  CHECK(s.l == 30);
  const auto prime = toeplitz_block_shape(41, 10);
  CHECK(prime.l == 1);
  CHECK(prime.d == 41);
}

TEST_CASE("template layouts") {
  const auto c = tiny();
  const auto iid = template_spec(BenchKind::IID, c, 24, 5);
  CHECK(iid.n() == 24);
  CHECK(iid.N() == 64);
  const auto t = template_spec(BenchKind::Toeplitz, c, 24, 5);
  CHECK(t.n() == 24);
  CHECK(t.N() == 64);
  CHECK(t.d == 1);
  CHECK(t.e == 1);
  const auto tb = template_spec(BenchKind::ToeplitzBlock, c, 24, 5);
  CHECK(tb.n() == 24);
  CHECK(tb.N() == 64);
  CHECK(tb.e == 1);
}

TEST_CASE("trial outcomes") {
  auto c = tiny();
  c.trials = 1;
  // n = N with an i.i.d. matrix is invertible.
  CHECK(run_trial(c, BenchKind::IID, 64, 0));
  // Fewer measurements than nonzeros cannot succeed.
  CHECK_FALSE(run_trial(c, BenchKind::IID, 2, 0));
  CHECK(signal_seed(c, 24, 3) == signal_seed(c, 24, 3));
  CHECK(signal_seed(c, 24, 3) != signal_seed(c, 24, 4));
  CHECK(matrix_seed(c, BenchKind::IID, 24, 3) != matrix_seed(c, BenchKind::Toeplitz, 24, 3));
}

TEST_CASE("one trial gives a fraction of 0 or 1") {
  auto c = tiny();
  c.trials = 1;
  const auto curve = success_curve(c);
  for (const auto& p : curve.points) CHECK((p.fraction == 0.0 || p.fraction == 1.0));
}

TEST_CASE("curve is independent of the thread count") {
  auto c = tiny();
  c.threads = 1;
  std::ostringstream one;
  write_trials_csv(one, success_curve(c));
  c.threads = 3;
  std::ostringstream three;
  write_trials_csv(three, success_curve(c));
  CHECK(one.str() == three.str());
}

TEST_CASE("cache is reused and outputs are written") {
  const auto dir = scratch_dir("cache");
  const auto c = tiny();
  std::ostringstream first;
  write_curve_csv(first, success_curve(c, dir / "cache"));
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir / "cache")) ++files;
  CHECK(files == c.kinds.size() * c.n_grid.size());
  std::ostringstream log;
  std::ostringstream second;
  const auto curve = success_curve(c, dir / "cache", &log);
  write_curve_csv(second, curve);
  CHECK(first.str() == second.str());
  CHECK(log.str().find("cached") != std::string::npos);

  write_bench_outputs(dir / "out", c, curve);
  for (const char* f : {"curve.csv", "trials.csv", "plot.gp", "config-echo.json"})
    CHECK(std::filesystem::exists(dir / "out" / f));
  std::filesystem::remove_all(dir);
}

TEST_CASE("config echo reports layouts") {
  const auto echo = config_echo(tiny());
  CHECK(echo.contains("layouts"));
  CHECK(echo.contains("threads_effective"));
}

}  // TEST_SUITE
