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
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>

#include "structcs/structure.hpp"

namespace structcs {

// Spec serialisation: {kind, k, l, d, e, nested, distribution, seed} plus the
// optional "rows" (truncation) and "poly" (deterministic kind) members.
void to_json(nlohmann::json& j, const EntryDistribution& dist);
void from_json(const nlohmann::json& j, EntryDistribution& dist);
void to_json(nlohmann::json& j, const NestedSpec& nested);
void from_json(const nlohmann::json& j, NestedSpec& nested);
void to_json(nlohmann::json& j, const PolySpec& poly);
void from_json(const nlohmann::json& j, PolySpec& poly);
void to_json(nlohmann::json& j, const BlockStructureSpec& spec);
void from_json(const nlohmann::json& j, BlockStructureSpec& spec);

// Row-major CSV, one matrix row per line, values printed with 17 significant
// digits so a write/read round trip is exact.
void write_csv(std::ostream& out, const Eigen::MatrixXd& m);
void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_csv(std::istream& in);
Eigen::MatrixXd read_csv(const std::filesystem::path& path);

// Binary layout: magic "SCS1", rows (u64 LE), cols (u64 LE), rows*cols f64 LE
// values in row-major order.
void write_binary(std::ostream& out, const Eigen::MatrixXd& m);
void write_binary(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_binary(std::istream& in);
Eigen::MatrixXd read_binary(const std::filesystem::path& path);

// Dispatches on the file contents: "SCS1" magic means binary, else CSV.
Eigen::MatrixXd read_matrix(const std::filesystem::path& path);

// A CSV vector is either one value per line or a single row.
Eigen::VectorXd read_vector(const std::filesystem::path& path);
void write_vector_csv(const std::filesystem::path& path, const Eigen::VectorXd& v);

}  // namespace structcs
