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

#include "structcs/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "structcs/error.hpp"

namespace structcs {

using nlohmann::json;

void to_json(json& j, const EntryDistribution& dist) {
  j = json{{"kind", std::string(to_string(dist.kind))}, {"scale_rows", dist.scale_rows}};
}

void from_json(const json& j, EntryDistribution& dist) {
  dist.kind = parse_distribution_kind(j.at("kind").get<std::string>());
  dist.scale_rows = j.at("scale_rows").get<Eigen::Index>();
}

void to_json(json& j, const NestedSpec& nested) {
  j = json{{"k", nested.k}, {"l", nested.l}, {"d", nested.d}, {"e", nested.e}};
}

void from_json(const json& j, NestedSpec& nested) {
  nested.k = j.at("k").get<Eigen::Index>();
  nested.l = j.at("l").get<Eigen::Index>();
  nested.d = j.value("d", Eigen::Index{1});
  nested.e = j.value("e", Eigen::Index{1});
}

void to_json(json& j, const PolySpec& poly) {
  j = json{{"p", poly.p},
           {"r", poly.r},
           {"t", poly.t},
           {"s", poly.s},
           {"block_cols", poly.block_cols}};
}

void from_json(const json& j, PolySpec& poly) {
  poly.p = j.at("p").get<std::int64_t>();
  poly.r = j.at("r").get<std::int64_t>();
  poly.t = j.value("t", Eigen::Index{1});
  poly.s = j.value("s", Eigen::Index{1});
  poly.block_cols = j.at("block_cols").get<Eigen::Index>();
}

void to_json(json& j, const BlockStructureSpec& spec) {
  j = json{{"kind", std::string(to_string(spec.kind))},
           {"k", spec.k},
           {"l", spec.l},
           {"d", spec.d},
           {"e", spec.e},
           {"nested", nullptr},
           {"distribution", spec.distribution},
           {"seed", spec.seed}};
  if (spec.nested) j["nested"] = *spec.nested;
  if (spec.poly) j["poly"] = *spec.poly;
  if (spec.rows) j["rows"] = *spec.rows;
}

void from_json(const json& j, BlockStructureSpec& spec) {
  spec = BlockStructureSpec{};
  spec.kind = parse_matrix_kind(j.at("kind").get<std::string>());
  spec.k = j.at("k").get<Eigen::Index>();
  spec.l = j.at("l").get<Eigen::Index>();
  spec.d = j.at("d").get<Eigen::Index>();
  spec.e = j.at("e").get<Eigen::Index>();
  if (j.contains("nested") && !j.at("nested").is_null())
    spec.nested = j.at("nested").get<NestedSpec>();
  if (j.contains("poly") && !j.at("poly").is_null()) spec.poly = j.at("poly").get<PolySpec>();
  if (j.contains("distribution"))
    spec.distribution = j.at("distribution").get<EntryDistribution>();
  else
    spec.distribution.scale_rows = spec.l * spec.d;
  spec.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("rows") && !j.at("rows").is_null()) spec.rows = j.at("rows").get<Eigen::Index>();
}

// ---------------------------------------------------------------------------
// CSV

void write_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_csv(out, m);
}

namespace {

double parse_double(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
    token.remove_suffix(1);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw FormatError("malformed number '" + std::string(token) + "'");
  return value;
}

}  // namespace

Eigen::MatrixXd read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw FormatError("ragged CSV: rows have different lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("empty CSV");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Eigen::MatrixXd read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_csv(in);
}

// ---------------------------------------------------------------------------
// Binary

namespace {

constexpr std::array<char, 4> kMagic{'S', 'C', 'S', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  std::array<char, 8> buf;
  for (int b = 0; b < 8; ++b) buf[static_cast<std::size_t>(b)] = static_cast<char>((bits >> (8 * b)) & 0xff);
  out.write(buf.data(), 8);
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, 8> buf;
  if (!in.read(reinterpret_cast<char*>(buf.data()), 8)) throw FormatError("truncated SCS1 file");
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | buf[static_cast<std::size_t>(b)];
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_binary(std::ostream& out, const Eigen::MatrixXd& m) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) put_le<double>(out, m(i, j));
}

void write_binary(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_binary(out, m);
}

Eigen::MatrixXd read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) throw FormatError("missing SCS1 magic");
  const auto rows = get_le<std::uint64_t>(in);
  const auto cols = get_le<std::uint64_t>(in);
  if (rows == 0 || cols == 0 || rows > (1ULL << 32) || cols > (1ULL << 32))
    throw FormatError("implausible SCS1 dimensions");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = get_le<double>(in);
  return m;
}

Eigen::MatrixXd read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_binary(in);
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::array<char, 4> head{};
  in.read(head.data(), 4);
  const bool binary = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_binary(in) : read_csv(in);
}

Eigen::VectorXd read_vector(const std::filesystem::path& path) {
  const Eigen::MatrixXd m = read_matrix(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw FormatError(path.string() + " is not a vector");
}

void write_vector_csv(const std::filesystem::path& path, const Eigen::VectorXd& v) {
  write_csv(path, Eigen::MatrixXd(v));
}

}  // namespace structcs
