// src/feature_io.cc

// Copyright 2026  The MUD Front-End Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mud/feature_io.h"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace mud {

namespace {

void PutU32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t GetU32(const char *p) {
  const auto *u = reinterpret_cast<const unsigned char *>(p);
  return std::uint32_t{u[0]} | (std::uint32_t{u[1]} << 8) |
         (std::uint32_t{u[2]} << 16) | (std::uint32_t{u[3]} << 24);
}

}  // namespace

FeatureFormat ParseFeatureFormat(std::string_view name) {
  if (name == "csv") return FeatureFormat::kCsv;
  if (name == "bin") return FeatureFormat::kBinary;
  throw Error("unknown feature format '" + std::string(name) +
              "' (expected csv or bin)");
}

std::string_view FeatureFormatName(FeatureFormat format) {
  return format == FeatureFormat::kCsv ? "csv" : "bin";
}

std::string EncodeFeaturesCsv(const Matrix &values) {
  std::string out;
  char buf[64];
  for (Eigen::Index m = 0; m < values.rows(); ++m) {
    for (Eigen::Index d = 0; d < values.cols(); ++d) {
      if (d > 0) out.push_back(',');
      auto res = std::to_chars(buf, buf + sizeof(buf), values(m, d));
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

Matrix DecodeFeaturesCsv(const std::string &text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::vector<double> row;
    const char *p = text.data() + pos;
    const char *end = text.data() + eol;
    while (p < end) {
      double v;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc())
        throw FormatError("feature CSV: bad number on line " +
                          std::to_string(rows.size() + 1));
      row.push_back(v);
      p = res.ptr;
      if (p < end && *p == ',') ++p;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw FormatError("feature CSV: ragged row " +
                        std::to_string(rows.size() + 1));
    rows.push_back(std::move(row));
    pos = eol + 1;
  }
  const Eigen::Index cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size());
  Matrix out(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t m = 0; m < rows.size(); ++m)
    for (Eigen::Index d = 0; d < cols; ++d) out(static_cast<Eigen::Index>(m), d) = rows[m][d];
  return out;
}

std::string EncodeFeaturesBinary(const Matrix &values) {
  std::string out = "MUDF";
  PutU32(out, kFeatureBinaryVersion);
  PutU32(out, static_cast<std::uint32_t>(values.rows()));
  PutU32(out, static_cast<std::uint32_t>(values.cols()));
  out.reserve(out.size() + 4 * values.size());
  for (Eigen::Index m = 0; m < values.rows(); ++m)
    for (Eigen::Index d = 0; d < values.cols(); ++d)
      PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(values(m, d))));
  return out;
}

Matrix DecodeFeaturesBinary(const std::string &bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "MUDF", 4) != 0)
    throw FormatError("feature file: missing MUDF header");
  const std::uint32_t version = GetU32(bytes.data() + 4);
  if (version != kFeatureBinaryVersion)
    throw FormatError("feature file: unsupported version " +
                      std::to_string(version));
  const std::uint64_t rows = GetU32(bytes.data() + 8);
  const std::uint64_t cols = GetU32(bytes.data() + 12);
  if (bytes.size() != 16 + 4 * rows * cols)
    throw FormatError("feature file: payload size does not match header");
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const char *p = bytes.data() + 16;
  for (std::uint64_t m = 0; m < rows; ++m)
    for (std::uint64_t d = 0; d < cols; ++d, p += 4)
      out(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d)) =
          std::bit_cast<float>(GetU32(p));
  return out;
}

void WriteFeatures(const Matrix &values, FeatureFormat format,
                   const std::filesystem::path &path) {
  const std::string data = format == FeatureFormat::kCsv
                               ? EncodeFeaturesCsv(values)
                               : EncodeFeaturesBinary(values);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(path.string() + ": write failed");
}

Matrix ReadFeatures(const std::filesystem::path &path, FeatureFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path.string() + ": cannot open feature file");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return format == FeatureFormat::kCsv ? DecodeFeaturesCsv(data)
                                       : DecodeFeaturesBinary(data);
}

}  // namespace mud
