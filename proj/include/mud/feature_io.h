// mud/feature_io.h

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

#ifndef MUD_FEATURE_IO_H_
#define MUD_FEATURE_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "mud/common.h"

namespace mud {

// Feature files.
//
// CSV: one frame per line, values separated by ',' in shortest round-trip
// decimal form; no header. A 0-frame matrix is an empty file.
//
// Binary ("MUDF"): bytes "MUDF", u32 version (1), u32 num_frames, u32 dim,
// then num_frames * dim little-endian IEEE float32 values, row-major.

enum class FeatureFormat { kCsv, kBinary };

FeatureFormat ParseFeatureFormat(std::string_view name);
/// "csv" or "bin"; also the output file extension.
std::string_view FeatureFormatName(FeatureFormat format);

inline constexpr std::uint32_t kFeatureBinaryVersion = 1;

std::string EncodeFeaturesCsv(const Matrix &values);
std::string EncodeFeaturesBinary(const Matrix &values);

Matrix DecodeFeaturesCsv(const std::string &text);
Matrix DecodeFeaturesBinary(const std::string &bytes);

void WriteFeatures(const Matrix &values, FeatureFormat format,
                   const std::filesystem::path &path);
Matrix ReadFeatures(const std::filesystem::path &path, FeatureFormat format);

}  // namespace mud

#endif  // MUD_FEATURE_IO_H_
