// mud/model_io.h

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

#ifndef MUD_MODEL_IO_H_
#define MUD_MODEL_IO_H_

#include <filesystem>
#include <string>

#include "mud/nonlinearity.h"

namespace mud {

// Model files are versioned JSON:
//
//   {
//     "format_version": 1,
//     "frontend":   { sample_rate_hz, frame_ms, hop_ms, window, fft_size,
//                     num_channels, f_min_hz, f_max_hz, mfcc_order,
//                     vad: { enabled, range_db, floor_db } },
//     "provenance": { method, utterance_count, corpus_size, sample_n, seed,
//                     frame_count },
//     "channels": [ { "kind": "power_mud", "alpha", "x_min", "x_max",
//                     "delta" } | { "kind": "histogram_mud" |
//                     "histogram_gauss", "cdf_knots_x", "cdf_knots_u" } |
//                   { "kind": "fixed_power", "exponent" } |
//                   { "kind": "log", "floor" }, ... ]
//   }
//
// Reals are written in shortest round-trip decimal form, so loading a saved
// model reproduces every double bit for bit.

inline constexpr int kModelFormatVersion = 1;

std::string ModelToJson(const NonlinearityModel &model);

/// Parses and validates a model; throws SchemaError (or FormatError for
/// malformed JSON) without returning a partial model.
NonlinearityModel ModelFromJson(const std::string &text);

/// Writes through a temporary file and renames it into place.
void SaveModel(const NonlinearityModel &model,
               const std::filesystem::path &path);
NonlinearityModel LoadModel(const std::filesystem::path &path);

}  // namespace mud

#endif  // MUD_MODEL_IO_H_
