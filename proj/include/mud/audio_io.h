// mud/audio_io.h

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

#ifndef MUD_AUDIO_IO_H_
#define MUD_AUDIO_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mud/common.h"

namespace mud {

/// Mono PCM waveform as decoded. Amplitudes are never peak-normalized: the
/// only scaling ever applied is the fixed 1/32768 decode factor.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 0;
};

enum class WindowKind { kRectangular, kHann, kHamming };

WindowKind ParseWindowKind(std::string_view name);
std::string_view WindowKindName(WindowKind kind);

/// Symmetric window of the given length. Length 1 gives {1}.
Vector MakeWindow(WindowKind kind, int length);

/// Frames stored one per row.
struct FrameBlock {
  Matrix frames;
  int frame_len = 0;
  int hop_len = 0;

  int num_frames() const { return static_cast<int>(frames.rows()); }
};

/// Reads a RIFF/WAVE file holding 16-bit PCM mono audio. Samples are divided
/// by 32768, so they lie in [-1, 1). Any other encoding or channel count is
/// rejected with a FormatError describing what was found.
AudioBuffer ReadWav(const std::filesystem::path &path);

/// Decodes an in-memory WAVE image; `what` names the source in errors.
AudioBuffer DecodeWav(const std::vector<char> &bytes, const std::string &what);

/// Number of frames produced for `num_samples` samples:
/// 0 when the signal is shorter than one frame, else
/// 1 + (num_samples - frame_len) / hop_len.
int NumFrames(int num_samples, int frame_len, int hop_len);

/// Slices `audio` into frames of round(frame_ms * rate / 1000) samples at
/// hops of round(hop_ms * rate / 1000) samples, multiplying each frame by
/// the window. Requires frame_ms >= hop_ms > 0. A signal shorter than one
/// frame yields an empty block.
FrameBlock FrameAndWindow(const AudioBuffer &audio, double frame_ms,
                          double hop_ms, WindowKind window);

}  // namespace mud

#endif  // MUD_AUDIO_IO_H_
