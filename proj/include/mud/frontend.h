// mud/frontend.h

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

#ifndef MUD_FRONTEND_H_
#define MUD_FRONTEND_H_

#include "mud/audio_io.h"
#include "mud/spectral.h"
#include "mud/vad.h"

namespace mud {

/// Everything needed to turn a waveform into mel energies, plus the VAD
/// settings used while fitting. Stored in every model file.
struct FrontendConfig {
  int sample_rate_hz = 16000;
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  WindowKind window = WindowKind::kHann;
  int fft_size = 0;  // 0: smallest power of two >= frame length
  int num_channels = 40;
  double f_min_hz = 20.0;
  double f_max_hz = 0.0;  // 0: Nyquist
  bool vad_enabled = true;
  double vad_range_db = 40.0;
  double vad_floor_db = -60.0;
  int mfcc_order = 40;

  int frame_len() const;
  /// Copy with the automatic fields (fft_size, f_max_hz) filled in.
  FrontendConfig Resolved() const;
  void Validate() const;

  bool operator==(const FrontendConfig &) const = default;
};

/// Mel energies of one utterance with the frames the VAD would keep.
struct UtteranceEnergies {
  Matrix energies;  // num_frames x C
  VadMask vad;

  /// Rows of `energies` kept by the VAD (all rows when VAD is disabled).
  Matrix KeptRows() const;
};

/// Framing -> power spectrum -> mel filterbank, with an immutable
/// filterbank shared across calls.
class MelFrontend {
 public:
  explicit MelFrontend(const FrontendConfig &config);

  const FrontendConfig &config() const { return config_; }
  const MelFilterbank &filterbank() const { return filterbank_; }

  /// Mel energies for every frame. Throws on a sample-rate mismatch.
  Matrix ComputeEnergies(const AudioBuffer &audio) const;

  /// Mel energies plus the VAD decision for every frame.
  UtteranceEnergies ComputeWithVad(const AudioBuffer &audio) const;

 private:
  FrameBlock Frame(const AudioBuffer &audio) const;

  FrontendConfig config_;
  MelFilterbank filterbank_;
};

}  // namespace mud

#endif  // MUD_FRONTEND_H_
