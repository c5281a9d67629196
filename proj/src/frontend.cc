// src/frontend.cc

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

#include "mud/frontend.h"

#include <cmath>
#include <limits>
#include <string>

namespace mud {

int FrontendConfig::frame_len() const {
  return static_cast<int>(std::lround(frame_ms * sample_rate_hz / 1000.0));
}

FrontendConfig FrontendConfig::Resolved() const {
  FrontendConfig c = *this;
  if (c.fft_size == 0) c.fft_size = NextPowerOfTwo(c.frame_len());
  if (c.f_max_hz == 0.0) c.f_max_hz = c.sample_rate_hz / 2.0;
  return c;
}

void FrontendConfig::Validate() const {
  if (sample_rate_hz <= 0) throw Error("sample rate must be positive");
  if (!(hop_ms > 0.0) || frame_ms < hop_ms)
    throw Error("framing requires frame_ms >= hop_ms > 0");
  if (frame_len() < 1) throw Error("frame shorter than one sample");
  if (fft_size != 0 && (!IsPowerOfTwo(fft_size) || fft_size < frame_len()))
    throw Error("FFT size " + std::to_string(fft_size) +
                " must be a power of two >= frame length " +
                std::to_string(frame_len()));
  if (num_channels < 1) throw Error("need at least one mel channel");
  if (vad_enabled && !(vad_range_db > 0.0))
    throw Error("VAD dynamic range must be positive");
  if (mfcc_order < 1) throw Error("MFCC order must be positive");
  if (!std::isfinite(vad_floor_db) || !std::isfinite(f_min_hz) ||
      !std::isfinite(f_max_hz))
    throw Error("frontend settings must be finite");
}

Matrix UtteranceEnergies::KeptRows() const {
  Matrix out(vad.num_kept(), energies.cols());
  int r = 0;
  for (int m = 0; m < energies.rows(); ++m)
    if (vad.keep[m]) out.row(r++) = energies.row(m);
  return out;
}

MelFrontend::MelFrontend(const FrontendConfig &config)
    : config_(config.Resolved()) {
  config_.Validate();
  filterbank_ =
      BuildMelFilterbank(config_.fft_size, config_.num_channels,
                         config_.sample_rate_hz, config_.f_min_hz,
                         config_.f_max_hz);
}

FrameBlock MelFrontend::Frame(const AudioBuffer &audio) const {
  if (audio.sample_rate_hz != config_.sample_rate_hz)
    throw Error("sample rate " + std::to_string(audio.sample_rate_hz) +
                " Hz does not match the front-end rate " +
                std::to_string(config_.sample_rate_hz) + " Hz");
  return FrameAndWindow(audio, config_.frame_ms, config_.hop_ms,
                        config_.window);
}

Matrix MelFrontend::ComputeEnergies(const AudioBuffer &audio) const {
  const FrameBlock block = Frame(audio);
  if (block.num_frames() == 0) return Matrix(0, config_.num_channels);
  return MelEnergies(PowerSpectrogram(block, config_.fft_size), filterbank_);
}

UtteranceEnergies MelFrontend::ComputeWithVad(const AudioBuffer &audio) const {
  const FrameBlock block = Frame(audio);
  UtteranceEnergies out;
  if (block.num_frames() == 0) {
    out.energies = Matrix(0, config_.num_channels);
    return out;
  }
  out.energies =
      MelEnergies(PowerSpectrogram(block, config_.fft_size), filterbank_);
  if (config_.vad_enabled) {
    out.vad = ComputeVadMask(FrameLogEnergy(block), config_.vad_range_db,
                             config_.vad_floor_db);
  } else {
    out.vad.keep.assign(block.num_frames(), true);
    out.vad.threshold_db = -std::numeric_limits<double>::infinity();
    out.vad.floor_db = -std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace mud
