// src/spectral.cc

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

#include "mud/spectral.h"

#include <algorithm>
#include <numbers>

namespace mud {

int NextPowerOfTwo(int n) {
  int k = 1;
  while (k < n) k <<= 1;
  return k;
}

Matrix PowerSpectrogram(const FrameBlock &block, int fft_size) {
  internal::CheckFftSize(block.frame_len, fft_size);
  const int num_bins = fft_size / 2 + 1;
  Matrix out(block.num_frames(), num_bins);

  Eigen::FFT<double> fft;
  std::vector<double> padded(fft_size, 0.0);
  std::vector<std::complex<double>> bins;
  for (int m = 0; m < block.num_frames(); ++m) {
    std::fill(padded.begin(), padded.end(), 0.0);
    for (int i = 0; i < block.frame_len; ++i) padded[i] = block.frames(m, i);
    fft.fwd(bins, padded);
    for (int k = 0; k < num_bins; ++k) out(m, k) = std::norm(bins[k]);
  }
  return out;
}

MelFilterbank BuildMelFilterbank(int fft_size, int num_channels,
                                 int sample_rate_hz, double f_min_hz,
                                 double f_max_hz) {
  if (!IsPowerOfTwo(fft_size))
    throw Error("FFT size must be a power of two");
  if (num_channels < 1) throw Error("need at least one mel channel");
  if (sample_rate_hz <= 0) throw Error("sample rate must be positive");
  if (!(f_min_hz >= 0.0) || !(f_min_hz < f_max_hz) ||
      f_max_hz > sample_rate_hz / 2.0)
    throw Error("invalid mel frequency range [" + std::to_string(f_min_hz) +
                ", " + std::to_string(f_max_hz) + "] Hz for sample rate " +
                std::to_string(sample_rate_hz));

  MelFilterbank fb;
  fb.num_channels = num_channels;
  fb.fft_size = fft_size;
  fb.sample_rate_hz = sample_rate_hz;
  fb.f_min_hz = f_min_hz;
  fb.f_max_hz = f_max_hz;
  fb.weights = Matrix::Zero(num_channels, fb.num_bins());

  const double mel_lo = HzToMel(f_min_hz);
  const double mel_hi = HzToMel(f_max_hz);
  const double step = (mel_hi - mel_lo) / (num_channels + 1);

  // Triangles are laid out in the mel domain; bins are mapped there too.
  for (int k = 0; k < fb.num_bins(); ++k) {
    const double mel = HzToMel(static_cast<double>(k) * sample_rate_hz / fft_size);
    for (int l = 0; l < num_channels; ++l) {
      const double left = mel_lo + l * step;
      const double centre = left + step;
      const double right = centre + step;
      if (mel <= left || mel >= right) continue;
      fb.weights(l, k) = mel <= centre ? (mel - left) / (centre - left)
                                       : (right - mel) / (right - centre);
    }
  }
  return fb;
}

Matrix DctMatrix(int n_in, int n_out) {
  if (n_in < 1 || n_out < 1 || n_out > n_in)
    throw Error("DCT dimensions out of range");
  Matrix d(n_out, n_in);
  const double s0 = std::sqrt(1.0 / n_in);
  const double sk = std::sqrt(2.0 / n_in);
  for (int k = 0; k < n_out; ++k) {
    const double scale = k == 0 ? s0 : sk;
    for (int n = 0; n < n_in; ++n)
      d(k, n) = scale * std::cos(std::numbers::pi * k * (2 * n + 1) /
                                 (2.0 * n_in));
  }
  return d;
}

}  // namespace mud
