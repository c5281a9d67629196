// mud/spectral.h

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

#ifndef MUD_SPECTRAL_H_
#define MUD_SPECTRAL_H_

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "mud/audio_io.h"
#include "mud/common.h"

namespace mud {

inline bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Smallest power of two >= n.
int NextPowerOfTwo(int n);

inline double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

namespace internal {
inline void CheckFftSize(int frame_len, int fft_size) {
  if (!IsPowerOfTwo(fft_size))
    throw Error("FFT size " + std::to_string(fft_size) +
                " is not a power of two");
  if (fft_size < frame_len)
    throw Error("FFT size " + std::to_string(fft_size) +
                " is smaller than the frame length " +
                std::to_string(frame_len));
}
}  // namespace internal

/// Squared magnitude of the K-point DFT of the zero-padded frame, bins 0..K/2.
template <typename Derived>
VectorX<typename Derived::Scalar> PowerSpectrum(
    const Eigen::MatrixBase<Derived> &frame, int fft_size) {
  using Scalar = typename Derived::Scalar;
  const int len = static_cast<int>(frame.size());
  internal::CheckFftSize(len, fft_size);

  std::vector<Scalar> padded(fft_size, Scalar(0));
  for (int i = 0; i < len; ++i) padded[i] = frame(i);
  std::vector<std::complex<Scalar>> bins;
  Eigen::FFT<Scalar> fft;
  fft.fwd(bins, padded);

  VectorX<Scalar> out(fft_size / 2 + 1);
  for (int k = 0; k <= fft_size / 2; ++k) out(k) = std::norm(bins[k]);
  return out;
}

/// PowerSpectrum applied to every frame; one row per frame.
Matrix PowerSpectrogram(const FrameBlock &block, int fft_size);

/// Triangular mel weights, one row per channel over FFT bins 0..K/2.
struct MelFilterbank {
  Matrix weights;
  int num_channels = 0;
  int fft_size = 0;
  int sample_rate_hz = 0;
  double f_min_hz = 0.0;
  double f_max_hz = 0.0;

  int num_bins() const { return fft_size / 2 + 1; }
};

/// Builds `num_channels` triangles whose apexes are equally spaced on the
/// mel scale between mel(f_min) and mel(f_max). Triangle l rises from the
/// centre of l-1 to a peak of 1 at its own centre and falls to zero at the
/// centre of l+1; f_min and f_max act as the outer virtual centres.
MelFilterbank BuildMelFilterbank(int fft_size, int num_channels,
                                 int sample_rate_hz, double f_min_hz,
                                 double f_max_hz);

/// energies(m, l) = sum_k spectra(m, k) * weights(l, k). No compression.
template <typename Derived>
MatrixX<typename Derived::Scalar> MelEnergies(
    const Eigen::MatrixBase<Derived> &spectra, const MelFilterbank &fb) {
  using Scalar = typename Derived::Scalar;
  if (spectra.cols() != fb.num_bins())
    throw Error("spectrum length " + std::to_string(spectra.cols()) +
                " does not match filterbank bins " +
                std::to_string(fb.num_bins()));
  return spectra * fb.weights.transpose().template cast<Scalar>();
}

/// Orthonormal DCT-II basis, `n_out` rows by `n_in` columns.
Matrix DctMatrix(int n_in, int n_out);

/// First `n_out` orthonormal DCT-II coefficients of `v`; 1 <= n_out <= size.
template <typename Derived>
VectorX<typename Derived::Scalar> DctII(const Eigen::MatrixBase<Derived> &v,
                                        int n_out) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(v.size());
  if (n_out < 1 || n_out > n)
    throw Error("DCT output count " + std::to_string(n_out) +
                " out of range [1, " + std::to_string(n) + "]");
  return DctMatrix(n, n_out).cast<Scalar>() * v;
}

}  // namespace mud

#endif  // MUD_SPECTRAL_H_
