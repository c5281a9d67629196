// src/audio_io.cc

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

#include "mud/audio_io.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>

namespace mud {

namespace {

std::uint32_t ReadU32(const char *p) {
  const auto *u = reinterpret_cast<const unsigned char *>(p);
  return std::uint32_t{u[0]} | (std::uint32_t{u[1]} << 8) |
         (std::uint32_t{u[2]} << 16) | (std::uint32_t{u[3]} << 24);
}

std::uint16_t ReadU16(const char *p) {
  const auto *u = reinterpret_cast<const unsigned char *>(p);
  return static_cast<std::uint16_t>(u[0] | (u[1] << 8));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

WindowKind ParseWindowKind(std::string_view name) {
  if (name == "rectangular") return WindowKind::kRectangular;
  if (name == "hann") return WindowKind::kHann;
  if (name == "hamming") return WindowKind::kHamming;
  throw Error("unknown window kind '" + std::string(name) +
              "' (expected rectangular, hann or hamming)");
}

std::string_view WindowKindName(WindowKind kind) {
  switch (kind) {
    case WindowKind::kRectangular: return "rectangular";
    case WindowKind::kHann: return "hann";
    case WindowKind::kHamming: return "hamming";
  }
  return "unknown";
}

Vector MakeWindow(WindowKind kind, int length) {
  if (length <= 0) throw Error("window length must be positive");
  Vector w = Vector::Ones(length);
  if (kind == WindowKind::kRectangular || length == 1) return w;
  const double a = 2.0 * std::numbers::pi / (length - 1);
  for (int n = 0; n < length; ++n) {
    double c = std::cos(a * n);
    w(n) = kind == WindowKind::kHann ? 0.5 - 0.5 * c : 0.54 - 0.46 * c;
  }
  return w;
}

AudioBuffer DecodeWav(const std::vector<char> &bytes, const std::string &what) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError(what + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const char *data = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char *chunk = bytes.data() + pos;
    std::uint32_t len = ReadU32(chunk + 4);
    std::size_t body = pos + 8;
    std::size_t avail = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16 || avail < 16)
        throw FormatError(what + ": truncated fmt chunk");
      format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      if (format == kFormatExtensible && len >= 40 && avail >= 40)
        format = ReadU16(chunk + 8 + 24);  // sub-format GUID leading bytes
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      // Tolerate a data length that overruns the file (streamed writers).
      data_len = std::min<std::size_t>(len, avail);
      break;
    }
    pos = body + len + (len & 1u);
  }

  if (!have_fmt) throw FormatError(what + ": missing fmt chunk");
  if (format != kFormatPcm || bits != 16 || channels != 1)
    throw FormatError(what + ": unsupported encoding (format tag " +
                      std::to_string(format) + ", " + std::to_string(bits) +
                      "-bit, " + std::to_string(channels) +
                      " channel(s)); only 16-bit PCM mono is accepted");
  if (rate == 0) throw FormatError(what + ": sample rate is zero");
  if (data == nullptr) throw FormatError(what + ": missing data chunk");

  AudioBuffer audio;
  audio.sample_rate_hz = static_cast<int>(rate);
  std::size_t n = data_len / 2;
  audio.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = static_cast<std::int16_t>(ReadU16(data + 2 * i));
    audio.samples[i] = v / 32768.0;
  }
  return audio;
}

AudioBuffer ReadWav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path.string() + ": cannot open file");
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(path.string() + ": read error");
  return DecodeWav(bytes, path.string());
}

int NumFrames(int num_samples, int frame_len, int hop_len) {
  if (num_samples < frame_len) return 0;
  return 1 + (num_samples - frame_len) / hop_len;
}

FrameBlock FrameAndWindow(const AudioBuffer &audio, double frame_ms,
                          double hop_ms, WindowKind window) {
  if (!(hop_ms > 0.0) || frame_ms < hop_ms)
    throw Error("framing requires frame_ms >= hop_ms > 0");
  if (audio.sample_rate_hz <= 0) throw Error("sample rate must be positive");

  FrameBlock block;
  block.frame_len =
      static_cast<int>(std::lround(frame_ms * audio.sample_rate_hz / 1000.0));
  block.hop_len =
      static_cast<int>(std::lround(hop_ms * audio.sample_rate_hz / 1000.0));
  if (block.frame_len < 1 || block.hop_len < 1)
    throw Error("frame or hop shorter than one sample at this sample rate");

  const int n = NumFrames(static_cast<int>(audio.samples.size()),
                          block.frame_len, block.hop_len);
  const Vector w = MakeWindow(window, block.frame_len);
  block.frames.resize(n, block.frame_len);
  for (int m = 0; m < n; ++m) {
    const double *src = audio.samples.data() +
                        static_cast<std::ptrdiff_t>(m) * block.hop_len;
    for (int i = 0; i < block.frame_len; ++i)
      block.frames(m, i) = src[i] * w(i);
  }
  return block;
}

}  // namespace mud
