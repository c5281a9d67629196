// tests/test_util.h

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

#ifndef MUD_TESTS_TEST_UTIL_H_
#define MUD_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

namespace mud_test {

inline void PutLe(std::vector<char> &out, std::uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

// Minimal canonical WAV writer, independent of the library's decoder.
inline std::vector<char> EncodeWav(const std::vector<std::int16_t> &samples,
                                   int sample_rate, int channels = 1,
                                   int bits = 16, int format_tag = 1) {
  const std::uint32_t block = channels * bits / 8;
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size()) * 2;
  std::vector<char> out;
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  PutLe(out, 36 + data_bytes, 4);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutLe(out, 16, 4);
  PutLe(out, format_tag, 2);
  PutLe(out, channels, 2);
  PutLe(out, sample_rate, 4);
  PutLe(out, sample_rate * block, 4);
  PutLe(out, block, 2);
  PutLe(out, bits, 2);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  PutLe(out, data_bytes, 4);
  for (std::int16_t s : samples) PutLe(out, static_cast<std::uint16_t>(s), 2);
  return out;
}

inline void WriteFile(const std::filesystem::path &path,
                      const std::vector<char> &bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("mud_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::vector<std::filesystem::path> SpeechFiles() {
  std::vector<std::filesystem::path> files;
  for (const auto &e : std::filesystem::directory_iterator(MUD_SPEECH_DIR))
    if (e.path().extension() == ".wav") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

// Speech-like synthetic signal: amplitude-modulated harmonics plus noise.
inline std::vector<std::int16_t> SyntheticTone(int n, double f0, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> noise(0.0, 200.0);
  std::vector<std::int16_t> s(n);
  for (int i = 0; i < n; ++i) {
    const double t = i / 16000.0;
    const double env = 0.5 + 0.5 * std::sin(2 * M_PI * 3.0 * t);
    double v = 0;
    for (int h = 1; h <= 5; ++h) v += std::sin(2 * M_PI * f0 * h * t) / h;
    s[i] = static_cast<std::int16_t>(std::clamp(6000 * env * v + noise(gen), -32768.0, 32767.0));
  }
  return s;
}

// Puts `v` on the grid k * 2^-30 with integer k < 2^31, keeping its shape,
// and draws a > 0 and b such that a * x + b is exact in double precision:
// a = m 2^e with m < 2^20 and b = n 2^(e - 30) with |n| <= 2^31.
struct ExactAffine {
  std::vector<double> x, y;
  double a = 1.0, b = 0.0;
};

inline ExactAffine MakeExactAffine(const std::vector<double> &v, std::mt19937_64 &gen) {
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it, span = *hi_it - *lo_it;
  std::uniform_int_distribution<std::int64_t> offset(0, (1ll << 30) - 1), mant(1, (1ll << 20) - 1),
      expo(-30, 30), shift(-(1ll << 31), 1ll << 31);
  const std::int64_t k0 = offset(gen), m = mant(gen), n = shift(gen);
  const int e = static_cast<int>(expo(gen));
  ExactAffine out;
  out.a = std::ldexp(static_cast<double>(m), e);
  out.b = std::ldexp(static_cast<double>(n), e - 30);
  for (double t : v) {
    const auto k = k0 + static_cast<std::int64_t>(std::floor((t - lo) / span * ((1ll << 30) - 1)));
    out.x.push_back(std::ldexp(static_cast<double>(k), -30));
    out.y.push_back(std::ldexp(static_cast<double>(m * k + n), e - 30));
  }
  return out;
}

}  // namespace mud_test

#endif  // MUD_TESTS_TEST_UTIL_H_
