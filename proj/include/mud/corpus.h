// mud/corpus.h

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

#ifndef MUD_CORPUS_H_
#define MUD_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace mud {

struct CorpusManifest {
  std::vector<std::filesystem::path> paths;

  std::size_t size() const { return paths.size(); }
  bool empty() const { return paths.empty(); }
};

/// Parses a manifest: UTF-8 text, one audio path per line. Blank lines and
/// lines whose first non-blank character is '#' are ignored; surrounding
/// whitespace is trimmed. Relative paths are taken relative to `base_dir`.
CorpusManifest ParseManifest(const std::string &text,
                             const std::filesystem::path &base_dir);

/// Reads a manifest file; relative entries resolve against its directory.
CorpusManifest ReadManifest(const std::filesystem::path &path);

/// Unbiased draw in [0, bound) from a 64-bit Mersenne Twister, by rejecting
/// raw outputs below 2^64 mod bound. Unlike std::uniform_int_distribution
/// the sequence is the same on every standard library.
std::uint64_t UniformBelow(std::mt19937_64 &gen, std::uint64_t bound);

/// Deterministic subset of min(n, |manifest|) paths without replacement:
/// a partial Fisher-Yates shuffle of the indices driven by
/// std::mt19937_64(seed) and UniformBelow, after which the chosen paths are
/// sorted by path. Throws on an empty manifest.
CorpusManifest SampleCorpus(const CorpusManifest &manifest, std::size_t n,
                            std::uint64_t seed);

}  // namespace mud

#endif  // MUD_CORPUS_H_
