// src/corpus.cc

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

#include "mud/corpus.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>

#include "mud/common.h"

namespace mud {

CorpusManifest ParseManifest(const std::string &text,
                             const std::filesystem::path &base_dir) {
  CorpusManifest manifest;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::filesystem::path p(line.substr(first, last - first + 1));
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    manifest.paths.push_back(p.lexically_normal());
  }
  return manifest;
}

CorpusManifest ReadManifest(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path.string() + ": cannot open manifest");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return ParseManifest(text, path.parent_path());
}

std::uint64_t UniformBelow(std::mt19937_64 &gen, std::uint64_t bound) {
  if (bound == 0) throw Error("UniformBelow needs a positive bound");
  const std::uint64_t reject_below = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x < reject_below);
  return x % bound;
}

CorpusManifest SampleCorpus(const CorpusManifest &manifest, std::size_t n,
                            std::uint64_t seed) {
  if (manifest.empty()) throw Error("cannot sample from an empty manifest");
  const std::size_t total = manifest.size();
  const std::size_t k = std::min(n, total);

  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < k && k < total; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(UniformBelow(gen, total - i));
    std::swap(idx[i], idx[j]);
  }

  CorpusManifest out;
  out.paths.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.paths.push_back(manifest.paths[idx[i]]);
  std::sort(out.paths.begin(), out.paths.end());
  return out;
}

}  // namespace mud
