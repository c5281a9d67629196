// src/vad.cc

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

#include "mud/vad.h"

#include <algorithm>
#include <cmath>

namespace mud {

int VadMask::num_kept() const {
  return static_cast<int>(std::count(keep.begin(), keep.end(), true));
}

std::vector<double> FrameLogEnergy(const FrameBlock &frames) {
  std::vector<double> out(frames.num_frames());
  for (int m = 0; m < frames.num_frames(); ++m)
    out[m] = 10.0 * std::log10(frames.frames.row(m).squaredNorm() +
                               kLogEnergyEpsilon);
  return out;
}

VadMask ComputeVadMask(const std::vector<double> &energies_db,
                       double dynamic_range_db, double floor_db) {
  if (!(dynamic_range_db > 0.0))
    throw Error("VAD dynamic range must be positive");
  VadMask mask;
  mask.floor_db = floor_db;
  if (energies_db.empty()) {
    mask.threshold_db = floor_db;
    return mask;
  }
  const double peak = *std::max_element(energies_db.begin(), energies_db.end());
  mask.threshold_db = std::max(peak - dynamic_range_db, floor_db);
  mask.keep.resize(energies_db.size());
  for (std::size_t m = 0; m < energies_db.size(); ++m)
    mask.keep[m] = energies_db[m] >= peak - dynamic_range_db &&
                   energies_db[m] >= floor_db;
  return mask;
}

}  // namespace mud
