// mud/vad.h

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

#ifndef MUD_VAD_H_
#define MUD_VAD_H_

#include <vector>

#include "mud/audio_io.h"

namespace mud {

// Energy-based speech/non-speech decision. The threshold is relative to the
// loudest frame of the utterance plus an absolute floor, since inputs keep
// their recording gain.

inline constexpr double kLogEnergyEpsilon = 1e-20;

struct VadMask {
  std::vector<bool> keep;
  double threshold_db = 0.0;  // effective threshold after applying the floor
  double floor_db = 0.0;

  int num_kept() const;
};

/// Per frame 10 * log10(sum of squared samples + 1e-20).
std::vector<double> FrameLogEnergy(const FrameBlock &frames);

/// keep[m] = e[m] >= max(e) - dynamic_range_db && e[m] >= floor_db.
/// floor_db may be -infinity to disable the absolute floor.
VadMask ComputeVadMask(const std::vector<double> &energies_db,
                       double dynamic_range_db, double floor_db);

}  // namespace mud

#endif  // MUD_VAD_H_
