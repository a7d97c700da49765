// Copyright 2026 The retinasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "retinasim/core/frame.hpp"

namespace retinasim {

/// Synthetic scene with known ego motion and object motion. The camera
/// pan is modeled by translating a smooth value-noise background with
/// toroidal wrap; a rectangle offset in intensity moves relative to that
/// background. Subpixel velocities accumulate and are applied as integer
/// shifts, so frames are never resampled.
struct SceneSpec {
    int height = 128;
    int width = 128;
    std::uint64_t background_seed = 0;
    int texture_scale = 16; // pixels per noise lattice cell
    std::array<double, 2> ego_velocity{0.0, 0.0};    // dx, dy in px/frame
    std::array<int, 4> object_rect{0, 0, 0, 0};      // x, y, w, h (w*h == 0: no object)
    std::array<double, 2> object_velocity{0.0, 0.0}; // relative to background
    double object_intensity_delta = 0.0;
    int frame_count = 2;

    void validate() const; // throws Error(config) on bad values
};

/// Per-frame Boolean object masks.
struct GroundTruth {
    int height = 0;
    int width = 0;
    std::vector<std::vector<std::uint8_t>> masks; // one h*w mask per frame
};

struct RenderedScene {
    FrameSequence<LuminanceFrame> frames;
    GroundTruth truth;
};

/// Deterministic render: identical specs produce bit-identical output.
RenderedScene render_scene(const SceneSpec& spec);

/// Total OMS spikes over total DVS events. Throws Error(no_signal) when
/// the DVS sequence has no events.
double suppression_ratio(const FrameSequence<EventFrame>& dvs_seq,
                         const FrameSequence<SpikeFrame>& oms_seq);

/// Fraction of active elements falling inside the per-frame object mask
/// dilated by `dilation` pixels (Chebyshev). Throws Error(no_signal)
/// when there is no activity at all.
double object_spike_fraction(const FrameSequence<SpikeFrame>& seq,
                             const GroundTruth& truth, int dilation);
double object_spike_fraction(const FrameSequence<EventFrame>& seq,
                             const GroundTruth& truth, int dilation);

/// Scene spec (de)serialization; JSON with the exact SceneSpec field names.
SceneSpec scene_spec_from_json(const std::string& text);
std::string scene_spec_to_json(const SceneSpec& spec);
SceneSpec load_scene_spec(const std::string& path);

} // namespace retinasim
