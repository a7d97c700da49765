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

#include "retinasim/core/frame.hpp"

namespace retinasim {

/// Per-pixel ln(value + epsilon).
RealFrame log_transform(const LuminanceFrame& frame, double epsilon);

/// Running state of the frame-based event simulation: the previous
/// frame's values in the active domain (log by default, raw luminance
/// when use_log is off).
struct DvsState {
    RealFrame reference;
    bool initialized = false;
};

/// One simulation step. The first frame initializes the reference and
/// emits no events. Afterwards a pixel emits +1 when its temporal
/// contrast exceeds +C, -1 below -C, 0 otherwise (ties emit nothing).
/// The reference resets to the current frame every step.
EventFrame dvs_step(DvsState& state, const LuminanceFrame& frame,
                    const SensorConfig& config);

/// Folds dvs_step over a validated sequence; output frame k carries
/// frame_index k and frame 0 is all zeros.
FrameSequence<EventFrame> dvs_sequence(const FrameSequence<LuminanceFrame>& seq,
                                       const SensorConfig& config);

} // namespace retinasim
