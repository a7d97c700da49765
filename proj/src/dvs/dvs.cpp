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

#include "retinasim/dvs/dvs.hpp"

#include <cmath>
#include <utility>

#include "retinasim/core/convert.hpp"
#include "retinasim/simd/kernels.hpp"

namespace retinasim {

namespace {

// Values in the domain the contrast threshold is applied in.
RealFrame to_active_domain(const LuminanceFrame& frame, const SensorConfig& config) {
    if (config.use_log)
        return log_transform(frame, config.log_epsilon);
    return RealFrame(frame.height, frame.width, frame.data);
}

} // namespace

RealFrame log_transform(const LuminanceFrame& frame, double epsilon) {
    if (!(epsilon > 0.0))
        throw Error(Error::Code::config, "log_transform: epsilon must be > 0");
    RealFrame out(frame.height, frame.width);
    for (std::size_t i = 0; i < frame.data.size(); ++i)
        out.data[i] = std::log(frame.data[i] + epsilon);
    return out;
}

EventFrame dvs_step(DvsState& state, const LuminanceFrame& frame,
                    const SensorConfig& config) {
    config.validate();
    RealFrame current = to_active_domain(frame, config);

    if (!state.initialized) {
        EventFrame events(frame.height, frame.width);
        state.reference = std::move(current);
        state.initialized = true;
        return events;
    }

    if (frame.height != state.reference.height || frame.width != state.reference.width)
        throw Error(Error::Code::invalid_input,
                    "dvs_step: frame " + std::to_string(frame.height) + "x" +
                        std::to_string(frame.width) + " does not match reference " +
                        std::to_string(state.reference.height) + "x" +
                        std::to_string(state.reference.width));

    EventFrame events(frame.height, frame.width);
    simd::active_kernels().temporal_contrast(current.data.data(),
                                             state.reference.data.data(),
                                             current.data.size(),
                                             config.contrast_threshold,
                                             events.data.data());
    state.reference = std::move(current);
    return events;
}

FrameSequence<EventFrame> dvs_sequence(const FrameSequence<LuminanceFrame>& seq,
                                       const SensorConfig& config) {
    require_valid_sequence(seq, "dvs_sequence");
    FrameSequence<EventFrame> out;
    out.frame_rate = seq.frame_rate;
    out.frames.reserve(seq.frames.size());
    DvsState state;
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        EventFrame events = dvs_step(state, seq.frames[i], config);
        events.frame_index = static_cast<std::uint32_t>(i);
        out.frames.push_back(std::move(events));
    }
    return out;
}

} // namespace retinasim
