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

#include <string>
#include <vector>

#include "retinasim/core/frame.hpp"

namespace retinasim {

/// Rec.601 luma approximation: (0.299 R + 0.587 G + 0.114 B) / 255.
LuminanceFrame rgb_to_luminance(const RGBFrame& frame);

enum class ViolationKind { empty_sequence, shape_mismatch, index_mismatch };

struct Violation {
    ViolationKind kind;
    std::size_t frame; // offending position (0 for empty_sequence)
    std::string message;
};

/// Reports structural problems without throwing: empty sequence, frames
/// whose shape differs from frame 0, frame_index fields (where the frame
/// type carries one) that are not consecutive from 0.
template <class Frame>
std::vector<Violation> validate_sequence(const FrameSequence<Frame>& seq) {
    std::vector<Violation> out;
    if (seq.frames.empty()) {
        out.push_back({ViolationKind::empty_sequence, 0, "sequence is empty"});
        return out;
    }
    const int h0 = seq.frames.front().height;
    const int w0 = seq.frames.front().width;
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const Frame& f = seq.frames[i];
        if (f.height != h0 || f.width != w0) {
            out.push_back({ViolationKind::shape_mismatch, i,
                           "frame " + std::to_string(i) + " is " +
                               std::to_string(f.height) + "x" + std::to_string(f.width) +
                               ", expected " + std::to_string(h0) + "x" +
                               std::to_string(w0)});
        }
        if constexpr (requires { f.frame_index; }) {
            if (f.frame_index != i) {
                out.push_back({ViolationKind::index_mismatch, i,
                               "frame at position " + std::to_string(i) +
                                   " has frame_index " + std::to_string(f.frame_index)});
            }
        }
    }
    return out;
}

/// Throws invalid_input when validate_sequence reports anything.
template <class Frame>
void require_valid_sequence(const FrameSequence<Frame>& seq, const char* what) {
    const auto violations = validate_sequence(seq);
    if (!violations.empty())
        throw Error(Error::Code::invalid_input,
                    std::string(what) + ": " + violations.front().message);
}

} // namespace retinasim
