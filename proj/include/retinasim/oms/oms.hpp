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
#include "retinasim/oms/disk_kernel.hpp"

namespace retinasim {

/// Same-size 2D correlation of the frame with a disk kernel (the kernel
/// is symmetric, so correlation and convolution coincide). Out-of-bounds
/// taps are resolved by the boundary mode: replicate clamps to the
/// nearest edge pixel, zero reads 0.
RealFrame convolve2d(const RealFrame& frame, const DiskKernel& kernel,
                     BoundaryMode boundary);

/// All intermediates of one spike extraction step.
struct OmsResponse {
    RealFrame center_response;
    RealFrame surround_response; // already scaled by surround_weight
    RealFrame difference;        // center - surround
    SpikeFrame spikes;           // difference > oms_threshold (strict)
};

/// Reusable center/surround filter pair; building the disk kernels once
/// and applying them to many frames.
class OmsFilter {
public:
    explicit OmsFilter(const SensorConfig& config);

    OmsResponse apply(const EventFrame& events) const;

    const DiskKernel& center_kernel() const { return center_; }
    const DiskKernel& surround_kernel() const { return surround_; }

private:
    SensorConfig config_;
    DiskKernel center_;
    DiskKernel surround_;
};

/// One-shot spike extraction: events are rectified to 0/1 activity, the
/// activity is averaged with the center and (weighted) surround disks,
/// and pixels where center minus surround exceeds the threshold spike.
OmsResponse oms_step(const EventFrame& events, const SensorConfig& config);

/// Element-wise map of oms_step; frames are independent and processed in
/// parallel. threads == 0 picks the hardware concurrency.
FrameSequence<SpikeFrame> oms_sequence(const FrameSequence<EventFrame>& seq,
                                       const SensorConfig& config,
                                       unsigned threads = 0);

} // namespace retinasim
