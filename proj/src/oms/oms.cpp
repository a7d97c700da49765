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

#include "retinasim/oms/oms.hpp"

#include <algorithm>
#include <string>

#include "retinasim/core/convert.hpp"
#include "retinasim/core/parallel.hpp"
#include "retinasim/simd/kernels.hpp"

namespace retinasim {

namespace {

// Border pixels: every tap goes through boundary resolution.
double convolve_at(const RealFrame& frame, const DiskKernel& kernel,
                   BoundaryMode boundary, int y, int x) {
    const int r = kernel.radius;
    const int side = kernel.side;
    double acc = 0.0;
    for (int ky = 0; ky < side; ++ky) {
        const int sy = y + ky - r;
        for (int kx = 0; kx < side; ++kx) {
            const int sx = x + kx - r;
            double value;
            if (boundary == BoundaryMode::replicate) {
                const int cy = std::clamp(sy, 0, frame.height - 1);
                const int cx = std::clamp(sx, 0, frame.width - 1);
                value = frame.at(cy, cx);
            } else {
                value = (sy < 0 || sy >= frame.height || sx < 0 || sx >= frame.width)
                            ? 0.0
                            : frame.at(sy, sx);
            }
            acc += kernel.weights[static_cast<std::size_t>(ky) * side + kx] * value;
        }
    }
    return acc;
}

} // namespace

RealFrame convolve2d(const RealFrame& frame, const DiskKernel& kernel,
                     BoundaryMode boundary) {
    if (frame.height < kernel.side || frame.width < kernel.side)
        throw Error(Error::Code::invalid_input,
                    "convolve2d: frame " + std::to_string(frame.height) + "x" +
                        std::to_string(frame.width) + " smaller than kernel side " +
                        std::to_string(kernel.side));

    const int r = kernel.radius;
    const int h = frame.height;
    const int w = frame.width;
    RealFrame out(h, w);
    const auto& kernels = simd::active_kernels();

    for (int y = 0; y < h; ++y) {
        double* out_row = out.data.data() + static_cast<std::size_t>(y) * w;
        const bool interior_row = y >= r && y < h - r;
        if (interior_row) {
            for (int x = 0; x < r; ++x)
                out_row[x] = convolve_at(frame, kernel, boundary, y, x);
            kernels.convolve_row_interior(frame.data.data(), w, y, r, w - r,
                                          kernel.weights.data(), r, out_row);
            for (int x = w - r; x < w; ++x)
                out_row[x] = convolve_at(frame, kernel, boundary, y, x);
        } else {
            for (int x = 0; x < w; ++x)
                out_row[x] = convolve_at(frame, kernel, boundary, y, x);
        }
    }
    return out;
}

OmsFilter::OmsFilter(const SensorConfig& config) : config_(config) {
    config.validate();
    center_ = make_disk_kernel(config.center_radius);
    surround_ = make_disk_kernel(config.surround_radius);
}

OmsResponse OmsFilter::apply(const EventFrame& events) const {
    if (events.height < surround_.side || events.width < surround_.side)
        throw Error(Error::Code::invalid_input,
                    "oms: frame " + std::to_string(events.height) + "x" +
                        std::to_string(events.width) +
                        " smaller than surround kernel side " +
                        std::to_string(surround_.side));

    const auto& kernels = simd::active_kernels();
    const std::size_t n = events.data.size();

    // ON and OFF events both count as contrast activity; mixed-polarity
    // edges must not cancel inside the averaging filters.
    RealFrame activity(events.height, events.width);
    kernels.event_activity(events.data.data(), n, activity.data.data());

    OmsResponse response;
    response.center_response = convolve2d(activity, center_, config_.boundary_mode);
    response.surround_response = convolve2d(activity, surround_, config_.boundary_mode);
    kernels.scale_inplace(response.surround_response.data.data(), n,
                          config_.surround_weight);

    response.difference = RealFrame(events.height, events.width);
    for (std::size_t i = 0; i < n; ++i)
        response.difference.data[i] =
            response.center_response.data[i] - response.surround_response.data[i];

    response.spikes = SpikeFrame(events.height, events.width, events.frame_index);
    kernels.spike_threshold(response.center_response.data.data(),
                            response.surround_response.data.data(), n,
                            config_.oms_threshold, response.spikes.data.data());
    return response;
}

OmsResponse oms_step(const EventFrame& events, const SensorConfig& config) {
    return OmsFilter(config).apply(events);
}

FrameSequence<SpikeFrame> oms_sequence(const FrameSequence<EventFrame>& seq,
                                       const SensorConfig& config,
                                       unsigned threads) {
    require_valid_sequence(seq, "oms_sequence");
    const OmsFilter filter(config);
    FrameSequence<SpikeFrame> out;
    out.frame_rate = seq.frame_rate;
    out.frames.resize(seq.frames.size());
    parallel_for(
        seq.frames.size(),
        [&](std::size_t i) { out.frames[i] = filter.apply(seq.frames[i]).spikes; },
        threads);
    return out;
}

} // namespace retinasim
