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

#include <cstdint>
#include <string>
#include <vector>

#include "retinasim/core/types.hpp"

namespace retinasim {

/// Dense 8-bit color frame, row-major, RGB interleaved.
struct RGBFrame {
    static constexpr int channels = 3;

    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> data; // height * width * 3

    RGBFrame() = default;

    RGBFrame(int h, int w) : height(h), width(w) {
        check_dims(h, w);
        data.assign(static_cast<std::size_t>(h) * w * channels, 0);
    }

    RGBFrame(int h, int w, std::vector<std::uint8_t> d)
        : height(h), width(w), data(std::move(d)) {
        check_dims(h, w);
        if (data.size() != static_cast<std::size_t>(h) * w * channels)
            throw Error(Error::Code::invalid_input,
                        "RGBFrame: data length " + std::to_string(data.size()) +
                            " != height*width*3 = " +
                            std::to_string(static_cast<std::size_t>(h) * w * channels));
    }

    std::uint8_t& at(int y, int x, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int y, int x, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    static void check_dims(int h, int w) {
        if (h < 1 || w < 1)
            throw Error(Error::Code::invalid_input,
                        "frame dimensions must be >= 1, got " + std::to_string(h) + "x" +
                            std::to_string(w));
    }
};

/// Unconstrained real-valued frame used for intermediate math
/// (log-domain values, filter responses, differences).
struct RealFrame {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    RealFrame() = default;

    RealFrame(int h, int w) : height(h), width(w) {
        RGBFrame::check_dims(h, w);
        data.assign(static_cast<std::size_t>(h) * w, 0.0);
    }

    RealFrame(int h, int w, std::vector<double> d)
        : height(h), width(w), data(std::move(d)) {
        RGBFrame::check_dims(h, w);
        if (data.size() != static_cast<std::size_t>(h) * w)
            throw Error(Error::Code::invalid_input,
                        "RealFrame: data length does not match dimensions");
    }

    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Normalized scalar luminance per pixel, every value in [0, 1].
struct LuminanceFrame {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    LuminanceFrame() = default;

    LuminanceFrame(int h, int w) : height(h), width(w) {
        RGBFrame::check_dims(h, w);
        data.assign(static_cast<std::size_t>(h) * w, 0.0);
    }

    LuminanceFrame(int h, int w, std::vector<double> d)
        : height(h), width(w), data(std::move(d)) {
        RGBFrame::check_dims(h, w);
        if (data.size() != static_cast<std::size_t>(h) * w)
            throw Error(Error::Code::invalid_input,
                        "LuminanceFrame: data length does not match dimensions");
        for (double v : data)
            if (!(v >= 0.0 && v <= 1.0))
                throw Error(Error::Code::invalid_input,
                            "LuminanceFrame: value " + std::to_string(v) +
                                " outside [0, 1]");
    }

    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Ternary event frame, per-pixel polarity in {-1, 0, +1}.
struct EventFrame {
    int height = 0;
    int width = 0;
    std::vector<std::int8_t> data;
    std::uint32_t frame_index = 0;

    EventFrame() = default;

    EventFrame(int h, int w, std::uint32_t index = 0)
        : height(h), width(w), frame_index(index) {
        RGBFrame::check_dims(h, w);
        data.assign(static_cast<std::size_t>(h) * w, 0);
    }

    EventFrame(int h, int w, std::vector<std::int8_t> d, std::uint32_t index = 0)
        : height(h), width(w), data(std::move(d)), frame_index(index) {
        RGBFrame::check_dims(h, w);
        if (data.size() != static_cast<std::size_t>(h) * w)
            throw Error(Error::Code::invalid_input,
                        "EventFrame: data length does not match dimensions");
        for (std::int8_t v : data)
            if (v < -1 || v > 1)
                throw Error(Error::Code::invalid_input,
                            "EventFrame: value " + std::to_string(int(v)) +
                                " not in {-1, 0, +1}");
    }

    std::int8_t& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::int8_t at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Boolean spike frame, stored as one byte per pixel (0 or 1).
struct SpikeFrame {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> data;
    std::uint32_t frame_index = 0;

    SpikeFrame() = default;

    SpikeFrame(int h, int w, std::uint32_t index = 0)
        : height(h), width(w), frame_index(index) {
        RGBFrame::check_dims(h, w);
        data.assign(static_cast<std::size_t>(h) * w, 0);
    }

    SpikeFrame(int h, int w, std::vector<std::uint8_t> d, std::uint32_t index = 0)
        : height(h), width(w), data(std::move(d)), frame_index(index) {
        RGBFrame::check_dims(h, w);
        if (data.size() != static_cast<std::size_t>(h) * w)
            throw Error(Error::Code::invalid_input,
                        "SpikeFrame: data length does not match dimensions");
        for (std::uint8_t v : data)
            if (v > 1)
                throw Error(Error::Code::invalid_input,
                            "SpikeFrame: value " + std::to_string(int(v)) + " not boolean");
    }

    std::uint8_t& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Ordered list of same-shape frames plus the nominal capture rate.
template <class Frame>
struct FrameSequence {
    std::vector<Frame> frames;
    double frame_rate = 5.0; // frames per second

    FrameSequence() = default;
    explicit FrameSequence(double rate) : frame_rate(rate) {
        if (!(rate > 0.0))
            throw Error(Error::Code::invalid_input, "frame_rate must be positive");
    }

    std::size_t size() const { return frames.size(); }
    bool empty() const { return frames.empty(); }
};

enum class BoundaryMode { replicate, zero };

inline const char* boundary_mode_name(BoundaryMode m) {
    return m == BoundaryMode::replicate ? "replicate" : "zero";
}

inline BoundaryMode boundary_mode_from_name(const std::string& name) {
    if (name == "replicate") return BoundaryMode::replicate;
    if (name == "zero") return BoundaryMode::zero;
    throw Error(Error::Code::config, "unknown boundary mode '" + name + "'");
}

/// Tunable sensor + filter parameters. Defaults are the published
/// operating point: contrast threshold 0.1, spike threshold 0.1,
/// center radius 1, surround radius 5.
struct SensorConfig {
    double contrast_threshold = 0.1; // C, temporal contrast threshold
    double oms_threshold = 0.1;      // spike threshold on center-surround difference
    int center_radius = 1;           // r1
    int surround_radius = 5;         // r2, must exceed r1
    double surround_weight = 1.0;    // scales the surround response
    BoundaryMode boundary_mode = BoundaryMode::replicate;
    double log_epsilon = 1.0 / 255.0; // guards log(0); one 8-bit quantization step
    bool use_log = true;              // difference log luminance rather than raw

    void validate() const {
        if (!(contrast_threshold > 0.0))
            throw Error(Error::Code::config, "contrast_threshold must be > 0");
        if (!(oms_threshold > 0.0))
            throw Error(Error::Code::config, "oms_threshold must be > 0");
        if (center_radius < 1)
            throw Error(Error::Code::config, "center_radius must be >= 1");
        if (surround_radius <= center_radius)
            throw Error(Error::Code::config,
                        "center_radius must be smaller than surround_radius");
        if (!(surround_weight >= 0.0))
            throw Error(Error::Code::config, "surround_weight must be >= 0");
        if (!(log_epsilon > 0.0))
            throw Error(Error::Code::config, "log_epsilon must be > 0");
    }
};

} // namespace retinasim
