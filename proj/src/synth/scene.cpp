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

#include "retinasim/synth/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "retinasim/simd/kernels.hpp"

namespace retinasim {

namespace {

// Integer shifts applied per frame: floor of the accumulated velocity.
struct ShiftTrack {
    double acc_x = 0.0, acc_y = 0.0;
    int off_x = 0, off_y = 0;

    void advance(const std::array<double, 2>& velocity) {
        acc_x += velocity[0];
        acc_y += velocity[1];
        off_x = static_cast<int>(std::floor(acc_x));
        off_y = static_cast<int>(std::floor(acc_y));
    }
};

int wrap(int v, int n) {
    const int m = v % n;
    return m < 0 ? m + n : m;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// Smooth pseudo-random texture: bilinear interpolation (with smoothstep
// easing) of a seeded lattice, one lattice cell per texture_scale pixels.
// Lattice indices wrap, so the texture tiles when the scale divides the
// frame dimensions. Values land in [0.2, 0.8], keeping luminance away
// from the log-epsilon floor and leaving headroom for the object offset.
RealFrame make_background(const SceneSpec& spec) {
    const int lw = std::max(1, (spec.width + spec.texture_scale - 1) / spec.texture_scale);
    const int lh = std::max(1, (spec.height + spec.texture_scale - 1) / spec.texture_scale);
    std::mt19937_64 rng(spec.background_seed);
    std::vector<double> lattice(static_cast<std::size_t>(lw) * lh);
    for (double& v : lattice)
        v = static_cast<double>(rng() >> 11) * 0x1.0p-53; // uniform [0, 1)

    auto lat = [&](int gy, int gx) {
        return lattice[static_cast<std::size_t>(wrap(gy, lh)) * lw + wrap(gx, lw)];
    };

    RealFrame base(spec.height, spec.width);
    for (int y = 0; y < spec.height; ++y) {
        const double gy = static_cast<double>(y) / spec.texture_scale;
        const int gy0 = static_cast<int>(std::floor(gy));
        const double ty = smoothstep(gy - gy0);
        for (int x = 0; x < spec.width; ++x) {
            const double gx = static_cast<double>(x) / spec.texture_scale;
            const int gx0 = static_cast<int>(std::floor(gx));
            const double tx = smoothstep(gx - gx0);
            const double top = lat(gy0, gx0) * (1.0 - tx) + lat(gy0, gx0 + 1) * tx;
            const double bottom =
                lat(gy0 + 1, gx0) * (1.0 - tx) + lat(gy0 + 1, gx0 + 1) * tx;
            const double noise = top * (1.0 - ty) + bottom * ty;
            base.at(y, x) = 0.2 + 0.6 * noise;
        }
    }
    return base;
}

template <class Seq>
std::size_t total_active(const Seq& seq) {
    const auto& kernels = simd::active_kernels();
    std::size_t total = 0;
    for (const auto& f : seq.frames)
        total += kernels.count_nonzero_u8(
            reinterpret_cast<const std::uint8_t*>(f.data.data()), f.data.size());
    return total;
}

// Chebyshev dilation with a (2d+1) square: two 1D max passes.
std::vector<std::uint8_t> dilate_mask(const std::vector<std::uint8_t>& mask, int h,
                                      int w, int d) {
    if (d <= 0) return mask;
    std::vector<std::uint8_t> tmp(mask.size(), 0), out(mask.size(), 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::uint8_t v = 0;
            for (int k = std::max(0, x - d); k <= std::min(w - 1, x + d); ++k)
                v |= mask[static_cast<std::size_t>(y) * w + k];
            tmp[static_cast<std::size_t>(y) * w + x] = v;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::uint8_t v = 0;
            for (int k = std::max(0, y - d); k <= std::min(h - 1, y + d); ++k)
                v |= tmp[static_cast<std::size_t>(k) * w + x];
            out[static_cast<std::size_t>(y) * w + x] = v;
        }
    return out;
}

template <class Seq>
double fraction_impl(const Seq& seq, const GroundTruth& truth, int dilation) {
    if (seq.frames.size() != truth.masks.size())
        throw Error(Error::Code::invalid_input,
                    "object_spike_fraction: sequence and ground truth lengths differ");
    std::size_t total = 0, inside = 0;
    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
        const auto& frame = seq.frames[t];
        if (frame.height != truth.height || frame.width != truth.width)
            throw Error(Error::Code::invalid_input,
                        "object_spike_fraction: frame shape does not match masks");
        const auto dilated =
            dilate_mask(truth.masks[t], truth.height, truth.width, dilation);
        for (std::size_t i = 0; i < frame.data.size(); ++i) {
            if (frame.data[i] != 0) {
                ++total;
                if (dilated[i]) ++inside;
            }
        }
    }
    if (total == 0)
        throw Error(Error::Code::no_signal,
                    "object_spike_fraction: no active elements in sequence");
    return static_cast<double>(inside) / static_cast<double>(total);
}

} // namespace

void SceneSpec::validate() const {
    if (height < 1 || width < 1)
        throw Error(Error::Code::config, "scene: dimensions must be >= 1");
    if (texture_scale < 1)
        throw Error(Error::Code::config, "scene: texture_scale must be >= 1");
    if (frame_count < 2)
        throw Error(Error::Code::config, "scene: frame_count must be >= 2");
    const int ow = object_rect[2], oh = object_rect[3];
    if (ow < 0 || oh < 0)
        throw Error(Error::Code::config, "scene: object_rect w/h must be >= 0");
    if (ow == 0 || oh == 0) return; // no object

    ShiftTrack ego, obj;
    for (int t = 0; t < frame_count; ++t) {
        if (t > 0) {
            ego.advance(ego_velocity);
            obj.advance(object_velocity);
        }
        const int ox = object_rect[0] + ego.off_x + obj.off_x;
        const int oy = object_rect[1] + ego.off_y + obj.off_y;
        if (ox < 0 || oy < 0 || ox + ow > width || oy + oh > height)
            throw Error(Error::Code::config,
                        "scene: object leaves the frame at t=" + std::to_string(t) +
                            " (x=" + std::to_string(ox) + ", y=" + std::to_string(oy) +
                            ")");
    }
}

RenderedScene render_scene(const SceneSpec& spec) {
    spec.validate();
    const RealFrame base = make_background(spec);
    const int h = spec.height, w = spec.width;
    const int ow = spec.object_rect[2], oh = spec.object_rect[3];
    const bool has_object = ow > 0 && oh > 0;

    RenderedScene scene;
    scene.frames.frame_rate = 5.0;
    scene.frames.frames.reserve(spec.frame_count);
    scene.truth.height = h;
    scene.truth.width = w;
    scene.truth.masks.reserve(spec.frame_count);

    ShiftTrack ego, obj;
    for (int t = 0; t < spec.frame_count; ++t) {
        if (t > 0) {
            ego.advance(spec.ego_velocity);
            obj.advance(spec.object_velocity);
        }
        LuminanceFrame frame(h, w);
        for (int y = 0; y < h; ++y) {
            const int sy = wrap(y - ego.off_y, h);
            for (int x = 0; x < w; ++x)
                frame.at(y, x) = base.at(sy, wrap(x - ego.off_x, w));
        }

        std::vector<std::uint8_t> mask(static_cast<std::size_t>(h) * w, 0);
        if (has_object) {
            const int ox = spec.object_rect[0] + ego.off_x + obj.off_x;
            const int oy = spec.object_rect[1] + ego.off_y + obj.off_y;
            for (int y = oy; y < oy + oh; ++y) {
                for (int x = ox; x < ox + ow; ++x) {
                    frame.at(y, x) = std::clamp(
                        frame.at(y, x) + spec.object_intensity_delta, 0.0, 1.0);
                    mask[static_cast<std::size_t>(y) * w + x] = 1;
                }
            }
        }
        scene.frames.frames.push_back(std::move(frame));
        scene.truth.masks.push_back(std::move(mask));
    }
    return scene;
}

double suppression_ratio(const FrameSequence<EventFrame>& dvs_seq,
                         const FrameSequence<SpikeFrame>& oms_seq) {
    if (dvs_seq.frames.size() != oms_seq.frames.size())
        throw Error(Error::Code::invalid_input,
                    "suppression_ratio: sequence lengths differ");
    for (std::size_t i = 0; i < dvs_seq.frames.size(); ++i)
        if (dvs_seq.frames[i].height != oms_seq.frames[i].height ||
            dvs_seq.frames[i].width != oms_seq.frames[i].width)
            throw Error(Error::Code::invalid_input,
                        "suppression_ratio: frame shapes differ");
    const std::size_t dvs_total = total_active(dvs_seq);
    if (dvs_total == 0)
        throw Error(Error::Code::no_signal, "suppression_ratio: no DVS events");
    return static_cast<double>(total_active(oms_seq)) /
           static_cast<double>(dvs_total);
}

double object_spike_fraction(const FrameSequence<SpikeFrame>& seq,
                             const GroundTruth& truth, int dilation) {
    return fraction_impl(seq, truth, dilation);
}

double object_spike_fraction(const FrameSequence<EventFrame>& seq,
                             const GroundTruth& truth, int dilation) {
    return fraction_impl(seq, truth, dilation);
}

SceneSpec scene_spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Error::Code::config, std::string("scene spec: ") + e.what());
    }
    SceneSpec spec;
    try {
        spec.height = j.at("height").get<int>();
        spec.width = j.at("width").get<int>();
        spec.background_seed = j.at("background_seed").get<std::uint64_t>();
        spec.texture_scale = j.at("texture_scale").get<int>();
        spec.ego_velocity = j.at("ego_velocity").get<std::array<double, 2>>();
        spec.object_rect = j.at("object_rect").get<std::array<int, 4>>();
        spec.object_velocity = j.at("object_velocity").get<std::array<double, 2>>();
        spec.object_intensity_delta = j.at("object_intensity_delta").get<double>();
        spec.frame_count = j.at("frame_count").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Error::Code::config, std::string("scene spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string scene_spec_to_json(const SceneSpec& spec) {
    nlohmann::json j;
    j["height"] = spec.height;
    j["width"] = spec.width;
    j["background_seed"] = spec.background_seed;
    j["texture_scale"] = spec.texture_scale;
    j["ego_velocity"] = spec.ego_velocity;
    j["object_rect"] = spec.object_rect;
    j["object_velocity"] = spec.object_velocity;
    j["object_intensity_delta"] = spec.object_intensity_delta;
    j["frame_count"] = spec.frame_count;
    return j.dump(2) + "\n";
}

SceneSpec load_scene_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Error::Code::not_found, "scene spec not found: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return scene_spec_from_json(buf.str());
}

} // namespace retinasim
