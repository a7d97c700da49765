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

#include <doctest.h>

#include "retinasim/dvs/dvs.hpp"
#include "retinasim/oms/oms.hpp"
#include "retinasim/synth/scene.hpp"
#include "test_helpers.hpp"

using namespace retinasim;

namespace {

SceneSpec ego_spec() {
    SceneSpec spec;
    spec.height = 64;
    spec.width = 64;
    spec.background_seed = 7;
    spec.texture_scale = 8;
    spec.ego_velocity = {1.0, 0.0};
    spec.frame_count = 6;
    return spec;
}

} // namespace

TEST_CASE("identical specs render bit-identical scenes") {
    const SceneSpec spec = ego_spec();
    const RenderedScene a = render_scene(spec);
    const RenderedScene b = render_scene(spec);
    REQUIRE(a.frames.frames.size() == b.frames.frames.size());
    for (std::size_t t = 0; t < a.frames.frames.size(); ++t) {
        CHECK(a.frames.frames[t].data == b.frames.frames[t].data);
        CHECK(a.truth.masks[t] == b.truth.masks[t]);
    }
}

TEST_CASE("different seeds give different backgrounds") {
    SceneSpec spec = ego_spec();
    const RenderedScene a = render_scene(spec);
    spec.background_seed = 8;
    const RenderedScene b = render_scene(spec);
    CHECK(a.frames.frames[0].data != b.frames.frames[0].data);
}

TEST_CASE("a static scene renders identical frames") {
    SceneSpec spec = ego_spec();
    spec.ego_velocity = {0.0, 0.0};
    const RenderedScene scene = render_scene(spec);
    for (std::size_t t = 1; t < scene.frames.frames.size(); ++t)
        CHECK(scene.frames.frames[t].data == scene.frames.frames[0].data);
}

TEST_CASE("unit ego velocity shifts each frame by one pixel with wrap") {
    SceneSpec spec = ego_spec();
    const RenderedScene scene = render_scene(spec);
    for (std::size_t t = 1; t < scene.frames.frames.size(); ++t) {
        const auto& prev = scene.frames.frames[t - 1];
        const auto& cur = scene.frames.frames[t];
        for (int y = 0; y < spec.height; ++y)
            for (int x = 0; x < spec.width; ++x)
                CHECK(cur.at(y, x) == prev.at(y, (x - 1 + spec.width) % spec.width));
    }
}

TEST_CASE("subpixel velocities accumulate into integer shifts") {
    SceneSpec spec = ego_spec();
    spec.ego_velocity = {0.5, 0.0};
    const RenderedScene scene = render_scene(spec);
    // frames 0 and 1 share offset floor(0.5) = 0; frame 2 shifts by 1
    CHECK(scene.frames.frames[1].data == scene.frames.frames[0].data);
    CHECK(scene.frames.frames[2].data != scene.frames.frames[0].data);
    for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x)
            CHECK(scene.frames.frames[2].at(y, x) ==
                  scene.frames.frames[0].at(y, (x - 1 + spec.width) % spec.width));
}

TEST_CASE("object mask tracks the object and keeps its area") {
    SceneSpec spec = ego_spec();
    spec.object_rect = {30, 20, 8, 6};
    spec.object_velocity = {-2.0, 0.0};
    spec.object_intensity_delta = 0.15;
    const RenderedScene scene = render_scene(spec);
    for (std::size_t t = 0; t < scene.truth.masks.size(); ++t) {
        std::size_t area = 0;
        for (auto v : scene.truth.masks[t]) area += v;
        CHECK(area == 48);
    }
    // moving object must change pixels beyond the pure background shift
    CHECK(scene.frames.frames[1].data != scene.frames.frames[0].data);
}

TEST_CASE("a spec whose object leaves the frame is rejected") {
    SceneSpec spec = ego_spec();
    spec.object_rect = {50, 20, 8, 6}; // 6 px from the right edge
    spec.object_velocity = {1.0, 0.0}; // drifts right with ego, exits
    CHECK_THROWS_AS(render_scene(spec), Error);

    spec.object_velocity = {-2.0, 0.0}; // net leftward, stays inside
    CHECK_NOTHROW(render_scene(spec));
}

TEST_CASE("invalid scene parameters are rejected") {
    SceneSpec spec = ego_spec();
    spec.frame_count = 1;
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = ego_spec();
    spec.texture_scale = 0;
    CHECK_THROWS_AS(spec.validate(), Error);
    spec = ego_spec();
    spec.height = 0;
    CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("suppression_ratio handles the no-signal case") {
    SceneSpec spec = ego_spec();
    spec.ego_velocity = {0.0, 0.0}; // static scene, no events
    const RenderedScene scene = render_scene(spec);
    SensorConfig config;
    const auto dvs = dvs_sequence(scene.frames, config);
    const auto oms = oms_sequence(dvs, config);
    CHECK_THROWS_AS((void)suppression_ratio(dvs, oms), Error);
    try {
        (void)suppression_ratio(dvs, oms);
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::no_signal);
    }
}

TEST_CASE("suppression_ratio of an all-false spike sequence is zero") {
    std::mt19937_64 rng(61);
    FrameSequence<EventFrame> dvs;
    FrameSequence<SpikeFrame> oms;
    for (int t = 0; t < 3; ++t) {
        dvs.frames.push_back(testing::random_events(rng, 12, 12, 0.3,
                                                    static_cast<std::uint32_t>(t)));
        oms.frames.emplace_back(12, 12, static_cast<std::uint32_t>(t));
    }
    CHECK(suppression_ratio(dvs, oms) == 0.0);
}

TEST_CASE("object_spike_fraction counts activity inside the dilated mask") {
    GroundTruth truth;
    truth.height = 10;
    truth.width = 10;
    std::vector<std::uint8_t> mask(100, 0);
    for (int y = 4; y < 7; ++y)
        for (int x = 4; x < 7; ++x) mask[y * 10 + x] = 1;
    truth.masks = {mask};

    FrameSequence<SpikeFrame> inside;
    inside.frames.emplace_back(10, 10);
    inside.frames[0].at(5, 5) = 1;
    CHECK(object_spike_fraction(inside, truth, 0) == 1.0);

    FrameSequence<SpikeFrame> outside;
    outside.frames.emplace_back(10, 10);
    outside.frames[0].at(0, 0) = 1;
    CHECK(object_spike_fraction(outside, truth, 0) == 0.0);

    // one step outside the rect counts once dilation reaches it
    FrameSequence<SpikeFrame> near;
    near.frames.emplace_back(10, 10);
    near.frames[0].at(3, 3) = 1;
    CHECK(object_spike_fraction(near, truth, 0) == 0.0);
    CHECK(object_spike_fraction(near, truth, 1) == 1.0);

    FrameSequence<SpikeFrame> silent;
    silent.frames.emplace_back(10, 10);
    CHECK_THROWS_AS((void)object_spike_fraction(silent, truth, 0), Error);
}

TEST_CASE("pure ego motion is suppressed: ratio below one") {
    // A fast pan over a smooth texture gives wide activity bands whose
    // interiors the surround cancels; only band edges keep spiking.
    SceneSpec spec;
    spec.height = 64;
    spec.width = 64;
    spec.texture_scale = 16;
    spec.ego_velocity = {4.0, 0.0};
    spec.frame_count = 20;
    SensorConfig config;
    for (std::uint64_t seed : {1u, 7u, 42u, 99u}) {
        spec.background_seed = seed;
        const RenderedScene scene = render_scene(spec);
        const auto dvs = dvs_sequence(scene.frames, config);
        const auto oms = oms_sequence(dvs, config);
        CHECK(suppression_ratio(dvs, oms) < 1.0);
    }
}

TEST_CASE("scene specs round-trip through JSON") {
    SceneSpec spec = ego_spec();
    spec.object_rect = {10, 12, 6, 5};
    spec.object_velocity = {-1.5, 0.25};
    spec.object_intensity_delta = 0.2;
    const std::string text = scene_spec_to_json(spec);
    const SceneSpec parsed = scene_spec_from_json(text);
    CHECK(parsed.height == spec.height);
    CHECK(parsed.width == spec.width);
    CHECK(parsed.background_seed == spec.background_seed);
    CHECK(parsed.texture_scale == spec.texture_scale);
    CHECK(parsed.ego_velocity == spec.ego_velocity);
    CHECK(parsed.object_rect == spec.object_rect);
    CHECK(parsed.object_velocity == spec.object_velocity);
    CHECK(parsed.object_intensity_delta == spec.object_intensity_delta);
    CHECK(parsed.frame_count == spec.frame_count);

    CHECK_THROWS_AS(scene_spec_from_json("{"), Error);
    CHECK_THROWS_AS(scene_spec_from_json("{\"height\": 4}"), Error);
}
