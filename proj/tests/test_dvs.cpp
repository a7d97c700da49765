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

#include <algorithm>
#include <cmath>

#include "retinasim/dvs/dvs.hpp"
#include "test_helpers.hpp"

using namespace retinasim;

namespace {

LuminanceFrame constant_frame(int h, int w, double v) {
    LuminanceFrame f(h, w);
    for (double& x : f.data) x = v;
    return f;
}

} // namespace

TEST_CASE("log_transform evaluates ln(value + epsilon)") {
    const auto f = constant_frame(2, 3, 0.0);
    const RealFrame out = log_transform(f, 1.0 / 255.0);
    for (double v : out.data)
        CHECK(v == doctest::Approx(-5.541263545158426).epsilon(1e-12));
}

TEST_CASE("log_transform rejects nonpositive epsilon") {
    const auto f = constant_frame(2, 2, 0.5);
    CHECK_THROWS_AS(log_transform(f, 0.0), Error);
    CHECK_THROWS_AS(log_transform(f, -1.0), Error);
}

TEST_CASE("log_transform of scaled frames differs by ln(k) away from epsilon") {
    std::mt19937_64 rng(21);
    const double eps = 1.0 / 255.0;
    const double k = 1.7;
    const auto a = testing::random_luminance(rng, 6, 6, 0.2, 0.55);
    LuminanceFrame b(6, 6);
    for (std::size_t i = 0; i < a.data.size(); ++i) b.data[i] = a.data[i] * k;
    const auto la = log_transform(a, eps);
    const auto lb = log_transform(b, eps);
    for (std::size_t i = 0; i < la.data.size(); ++i)
        CHECK(lb.data[i] - la.data[i] == doctest::Approx(std::log(k)).epsilon(0.02));
}

TEST_CASE("identical consecutive frames emit no events") {
    SensorConfig config;
    DvsState state;
    const auto f = constant_frame(4, 4, 0.5);
    (void)dvs_step(state, f, config);
    const EventFrame events = dvs_step(state, f, config);
    for (auto v : events.data) CHECK(v == 0);
}

TEST_CASE("single-pixel contrast steps produce single events") {
    SensorConfig config;
    config.use_log = false; // direct control over the difference

    DvsState state;
    auto f = constant_frame(5, 5, 0.4);
    (void)dvs_step(state, f, config);

    SUBCASE("rise of 0.2 with C=0.1 gives one +1 event") {
        f.at(2, 3) = 0.6;
        const EventFrame events = dvs_step(state, f, config);
        CHECK(events.at(2, 3) == 1);
        int active = 0;
        for (auto v : events.data) active += v != 0;
        CHECK(active == 1);
    }
    SUBCASE("drop of 0.15 with C=0.1 gives one -1 event") {
        f.at(1, 1) = 0.25;
        const EventFrame events = dvs_step(state, f, config);
        CHECK(events.at(1, 1) == -1);
        int active = 0;
        for (auto v : events.data) active += v != 0;
        CHECK(active == 1);
    }
}

TEST_CASE("a change of exactly C emits no event (strict threshold)") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const double v1 = testing::uniform(rng, 0.1, 0.5);
        const double v2 = testing::uniform(rng, 0.5001, 0.9);

        // raw domain: the step C is the literal difference v2 - v1
        {
            SensorConfig config;
            config.use_log = false;
            config.contrast_threshold = v2 - v1;
            DvsState state;
            (void)dvs_step(state, constant_frame(3, 3, v1), config);
            const EventFrame at_tie = dvs_step(state, constant_frame(3, 3, v2), config);
            for (auto v : at_tie.data) CHECK(v == 0);

            // one ulp below the tie the event fires
            config.contrast_threshold =
                std::nextafter(v2 - v1, 0.0);
            DvsState state2;
            (void)dvs_step(state2, constant_frame(3, 3, v1), config);
            const EventFrame above = dvs_step(state2, constant_frame(3, 3, v2), config);
            for (auto v : above.data) CHECK(v == 1);
        }
        // log domain: C equals the realized log difference
        {
            SensorConfig config;
            const double eps = config.log_epsilon;
            config.contrast_threshold = std::log(v2 + eps) - std::log(v1 + eps);
            DvsState state;
            (void)dvs_step(state, constant_frame(3, 3, v1), config);
            const EventFrame at_tie = dvs_step(state, constant_frame(3, 3, v2), config);
            for (auto v : at_tie.data) CHECK(v == 0);
        }
    }
}

TEST_CASE("polarity antisymmetry: swapping frames negates every event") {
    std::mt19937_64 rng(23);
    SensorConfig config;
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testing::random_luminance(rng, 8, 9, 0.05, 0.95);
        const auto b = testing::random_luminance(rng, 8, 9, 0.05, 0.95);

        DvsState forward, backward;
        (void)dvs_step(forward, a, config);
        const EventFrame ab = dvs_step(forward, b, config);
        (void)dvs_step(backward, b, config);
        const EventFrame ba = dvs_step(backward, a, config);

        for (std::size_t i = 0; i < ab.data.size(); ++i)
            CHECK(int(ab.data[i]) == -int(ba.data[i]));
    }
}

TEST_CASE("log invariance: global intensity scaling preserves events") {
    // Scaling v -> k*v perturbs each log difference by at most
    // ln(1 + eps*|1-1/k| / (vmin+eps)) where vmin is the smallest value in
    // either frame. Nonzero log-steps are drawn so the realized difference
    // stays at least 0.13 away from +-C, above that bound, so no pixel may
    // flip; zero-step pixels have an exactly-zero difference under any k.
    std::mt19937_64 rng(24);
    SensorConfig config; // use_log = true, C = 0.1, eps = 1/255
    const double eps = config.log_epsilon;
    const double floor = 17.0 * eps; // keeps b >= 10*eps even at step -0.5

    for (int trial = 0; trial < 100; ++trial) {
        const double k = testing::uniform(rng, 0.5, 2.0);

        LuminanceFrame a(6, 7), b(6, 7);
        double vmin = 1.0;
        for (std::size_t i = 0; i < a.data.size(); ++i) {
            const double v = testing::uniform(rng, floor, 0.45);
            static const double steps[] = {0.0, 0.25, -0.25, 0.5, -0.5};
            const double d = steps[rng() % 5];
            a.data[i] = v;
            b.data[i] = v * std::exp(d);
            vmin = std::min({vmin, a.data[i], b.data[i]});
        }
        const double bound =
            std::log(1.0 + eps * std::max(k - 1.0, 1.0 / k - 1.0) / (vmin + eps));
        REQUIRE(vmin >= 10.0 * eps);
        REQUIRE(bound < 0.13);

        DvsState plain, scaled;
        (void)dvs_step(plain, a, config);
        const EventFrame base_events = dvs_step(plain, b, config);

        LuminanceFrame ka(6, 7), kb(6, 7);
        for (std::size_t i = 0; i < a.data.size(); ++i) {
            ka.data[i] = std::min(1.0, a.data[i] * k);
            kb.data[i] = std::min(1.0, b.data[i] * k);
        }
        (void)dvs_step(scaled, ka, config);
        const EventFrame scaled_events = dvs_step(scaled, kb, config);

        for (std::size_t i = 0; i < base_events.data.size(); ++i) {
            if (ka.data[i] < 1.0 && kb.data[i] < 1.0) // skip clamped pixels
                CHECK(base_events.data[i] == scaled_events.data[i]);
        }
    }
}

TEST_CASE("dvs_sequence equals the fold of dvs_step") {
    std::mt19937_64 rng(25);
    SensorConfig config;
    FrameSequence<LuminanceFrame> seq;
    for (int t = 0; t < 6; ++t)
        seq.frames.push_back(testing::random_luminance(rng, 7, 7));

    const auto batch = dvs_sequence(seq, config);
    REQUIRE(batch.frames.size() == seq.frames.size());

    DvsState state;
    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
        const EventFrame step = dvs_step(state, seq.frames[t], config);
        CHECK(batch.frames[t].data == step.data);
        CHECK(batch.frames[t].frame_index == t);
    }
}

TEST_CASE("dvs_sequence: identical frames yield all-zero output") {
    SensorConfig config;
    FrameSequence<LuminanceFrame> seq;
    for (int t = 0; t < 5; ++t) seq.frames.push_back(constant_frame(6, 6, 0.3));
    const auto events = dvs_sequence(seq, config);
    for (const auto& frame : events.frames)
        for (auto v : frame.data) CHECK(v == 0);
}

TEST_CASE("dvs_sequence: per-frame global brightening fires everywhere") {
    SensorConfig config; // log domain
    const double k = 1.25; // ln(k) ~ 0.223 > C = 0.1
    FrameSequence<LuminanceFrame> seq;
    std::mt19937_64 rng(26);
    const auto base = testing::random_luminance(rng, 8, 8, 0.3, 0.6);
    for (int t = 0; t < 3; ++t) {
        LuminanceFrame f(8, 8);
        for (std::size_t i = 0; i < f.data.size(); ++i)
            f.data[i] = base.data[i] * std::pow(k, t);
        seq.frames.push_back(std::move(f));
    }
    const auto events = dvs_sequence(seq, config);
    for (std::size_t t = 1; t < events.frames.size(); ++t)
        for (auto v : events.frames[t].data) CHECK(v == 1);
}

TEST_CASE("translating checkerboard matches the per-pixel oracle") {
    // oracle: evaluate the threshold rule directly from the log images
    SensorConfig config;
    const int h = 12, w = 16, tile = 4;
    auto checker = [&](int shift) {
        LuminanceFrame f(h, w);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                f.at(y, x) = (((x - shift) / tile + y / tile) % 2 + 2) % 2 ? 0.7 : 0.3;
        return f;
    };

    const auto f0 = checker(0);
    const auto f1 = checker(1);

    DvsState state;
    (void)dvs_step(state, f0, config);
    const EventFrame events = dvs_step(state, f1, config);

    const auto l0 = log_transform(f0, config.log_epsilon);
    const auto l1 = log_transform(f1, config.log_epsilon);
    int active = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double d = l1.at(y, x) - l0.at(y, x);
            const int expected =
                d > config.contrast_threshold ? 1
                : (d < -config.contrast_threshold ? -1 : 0);
            CHECK(int(events.at(y, x)) == expected);
            active += expected != 0;
        }
    CHECK(active > 0); // the moving edges really produce events
}

TEST_CASE("dvs_step rejects mismatched dimensions") {
    SensorConfig config;
    DvsState state;
    (void)dvs_step(state, constant_frame(4, 4, 0.5), config);
    CHECK_THROWS_AS((void)dvs_step(state, constant_frame(4, 5, 0.5), config), Error);
}

TEST_CASE("dvs_sequence rejects an empty sequence") {
    SensorConfig config;
    FrameSequence<LuminanceFrame> seq;
    CHECK_THROWS_AS((void)dvs_sequence(seq, config), Error);
}

TEST_CASE("raw-domain mode is selectable") {
    SensorConfig config;
    config.use_log = false;
    DvsState state;
    (void)dvs_step(state, constant_frame(3, 3, 0.1), config);
    // +0.2 in raw units fires regardless of the log-domain behavior
    const EventFrame events = dvs_step(state, constant_frame(3, 3, 0.3), config);
    for (auto v : events.data) CHECK(v == 1);
}
