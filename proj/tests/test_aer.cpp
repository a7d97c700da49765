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

#include "retinasim/io/aer.hpp"
#include "test_helpers.hpp"

using namespace retinasim;

namespace {

FrameSequence<EventFrame> random_sequence(std::mt19937_64& rng, int frames, int h,
                                          int w, double density) {
    FrameSequence<EventFrame> seq;
    for (int t = 0; t < frames; ++t)
        seq.frames.push_back(
            testing::random_events(rng, h, w, density, static_cast<std::uint32_t>(t)));
    return seq;
}

} // namespace

TEST_CASE("an event-free sequence encodes to the 12-byte header") {
    FrameSequence<EventFrame> seq;
    seq.frames.emplace_back(4, 4, 0u);
    const auto bytes = encode_aer(seq);
    REQUIRE(bytes.size() == 12);
    CHECK(bytes[0] == 'A');
    CHECK(bytes[1] == 'E');
    CHECK(bytes[2] == 'R');
    CHECK(bytes[3] == '1');
}

TEST_CASE("golden bytes: single +1 event at (3,2) in a 4x4 frame") {
    FrameSequence<EventFrame> seq;
    seq.frames.emplace_back(4, 4, 0u);
    seq.frames[0].at(2, 3) = 1;
    const auto bytes = encode_aer(seq);

    const std::vector<std::uint8_t> expected = {
        'A', 'E', 'R', '1',       // magic
        0x01, 0x00,               // version 1
        0x04, 0x00,               // height 4
        0x04, 0x00,               // width 4
        0x01, 0x00,               // flags: polarity present
        0x03, 0x00,               // x = 3
        0x02, 0x00,               // y = 2
        0x00, 0x00, 0x00, 0x00,   // frame_index 0
        0x01,                     // polarity +1
    };
    REQUIRE(bytes.size() == 21);
    CHECK(bytes == expected);
}

TEST_CASE("encode/decode round-trips random sparse sequences") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const int frames = testing::uniform_int(rng, 1, 6);
        const int h = testing::uniform_int(rng, 1, 24);
        const int w = testing::uniform_int(rng, 1, 24);
        const auto seq = random_sequence(rng, frames, h, w, 0.1);
        const auto decoded = decode_aer(encode_aer(seq), seq.frames.size());
        REQUIRE(decoded.frames.size() == seq.frames.size());
        for (std::size_t t = 0; t < seq.frames.size(); ++t) {
            CHECK(decoded.frames[t].data == seq.frames[t].data);
            CHECK(decoded.frames[t].frame_index == t);
        }
    }
}

TEST_CASE("spike sequences share the record format with polarity +1") {
    std::mt19937_64 rng(72);
    FrameSequence<SpikeFrame> seq;
    for (int t = 0; t < 3; ++t)
        seq.frames.push_back(
            testing::random_spikes(rng, 9, 7, 0.2, static_cast<std::uint32_t>(t)));
    const auto decoded = decode_aer(encode_aer(seq), seq.frames.size());
    const auto spikes = to_spike_sequence(decoded);
    REQUIRE(spikes.frames.size() == seq.frames.size());
    for (std::size_t t = 0; t < seq.frames.size(); ++t)
        CHECK(spikes.frames[t].data == seq.frames[t].data);
}

TEST_CASE("to_spike_sequence rejects negative polarity") {
    FrameSequence<EventFrame> seq;
    seq.frames.emplace_back(4, 4, 0u);
    seq.frames[0].at(1, 1) = -1;
    CHECK_THROWS_AS((void)to_spike_sequence(seq), Error);
}

TEST_CASE("bad magic is a format error") {
    FrameSequence<EventFrame> seq;
    seq.frames.emplace_back(4, 4, 0u);
    auto bytes = encode_aer(seq);
    bytes[0] ^= 0xff;
    CHECK_THROWS_AS((void)decode_aer(bytes), Error);
    try {
        (void)decode_aer(bytes);
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::format);
    }
}

TEST_CASE("a stream cut mid-record reports the byte offset") {
    std::mt19937_64 rng(73);
    auto seq = random_sequence(rng, 2, 8, 8, 0.5);
    auto bytes = encode_aer(seq);
    REQUIRE(bytes.size() > 21);
    bytes.resize(bytes.size() - 4); // cut inside the last record
    try {
        (void)decode_aer(bytes);
        FAIL("decode accepted a truncated stream");
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::corruption);
        CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
    }
}

TEST_CASE("out-of-bounds coordinates are corruption") {
    FrameSequence<EventFrame> seq;
    seq.frames.emplace_back(4, 4, 0u);
    seq.frames[0].at(2, 3) = 1;
    auto bytes = encode_aer(seq);
    bytes[12] = 0x09; // x = 9 in a width-4 stream
    try {
        (void)decode_aer(bytes);
        FAIL("decode accepted an out-of-bounds coordinate");
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::corruption);
    }
}

TEST_CASE("unsorted records are corruption") {
    FrameSequence<EventFrame> seq;
    seq.frames.emplace_back(4, 4, 0u);
    seq.frames[0].at(1, 1) = 1;
    seq.frames[0].at(1, 2) = 1;
    auto bytes = encode_aer(seq);
    // swap the two 9-byte records
    std::vector<std::uint8_t> swapped(bytes.begin(), bytes.begin() + 12);
    swapped.insert(swapped.end(), bytes.begin() + 21, bytes.begin() + 30);
    swapped.insert(swapped.end(), bytes.begin() + 12, bytes.begin() + 21);
    CHECK_THROWS_AS((void)decode_aer(swapped), Error);
}

TEST_CASE("oversized dimensions are a capacity error") {
    FrameSequence<EventFrame> seq;
    seq.frames.emplace_back(1, 70000, 0u);
    try {
        (void)encode_aer(seq);
        FAIL("encode accepted width 70000");
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::capacity);
    }
}

TEST_CASE("declared frame count restores trailing empty frames") {
    FrameSequence<EventFrame> seq;
    for (int t = 0; t < 4; ++t) seq.frames.emplace_back(4, 4, static_cast<std::uint32_t>(t));
    seq.frames[1].at(0, 0) = 1; // events only in frame 1
    const auto bytes = encode_aer(seq);

    const auto without = decode_aer(bytes);
    CHECK(without.frames.size() == 2); // up to the highest frame_index present

    const auto with = decode_aer(bytes, 4);
    CHECK(with.frames.size() == 4);
    for (std::size_t t = 0; t < 4; ++t)
        CHECK(with.frames[t].data == seq.frames[t].data);

    CHECK_THROWS_AS((void)decode_aer(bytes, 1), Error); // count below max index
}

TEST_CASE("encode rejects an empty sequence") {
    FrameSequence<EventFrame> seq;
    CHECK_THROWS_AS((void)encode_aer(seq), Error);
}

TEST_CASE("a huge frame_index without a declared count is rejected, not allocated") {
    FrameSequence<EventFrame> seq;
    seq.frames.emplace_back(64, 64, 0u);
    seq.frames[0].at(5, 5) = 1;
    auto bytes = encode_aer(seq);
    // frame_index bytes sit at offsets 16..19 of the single record
    bytes[16] = 0xff;
    bytes[17] = 0xff;
    bytes[18] = 0xff;
    bytes[19] = 0xff;
    try {
        (void)decode_aer(bytes);
        FAIL("decode materialized 2^32 frames");
    } catch (const Error& e) {
        CHECK(e.code() == Error::Code::corruption);
    }
}

TEST_CASE("single-byte mutations never crash the decoder") {
    std::mt19937_64 rng(74);
    const auto seq = random_sequence(rng, 3, 12, 9, 0.25);
    const auto original = encode_aer(seq);
    int rejected = 0, accepted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto bytes = original;
        const std::size_t pos = rng() % bytes.size();
        bytes[pos] ^= static_cast<std::uint8_t>(1 + rng() % 255);
        try {
            (void)decode_aer(bytes);
            ++accepted; // mutation landed somewhere harmless
        } catch (const Error&) {
            ++rejected; // flagged as format/corruption, never UB
        }
    }
    CHECK(rejected + accepted == 300);
    CHECK(rejected > 0);
}
