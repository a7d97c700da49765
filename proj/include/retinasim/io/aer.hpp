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
#include <optional>
#include <string>
#include <vector>

#include "retinasim/core/frame.hpp"

namespace retinasim {

// Sparse address-event container. Byte layout (little-endian, no padding):
//
//   header (12 bytes): magic "AER1" | version u16 | height u16 | width u16
//                      | flags u16 (bit 0: polarity byte present)
//   record (9 bytes):  x u16 | y u16 | frame_index u32 | polarity i8
//
// One record per nonzero/true element, sorted by (frame_index, y, x),
// strictly unique. Spike streams store polarity +1.

constexpr std::uint16_t kAerVersion = 1;
constexpr std::uint16_t kAerFlagPolarity = 0x0001;
constexpr std::size_t kAerHeaderSize = 12;
constexpr std::size_t kAerRecordSize = 9;

std::vector<std::uint8_t> encode_aer(const FrameSequence<EventFrame>& seq);
std::vector<std::uint8_t> encode_aer(const FrameSequence<SpikeFrame>& seq);

/// Exact inverse of encode_aer. Frames are materialized densely up to the
/// highest frame_index present, or up to declared_frame_count when given
/// (required to round-trip trailing all-zero frames).
FrameSequence<EventFrame> decode_aer(const std::vector<std::uint8_t>& bytes,
                                     std::optional<std::size_t> declared_frame_count =
                                         std::nullopt);

/// Interprets a decoded stream as Boolean spikes; throws invalid_input if
/// any record carries negative polarity.
FrameSequence<SpikeFrame> to_spike_sequence(const FrameSequence<EventFrame>& seq);

void write_aer_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_aer_file(const std::string& path);

} // namespace retinasim
