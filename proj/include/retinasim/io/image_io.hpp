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

enum class ImageFormat { pgm, png };

ImageFormat image_format_from_name(const std::string& name);

/// Decodes one 8-bit image to RGB. PGM P5 and PBM P4 are replicated to
/// three channels; PPM P6 is read directly; PNG is decoded via libpng
/// (palette/gray expanded, alpha stripped, 16-bit narrowed).
RGBFrame read_image(const std::string& path);

/// All regular files in `directory` whose names match `pattern`
/// (wildcards * and ?, alternatives separated by ';'), ordered by
/// lexicographic filename. Throws not_found when nothing matches,
/// invalid_input on mixed dimensions, format on an undecodable file.
FrameSequence<RGBFrame> read_image_sequence(const std::string& directory,
                                            const std::string& pattern = "*");

bool matches_pattern(const std::string& name, const std::string& pattern);

// netpbm primitives (binary variants, maxval 255; P4 rows padded to whole
// bytes, most significant bit first, 1 = black).
void write_pgm(const std::string& path, int height, int width,
               const std::uint8_t* gray);
void write_ppm(const std::string& path, const RGBFrame& frame);
void write_pbm(const std::string& path, const SpikeFrame& frame); // spike = black
SpikeFrame read_pbm(const std::string& path);                      // black = spike

void write_png_rgb(const std::string& path, const RGBFrame& frame);
void write_png_gray(const std::string& path, int height, int width,
                    const std::uint8_t* gray);

/// One image per frame, named frame_<zero-padded index>.<ext> inside
/// `directory` (created if missing). Spike frames: P4 (spike = black) or
/// PNG (spike = 0, background = 255). Returns the written paths in order.
std::vector<std::string> write_spike_frames(const FrameSequence<SpikeFrame>& seq,
                                            const std::string& directory,
                                            ImageFormat format);

/// Event frames as 8-bit gray with the mapping {-1 -> 0, 0 -> 128, +1 -> 255}.
std::vector<std::string> write_event_frames(const FrameSequence<EventFrame>& seq,
                                            const std::string& directory,
                                            ImageFormat format);

} // namespace retinasim
