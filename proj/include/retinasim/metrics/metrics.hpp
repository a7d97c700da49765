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

enum class Representation { rgb, dvs, oms };

const char* representation_name(Representation r);
Representation representation_from_name(const std::string& name);

/// Dense per-frame bit budget: height * width * bit_depth.
double dense_bit_rate(int height, int width, double bit_depth);

/// Sparse per-frame bits: active (nonzero / true) element count times the
/// per-element bit depth.
std::int64_t sparse_bit_rate(const EventFrame& frame, int bit_depth);
std::int64_t sparse_bit_rate(const SpikeFrame& frame, int bit_depth);

/// Arithmetic mean of sparse_bit_rate over a nonempty sequence, summed in
/// frame order.
double avg_bit_rate(const FrameSequence<EventFrame>& seq, int bit_depth);
double avg_bit_rate(const FrameSequence<SpikeFrame>& seq, int bit_depth);

/// F1 score normalized by the average bits per frame.
double perf_per_bit(double f1, double avg_bits);

struct PerfPerBit {
    double f1 = 0.0;
    double avg_bits_per_frame = 0.0;
    double ratio = 0.0; // f1 / avg_bits_per_frame

    static PerfPerBit make(double f1, double avg_bits);
};

/// Pairwise matrix m[i][j] = entries[i].ratio / entries[j].ratio.
std::vector<std::vector<double>> ratio_table(const std::vector<PerfPerBit>& entries);

/// One CSV row of the bandwidth report.
struct BitRateReport {
    Representation representation = Representation::rgb;
    std::int64_t frame_count = 0;
    int height = 0;
    int width = 0;
    int bit_depth = 0;
    std::int64_t bits_per_frame_dense = 0;
    double avg_bits_per_frame_sparse = 0.0;
    std::optional<double> f1_input;
    std::optional<double> perf_per_bit;
};

/// Serializes reports to the fixed CSV schema
///   representation,frames,height,width,bit_depth,dense_bits_per_frame,
///   avg_sparse_bits_per_frame,f1_input,perf_per_bit
/// with a header row, '.' decimals and round-trip-exact number formatting.
/// When with_ratios is set, a ratio_vs_<rep> column is appended per entry
/// that carries a perf_per_bit value.
std::string report_to_csv(const std::vector<BitRateReport>& reports,
                          bool with_ratios = false);

/// Parses report_to_csv output (the 9 fixed columns; appended ratio
/// columns are ignored).
std::vector<BitRateReport> report_from_csv(const std::string& csv);

/// Round-trip-exact decimal formatting used in all CSV output.
std::string format_double(double value);

} // namespace retinasim
