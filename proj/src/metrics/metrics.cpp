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

#include "retinasim/metrics/metrics.hpp"

#include <charconv>
#include <sstream>

#include "retinasim/simd/kernels.hpp"

namespace retinasim {

const char* representation_name(Representation r) {
    switch (r) {
        case Representation::rgb: return "rgb";
        case Representation::dvs: return "dvs";
        case Representation::oms: return "oms";
    }
    return "rgb";
}

Representation representation_from_name(const std::string& name) {
    if (name == "rgb") return Representation::rgb;
    if (name == "dvs") return Representation::dvs;
    if (name == "oms") return Representation::oms;
    throw Error(Error::Code::format, "unknown representation '" + name + "'");
}

double dense_bit_rate(int height, int width, double bit_depth) {
    if (height < 0 || width < 0)
        throw Error(Error::Code::invalid_input,
                    "dense_bit_rate: dimensions must be >= 0");
    if (!(bit_depth >= 0.0))
        throw Error(Error::Code::invalid_input, "dense_bit_rate: bit_depth must be >= 0");
    return static_cast<double>(height) * static_cast<double>(width) * bit_depth;
}

namespace {

std::int64_t active_bits(const std::uint8_t* data, std::size_t n, int bit_depth) {
    if (bit_depth < 0)
        throw Error(Error::Code::invalid_input, "sparse_bit_rate: bit_depth must be >= 0");
    const std::size_t active = simd::active_kernels().count_nonzero_u8(data, n);
    return static_cast<std::int64_t>(active) * bit_depth;
}

template <class Frame>
double avg_bit_rate_impl(const FrameSequence<Frame>& seq, int bit_depth) {
    if (seq.frames.empty())
        throw Error(Error::Code::invalid_input, "avg_bit_rate: empty sequence");
    double total = 0.0;
    for (const Frame& f : seq.frames)
        total += static_cast<double>(sparse_bit_rate(f, bit_depth));
    return total / static_cast<double>(seq.frames.size());
}

} // namespace

std::int64_t sparse_bit_rate(const EventFrame& frame, int bit_depth) {
    return active_bits(reinterpret_cast<const std::uint8_t*>(frame.data.data()),
                       frame.data.size(), bit_depth);
}

std::int64_t sparse_bit_rate(const SpikeFrame& frame, int bit_depth) {
    return active_bits(frame.data.data(), frame.data.size(), bit_depth);
}

double avg_bit_rate(const FrameSequence<EventFrame>& seq, int bit_depth) {
    return avg_bit_rate_impl(seq, bit_depth);
}

double avg_bit_rate(const FrameSequence<SpikeFrame>& seq, int bit_depth) {
    return avg_bit_rate_impl(seq, bit_depth);
}

double perf_per_bit(double f1, double avg_bits) {
    if (!(f1 >= 0.0 && f1 <= 1.0))
        throw Error(Error::Code::invalid_input,
                    "perf_per_bit: f1 must be in [0, 1], got " + std::to_string(f1));
    if (!(avg_bits > 0.0))
        throw Error(Error::Code::invalid_input, "perf_per_bit: avg_bits must be > 0");
    return f1 / avg_bits;
}

PerfPerBit PerfPerBit::make(double f1, double avg_bits) {
    PerfPerBit p;
    p.f1 = f1;
    p.avg_bits_per_frame = avg_bits;
    p.ratio = perf_per_bit(f1, avg_bits);
    return p;
}

std::vector<std::vector<double>> ratio_table(const std::vector<PerfPerBit>& entries) {
    if (entries.size() < 2)
        throw Error(Error::Code::invalid_input, "ratio_table: need at least 2 entries");
    for (const PerfPerBit& e : entries)
        if (!(e.ratio > 0.0))
            throw Error(Error::Code::invalid_input,
                        "ratio_table: all ratios must be > 0");
    std::vector<std::vector<double>> m(entries.size(),
                                       std::vector<double>(entries.size(), 1.0));
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = 0; j < entries.size(); ++j)
            m[i][j] = entries[i].ratio / entries[j].ratio;
    return m;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& field, const char* what) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw Error(Error::Code::format,
                    std::string("csv: bad ") + what + " value '" + field + "'");
    return value;
}

std::int64_t parse_int(const std::string& field, const char* what) {
    std::int64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw Error(Error::Code::format,
                    std::string("csv: bad ") + what + " value '" + field + "'");
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

constexpr const char* kCsvHeader =
    "representation,frames,height,width,bit_depth,dense_bits_per_frame,"
    "avg_sparse_bits_per_frame,f1_input,perf_per_bit";

} // namespace

std::string report_to_csv(const std::vector<BitRateReport>& reports,
                          bool with_ratios) {
    std::ostringstream out;
    out << kCsvHeader;
    if (with_ratios)
        for (const BitRateReport& r : reports)
            if (r.perf_per_bit)
                out << ",ratio_vs_" << representation_name(r.representation);
    out << '\n';

    for (const BitRateReport& r : reports) {
        out << representation_name(r.representation) << ',' << r.frame_count << ','
            << r.height << ',' << r.width << ',' << r.bit_depth << ','
            << r.bits_per_frame_dense << ',' << format_double(r.avg_bits_per_frame_sparse)
            << ',' << (r.f1_input ? format_double(*r.f1_input) : std::string())
            << ',' << (r.perf_per_bit ? format_double(*r.perf_per_bit) : std::string());
        if (with_ratios) {
            for (const BitRateReport& other : reports) {
                if (!other.perf_per_bit) continue;
                out << ',';
                if (r.perf_per_bit)
                    out << format_double(*r.perf_per_bit / *other.perf_per_bit);
            }
        }
        out << '\n';
    }
    return out.str();
}

std::vector<BitRateReport> report_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line))
        throw Error(Error::Code::format, "csv: missing header row");
    if (line.rfind(kCsvHeader, 0) != 0)
        throw Error(Error::Code::format, "csv: unexpected header '" + line + "'");

    std::vector<BitRateReport> reports;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() < 9)
            throw Error(Error::Code::format, "csv: row with fewer than 9 fields");
        BitRateReport r;
        r.representation = representation_from_name(fields[0]);
        r.frame_count = parse_int(fields[1], "frames");
        r.height = static_cast<int>(parse_int(fields[2], "height"));
        r.width = static_cast<int>(parse_int(fields[3], "width"));
        r.bit_depth = static_cast<int>(parse_int(fields[4], "bit_depth"));
        r.bits_per_frame_dense = parse_int(fields[5], "dense_bits_per_frame");
        r.avg_bits_per_frame_sparse =
            parse_double(fields[6], "avg_sparse_bits_per_frame");
        if (!fields[7].empty()) r.f1_input = parse_double(fields[7], "f1_input");
        if (!fields[8].empty()) r.perf_per_bit = parse_double(fields[8], "perf_per_bit");
        reports.push_back(r);
    }
    return reports;
}

} // namespace retinasim
