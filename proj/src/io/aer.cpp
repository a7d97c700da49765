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

#include "retinasim/io/aer.hpp"

#include <fstream>

#include "retinasim/core/convert.hpp"

namespace retinasim {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (std::uint16_t(p[1]) << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
           (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
}

template <class Frame>
std::vector<std::uint8_t> encode_impl(const FrameSequence<Frame>& seq) {
    require_valid_sequence(seq, "encode_aer");
    const int h = seq.frames.front().height;
    const int w = seq.frames.front().width;
    if (h > 0xffff || w > 0xffff)
        throw Error(Error::Code::capacity,
                    "encode_aer: dimensions " + std::to_string(h) + "x" +
                        std::to_string(w) + " exceed the u16 coordinate range");

    std::vector<std::uint8_t> out;
    out.reserve(kAerHeaderSize);
    out.insert(out.end(), {'A', 'E', 'R', '1'});
    put_u16(out, kAerVersion);
    put_u16(out, static_cast<std::uint16_t>(h));
    put_u16(out, static_cast<std::uint16_t>(w));
    put_u16(out, kAerFlagPolarity);

    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
        const Frame& frame = seq.frames[t];
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const auto v = frame.at(y, x);
                if (v == 0) continue;
                put_u16(out, static_cast<std::uint16_t>(x));
                put_u16(out, static_cast<std::uint16_t>(y));
                put_u32(out, static_cast<std::uint32_t>(t));
                out.push_back(static_cast<std::uint8_t>(v > 0 ? 1 : -1));
            }
        }
    }
    return out;
}

} // namespace

std::vector<std::uint8_t> encode_aer(const FrameSequence<EventFrame>& seq) {
    return encode_impl(seq);
}

std::vector<std::uint8_t> encode_aer(const FrameSequence<SpikeFrame>& seq) {
    return encode_impl(seq);
}

FrameSequence<EventFrame> decode_aer(const std::vector<std::uint8_t>& bytes,
                                     std::optional<std::size_t> declared_frame_count) {
    if (bytes.size() < kAerHeaderSize)
        throw Error(Error::Code::format,
                    "aer: stream shorter than the 12-byte header");
    if (!(bytes[0] == 'A' && bytes[1] == 'E' && bytes[2] == 'R' && bytes[3] == '1'))
        throw Error(Error::Code::format, "aer: bad magic, expected \"AER1\"");
    const std::uint16_t version = get_u16(bytes.data() + 4);
    if (version != kAerVersion)
        throw Error(Error::Code::format,
                    "aer: unsupported version " + std::to_string(version));
    const std::uint16_t height = get_u16(bytes.data() + 6);
    const std::uint16_t width = get_u16(bytes.data() + 8);
    const std::uint16_t flags = get_u16(bytes.data() + 10);
    if (height == 0 || width == 0)
        throw Error(Error::Code::format, "aer: zero frame dimensions");
    const bool has_polarity = (flags & kAerFlagPolarity) != 0;
    const std::size_t record_size = has_polarity ? kAerRecordSize : kAerRecordSize - 1;

    const std::size_t payload = bytes.size() - kAerHeaderSize;
    const std::size_t record_count = payload / record_size;
    if (record_count * record_size != payload)
        throw Error(Error::Code::corruption,
                    "aer: truncated record at byte offset " +
                        std::to_string(kAerHeaderSize + record_count * record_size));

    struct Record {
        std::uint16_t x, y;
        std::uint32_t t;
        std::int8_t p;
    };

    std::vector<Record> records;
    records.reserve(record_count);
    std::uint32_t max_frame = 0;
    for (std::size_t i = 0; i < record_count; ++i) {
        const std::size_t off = kAerHeaderSize + i * record_size;
        Record rec;
        rec.x = get_u16(bytes.data() + off);
        rec.y = get_u16(bytes.data() + off + 2);
        rec.t = get_u32(bytes.data() + off + 4);
        rec.p = has_polarity ? static_cast<std::int8_t>(bytes[off + 8]) : std::int8_t(1);
        if (rec.x >= width || rec.y >= height)
            throw Error(Error::Code::corruption,
                        "aer: out-of-bounds coordinate (" + std::to_string(rec.x) +
                            ", " + std::to_string(rec.y) + ") at byte offset " +
                            std::to_string(off));
        if (rec.p != 1 && rec.p != -1)
            throw Error(Error::Code::corruption,
                        "aer: invalid polarity " + std::to_string(int(rec.p)) +
                            " at byte offset " + std::to_string(off));
        if (!records.empty()) {
            const Record& prev = records.back();
            const bool ordered =
                prev.t < rec.t || (prev.t == rec.t &&
                                   (prev.y < rec.y || (prev.y == rec.y && prev.x < rec.x)));
            if (!ordered)
                throw Error(Error::Code::corruption,
                            "aer: records not strictly sorted by (frame, y, x) at byte "
                            "offset " + std::to_string(off));
        }
        max_frame = std::max(max_frame, rec.t);
        records.push_back(rec);
    }

    std::size_t frame_count =
        records.empty() ? 0 : static_cast<std::size_t>(max_frame) + 1;
    if (declared_frame_count) {
        if (*declared_frame_count < frame_count)
            throw Error(Error::Code::corruption,
                        "aer: record frame_index " + std::to_string(max_frame) +
                            " exceeds declared frame count " +
                            std::to_string(*declared_frame_count));
        frame_count = *declared_frame_count;
    } else {
        // a single corrupt frame_index must not demand gigabytes of
        // dense frames; callers with genuinely huge streams declare the count
        constexpr std::size_t kMaxImplicitFrames = std::size_t(1) << 20;
        constexpr std::size_t kMaxImplicitElements = std::size_t(1) << 31;
        if (frame_count > kMaxImplicitFrames ||
            frame_count * static_cast<std::size_t>(height) * width >
                kMaxImplicitElements)
            throw Error(Error::Code::corruption,
                        "aer: frame_index " + std::to_string(max_frame) +
                            " would materialize an implausible amount of dense "
                            "frames; pass a declared frame count for streams "
                            "this large");
    }

    FrameSequence<EventFrame> seq;
    seq.frames.reserve(frame_count);
    for (std::size_t t = 0; t < frame_count; ++t)
        seq.frames.emplace_back(height, width, static_cast<std::uint32_t>(t));
    for (const Record& rec : records)
        seq.frames[rec.t].at(rec.y, rec.x) = rec.p;
    return seq;
}

FrameSequence<SpikeFrame> to_spike_sequence(const FrameSequence<EventFrame>& seq) {
    FrameSequence<SpikeFrame> out;
    out.frame_rate = seq.frame_rate;
    out.frames.reserve(seq.frames.size());
    for (const EventFrame& f : seq.frames) {
        SpikeFrame s(f.height, f.width, f.frame_index);
        for (std::size_t i = 0; i < f.data.size(); ++i) {
            if (f.data[i] < 0)
                throw Error(Error::Code::invalid_input,
                            "to_spike_sequence: stream carries negative polarity");
            s.data[i] = f.data[i] != 0;
        }
        out.frames.push_back(std::move(s));
    }
    return out;
}

void write_aer_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(Error::Code::io, "cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(Error::Code::io, "write failed: " + path);
}

std::vector<std::uint8_t> read_aer_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Error::Code::not_found, "cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

} // namespace retinasim
