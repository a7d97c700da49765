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

#include "retinasim/io/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include <png.h>

namespace fs = std::filesystem;

namespace retinasim {

namespace {

[[noreturn]] void fail_format(const std::string& path, const std::string& why) {
    throw Error(Error::Code::format, path + ": " + why);
}

struct NetpbmHeader {
    char type = 0; // '4', '5' or '6'
    int width = 0;
    int height = 0;
    int maxval = 0; // unused for P4
};

int read_pnm_token(std::istream& in, const std::string& path) {
    // Skips whitespace and '#' comments, then reads one decimal value.
    for (;;) {
        const int c = in.peek();
        if (c == EOF) fail_format(path, "unexpected end of header");
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string comment;
            std::getline(in, comment);
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) fail_format(path, "malformed header value");
    return value;
}

NetpbmHeader read_pnm_header(std::istream& in, const std::string& path) {
    NetpbmHeader h;
    char p = 0;
    in.get(p);
    in.get(h.type);
    if (p != 'P' || (h.type != '4' && h.type != '5' && h.type != '6'))
        fail_format(path, "not a binary netpbm file (P4/P5/P6)");
    h.width = read_pnm_token(in, path);
    h.height = read_pnm_token(in, path);
    if (h.type != '4') {
        h.maxval = read_pnm_token(in, path);
        if (h.maxval < 1 || h.maxval > 255)
            fail_format(path, "unsupported maxval " + std::to_string(h.maxval) +
                                  " (8-bit only)");
    }
    // exactly one whitespace byte separates header and payload
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) fail_format(path, "missing payload separator");
    if (h.width < 1 || h.height < 1 || h.width > 65535 || h.height > 65535)
        fail_format(path, "unsupported dimensions " + std::to_string(h.width) + "x" +
                              std::to_string(h.height));
    return h;
}

std::vector<std::uint8_t> read_exact(std::istream& in, std::size_t n,
                                     const std::string& path) {
    std::vector<std::uint8_t> buf(n);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        fail_format(path, "truncated payload");
    return buf;
}

bool has_png_signature(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint8_t sig[8] = {0};
    in.read(reinterpret_cast<char*>(sig), 8);
    return in.gcount() == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

RGBFrame read_png(const std::string& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        fail_format(path, image.message);
    image.format = PNG_FORMAT_RGB;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        fail_format(path, message);
    }
    return RGBFrame(static_cast<int>(image.height), static_cast<int>(image.width),
                    std::move(buffer));
}

void write_png_impl(const std::string& path, int height, int width,
                    const std::uint8_t* pixels, png_uint_32 format) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(width);
    image.height = static_cast<png_uint_32>(height);
    image.format = format;
    if (!png_image_write_to_file(&image, path.c_str(), 0, pixels, 0, nullptr))
        throw Error(Error::Code::io, path + ": " + image.message);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Error::Code::io, "cannot open for writing: " + path);
    return out;
}

std::string frame_file_name(std::size_t index, const char* ext) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%06zu.%s", index, ext);
    return buf;
}

void ensure_directory(const std::string& directory) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec && !fs::is_directory(directory))
        throw Error(Error::Code::io, "cannot create directory: " + directory);
}

} // namespace

ImageFormat image_format_from_name(const std::string& name) {
    if (name == "pgm") return ImageFormat::pgm;
    if (name == "png") return ImageFormat::png;
    throw Error(Error::Code::config, "unknown image format '" + name + "'");
}

RGBFrame read_image(const std::string& path) {
    if (!fs::exists(path))
        throw Error(Error::Code::not_found, "no such file: " + path);
    if (has_png_signature(path)) return read_png(path);

    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Error::Code::io, "cannot open: " + path);
    const NetpbmHeader h = read_pnm_header(in, path);
    const std::size_t pixels = static_cast<std::size_t>(h.width) * h.height;

    if (h.type == '6') {
        auto raw = read_exact(in, pixels * 3, path);
        return RGBFrame(h.height, h.width, std::move(raw));
    }
    if (h.type == '5') {
        const auto gray = read_exact(in, pixels, path);
        RGBFrame out(h.height, h.width);
        for (std::size_t i = 0; i < pixels; ++i) {
            out.data[3 * i + 0] = gray[i];
            out.data[3 * i + 1] = gray[i];
            out.data[3 * i + 2] = gray[i];
        }
        return out;
    }
    // P4 bitmap: 1 = black
    const std::size_t row_bytes = (static_cast<std::size_t>(h.width) + 7) / 8;
    const auto bits = read_exact(in, row_bytes * h.height, path);
    RGBFrame out(h.height, h.width);
    for (int y = 0; y < h.height; ++y) {
        for (int x = 0; x < h.width; ++x) {
            const std::uint8_t byte = bits[static_cast<std::size_t>(y) * row_bytes + x / 8];
            const bool black = (byte >> (7 - (x % 8))) & 1;
            const std::uint8_t v = black ? 0 : 255;
            out.at(y, x, 0) = v;
            out.at(y, x, 1) = v;
            out.at(y, x, 2) = v;
        }
    }
    return out;
}

bool matches_pattern(const std::string& name, const std::string& pattern) {
    std::size_t start = 0;
    while (start <= pattern.size()) {
        const std::size_t sep = pattern.find(';', start);
        const std::string single =
            pattern.substr(start, sep == std::string::npos ? sep : sep - start);
        // iterative glob match with * backtracking
        std::size_t n = 0, p = 0, star = std::string::npos, match = 0;
        bool ok = true;
        while (n < name.size()) {
            if (p < single.size() && (single[p] == '?' || single[p] == name[n])) {
                ++n;
                ++p;
            } else if (p < single.size() && single[p] == '*') {
                star = p++;
                match = n;
            } else if (star != std::string::npos) {
                p = star + 1;
                n = ++match;
            } else {
                ok = false;
                break;
            }
        }
        if (ok) {
            while (p < single.size() && single[p] == '*') ++p;
            if (p == single.size()) return true;
        }
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    return false;
}

FrameSequence<RGBFrame> read_image_sequence(const std::string& directory,
                                            const std::string& pattern) {
    if (!fs::is_directory(directory))
        throw Error(Error::Code::not_found, "no such directory: " + directory);

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (matches_pattern(name, pattern)) names.push_back(name);
    }
    if (names.empty())
        throw Error(Error::Code::not_found,
                    "no files matching '" + pattern + "' in " + directory);
    std::sort(names.begin(), names.end());

    FrameSequence<RGBFrame> seq;
    seq.frames.reserve(names.size());
    for (const std::string& name : names) {
        RGBFrame frame = read_image((fs::path(directory) / name).string());
        if (!seq.frames.empty() && (frame.height != seq.frames.front().height ||
                                    frame.width != seq.frames.front().width))
            throw Error(Error::Code::invalid_input,
                        name + ": dimensions " + std::to_string(frame.height) + "x" +
                            std::to_string(frame.width) + " differ from first frame");
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

void write_pgm(const std::string& path, int height, int width,
               const std::uint8_t* gray) {
    auto out = open_output(path);
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(gray),
              static_cast<std::streamsize>(static_cast<std::size_t>(height) * width));
    if (!out) throw Error(Error::Code::io, "write failed: " + path);
}

void write_ppm(const std::string& path, const RGBFrame& frame) {
    auto out = open_output(path);
    out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(frame.data.data()),
              static_cast<std::streamsize>(frame.data.size()));
    if (!out) throw Error(Error::Code::io, "write failed: " + path);
}

void write_pbm(const std::string& path, const SpikeFrame& frame) {
    auto out = open_output(path);
    out << "P4\n" << frame.width << " " << frame.height << "\n";
    const std::size_t row_bytes = (static_cast<std::size_t>(frame.width) + 7) / 8;
    std::vector<std::uint8_t> row(row_bytes);
    for (int y = 0; y < frame.height; ++y) {
        std::fill(row.begin(), row.end(), 0);
        for (int x = 0; x < frame.width; ++x)
            if (frame.at(y, x))
                row[x / 8] |= static_cast<std::uint8_t>(1u << (7 - (x % 8)));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row_bytes));
    }
    if (!out) throw Error(Error::Code::io, "write failed: " + path);
}

SpikeFrame read_pbm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Error::Code::not_found, "cannot open: " + path);
    const NetpbmHeader h = read_pnm_header(in, path);
    if (h.type != '4') fail_format(path, "expected a P4 bitmap");
    const std::size_t row_bytes = (static_cast<std::size_t>(h.width) + 7) / 8;
    const auto bits = read_exact(in, row_bytes * h.height, path);
    SpikeFrame frame(h.height, h.width);
    for (int y = 0; y < h.height; ++y)
        for (int x = 0; x < h.width; ++x) {
            const std::uint8_t byte = bits[static_cast<std::size_t>(y) * row_bytes + x / 8];
            frame.at(y, x) = (byte >> (7 - (x % 8))) & 1;
        }
    return frame;
}

void write_png_rgb(const std::string& path, const RGBFrame& frame) {
    write_png_impl(path, frame.height, frame.width, frame.data.data(), PNG_FORMAT_RGB);
}

void write_png_gray(const std::string& path, int height, int width,
                    const std::uint8_t* gray) {
    write_png_impl(path, height, width, gray, PNG_FORMAT_GRAY);
}

std::vector<std::string> write_spike_frames(const FrameSequence<SpikeFrame>& seq,
                                            const std::string& directory,
                                            ImageFormat format) {
    ensure_directory(directory);
    std::vector<std::string> paths;
    paths.reserve(seq.frames.size());
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const SpikeFrame& frame = seq.frames[i];
        const char* ext = format == ImageFormat::pgm ? "pbm" : "png";
        const std::string path =
            (fs::path(directory) / frame_file_name(i, ext)).string();
        if (format == ImageFormat::pgm) {
            write_pbm(path, frame);
        } else {
            std::vector<std::uint8_t> gray(frame.data.size());
            for (std::size_t k = 0; k < frame.data.size(); ++k)
                gray[k] = frame.data[k] ? 0 : 255;
            write_png_gray(path, frame.height, frame.width, gray.data());
        }
        paths.push_back(path);
    }
    return paths;
}

std::vector<std::string> write_event_frames(const FrameSequence<EventFrame>& seq,
                                            const std::string& directory,
                                            ImageFormat format) {
    ensure_directory(directory);
    std::vector<std::string> paths;
    paths.reserve(seq.frames.size());
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const EventFrame& frame = seq.frames[i];
        std::vector<std::uint8_t> gray(frame.data.size());
        for (std::size_t k = 0; k < frame.data.size(); ++k)
            gray[k] = frame.data[k] > 0 ? 255 : (frame.data[k] < 0 ? 0 : 128);
        const char* ext = format == ImageFormat::pgm ? "pgm" : "png";
        const std::string path =
            (fs::path(directory) / frame_file_name(i, ext)).string();
        if (format == ImageFormat::pgm)
            write_pgm(path, frame.height, frame.width, gray.data());
        else
            write_png_gray(path, frame.height, frame.width, gray.data());
        paths.push_back(path);
    }
    return paths;
}

} // namespace retinasim
