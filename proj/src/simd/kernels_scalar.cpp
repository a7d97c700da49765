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

// Scalar reference kernels. These define the semantics; the AVX2/NEON
// variants must reproduce them bit for bit.

#include "retinasim/simd/kernels.hpp"

namespace retinasim::simd {

namespace {

constexpr double kWeightR = 0.299;
constexpr double kWeightG = 0.587;
constexpr double kWeightB = 0.114;
constexpr double kInv255 = 1.0 / 255.0;

void rgb8_to_luminance_scalar(const std::uint8_t* rgb, std::size_t pixel_count,
                              double* lum) {
    for (std::size_t i = 0; i < pixel_count; ++i) {
        const double r = rgb[3 * i + 0];
        const double g = rgb[3 * i + 1];
        const double b = rgb[3 * i + 2];
        lum[i] = ((kWeightR * r + kWeightG * g) + kWeightB * b) * kInv255;
    }
}

void temporal_contrast_scalar(const double* cur, const double* ref, std::size_t n,
                              double c, std::int8_t* events) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = cur[i] - ref[i];
        events[i] = d > c ? std::int8_t(1) : (d < -c ? std::int8_t(-1) : std::int8_t(0));
    }
}

void event_activity_scalar(const std::int8_t* events, std::size_t n,
                           double* activity) {
    for (std::size_t i = 0; i < n; ++i)
        activity[i] = events[i] != 0 ? 1.0 : 0.0;
}

std::size_t count_nonzero_u8_scalar(const std::uint8_t* p, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        count += p[i] != 0;
    return count;
}

void scale_inplace_scalar(double* p, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i)
        p[i] *= s;
}

void spike_threshold_scalar(const double* center, const double* surround,
                            std::size_t n, double threshold,
                            std::uint8_t* spikes) {
    for (std::size_t i = 0; i < n; ++i)
        spikes[i] = (center[i] - surround[i]) > threshold ? std::uint8_t(1)
                                                          : std::uint8_t(0);
}

void convolve_row_interior_scalar(const double* src, int width, int y, int x0,
                                  int x1, const double* kernel, int radius,
                                  double* out_row) {
    const int side = 2 * radius + 1;
    for (int x = x0; x < x1; ++x) {
        double acc = 0.0;
        for (int ky = 0; ky < side; ++ky) {
            const double* srow =
                src + static_cast<std::size_t>(y + ky - radius) * width + (x - radius);
            const double* krow = kernel + static_cast<std::size_t>(ky) * side;
            for (int kx = 0; kx < side; ++kx)
                acc += krow[kx] * srow[kx];
        }
        out_row[x] = acc;
    }
}

} // namespace

extern const KernelTable kScalarKernels;
const KernelTable kScalarKernels = {
    "scalar",
    rgb8_to_luminance_scalar,
    temporal_contrast_scalar,
    event_activity_scalar,
    count_nonzero_u8_scalar,
    scale_inplace_scalar,
    spike_threshold_scalar,
    convolve_row_interior_scalar,
};

} // namespace retinasim::simd
