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

// NEON kernel variants (aarch64), 2 double lanes per iteration. Same
// bit-exactness contract as the AVX2 variants: mul+add, scalar order.

#include "retinasim/simd/kernels.hpp"

#if defined(RETINASIM_HAVE_NEON)

#include <arm_neon.h>

namespace retinasim::simd {

namespace {

constexpr double kWeightR = 0.299;
constexpr double kWeightG = 0.587;
constexpr double kWeightB = 0.114;
constexpr double kInv255 = 1.0 / 255.0;

void rgb8_to_luminance_neon(const std::uint8_t* rgb, std::size_t pixel_count,
                            double* lum) {
    const float64x2_t wr = vdupq_n_f64(kWeightR);
    const float64x2_t wg = vdupq_n_f64(kWeightG);
    const float64x2_t wb = vdupq_n_f64(kWeightB);
    const float64x2_t inv = vdupq_n_f64(kInv255);
    std::size_t i = 0;
    for (; i + 2 <= pixel_count; i += 2) {
        const float64x2_t r = {double(rgb[3 * i + 0]), double(rgb[3 * i + 3])};
        const float64x2_t g = {double(rgb[3 * i + 1]), double(rgb[3 * i + 4])};
        const float64x2_t b = {double(rgb[3 * i + 2]), double(rgb[3 * i + 5])};
        const float64x2_t sum =
            vaddq_f64(vaddq_f64(vmulq_f64(wr, r), vmulq_f64(wg, g)), vmulq_f64(wb, b));
        vst1q_f64(lum + i, vmulq_f64(sum, inv));
    }
    for (; i < pixel_count; ++i) {
        const double r = rgb[3 * i + 0];
        const double g = rgb[3 * i + 1];
        const double b = rgb[3 * i + 2];
        lum[i] = ((kWeightR * r + kWeightG * g) + kWeightB * b) * kInv255;
    }
}

void temporal_contrast_neon(const double* cur, const double* ref, std::size_t n,
                            double c, std::int8_t* events) {
    const float64x2_t pos = vdupq_n_f64(c);
    const float64x2_t neg = vdupq_n_f64(-c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(cur + i), vld1q_f64(ref + i));
        const uint64x2_t pm = vcgtq_f64(d, pos);
        const uint64x2_t nm = vcltq_f64(d, neg);
        for (int lane = 0; lane < 2; ++lane) {
            const bool p = lane == 0 ? vgetq_lane_u64(pm, 0) : vgetq_lane_u64(pm, 1);
            const bool m = lane == 0 ? vgetq_lane_u64(nm, 0) : vgetq_lane_u64(nm, 1);
            events[i + lane] = p ? std::int8_t(1) : (m ? std::int8_t(-1) : std::int8_t(0));
        }
    }
    for (; i < n; ++i) {
        const double d = cur[i] - ref[i];
        events[i] = d > c ? std::int8_t(1) : (d < -c ? std::int8_t(-1) : std::int8_t(0));
    }
}

void event_activity_neon(const std::int8_t* events, std::size_t n,
                         double* activity) {
    for (std::size_t i = 0; i < n; ++i)
        activity[i] = events[i] != 0 ? 1.0 : 0.0;
}

std::size_t count_nonzero_u8_neon(const std::uint8_t* p, std::size_t n) {
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const uint8x16_t v = vld1q_u8(p + i);
        const uint8x16_t ones = vandq_u8(vtstq_u8(v, v), vdupq_n_u8(1));
        count += vaddvq_u8(ones);
    }
    for (; i < n; ++i)
        count += p[i] != 0;
    return count;
}

void scale_inplace_neon(double* p, std::size_t n, double s) {
    const float64x2_t sv = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(p + i, vmulq_f64(vld1q_f64(p + i), sv));
    for (; i < n; ++i)
        p[i] *= s;
}

void spike_threshold_neon(const double* center, const double* surround,
                          std::size_t n, double threshold,
                          std::uint8_t* spikes) {
    const float64x2_t thr = vdupq_n_f64(threshold);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d =
            vsubq_f64(vld1q_f64(center + i), vld1q_f64(surround + i));
        const uint64x2_t m = vcgtq_f64(d, thr);
        spikes[i] = vgetq_lane_u64(m, 0) ? 1 : 0;
        spikes[i + 1] = vgetq_lane_u64(m, 1) ? 1 : 0;
    }
    for (; i < n; ++i)
        spikes[i] = (center[i] - surround[i]) > threshold ? std::uint8_t(1)
                                                          : std::uint8_t(0);
}

void convolve_row_interior_neon(const double* src, int width, int y, int x0,
                                int x1, const double* kernel, int radius,
                                double* out_row) {
    const int side = 2 * radius + 1;
    int x = x0;
    for (; x + 2 <= x1; x += 2) {
        float64x2_t acc = vdupq_n_f64(0.0);
        for (int ky = 0; ky < side; ++ky) {
            const double* srow =
                src + static_cast<std::size_t>(y + ky - radius) * width + (x - radius);
            const double* krow = kernel + static_cast<std::size_t>(ky) * side;
            for (int kx = 0; kx < side; ++kx)
                acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(krow[kx]),
                                               vld1q_f64(srow + kx)));
        }
        vst1q_f64(out_row + x, acc);
    }
    for (; x < x1; ++x) {
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

extern const KernelTable kNeonKernels;
const KernelTable kNeonKernels = {
    "neon",
    rgb8_to_luminance_neon,
    temporal_contrast_neon,
    event_activity_neon,
    count_nonzero_u8_neon,
    scale_inplace_neon,
    spike_threshold_neon,
    convolve_row_interior_neon,
};

} // namespace retinasim::simd

#endif // RETINASIM_HAVE_NEON
