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

// AVX2 kernel variants, 4 double lanes per iteration. Arithmetic mirrors
// the scalar reference exactly: same operations, same order, mul+add
// (never FMA), so results are bit-identical lane by lane.

#include "retinasim/simd/kernels.hpp"

#if defined(RETINASIM_HAVE_AVX2)

#include <immintrin.h>

#include <cstring>

namespace retinasim::simd {

namespace {

constexpr double kWeightR = 0.299;
constexpr double kWeightG = 0.587;
constexpr double kWeightB = 0.114;
constexpr double kInv255 = 1.0 / 255.0;

// Packed event bytes for every (positive-mask | negative-mask << 4)
// combination of 4 lanes: lane byte is +1 on a positive hit, -1 (0xff) on
// a negative hit, 0 otherwise.
struct EventByteTable {
    std::uint32_t packed[256];
    EventByteTable() {
        for (int pm = 0; pm < 16; ++pm) {
            for (int nm = 0; nm < 16; ++nm) {
                std::uint32_t v = 0;
                for (int lane = 0; lane < 4; ++lane) {
                    std::uint8_t b = 0;
                    if (pm & (1 << lane)) b = 0x01;
                    else if (nm & (1 << lane)) b = 0xff;
                    v |= std::uint32_t(b) << (8 * lane);
                }
                packed[pm | (nm << 4)] = v;
            }
        }
    }
};
const EventByteTable kEventBytes;

// Packed 0/1 bytes for a 4-bit lane mask.
struct SpikeByteTable {
    std::uint32_t packed[16];
    SpikeByteTable() {
        for (int m = 0; m < 16; ++m) {
            std::uint32_t v = 0;
            for (int lane = 0; lane < 4; ++lane)
                if (m & (1 << lane)) v |= std::uint32_t(0x01) << (8 * lane);
            packed[m] = v;
        }
    }
};
const SpikeByteTable kSpikeBytes;

void rgb8_to_luminance_avx2(const std::uint8_t* rgb, std::size_t pixel_count,
                            double* lum) {
    const __m256d wr = _mm256_set1_pd(kWeightR);
    const __m256d wg = _mm256_set1_pd(kWeightG);
    const __m256d wb = _mm256_set1_pd(kWeightB);
    const __m256d inv = _mm256_set1_pd(kInv255);
    // Byte gathers for 4 interleaved pixels within a 16-byte load.
    const __m128i shuf_r = _mm_setr_epi8(0, 3, 6, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m128i shuf_g = _mm_setr_epi8(1, 4, 7, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m128i shuf_b = _mm_setr_epi8(2, 5, 8, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);

    std::size_t i = 0;
    // A 16-byte load covers 4 pixels (12 bytes) plus 4 bytes of slack, so
    // stop one extra pixel early to stay inside the buffer.
    if (pixel_count >= 6) {
        const std::size_t vec_end = pixel_count - 2;
        for (; i + 4 <= vec_end; i += 4) {
            const __m128i raw =
                _mm_loadu_si128(reinterpret_cast<const __m128i*>(rgb + 3 * i));
            const __m256d r = _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(_mm_shuffle_epi8(raw, shuf_r)));
            const __m256d g = _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(_mm_shuffle_epi8(raw, shuf_g)));
            const __m256d b = _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(_mm_shuffle_epi8(raw, shuf_b)));
            const __m256d sum = _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(wr, r), _mm256_mul_pd(wg, g)),
                _mm256_mul_pd(wb, b));
            _mm256_storeu_pd(lum + i, _mm256_mul_pd(sum, inv));
        }
    }
    for (; i < pixel_count; ++i) {
        const double r = rgb[3 * i + 0];
        const double g = rgb[3 * i + 1];
        const double b = rgb[3 * i + 2];
        lum[i] = ((kWeightR * r + kWeightG * g) + kWeightB * b) * kInv255;
    }
}

void temporal_contrast_avx2(const double* cur, const double* ref, std::size_t n,
                            double c, std::int8_t* events) {
    const __m256d pos = _mm256_set1_pd(c);
    const __m256d neg = _mm256_set1_pd(-c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d =
            _mm256_sub_pd(_mm256_loadu_pd(cur + i), _mm256_loadu_pd(ref + i));
        const int pm = _mm256_movemask_pd(_mm256_cmp_pd(d, pos, _CMP_GT_OQ));
        const int nm = _mm256_movemask_pd(_mm256_cmp_pd(d, neg, _CMP_LT_OQ));
        const std::uint32_t packed = kEventBytes.packed[pm | (nm << 4)];
        std::memcpy(events + i, &packed, 4);
    }
    for (; i < n; ++i) {
        const double d = cur[i] - ref[i];
        events[i] = d > c ? std::int8_t(1) : (d < -c ? std::int8_t(-1) : std::int8_t(0));
    }
}

void event_activity_avx2(const std::int8_t* events, std::size_t n,
                         double* activity) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        std::uint32_t raw;
        std::memcpy(&raw, events + i, 4);
        const __m128i bytes = _mm_cvtsi32_si128(static_cast<int>(raw));
        const __m128i lanes32 = _mm_cvtepi8_epi32(bytes);
        const __m256d mask = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(
            _mm_cmpeq_epi32(lanes32, _mm_setzero_si128())));
        _mm256_storeu_pd(activity + i, _mm256_blendv_pd(one, zero, mask));
    }
    for (; i < n; ++i)
        activity[i] = events[i] != 0 ? 1.0 : 0.0;
}

std::size_t count_nonzero_u8_avx2(const std::uint8_t* p, std::size_t n) {
    std::size_t count = 0;
    std::size_t i = 0;
    const __m256i zero = _mm256_setzero_si256();
    for (; i + 32 <= n; i += 32) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        const std::uint32_t zmask =
            static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
        count += static_cast<std::size_t>(_mm_popcnt_u32(~zmask));
    }
    for (; i < n; ++i)
        count += p[i] != 0;
    return count;
}

void scale_inplace_avx2(double* p, std::size_t n, double s) {
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), sv));
    for (; i < n; ++i)
        p[i] *= s;
}

void spike_threshold_avx2(const double* center, const double* surround,
                          std::size_t n, double threshold,
                          std::uint8_t* spikes) {
    const __m256d thr = _mm256_set1_pd(threshold);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(center + i),
                                        _mm256_loadu_pd(surround + i));
        const int m = _mm256_movemask_pd(_mm256_cmp_pd(d, thr, _CMP_GT_OQ));
        const std::uint32_t packed = kSpikeBytes.packed[m];
        std::memcpy(spikes + i, &packed, 4);
    }
    for (; i < n; ++i)
        spikes[i] = (center[i] - surround[i]) > threshold ? std::uint8_t(1)
                                                          : std::uint8_t(0);
}

void convolve_row_interior_avx2(const double* src, int width, int y, int x0,
                                int x1, const double* kernel, int radius,
                                double* out_row) {
    const int side = 2 * radius + 1;
    int x = x0;
    for (; x + 4 <= x1; x += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (int ky = 0; ky < side; ++ky) {
            const double* srow =
                src + static_cast<std::size_t>(y + ky - radius) * width + (x - radius);
            const double* krow = kernel + static_cast<std::size_t>(ky) * side;
            for (int kx = 0; kx < side; ++kx)
                acc = _mm256_add_pd(
                    acc, _mm256_mul_pd(_mm256_set1_pd(krow[kx]),
                                       _mm256_loadu_pd(srow + kx)));
        }
        _mm256_storeu_pd(out_row + x, acc);
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

extern const KernelTable kAvx2Kernels;
const KernelTable kAvx2Kernels = {
    "avx2",
    rgb8_to_luminance_avx2,
    temporal_contrast_avx2,
    event_activity_avx2,
    count_nonzero_u8_avx2,
    scale_inplace_avx2,
    spike_threshold_avx2,
    convolve_row_interior_avx2,
};

} // namespace retinasim::simd

#endif // RETINASIM_HAVE_AVX2
