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

#include <cstddef>
#include <cstdint>
#include <vector>

namespace retinasim::simd {

// Data-parallel inner loops of the pipeline. Every entry has a scalar
// reference implementation plus optional AVX2/NEON variants selected at
// runtime. A SIMD variant must be bit-identical to the scalar reference:
// each lane performs the same IEEE operations in the same order, and the
// library is built with FP contraction disabled.
struct KernelTable {
    const char* name;

    // lum[i] = (0.299*r + 0.587*g + 0.114*b) * (1/255) for interleaved RGB.
    void (*rgb8_to_luminance)(const std::uint8_t* rgb, std::size_t pixel_count,
                              double* lum);

    // events[i] = +1 if cur[i]-ref[i] > c, -1 if cur[i]-ref[i] < -c, else 0.
    void (*temporal_contrast)(const double* cur, const double* ref, std::size_t n,
                              double c, std::int8_t* events);

    // activity[i] = |events[i]| with events in {-1, 0, +1}.
    void (*event_activity)(const std::int8_t* events, std::size_t n,
                           double* activity);

    // Number of nonzero bytes.
    std::size_t (*count_nonzero_u8)(const std::uint8_t* p, std::size_t n);

    // p[i] *= s.
    void (*scale_inplace)(double* p, std::size_t n, double s);

    // spikes[i] = (center[i] - surround[i] > threshold) ? 1 : 0.
    void (*spike_threshold)(const double* center, const double* surround,
                            std::size_t n, double threshold, std::uint8_t* spikes);

    // Interior segment [x0, x1) of output row y of a dense 2D correlation
    // with a (2*radius+1)^2 kernel. The caller guarantees that every tap
    // lands inside the source frame:
    //   radius <= y < height-radius,  radius <= x0 <= x1 <= width-radius.
    // Accumulation order is fixed: rows outer, columns inner.
    void (*convolve_row_interior)(const double* src, int width, int y, int x0,
                                  int x1, const double* kernel, int radius,
                                  double* out_row);
};

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);

/// Tables compiled into this build. The scalar table is always present.
std::vector<Isa> available_isas();

/// Table for a specific instruction set; nullptr when not compiled in or
/// not supported by the running CPU.
const KernelTable* kernels_for(Isa isa);

/// The runtime-selected table. Defaults to the best supported instruction
/// set; the RETINASIM_SIMD environment variable (scalar|avx2|neon)
/// overrides the choice.
const KernelTable& active_kernels();
Isa active_isa();

/// Force a specific instruction set (used by tests and the CLI --simd
/// flag). Returns false and leaves the selection unchanged when the
/// requested set is unavailable.
bool set_active_isa(Isa isa);

} // namespace retinasim::simd
