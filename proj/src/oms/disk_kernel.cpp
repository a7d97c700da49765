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

#include "retinasim/oms/disk_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace retinasim {

namespace {

constexpr int kSubgrid = 1024; // midpoint samples per cell axis (power of two)

// Fraction of the unit cell centered at (cx, cy) covered by the disk
// x^2 + y^2 <= r^2, estimated on a kSubgrid^2 midpoint lattice. Each
// sample row is counted in closed form instead of testing every point.
// Midpoint offsets are odd multiples of 1/(2*kSubgrid), so no sample can
// land exactly on the circle.
double cell_coverage(int cx, int cy, int radius) {
    const double n = kSubgrid;
    const double r2 = static_cast<double>(radius) * radius;
    long long total = 0;
    for (int k = 0; k < kSubgrid; ++k) {
        const double y = cy - 0.5 + (2 * k + 1) / (2.0 * n);
        const double d = r2 - y * y;
        if (d <= 0.0) continue;
        const double hw = std::sqrt(d);
        // samples x_m = cx - 0.5 + (2m+1)/(2n) with -hw <= x_m <= hw
        const double lo = (-hw - cx + 0.5) * n - 0.5;
        const double hi = (hw - cx + 0.5) * n - 0.5;
        const long long mmin = std::max(0LL, static_cast<long long>(std::ceil(lo)));
        const long long mmax =
            std::min<long long>(kSubgrid - 1, static_cast<long long>(std::floor(hi)));
        if (mmax >= mmin) total += mmax - mmin + 1;
    }
    return static_cast<double>(total) / (n * n);
}

} // namespace

DiskKernel make_disk_kernel(int radius) {
    if (radius < 1)
        throw Error(Error::Code::config,
                    "make_disk_kernel: radius must be >= 1, got " +
                        std::to_string(radius));

    DiskKernel kernel;
    kernel.radius = radius;
    kernel.side = 2 * radius + 1;
    kernel.weights.assign(static_cast<std::size_t>(kernel.side) * kernel.side, 0.0);

    // Coverage depends only on (min(|dx|,|dy|), max(|dx|,|dy|)); computing
    // one octant and mirroring makes the 8-fold symmetry exact.
    std::vector<double> octant(static_cast<std::size_t>(radius + 1) * (radius + 1), 0.0);
    for (int a = 0; a <= radius; ++a)
        for (int b = a; b <= radius; ++b)
            octant[static_cast<std::size_t>(a) * (radius + 1) + b] =
                cell_coverage(b, a, radius);

    double sum = 0.0;
    for (int i = 0; i < kernel.side; ++i) {
        for (int j = 0; j < kernel.side; ++j) {
            const int dy = std::abs(i - radius);
            const int dx = std::abs(j - radius);
            const int a = std::min(dx, dy);
            const int b = std::max(dx, dy);
            const double w = octant[static_cast<std::size_t>(a) * (radius + 1) + b];
            kernel.weights[static_cast<std::size_t>(i) * kernel.side + j] = w;
            sum += w;
        }
    }
    for (double& w : kernel.weights)
        w /= sum;
    return kernel;
}

} // namespace retinasim
