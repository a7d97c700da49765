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

#include <doctest.h>

#include <cmath>

#include "retinasim/oms/oms.hpp"
#include "test_helpers.hpp"

using namespace retinasim;

TEST_CASE("constant frame with replicate boundary stays constant") {
    const double v = 0.37;
    RealFrame frame(9, 11);
    for (double& x : frame.data) x = v;
    for (int radius : {1, 2, 3}) {
        const auto out = convolve2d(frame, make_disk_kernel(radius),
                                    BoundaryMode::replicate);
        for (double x : out.data) CHECK(x == doctest::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("all-zero frame convolves to all zeros") {
    RealFrame frame(8, 8);
    const auto out = convolve2d(frame, make_disk_kernel(2), BoundaryMode::zero);
    for (double x : out.data) CHECK(x == 0.0);
}

TEST_CASE("7x7 random frame equals the quadruple-loop oracle within 1e-12") {
    std::mt19937_64 rng(31);
    const DiskKernel kernel = make_disk_kernel(1);
    for (int trial = 0; trial < 20; ++trial) {
        const RealFrame frame = testing::random_real_frame(rng, 7, 7);
        for (BoundaryMode boundary : {BoundaryMode::replicate, BoundaryMode::zero}) {
            const auto got = convolve2d(frame, kernel, boundary);
            const auto expected = testing::convolve_oracle(frame, kernel, boundary);
            for (std::size_t i = 0; i < got.data.size(); ++i)
                CHECK(std::abs(got.data[i] - expected.data[i]) < 1e-12);
        }
    }
}

TEST_CASE("random frames and radii match the oracle in both boundary modes") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const int radius = testing::uniform_int(rng, 1, 5);
        const int side = 2 * radius + 1;
        const int h = testing::uniform_int(rng, side, 24);
        const int w = testing::uniform_int(rng, side, 24);
        const RealFrame frame = testing::random_real_frame(rng, h, w);
        const DiskKernel kernel = make_disk_kernel(radius);
        const BoundaryMode boundary =
            (trial % 2 == 0) ? BoundaryMode::replicate : BoundaryMode::zero;
        const auto got = convolve2d(frame, kernel, boundary);
        const auto expected = testing::convolve_oracle(frame, kernel, boundary);
        for (std::size_t i = 0; i < got.data.size(); ++i)
            CHECK(std::abs(got.data[i] - expected.data[i]) < 1e-12);
    }
}

TEST_CASE("frames smaller than the kernel are rejected") {
    RealFrame frame(4, 9);
    CHECK_THROWS_AS((void)convolve2d(frame, make_disk_kernel(2), BoundaryMode::zero),
                    Error);
    RealFrame tall(9, 4);
    CHECK_THROWS_AS((void)convolve2d(tall, make_disk_kernel(2), BoundaryMode::zero),
                    Error);
    RealFrame exact(5, 5);
    CHECK_NOTHROW((void)convolve2d(exact, make_disk_kernel(2), BoundaryMode::zero));
}

TEST_CASE("zero boundary darkens edges of a constant frame") {
    RealFrame frame(8, 8);
    for (double& x : frame.data) x = 1.0;
    const auto out = convolve2d(frame, make_disk_kernel(2), BoundaryMode::zero);
    CHECK(out.at(4, 4) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.at(0, 0) < 0.5); // most taps fall outside
}
