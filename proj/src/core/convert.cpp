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

#include "retinasim/core/convert.hpp"

#include "retinasim/simd/kernels.hpp"

namespace retinasim {

LuminanceFrame rgb_to_luminance(const RGBFrame& frame) {
    if (frame.data.size() !=
        static_cast<std::size_t>(frame.height) * frame.width * RGBFrame::channels)
        throw Error(Error::Code::invalid_input,
                    "rgb_to_luminance: malformed frame (expected 3 channels)");
    LuminanceFrame out(frame.height, frame.width);
    simd::active_kernels().rgb8_to_luminance(frame.data.data(), out.data.size(),
                                             out.data.data());
    return out;
}

} // namespace retinasim
