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

#include <stdexcept>
#include <string>

namespace retinasim {

/// All library failures are reported through this exception. The code
/// classifies the failure so callers (notably the CLI) can map it to a
/// stable, machine-parseable identifier and exit status.
class Error : public std::runtime_error {
public:
    enum class Code {
        config,         // invalid configuration or scene/run spec
        invalid_input,  // malformed in-memory data (shape, range, emptiness)
        format,         // unrecognized or undecodable file content
        corruption,     // structurally valid header, inconsistent payload
        not_found,      // missing file or empty match set
        io,             // filesystem read/write failure
        capacity,       // value does not fit the on-disk representation
        no_signal,      // a requested ratio/fraction is undefined (no activity)
        internal,       // should-not-happen
    };

    Error(Code code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Code code() const noexcept { return code_; }

    const char* code_name() const noexcept {
        switch (code_) {
            case Code::config: return "config";
            case Code::invalid_input: return "invalid-input";
            case Code::format: return "format";
            case Code::corruption: return "corruption";
            case Code::not_found: return "not-found";
            case Code::io: return "io";
            case Code::capacity: return "capacity";
            case Code::no_signal: return "no-signal";
            case Code::internal: return "internal";
        }
        return "internal";
    }

private:
    Code code_;
};

} // namespace retinasim
