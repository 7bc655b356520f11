// SPDX-License-Identifier: Apache-2.0
//
// rctsec: randomized uplink pilot training against pilot spoofing and jamming
// Copyright (C) 2026 The rctsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RCT_ERROR_HPP
#define RCT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rct {

enum class ErrorCode {
    NotPSD,
    Singular,
    InvalidDims,
    DimMismatch,
    OutOfRange,
    InvalidArgument,
    InvalidK,
    BracketFailure,
    TooFewObservations,
    DimTooSmall,
    TruncationFailure,
    Config,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // Numerical failures as opposed to bad input.
    bool is_numerical() const noexcept
    {
        return code_ == ErrorCode::NotPSD || code_ == ErrorCode::Singular ||
               code_ == ErrorCode::BracketFailure || code_ == ErrorCode::TruncationFailure;
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what)
{
    if (!cond)
        fail(code, what);
}

} // namespace rct

#endif
