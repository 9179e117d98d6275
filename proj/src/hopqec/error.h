// Copyright 2026 The hopqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOPQEC_ERROR_H
#define HOPQEC_ERROR_H

#include <stdexcept>
#include <string>

namespace hopqec {

/// Failure categories. The numeric values are mirrored by the C API status codes.
enum class ErrorCode : int {
    InvalidArgument = 1,
    Io = 2,
    Numerical = 3,
    DegenerateTransmon = 4,
    Calibration = 5,
    Labeling = 6,
    ChannelExtraction = 7,
    Matching = 8,
    Compile = 9,
    Circuit = 10,
    Decode = 11,
    ThresholdUndetermined = 12,
    NoFiniteDistance = 13,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {
    }
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) {
    throw Error(code, what);
}

}  // namespace hopqec

#endif
