// Copyright 2026 The phaselimit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace phaselimit {

enum class ErrorCode {
    ok = 0,
    domain = 1,
    bracket = 2,
    convergence = 3,
    precondition = 4,
    cutoff = 5,
    invalid_argument = 6,
    internal = 7,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const char *msg) {
    if (!cond) {
        throw Error(code, msg);
    }
}

} // namespace phaselimit
