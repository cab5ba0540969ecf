// SPDX-License-Identifier: Apache-2.0
//
// rfso - mixed RF/FSO relay-link performance library
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

#pragma once

#include <stdexcept>
#include <string>

namespace rfso
{

// Failure categories surfaced by the library.  The CLI maps config errors
// to exit code 2 and every numerical category to exit code 3.
enum class errc
{
    invalid_parameter,
    pole_proximity,
    non_convergent,
    contour_blocked,
    accuracy_not_reached,
    degenerate_jitter,
    config_error,
};

class Error : public std::runtime_error
{
  public:
    Error(errc code, const std::string &what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

inline const char *errc_name(errc c)
{
    switch (c)
    {
    case errc::invalid_parameter:
        return "invalid_parameter";
    case errc::pole_proximity:
        return "pole_proximity";
    case errc::non_convergent:
        return "non_convergent";
    case errc::contour_blocked:
        return "contour_blocked";
    case errc::accuracy_not_reached:
        return "accuracy_not_reached";
    case errc::degenerate_jitter:
        return "degenerate_jitter";
    case errc::config_error:
        return "config_error";
    }
    return "unknown";
}

[[noreturn]] inline void raise(errc code, const std::string &what)
{
    throw Error(code, std::string(errc_name(code)) + ": " + what);
}

} // namespace rfso
