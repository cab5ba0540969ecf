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

#include <cstdio>
#include <string>

namespace rfso::log
{

enum class level
{
    error = 0,
    warn = 1,
    info = 2,
    debug = 3
};

// Threshold read once from the RFSO_LOG environment variable
// (error|warn|info|debug, default warn).
level threshold();

void write(level lv, const std::string &msg);

inline void error(const std::string &m) { write(level::error, m); }
inline void warn(const std::string &m) { write(level::warn, m); }
inline void info(const std::string &m) { write(level::info, m); }
inline void debug(const std::string &m) { write(level::debug, m); }

} // namespace rfso::log
