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

#include "rfso/log.hpp"

#include <cstdlib>
#include <cstring>
#include <mutex>

namespace rfso::log
{

static level parse_env()
{
    const char *env = std::getenv("RFSO_LOG");
    if (!env)
        return level::warn;
    if (!std::strcmp(env, "error"))
        return level::error;
    if (!std::strcmp(env, "warn"))
        return level::warn;
    if (!std::strcmp(env, "info"))
        return level::info;
    if (!std::strcmp(env, "debug"))
        return level::debug;
    return level::warn;
}

level threshold()
{
    static level lv = parse_env();
    return lv;
}

void write(level lv, const std::string &msg)
{
    if (lv > threshold())
        return;
    static std::mutex mtx;
    static const char *names[] = {"error", "warn", "info", "debug"};
    std::lock_guard<std::mutex> lock(mtx);
    std::fprintf(stderr, "[rfso:%s] %s\n", names[static_cast<int>(lv)], msg.c_str());
}

} // namespace rfso::log
