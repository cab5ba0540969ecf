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

#include <optional>
#include <string>

#include "rfso/analytics.hpp"
#include "rfso/channel.hpp"

namespace rfso
{

// Full system parameterization: both hops, selection policy, modulation,
// reporting threshold, capacity convention, optional physical link budget.
struct ChannelConfig
{
    channel::RfConfig rf{};
    channel::FsoConfig fso{};
    std::optional<channel::LinkBudget> budget{};
    analytics::ModulationScheme mod = analytics::ModulationScheme::bpsk();
    double gamma_th_dB = 0.0;
    double gamma_th = 1.0; // linear, converted once at parse
    double bandwidth = 1.0;
    bool shannon = false;

    // Derived optical parameters plus consistency checks; throws on
    // invalid geometry or budget mismatch.
    channel::DerivedFsoParams derive_and_check() const;
    analytics::FsoLink fso_link() const;
};

// Table-driven defaults: weak-turbulence link over 2 km with the standard
// aperture/beam/jitter geometry, M = 2, l = 2, rho = 0.72, 20 dB SNRs.
ChannelConfig default_config();

// JSON round-trip.  load accepts the schema written by save; unknown keys
// are config errors, missing required fields name the field.
ChannelConfig config_from_json_text(const std::string &text);
ChannelConfig load_config(const std::string &path);
std::string config_to_json_text(const ChannelConfig &cfg, int indent = 2);
void save_config(const ChannelConfig &cfg, const std::string &path);

} // namespace rfso
