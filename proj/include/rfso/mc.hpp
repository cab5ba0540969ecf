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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rfso/analytics.hpp"
#include "rfso/channel.hpp"

namespace rfso::mc
{

// Philox-4x32-10 counter-based generator block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Deterministic random stream addressed by (seed, stream, sample).  Every
// draw is a pure function of that address plus a per-sample draw counter,
// so results are independent of thread scheduling and stream partitioning.
class RngStream
{
  public:
    RngStream(std::uint64_t seed, std::uint32_t stream);

    // Positions the stream at a global sample index and resets the
    // per-sample draw counter.
    void begin_sample(std::uint64_t sample_index);

    double u01();                 // uniform on (0, 1), 53-bit
    double normal();              // standard normal (Box-Muller, cached pair)
    double gamma(double shape);   // Gamma(shape, scale 1)
    double rayleigh(double sigma);
    double exponential();         // mean 1

  private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_ = 0;
    std::uint64_t sample_ = 0;
    std::uint32_t draw_ = 0;
    double spare_normal_ = 0.0;
    bool have_spare_ = false;

    std::uint64_t next_bits();
};

struct SimPlan
{
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    int streams = 8;
    // Worker threads; 0 picks the hardware count.  The estimate is
    // byte-identical for every choice.
    unsigned threads = 0;
    std::vector<analytics::Metric> estimators{analytics::Metric::cdf,
                                              analytics::Metric::ber,
                                              analytics::Metric::capacity};
    void validate() const;
};

struct McEstimate
{
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    // Set when the configured sample count is below the reliable-CI
    // threshold (1e4); reported, never fatal.
    bool low_sample_warning = false;
};

// One draw of the selected-relay RF SNR (linear).
double sample_rf_selected(const channel::RfConfig &rf, RngStream &rng);

// One draw of the normalized received optical intensity.
double sample_fso_intensity(const channel::DerivedFsoParams &params,
                            RngStream &rng);

// Runs the full-chain simulation and returns one estimate per requested
// metric.  gamma_th (linear) applies to the cdf metric, mod to ber,
// shannon/c0 convention to capacity.  threads = 0 picks the hardware
// count; the result is byte-identical for any thread count.
std::map<analytics::Metric, McEstimate>
estimate(const SimPlan &plan, const channel::RfConfig &rf,
         const analytics::FsoLink &fso,
         const std::optional<analytics::ModulationScheme> &mod = {},
         const std::optional<double> &gamma_th = {}, unsigned threads = 0,
         bool shannon = false);

} // namespace rfso::mc
