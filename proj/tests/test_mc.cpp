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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "rfso/analytics.hpp"
#include "rfso/channel.hpp"
#include "rfso/errors.hpp"
#include "rfso/mc.hpp"

#include "oracle/frozen_oracle.hpp"

using namespace rfso;

namespace
{

analytics::FsoLink weak_link(double mu2)
{
    channel::FsoConfig cfg =
        channel::FsoConfig::from_dB(channel::linear_to_db(mu2));
    cfg.mu2 = mu2;
    cfg.Cn2 = 6e-15;
    return {channel::derive_fso(cfg), mu2};
}

} // namespace

TEST_CASE("counter cipher matches the published vectors")
{
    // Known-answer vectors for the 10-round 4x32 counter cipher.
    const auto zero = mc::philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du,
                                               0xbc57ac4cu, 0x9b00dbd8u});

    const auto ones = mc::philox4x32(
        {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
        {0xffffffffu, 0xffffffffu});
    CHECK(ones == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu,
                                               0xa20bc7c6u, 0x6d5451fdu});

    const auto pi = mc::philox4x32(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
        {0xa4093822u, 0x299f31d0u});
    CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu,
                                             0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are addressable and replayable")
{
    mc::RngStream a(42, 3);
    a.begin_sample(17);
    const double first = a.u01();
    const double second = a.u01();

    // Re-addressing the same sample replays the identical draws.
    a.begin_sample(17);
    CHECK(a.u01() == first);
    CHECK(a.u01() == second);

    // A fresh object at the same address agrees bit for bit.
    mc::RngStream b(42, 3);
    b.begin_sample(17);
    CHECK(b.u01() == first);

    // Different stream or seed moves the sequence.
    mc::RngStream c(42, 4);
    c.begin_sample(17);
    CHECK(c.u01() != first);
    mc::RngStream d(43, 3);
    d.begin_sample(17);
    CHECK(d.u01() != first);
}

TEST_CASE("draw families have the right first moments")
{
    mc::RngStream rng(7, 0);
    const int n = 200000;
    double su = 0.0, sn = 0.0, sn2 = 0.0, sg = 0.0, sr = 0.0, se = 0.0;
    for (int i = 0; i < n; ++i)
    {
        rng.begin_sample(static_cast<std::uint64_t>(i));
        const double u = rng.u01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
        sg += rng.gamma(2.5);
        sr += rng.rayleigh(2.0);
        se += rng.exponential();
    }
    const double inv = 1.0 / n;
    // 4.5-sigma bands on each empirical mean.
    CHECK(std::abs(su * inv - 0.5) < 4.5 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sn * inv) < 4.5 / std::sqrt(double(n)));
    CHECK(std::abs(sn2 * inv - 1.0) < 4.5 * std::sqrt(2.0 / n));
    CHECK(std::abs(sg * inv - 2.5) < 4.5 * std::sqrt(2.5 / n));
    CHECK(std::abs(sr * inv - 2.0 * std::sqrt(M_PI / 2.0)) <
          4.5 * std::sqrt((4.0 - M_PI) * 2.0 / n));
    CHECK(std::abs(se * inv - 1.0) < 4.5 / std::sqrt(double(n)));
}

TEST_CASE("selected-relay draws follow the mixture mean")
{
    const auto rf = channel::RfConfig::from_dB(2, 2, 0.72, 20.0);
    mc::RngStream rng(11, 0);
    const int n = 400000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i)
    {
        rng.begin_sample(static_cast<std::uint64_t>(i));
        const double x = mc::sample_rf_selected(rf, rng);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    const double want = oracle::re_weak_2_2_072_mu20 - 1.0;
    CHECK(std::abs(mean - want) < 4.0 * std::sqrt(var / n));
}

TEST_CASE("intensity draws land on the derived first moment")
{
    const auto link = weak_link(100.0);
    mc::RngStream rng(13, 1);
    const int n = 400000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i)
    {
        rng.begin_sample(static_cast<std::uint64_t>(i));
        const double x = mc::sample_fso_intensity(link.params, rng);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    // E[I] = kappa A0 for the turbulence-pointing product.
    const double want = link.params.kappa * link.params.A0;
    CHECK(std::abs(mean - want) < 4.0 * std::sqrt(var / n));
}

TEST_CASE("full-chain estimates agree with the frozen closed forms")
{
    const auto &a = oracle::metric_anchors[0];
    const auto rf = channel::RfConfig::from_dB(a.M, a.l, a.rho,
                                               channel::linear_to_db(a.mu1));
    const auto link = weak_link(a.mu2);

    mc::SimPlan plan;
    plan.samples = 400000;
    plan.seed = 20240817;
    plan.streams = 8;
    const auto est = mc::estimate(plan, rf, link,
                                  analytics::ModulationScheme::bpsk(),
                                  a.gamma_th);

    const auto &cdf = est.at(analytics::Metric::cdf);
    CHECK(std::abs(cdf.mean - a.cdf_value) < 4.0 * cdf.std_err);
    const auto &ber = est.at(analytics::Metric::ber);
    CHECK(std::abs(ber.mean - a.ber_bpsk) < 4.0 * ber.std_err);
    const auto &cap = est.at(analytics::Metric::capacity);
    CHECK(std::abs(cap.mean - a.cap_sim) < 4.0 * cap.std_err);
    CHECK(cdf.n == plan.samples);
    CHECK(cdf.seed == plan.seed);
    CHECK_FALSE(cdf.low_sample_warning);
}

TEST_CASE("estimates are byte-identical for any thread count")
{
    const auto rf = channel::RfConfig::from_dB(4, 2, 0.5, 20.0);
    const auto link = weak_link(100.0);

    mc::SimPlan plan;
    plan.samples = 200000;
    plan.seed = 99;
    plan.streams = 8;

    auto run = [&](unsigned threads) {
        return mc::estimate(plan, rf, link,
                            analytics::ModulationScheme::bpsk(), 1.0, threads);
    };
    const auto one = run(1);
    const auto four = run(4);
    const auto eight = run(8);

    for (auto metric : {analytics::Metric::cdf, analytics::Metric::ber,
                        analytics::Metric::capacity})
    {
        const auto &x = one.at(metric);
        const auto &y = four.at(metric);
        const auto &z = eight.at(metric);
        CHECK(std::memcmp(&x.mean, &y.mean, sizeof x.mean) == 0);
        CHECK(std::memcmp(&x.mean, &z.mean, sizeof x.mean) == 0);
        CHECK(std::memcmp(&x.std_err, &y.std_err, sizeof x.std_err) == 0);
        CHECK(std::memcmp(&x.std_err, &z.std_err, sizeof x.std_err) == 0);
    }
}

TEST_CASE("same plan twice reproduces the estimate exactly")
{
    const auto rf = channel::RfConfig::from_dB(2, 2, 0.72, 20.0);
    const auto link = weak_link(100.0);
    mc::SimPlan plan;
    plan.samples = 50000;
    plan.seed = 5;
    const auto mod = analytics::ModulationScheme::bpsk();
    const auto first = mc::estimate(plan, rf, link, mod, 1.0);
    const auto second = mc::estimate(plan, rf, link, mod, 1.0);
    CHECK(first.at(analytics::Metric::cdf).mean ==
          second.at(analytics::Metric::cdf).mean);
    CHECK(first.at(analytics::Metric::capacity).mean ==
          second.at(analytics::Metric::capacity).mean);
}

TEST_CASE("small sample counts are flagged, not rejected")
{
    const auto rf = channel::RfConfig::from_dB(2, 2, 0.72, 20.0);
    const auto link = weak_link(100.0);
    mc::SimPlan plan;
    plan.samples = 5000;
    plan.seed = 1;
    const auto est = mc::estimate(plan, rf, link,
                                  analytics::ModulationScheme::bpsk(), 1.0);
    CHECK(est.at(analytics::Metric::cdf).low_sample_warning);
    CHECK(est.at(analytics::Metric::cdf).n == 5000);
}

TEST_CASE("plan validation")
{
    mc::SimPlan plan;
    plan.samples = 0;
    CHECK_THROWS_AS(plan.validate(), Error);
    plan.samples = 1000;
    plan.streams = 0;
    CHECK_THROWS_AS(plan.validate(), Error);
    plan.streams = 8;
    plan.estimators.clear();
    CHECK_THROWS_AS(plan.validate(), Error);
}
