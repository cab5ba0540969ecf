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
#include <string>

#include "rfso/channel.hpp"
#include "rfso/config_io.hpp"
#include "rfso/errors.hpp"

using namespace rfso;

namespace
{

std::string expect_config_error(const std::string &text)
{
    try
    {
        config_from_json_text(text);
    }
    catch (const Error &e)
    {
        CHECK(e.code() == errc::config_error);
        return e.what();
    }
    FAIL("expected a config error");
    return {};
}

const char *kMinimal = R"({
  "rf": {"M": 2, "l": 2, "rho": 0.72, "mu1_dB": 20.0},
  "fso": {"d_m": 2000.0, "Cn2": 6e-15, "lambda_m": 1.55e-6,
          "a_m": 0.05, "a0_m": 0.05, "sigma_s_m": 0.05, "mu2_dB": 20.0}
})";

} // namespace

TEST_CASE("defaults round-trip through text")
{
    const ChannelConfig cfg = default_config();
    const std::string text = config_to_json_text(cfg);
    const ChannelConfig back = config_from_json_text(text);
    CHECK(config_to_json_text(back) == text);
    CHECK(back.rf.M == 2);
    CHECK(back.rf.l == 2);
    CHECK(back.rf.rho == 0.72);
    CHECK(std::isinf(back.fso.F0));
    CHECK(back.gamma_th == 1.0);
    CHECK(back.bandwidth == 1.0);
    CHECK_FALSE(back.shannon);
}

TEST_CASE("minimal config fills documented defaults")
{
    const ChannelConfig cfg = config_from_json_text(kMinimal);
    CHECK(cfg.rf.mu1 == Catch::Approx(100.0).epsilon(1e-15));
    CHECK(cfg.fso.mu2 == Catch::Approx(100.0).epsilon(1e-15));
    CHECK(std::isinf(cfg.fso.F0));
    CHECK(cfg.fso.path_loss == 1.0);
    CHECK(cfg.mod.name == analytics::Modulation::bpsk);
    CHECK(cfg.gamma_th_dB == 0.0);
    CHECK(cfg.gamma_th == 1.0);
}

TEST_CASE("dB fields convert exactly once at parse time")
{
    std::string text(kMinimal);
    text.insert(text.rfind('}'), R"(, "gamma_th_dB": 3.0)");
    const ChannelConfig cfg = config_from_json_text(text);
    CHECK(cfg.gamma_th == Catch::Approx(std::pow(10.0, 0.3)).epsilon(1e-15));
    CHECK(cfg.rf.mu1_dB == 20.0);
    CHECK(cfg.rf.mu1 == Catch::Approx(channel::db_to_linear(20.0)).epsilon(1e-15));
}

TEST_CASE("unknown keys are named in the error")
{
    const std::string msg = expect_config_error(R"({
      "rf": {"M": 2, "l": 2, "rho": 0.72, "mu1_dB": 20.0, "bogus": 1},
      "fso": {"d_m": 2000.0, "Cn2": 6e-15, "lambda_m": 1.55e-6,
              "a_m": 0.05, "a0_m": 0.05, "sigma_s_m": 0.05, "mu2_dB": 20.0}
    })");
    CHECK(msg.find("rf.bogus") != std::string::npos);
}

TEST_CASE("missing required fields are named in the error")
{
    const std::string msg = expect_config_error(R"({
      "rf": {"M": 2, "l": 2, "rho": 0.72, "mu1_dB": 20.0},
      "fso": {"Cn2": 6e-15, "lambda_m": 1.55e-6,
              "a_m": 0.05, "a0_m": 0.05, "sigma_s_m": 0.05, "mu2_dB": 20.0}
    })");
    CHECK(msg.find("fso.d_m") != std::string::npos);
}

TEST_CASE("malformed documents are config errors")
{
    expect_config_error("{ not json");
    expect_config_error("[1, 2, 3]");
    const std::string msg = expect_config_error(R"({
      "rf": {"M": 2.5, "l": 2, "rho": 0.72, "mu1_dB": 20.0},
      "fso": {"d_m": 2000.0, "Cn2": 6e-15, "lambda_m": 1.55e-6,
              "a_m": 0.05, "a0_m": 0.05, "sigma_s_m": 0.05, "mu2_dB": 20.0}
    })");
    CHECK(msg.find("rf.M") != std::string::npos);
}

TEST_CASE("modulation parsing")
{
    std::string text(kMinimal);
    text.insert(text.rfind('}'), R"(, "modulation": "dbpsk")");
    CHECK(config_from_json_text(text).mod.name == analytics::Modulation::dbpsk);

    std::string bad(kMinimal);
    bad.insert(bad.rfind('}'), R"(, "modulation": "qpsk")");
    const std::string msg = expect_config_error(bad);
    CHECK(msg.find("qpsk") != std::string::npos);
}

TEST_CASE("focal length accepts numbers and inf")
{
    std::string finite(kMinimal);
    finite.insert(finite.find(R"(, "mu2_dB")"), R"(, "F0_m": 4000.0)");
    const ChannelConfig cfg = config_from_json_text(finite);
    CHECK(cfg.fso.F0 == 4000.0);
    const std::string text = config_to_json_text(cfg);
    CHECK(text.find("4000") != std::string::npos);

    std::string inf(kMinimal);
    inf.insert(inf.find(R"(, "mu2_dB")"), R"(, "F0_m": "INF")");
    CHECK(std::isinf(config_from_json_text(inf).fso.F0));
}

TEST_CASE("physical limits are enforced at parse")
{
    std::string bad(kMinimal);
    const auto pos = bad.find("\"rho\": 0.72");
    bad.replace(pos, 11, "\"rho\": 1.50");
    expect_config_error(bad);

    std::string neg(kMinimal);
    const auto dpos = neg.find("\"d_m\": 2000.0");
    neg.replace(dpos, 13, "\"d_m\": -5.0");
    expect_config_error(neg);
}

TEST_CASE("capacity block controls bandwidth and prefactor")
{
    std::string text(kMinimal);
    text.insert(text.rfind('}'),
                R"(, "capacity": {"bandwidth_Hz": 2e6, "shannon": true})");
    const ChannelConfig cfg = config_from_json_text(text);
    CHECK(cfg.bandwidth == 2e6);
    CHECK(cfg.shannon);

    std::string bad(kMinimal);
    bad.insert(bad.rfind('}'), R"(, "capacity": {"bandwidth_Hz": 0.0})");
    expect_config_error(bad);
}

TEST_CASE("link budget must match the configured averages")
{
    const ChannelConfig base = config_from_json_text(kMinimal);
    const auto params = base.derive_and_check();
    const double re = channel::re_constant(base.rf);

    const double sigma = 1e-9;
    const double ps = base.rf.mu1 * sigma;
    const double eta = 0.8;
    const double pt =
        std::sqrt(base.fso.mu2 * sigma) / (eta * params.kappa * params.A0);

    auto with_budget = [&](double pt_scale, double g2_scale) {
        std::string text(kMinimal);
        char block[512];
        std::snprintf(block, sizeof block,
                      R"(, "link_budget": {"Ps_W": %.17g, "sigma2_SR_W": %.17g,
                 "sigma2_RD_W": %.17g, "Pt_W": %.17g, "eta": %.17g,
                 "G2": %.17g})",
                      ps, sigma, sigma, pt * pt_scale, eta,
                      g2_scale / (sigma * re));
        text.insert(text.rfind('}'), block);
        return text;
    };

    const ChannelConfig good = config_from_json_text(with_budget(1.0, 1.0));
    CHECK_NOTHROW(good.derive_and_check());

    const ChannelConfig off = config_from_json_text(with_budget(1.001, 1.0));
    CHECK_THROWS_AS(off.derive_and_check(), Error);

    const ChannelConfig gain = config_from_json_text(with_budget(1.0, 3.0));
    CHECK_THROWS_AS(gain.derive_and_check(), Error);
}

TEST_CASE("derived link matches the direct chain")
{
    const ChannelConfig cfg = config_from_json_text(kMinimal);
    const auto link = cfg.fso_link();
    const auto direct = channel::derive_fso(cfg.fso);
    CHECK(link.mu2 == cfg.fso.mu2);
    CHECK(link.params.psi == direct.psi);
    CHECK(link.params.alpha == direct.alpha);
}
