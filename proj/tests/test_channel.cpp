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

#include "rfso/channel.hpp"
#include "rfso/errors.hpp"
#include "rfso/quadrature.hpp"

#include "oracle/frozen_oracle.hpp"

using namespace rfso;

namespace
{

channel::FsoConfig fso_at(double cn2, double dist)
{
    channel::FsoConfig cfg = channel::FsoConfig::from_dB(20.0);
    cfg.Cn2 = cn2;
    cfg.d = dist;
    return cfg;
}

void check_chain(const oracle::FsoChain &want)
{
    const auto got = channel::derive_fso(fso_at(want.cn2, want.dist));
    const double tol = 5e-14;
    CAPTURE(want.cn2, want.dist);
    CHECK(got.rytov2 == Catch::Approx(want.rytov2).epsilon(tol));
    CHECK(got.alpha == Catch::Approx(want.alpha).epsilon(tol));
    CHECK(got.beta == Catch::Approx(want.beta).epsilon(tol));
    CHECK(got.Lambda_o == Catch::Approx(want.lambda_o).epsilon(tol));
    CHECK(got.a_d == Catch::Approx(want.a_d).epsilon(tol));
    CHECK(got.v == Catch::Approx(want.v).epsilon(tol));
    CHECK(got.A0 == Catch::Approx(want.big_a0).epsilon(tol));
    CHECK(got.a_deq == Catch::Approx(want.a_deq).epsilon(tol));
    CHECK(got.psi == Catch::Approx(want.psi).epsilon(tol));
    CHECK(got.kappa == Catch::Approx(want.kappa).epsilon(tol));
}

} // namespace

TEST_CASE("derived optical parameters, all regimes and a long link")
{
    check_chain(oracle::fso_weak);
    check_chain(oracle::fso_moderate);
    check_chain(oracle::fso_strong);
    check_chain(oracle::fso_weak_far);
}

TEST_CASE("beam spreading grows with turbulence strength")
{
    const double ad_weak = channel::derive_fso(fso_at(6e-15, 2000.0)).a_d;
    const double ad_mod = channel::derive_fso(fso_at(2e-14, 2000.0)).a_d;
    const double ad_strong = channel::derive_fso(fso_at(5e-14, 2000.0)).a_d;
    CHECK(ad_weak < ad_mod);
    CHECK(ad_mod < ad_strong);
}

TEST_CASE("average-gain constants match the frozen values")
{
    CHECK(channel::re_constant(channel::RfConfig::from_dB(2, 2, 0.72, 20.0)) ==
          Catch::Approx(oracle::re_weak_2_2_072_mu20).epsilon(1e-12));
    CHECK(channel::re_constant(channel::RfConfig::from_dB(4, 1, 0.5, 20.0)) ==
          Catch::Approx(oracle::re_moderate_4_1_05_mu20).epsilon(1e-12));
    CHECK(channel::re_constant(channel::RfConfig::from_dB(4, 4, 0.5, 25.0)) ==
          Catch::Approx(oracle::re_strong_4_4_05_mu25).epsilon(1e-12));
}

TEST_CASE("selection mixture is a normalized signed-exponential family")
{
    const std::tuple<int, int, double> cases[] = {
        {2, 2, 0.72}, {4, 1, 0.5}, {4, 4, 0.5}, {5, 3, 0.9}};
    for (auto [M, l, rho] : cases)
    {
        const auto mix =
            channel::rf_mixture(channel::RfConfig::from_dB(M, l, rho, 20.0));
        double weight = 0.0;
        for (const auto &t : mix.terms)
        {
            CHECK(t.c > 0.0);
            weight += t.s;
        }
        CAPTURE(M, l, rho);
        CHECK(weight == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(static_cast<int>(mix.terms.size()) == l);
    }
}

TEST_CASE("selected-relay cdf is the integral of its pdf")
{
    const auto cfg = channel::RfConfig::from_dB(4, 2, 0.6, 18.0);
    CHECK(channel::rf_cdf(0.0, cfg) == Catch::Approx(0.0).margin(1e-15));
    double prev = 0.0;
    for (double x : {5.0, 20.0, 60.0, 200.0, 800.0})
    {
        auto integral = quadrature::integrate(
            [&](double t) { return channel::rf_pdf(t, cfg); }, 0.0, x, 1e-10);
        const double cdf = channel::rf_cdf(x, cfg);
        CAPTURE(x);
        CHECK(integral.value == Catch::Approx(cdf).epsilon(1e-9));
        CHECK(cdf >= prev);
        prev = cdf;
    }
    CHECK(channel::rf_cdf(1e6, cfg) == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero correlation erases the selection order")
{
    for (double x : {1.0, 30.0, 150.0})
    {
        const double worst =
            channel::rf_pdf(x, channel::RfConfig::from_dB(4, 1, 0.0, 20.0));
        const double best =
            channel::rf_pdf(x, channel::RfConfig::from_dB(4, 4, 0.0, 20.0));
        CHECK(worst == Catch::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("optical snr density integrates to one")
{
    const auto params = channel::derive_fso(fso_at(6e-15, 2000.0));
    const double mu2 = 100.0;
    auto mass = quadrature::integrate_to_infinity(
        [&](double g) { return channel::fso_snr_pdf(g, params, mu2); }, 0.0,
        mu2, 1e-8);
    CHECK(mass.value == Catch::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("intensity density integrates to one in every regime")
{
    for (double cn2 : {6e-15, 2e-14, 5e-14})
    {
        const auto params = channel::derive_fso(fso_at(cn2, 2000.0));
        auto mass = quadrature::integrate_to_infinity(
            [&](double i) { return channel::fso_intensity_pdf(i, params); },
            0.0, params.A0, 1e-8);
        CAPTURE(cn2);
        CHECK(mass.value == Catch::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("equivalent snr algebra")
{
    CHECK(channel::gamma_eq(200.0, 50.0, 137.0) ==
          Catch::Approx(200.0 * 50.0 / (50.0 + 137.0)).epsilon(1e-15));
    CHECK(channel::gamma_eq(0.0, 50.0, 137.0) == 0.0);
}

TEST_CASE("configuration validation rejects unusable inputs")
{
    auto expect_code = [](auto &&fn, errc want) {
        try
        {
            fn();
            FAIL("expected a throw");
        }
        catch (const Error &e)
        {
            CHECK(e.code() == want);
        }
    };

    expect_code([] { channel::RfConfig::from_dB(0, 1, 0.5, 20.0).validate(); },
                errc::invalid_parameter);
    expect_code([] { channel::RfConfig::from_dB(2, 3, 0.5, 20.0).validate(); },
                errc::invalid_parameter);
    expect_code([] { channel::RfConfig::from_dB(2, 2, 1.5, 20.0).validate(); },
                errc::invalid_parameter);
    expect_code(
        [] {
            auto cfg = channel::FsoConfig::from_dB(20.0);
            cfg.d = -1.0;
            cfg.validate();
        },
        errc::invalid_parameter);
    expect_code(
        [] {
            auto cfg = channel::FsoConfig::from_dB(20.0);
            cfg.sigma_s = 0.0;
            channel::derive_fso(cfg);
        },
        errc::degenerate_jitter);
}

TEST_CASE("link budget consistency check")
{
    const auto rf = channel::RfConfig::from_dB(2, 2, 0.72, 20.0);
    const auto fso = fso_at(6e-15, 2000.0);
    const auto params = channel::derive_fso(fso);

    channel::LinkBudget budget;
    budget.sigma2_SR = 1e-9;
    budget.Ps = rf.mu1 * budget.sigma2_SR;
    budget.eta = 0.8;
    budget.sigma2_RD = 1e-9;
    budget.Pt = std::sqrt(fso.mu2 * budget.sigma2_RD) /
                (budget.eta * params.kappa * params.A0);
    budget.Re_const = channel::re_constant(rf);
    budget.G2 = 1.0 / (budget.sigma2_SR * budget.Re_const);

    CHECK_NOTHROW(channel::check_link_budget(budget, rf, fso, params));

    auto bad_power = budget;
    bad_power.Pt *= 1.0 + 1e-6;
    CHECK_THROWS_AS(channel::check_link_budget(bad_power, rf, fso, params),
                    Error);

    auto bad_gain = budget;
    bad_gain.G2 *= 2.0;
    CHECK_THROWS_AS(channel::check_link_budget(bad_gain, rf, fso, params),
                    Error);
}

TEST_CASE("dB helpers are inverse maps")
{
    CHECK(channel::db_to_linear(20.0) == Catch::Approx(100.0).epsilon(1e-15));
    CHECK(channel::linear_to_db(channel::db_to_linear(7.3)) ==
          Catch::Approx(7.3).epsilon(1e-13));
}
