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

#include "rfso/channel.hpp"
#include "rfso/errors.hpp"
#include "rfso/log.hpp"
#include "rfso/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rfso::channel
{

namespace
{

// log C(n, k); stays finite up to the M = 64 cap.
double log_binomial(int n, int k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace

RfConfig RfConfig::from_dB(int M, int l, double rho, double mu1_dB)
{
    RfConfig cfg;
    cfg.M = M;
    cfg.l = l;
    cfg.rho = rho;
    cfg.mu1_dB = mu1_dB;
    cfg.mu1 = db_to_linear(mu1_dB);
    cfg.validate();
    return cfg;
}

void RfConfig::validate() const
{
    if (M < 1 || M > 64)
        raise(errc::invalid_parameter,
              "rf: relay count M must lie in [1, 64], got " + std::to_string(M));
    if (l < 1 || l > M)
        raise(errc::invalid_parameter,
              "rf: selection rank l must lie in [1, M], got " + std::to_string(l));
    if (!(rho >= 0.0) || !(rho <= 1.0))
        raise(errc::invalid_parameter, "rf: correlation rho must lie in [0, 1]");
    if (!(mu1 > 0.0) || !std::isfinite(mu1))
        raise(errc::invalid_parameter, "rf: average SNR mu1 must be positive");
}

FsoConfig FsoConfig::from_dB(double mu2_dB_in)
{
    FsoConfig cfg;
    cfg.mu2_dB = mu2_dB_in;
    cfg.mu2 = db_to_linear(mu2_dB_in);
    cfg.validate();
    return cfg;
}

void FsoConfig::validate() const
{
    if (!(d > 0.0) || !std::isfinite(d))
        raise(errc::invalid_parameter, "fso: link length d must be positive");
    if (!(Cn2 > 0.0))
        raise(errc::invalid_parameter, "fso: Cn2 must be positive");
    if (Cn2 < 1e-17 || Cn2 > 1e-13)
        log::warn("fso: Cn2 = " + std::to_string(Cn2) +
                  " lies outside the usual turbulence range [1e-17, 1e-13]");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        raise(errc::invalid_parameter, "fso: wavelength must be positive");
    if (!(a > 0.0) || !(a0 > 0.0))
        raise(errc::invalid_parameter, "fso: aperture and beam radii must be positive");
    if (!(F0 > 0.0))
        raise(errc::invalid_parameter, "fso: radius of curvature must be positive");
    if (sigma_s < 0.0)
        raise(errc::invalid_parameter, "fso: jitter sigma_s must be non-negative");
    if (!(mu2 > 0.0) || !std::isfinite(mu2))
        raise(errc::invalid_parameter, "fso: average SNR mu2 must be positive");
    if (!(path_loss > 0.0) || path_loss > 1.0)
        raise(errc::invalid_parameter, "fso: path_loss must lie in (0, 1]");
}

RfMixture rf_mixture(const RfConfig &cfg)
{
    cfg.validate();
    RfMixture mix;
    mix.terms.reserve(cfg.l);
    double log_lcml = std::log(static_cast<double>(cfg.l)) + log_binomial(cfg.M, cfg.l);
    for (int i = 0; i < cfg.l; i++)
    {
        RfMixture::Term t;
        t.d = (cfg.M - cfg.l + i) * (1.0 - cfg.rho) + 1.0;
        t.c = (cfg.M - cfg.l + i + 1) / (t.d * cfg.mu1);
        double log_mag = log_lcml + log_binomial(cfg.l - 1, i) -
                         std::log(static_cast<double>(cfg.M - cfg.l + i + 1));
        t.s = (i % 2 ? -1.0 : 1.0) * std::exp(log_mag);
        mix.terms.push_back(t);
    }
    return mix;
}

double rf_pdf(double x, const RfConfig &cfg)
{
    if (x < 0.0)
        return 0.0;
    RfMixture mix = rf_mixture(cfg);
    double acc = 0.0;
    for (const auto &t : mix.terms)
        acc += t.s * t.c * std::exp(-t.c * x);
    return acc;
}

double rf_cdf(double x, const RfConfig &cfg)
{
    if (x <= 0.0)
        return 0.0;
    RfMixture mix = rf_mixture(cfg);
    double acc = 0.0;
    for (const auto &t : mix.terms)
        acc += t.s * std::exp(-t.c * x);
    return std::clamp(1.0 - acc, 0.0, 1.0);
}

double re_constant(const RfConfig &cfg)
{
    RfMixture mix = rf_mixture(cfg);
    double mean = 0.0;
    for (const auto &t : mix.terms)
        mean += t.s / t.c;
    return 1.0 + mean;
}

DerivedFsoParams derive_fso(const FsoConfig &cfg)
{
    cfg.validate();
    if (cfg.sigma_s == 0.0)
        raise(errc::degenerate_jitter,
              "fso: sigma_s = 0 collapses the pointing-error law; use a small "
              "jitter such as a_deq / 2000 to approximate a fixed beam");

    DerivedFsoParams p;
    p.iota = 2.0 * M_PI / cfg.lambda;
    p.rytov2 = 1.23 * cfg.Cn2 * std::pow(p.iota, 7.0 / 6.0) * std::pow(cfg.d, 11.0 / 6.0);
    double ry65 = std::pow(p.rytov2, 6.0 / 5.0);
    p.alpha = 1.0 / std::expm1(0.49 * p.rytov2 / std::pow(1.0 + 1.11 * ry65, 7.0 / 6.0));
    p.beta = 1.0 / std::expm1(0.51 * p.rytov2 / std::pow(1.0 + 0.69 * ry65, 5.0 / 6.0));
    p.Theta_o = std::isinf(cfg.F0) ? 1.0 : 1.0 - cfg.d / cfg.F0;
    p.Lambda_o = 2.0 * cfg.d / (p.iota * cfg.a0 * cfg.a0);
    p.Lambda_1 = p.Lambda_o / (p.Theta_o * p.Theta_o + p.Lambda_o * p.Lambda_o);
    p.a_d = cfg.a0 * std::sqrt((p.Theta_o + p.Lambda_o) * (1.0 + 1.63 * ry65 * p.Lambda_1));
    p.v = std::sqrt(M_PI) * cfg.a / (std::sqrt(2.0) * p.a_d);
    double erf_v = specfun::erf(p.v);
    p.A0 = erf_v * erf_v;
    double a_deq2 = p.a_d * p.a_d * std::sqrt(M_PI) * erf_v /
                    (2.0 * p.v * std::exp(-p.v * p.v));
    p.a_deq = std::sqrt(a_deq2);
    p.psi = p.a_deq / (2.0 * cfg.sigma_s);
    p.kappa = p.psi * p.psi / (p.psi * p.psi + 1.0);
    return p;
}

double fso_snr_pdf(double g2, const DerivedFsoParams &params, double mu2)
{
    if (!(g2 > 0.0))
        return 0.0;
    double psi2 = params.psi * params.psi;
    double z = params.alpha * params.beta * params.kappa * std::sqrt(g2 / mu2);
    // This G^{3,0} kernel decays like exp(-2 sqrt(z)) times a polynomial;
    // past 2 sqrt(z) > 100 the value is negligible at any useful tolerance.
    double gval = 0.0;
    if (2.0 * std::sqrt(z) <= 100.0)
    {
        specfun::MeijerGSpec s;
        s.m = 3;
        s.n = 0;
        s.p = 1;
        s.q = 3;
        s.a = {psi2 + 1.0};
        s.b = {psi2, params.alpha, params.beta};
        s.z = z;
        gval = specfun::meijer_g(s);
    }
    double pref = psi2 / (2.0 * std::exp(std::lgamma(params.alpha) +
                                         std::lgamma(params.beta)) *
                          g2);
    return pref * gval;
}

double fso_intensity_pdf(double intensity, const DerivedFsoParams &params)
{
    if (!(intensity > 0.0))
        return 0.0;
    double psi2 = params.psi * params.psi;
    double z = params.alpha * params.beta * intensity / params.A0;
    double gval = 0.0;
    if (2.0 * std::sqrt(z) <= 100.0)
    {
        specfun::MeijerGSpec s;
        s.m = 3;
        s.n = 0;
        s.p = 1;
        s.q = 3;
        s.a = {psi2};
        s.b = {psi2 - 1.0, params.alpha - 1.0, params.beta - 1.0};
        s.z = z;
        gval = specfun::meijer_g(s);
    }
    double pref = psi2 * params.alpha * params.beta /
                  (params.A0 * std::exp(std::lgamma(params.alpha) +
                                        std::lgamma(params.beta)));
    return pref * gval;
}

double gamma_eq(double g1, double g2, double Re_const)
{
    return g1 * g2 / (g2 + Re_const);
}

void check_link_budget(const LinkBudget &budget, const RfConfig &rf,
                       const FsoConfig &fso, const DerivedFsoParams &params)
{
    if (!(budget.Ps > 0.0) || !(budget.sigma2_SR > 0.0) || !(budget.sigma2_RD > 0.0) ||
        !(budget.Pt > 0.0) || !(budget.eta > 0.0))
        raise(errc::config_error,
              "link_budget: powers, noise variances and eta must be positive");
    double mu1_implied = budget.Ps / budget.sigma2_SR;
    double mu2_implied = budget.eta * budget.eta * budget.Pt * budget.Pt *
                         params.kappa * params.kappa * params.A0 * params.A0 /
                         budget.sigma2_RD;
    if (std::abs(mu1_implied - rf.mu1) > 1e-9 * rf.mu1)
        raise(errc::config_error,
              "link_budget: Ps / sigma2_SR = " + std::to_string(mu1_implied) +
                  " disagrees with configured mu1 = " + std::to_string(rf.mu1));
    if (std::abs(mu2_implied - fso.mu2) > 1e-9 * fso.mu2)
        raise(errc::config_error,
              "link_budget: implied mu2 = " + std::to_string(mu2_implied) +
                  " disagrees with configured mu2 = " + std::to_string(fso.mu2));
    if (budget.G2 > 0.0 && budget.Re_const > 0.0)
    {
        double g2_implied = 1.0 / (budget.sigma2_SR * budget.Re_const);
        if (std::abs(g2_implied - budget.G2) > 1e-9 * budget.G2)
            raise(errc::config_error,
                  "link_budget: relay gain G2 disagrees with 1 / (sigma2_SR * Re)");
    }
}

} // namespace rfso::channel
