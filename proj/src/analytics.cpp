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

#include "rfso/analytics.hpp"
#include "rfso/errors.hpp"
#include "rfso/quadrature.hpp"
#include "rfso/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rfso::analytics
{

Chi1Row Chi1Row::from(double alpha, double beta, double psi2)
{
    Chi1Row r;
    r.v = {psi2 / 2.0, alpha / 2.0, (alpha + 1.0) / 2.0,
           beta / 2.0, (beta + 1.0) / 2.0, 0.0};
    return r;
}

const char *metric_name(Metric m)
{
    switch (m)
    {
    case Metric::cdf:
        return "cdf";
    case Metric::ber:
        return "ber";
    case Metric::capacity:
        return "capacity";
    }
    return "unknown";
}

namespace
{

constexpr double kLn2 = 0.69314718055994530942;
const double kC0Simulated = M_E / (2.0 * M_PI);

// Shared pieces of every closed form for one (rf, fso) pair.
struct KernelSet
{
    channel::RfMixture mix;
    double Re = 0.0;
    double D = 0.0;      // mixture-independent prefactor
    double apex = 0.0;
    Chi1Row chi;
    double w_over_c = 0.0; // w_i / c_i = alpha^2 beta^2 kappa^2 Re / (16 mu2)

    KernelSet(const channel::RfConfig &rf, const FsoLink &fso)
    {
        const auto &pr = fso.params;
        if (!(pr.alpha > 0.0) || !(pr.beta > 0.0) || !(pr.psi > 0.0))
            raise(errc::invalid_parameter,
                  "analytics: optical parameters must be derived before use");
        if (!(fso.mu2 > 0.0))
            raise(errc::invalid_parameter, "analytics: mu2 must be positive");
        mix = channel::rf_mixture(rf);
        Re = channel::re_constant(rf);
        double psi2 = pr.psi * pr.psi;
        D = std::exp((pr.alpha + pr.beta - 3.0) * kLn2 + std::log(psi2) -
                     std::log(M_PI) - std::lgamma(pr.alpha) - std::lgamma(pr.beta));
        apex = (psi2 + 2.0) / 2.0;
        chi = Chi1Row::from(pr.alpha, pr.beta, psi2);
        w_over_c = pr.alpha * pr.alpha * pr.beta * pr.beta * pr.kappa * pr.kappa *
                   Re / (16.0 * fso.mu2);
    }

    double w_of(double c) const { return w_over_c * c; }

    specfun::MeijerGSpec outage_kernel(double z) const
    {
        specfun::MeijerGSpec s;
        s.m = 6;
        s.n = 0;
        s.p = 1;
        s.q = 6;
        s.a = {apex};
        s.b = {chi.v.begin(), chi.v.end()};
        s.z = z;
        return s;
    }

    specfun::MeijerGSpec ber_kernel(double p, double z) const
    {
        specfun::MeijerGSpec s;
        s.m = 6;
        s.n = 1;
        s.p = 2;
        s.q = 6;
        s.a = {1.0 - p, apex};
        s.b = {chi.v.begin(), chi.v.end()};
        s.z = z;
        return s;
    }
};

// Sums signed contributions largest-magnitude first with a Neumaier
// correction; the alternating mixture weights can span several orders.
double signed_sum(std::vector<double> &terms)
{
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    double sum = 0.0, comp = 0.0;
    for (double x : terms)
    {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

// Complementary CDF of the equivalent SNR; kept separate from cdf_eq so the
// capacity integrand stays accurate where the CDF saturates at one.
double ccdf_eq_terms(double gamma_th, const KernelSet &ks)
{
    // The G^{6,0} kernel decays like exp(-5 z^{1/5}); terms whose argument
    // passes the cutoff contribute below 1e-40 of the total.
    std::vector<double> terms;
    terms.reserve(ks.mix.terms.size());
    for (const auto &t : ks.mix.terms)
    {
        double z = ks.w_of(t.c) * gamma_th;
        double expf = std::exp(-t.c * gamma_th);
        if (expf == 0.0 || 5.0 * std::pow(z, 0.2) > 120.0)
        {
            terms.push_back(0.0);
            continue;
        }
        terms.push_back(t.s * expf * ks.D * specfun::meijer_g(ks.outage_kernel(z)));
    }
    return signed_sum(terms);
}

} // namespace

double cdf_eq(double gamma_th, const channel::RfConfig &rf, const FsoLink &fso)
{
    if (!(gamma_th >= 0.0) || !std::isfinite(gamma_th))
        raise(errc::invalid_parameter, "cdf_eq: gamma_th must be non-negative");
    if (gamma_th == 0.0)
        return 0.0;
    KernelSet ks(rf, fso);
    return std::clamp(1.0 - ccdf_eq_terms(gamma_th, ks), 0.0, 1.0);
}

double avg_ber(const ModulationScheme &mod, const channel::RfConfig &rf,
               const FsoLink &fso)
{
    if (!(mod.p > 0.0) || !(mod.q > 0.0))
        raise(errc::invalid_parameter, "avg_ber: modulation exponents must be positive");
    KernelSet ks(rf, fso);
    std::vector<double> terms;
    terms.reserve(ks.mix.terms.size());
    for (const auto &t : ks.mix.terms)
    {
        double lam = mod.q + t.c;
        double z = ks.w_of(t.c) / lam;
        if (5.0 * std::pow(z, 0.2) > 120.0)
        {
            terms.push_back(0.0);
            continue;
        }
        double gv = specfun::meijer_g(ks.ber_kernel(mod.p, z));
        terms.push_back(t.s * std::pow(mod.q / lam, mod.p) * ks.D * gv);
    }
    double acc = signed_sum(terms);
    return std::clamp(0.5 - acc / (2.0 * std::exp(std::lgamma(mod.p))), 0.0, 0.5);
}

double ergodic_capacity(const channel::RfConfig &rf, const FsoLink &fso,
                        double bandwidth, bool shannon)
{
    if (!(bandwidth > 0.0))
        raise(errc::invalid_parameter, "ergodic_capacity: bandwidth must be positive");
    KernelSet ks(rf, fso);
    double c0 = shannon ? 1.0 : kC0Simulated;
    std::vector<double> terms;
    terms.reserve(ks.mix.terms.size());
    for (const auto &t : ks.mix.terms)
    {
        specfun::Egbmgf2Spec e;
        e.inner2_a = {ks.apex};
        e.inner2_b = {ks.chi.v.begin(), ks.chi.v.end()};
        e.A = c0 / t.c;
        e.B = ks.w_of(t.c) / t.c;
        terms.push_back(t.s * e.A * specfun::egbmgf(e));
    }
    double acc = signed_sum(terms);
    return std::max(bandwidth * ks.D * acc / kLn2, 0.0);
}

double cdf_eq_by_quadrature(double gamma_th, const channel::RfConfig &rf,
                            const FsoLink &fso, double rel_tol)
{
    if (!(gamma_th > 0.0))
        return 0.0;
    channel::RfMixture mix = channel::rf_mixture(rf);
    double Re = channel::re_constant(rf);
    auto cdf_rf = [&](double x)
    {
        double acc = 0.0;
        for (const auto &t : mix.terms)
            acc += t.s * std::exp(-t.c * x);
        return 1.0 - acc;
    };
    // Integrate F1(gamma_th (1 + Re / x)) f2(x) dx on a log axis; the
    // substitution soaks up both the x^{psi^2/2 - 1} edge behaviour at the
    // origin and the heavy upper tail.
    double mu2 = fso.mu2;
    auto integrand = [&](double u)
    {
        double x = std::exp(u);
        return cdf_rf(gamma_th + gamma_th * Re / x) *
               channel::fso_snr_pdf(x, fso.params, mu2) * x;
    };
    double u_lo = std::log(mu2) - 75.0;
    double u_hi = std::log(mu2) + 26.0;
    auto r = quadrature::integrate(integrand, u_lo, u_hi, rel_tol, 0.0, 4000);
    if (!r.converged)
        raise(errc::accuracy_not_reached, "cdf_eq_by_quadrature failed to converge");
    return r.value;
}

double avg_ber_by_quadrature(const ModulationScheme &mod,
                             const channel::RfConfig &rf, const FsoLink &fso,
                             double rel_tol)
{
    // gamma = w^2 regularises the gamma^{p-1} edge for p = 1/2.
    auto integrand = [&](double w)
    {
        double g = w * w;
        return 2.0 * std::exp(-mod.q * g) * std::pow(w, 2.0 * mod.p - 1.0) *
               cdf_eq(g, rf, fso);
    };
    double w_hi = std::sqrt(45.0 / mod.q);
    auto r = quadrature::integrate(integrand, 0.0, w_hi, rel_tol, 0.0, 4000);
    if (!r.converged)
        raise(errc::accuracy_not_reached, "avg_ber_by_quadrature failed to converge");
    return std::pow(mod.q, mod.p) / (2.0 * std::exp(std::lgamma(mod.p))) * r.value;
}

double ergodic_capacity_by_quadrature(const channel::RfConfig &rf,
                                      const FsoLink &fso, double bandwidth,
                                      bool shannon, double rel_tol)
{
    KernelSet ks(rf, fso);
    double c0 = shannon ? 1.0 : kC0Simulated;
    auto integrand = [&](double g)
    {
        double ccdf = std::clamp(ccdf_eq_terms(g, ks), 0.0, 1.0);
        return c0 * ccdf / (1.0 + c0 * g);
    };
    double c_min = ks.mix.terms.front().c;
    for (const auto &t : ks.mix.terms)
        c_min = std::min(c_min, t.c);
    double g_hi = 80.0 / c_min;
    auto r = quadrature::integrate_to_infinity(integrand, 0.0, std::min(4.0, g_hi),
                                               rel_tol, 0.0);
    if (!r.converged)
        raise(errc::accuracy_not_reached,
              "ergodic_capacity_by_quadrature failed to converge");
    return bandwidth * r.value / kLn2;
}

} // namespace rfso::analytics
