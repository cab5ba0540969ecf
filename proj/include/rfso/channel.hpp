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

#include <cmath>
#include <limits>
#include <vector>

namespace rfso::channel
{

inline double db_to_linear(double dB) { return std::pow(10.0, dB / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// RF hop: M relays, the l-th worst is selected from outdated estimates
// correlated with the true channel by power-correlation rho.  mu1 is the
// average per-hop SNR in linear scale; mu1_dB keeps the configured value
// (conversion happens once, at construction).
struct RfConfig
{
    int M = 2;
    int l = 2;
    double rho = 0.72;
    double mu1_dB = 20.0;
    double mu1 = 100.0;

    static RfConfig from_dB(int M, int l, double rho, double mu1_dB);
    void validate() const;
};

// FSO hop geometry and medium.  F0 defaults to infinity (collimated beam).
// path_loss is an optional deterministic intensity attenuation factor.
struct FsoConfig
{
    double d = 2000.0;        // link length, m
    double Cn2 = 6e-15;       // refractive-index structure parameter, m^{-2/3}
    double lambda = 1.55e-6;  // wavelength, m
    double a = 0.05;          // detector aperture radius, m
    double a0 = 0.05;         // beam radius at the waist, m
    double F0 = std::numeric_limits<double>::infinity(); // radius of curvature, m
    double sigma_s = 0.05;    // pointing-jitter standard deviation, m
    double mu2_dB = 20.0;
    double mu2 = 100.0;       // electrical SNR, linear
    double path_loss = 1.0;

    static FsoConfig from_dB(double mu2_dB);
    void validate() const;
};

// Quantities derived from FsoConfig: Rytov variance, Gamma-Gamma shapes,
// Gaussian-beam geometry at the receiver, and the pointing-error figures.
struct DerivedFsoParams
{
    double rytov2 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double iota = 0.0;      // wave number 2 pi / lambda
    double Theta_o = 0.0;
    double Lambda_o = 0.0;
    double Lambda_1 = 0.0;
    double a_d = 0.0;       // beam radius at distance d
    double a_deq = 0.0;     // equivalent beam radius
    double v = 0.0;
    double A0 = 0.0;        // peak pointing gain, (0, 1]
    double psi = 0.0;       // pointing-error parameter
    double kappa = 0.0;     // psi^2 / (psi^2 + 1)
};

// Optional physical entry path for the average SNRs.  When present its
// implied mu1 = Ps / sigma2_SR and mu2 = eta^2 Pt^2 kappa^2 A0^2 / sigma2_RD
// must agree with the configured dB values within 1e-9 relative.
struct LinkBudget
{
    double Ps = 0.0;        // source power, W
    double sigma2_SR = 0.0; // first-hop noise variance, W
    double sigma2_RD = 0.0; // second-hop noise variance, W
    double Pt = 0.0;        // transmitted optical power, W
    double eta = 0.0;       // optical-to-electrical coefficient, A/W
    double m_index = 1.0;   // modulation index (fixed 1)
    double G2 = 0.0;        // relay power gain, 1 / (sigma2_SR * Re)
    double Re_const = 0.0;
};

// Exponential-mixture representation of the selected-relay SNR law:
// pdf(x) = sum_i s_i c_i e^{-c_i x},  cdf(x) = 1 - sum_i s_i e^{-c_i x}.
struct RfMixture
{
    struct Term
    {
        double s; // signed weight (sums to 1)
        double c; // rate (M-l+i+1) / (d_i mu1)
        double d; // (M-l+i)(1-rho) + 1
    };
    std::vector<Term> terms;
};

RfMixture rf_mixture(const RfConfig &cfg);

DerivedFsoParams derive_fso(const FsoConfig &cfg);

double rf_pdf(double x, const RfConfig &cfg);
double rf_cdf(double x, const RfConfig &cfg);

// Average-SNR gain constant 1 + E[selected-relay SNR].
double re_constant(const RfConfig &cfg);

// SNR density of the optical hop (Gamma-Gamma plus pointing errors).
double fso_snr_pdf(double g2, const DerivedFsoParams &params, double mu2);

// Normalized-intensity density of the optical hop.
double fso_intensity_pdf(double intensity, const DerivedFsoParams &params);

// Equivalent end-to-end SNR of the fixed-gain relay chain.
double gamma_eq(double g1, double g2, double Re_const);

// Validates a LinkBudget against configured (mu1, mu2) and the derived
// pointing figures; throws config_error on mismatch.
void check_link_budget(const LinkBudget &budget, const RfConfig &rf,
                       const FsoConfig &fso, const DerivedFsoParams &params);

} // namespace rfso::channel
