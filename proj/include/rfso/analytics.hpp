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
#include <string>

#include "rfso/channel.hpp"

namespace rfso::analytics
{

// Lower parameter row of the optical G-kernels, in fixed order:
// psi^2/2, alpha/2, (alpha+1)/2, beta/2, (beta+1)/2, 0.
struct Chi1Row
{
    std::array<double, 6> v{};
    static Chi1Row from(double alpha, double beta, double psi2);
};

enum class Modulation
{
    bpsk,
    dbpsk
};

struct ModulationScheme
{
    Modulation name = Modulation::bpsk;
    double p = 0.5;
    double q = 1.0;

    static ModulationScheme bpsk() { return {Modulation::bpsk, 0.5, 1.0}; }
    static ModulationScheme dbpsk() { return {Modulation::dbpsk, 1.0, 1.0}; }
};

// Optical hop as consumed by the closed forms: derived parameters plus the
// linear electrical SNR.
struct FsoLink
{
    channel::DerivedFsoParams params;
    double mu2 = 100.0;
};

enum class Metric
{
    cdf,
    ber,
    capacity
};

const char *metric_name(Metric m);

enum class Method
{
    analytic,
    mc
};

struct PerfPoint
{
    double mu1_dB = 0.0, mu2_dB = 0.0;
    double rho = 0.0;
    int M = 0, l = 0;
    Metric metric = Metric::ber;
    double value = 0.0;
    Method method = Method::analytic;
    double std_err = 0.0;
};

// Closed-form CDF of the equivalent SNR at threshold gamma_th (linear).
double cdf_eq(double gamma_th, const channel::RfConfig &rf, const FsoLink &fso);

// Closed-form average bit error rate.
double avg_ber(const ModulationScheme &mod, const channel::RfConfig &rf,
               const FsoLink &fso);

// Closed-form ergodic capacity in bit/s (bit/s/Hz when bandwidth = 1).
// The default SNR prefactor inside log2(1 + c0 g) is c0 = e/(2 pi); the
// shannon flag switches to the classical c0 = 1.
double ergodic_capacity(const channel::RfConfig &rf, const FsoLink &fso,
                        double bandwidth = 1.0, bool shannon = false);

// Defining-integral counterparts, evaluated by adaptive quadrature over the
// distribution-level functions.  These are the independent references the
// closed forms are validated against.
double cdf_eq_by_quadrature(double gamma_th, const channel::RfConfig &rf,
                            const FsoLink &fso, double rel_tol = 1e-7);
double avg_ber_by_quadrature(const ModulationScheme &mod,
                             const channel::RfConfig &rf, const FsoLink &fso,
                             double rel_tol = 1e-7);
double ergodic_capacity_by_quadrature(const channel::RfConfig &rf,
                                      const FsoLink &fso, double bandwidth = 1.0,
                                      bool shannon = false, double rel_tol = 1e-7);

} // namespace rfso::analytics
