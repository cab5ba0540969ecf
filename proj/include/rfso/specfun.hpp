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
#include <complex>
#include <optional>
#include <vector>

namespace rfso::specfun
{

// Principal-branch log-gamma for complex arguments (Stirling series with
// argument shift; conjugation for the lower half-plane).  Relative error
// below 1e-12 for |s| up to 1e3.  Throws pole_proximity when s is within
// 1e-12 of a non-positive integer on the real axis.
std::complex<double> log_gamma_complex(std::complex<double> s);

// Error function; |absolute error| <= 1e-14 over the full real axis.
double erf(double x);

// Vertical Mellin-Barnes contour description for meijer_g / egbmgf.
// All fields are optional refinement hints: an engaged abscissa pins the
// contour's real part (it must lie inside the legal separating strip);
// half_height and panels give the starting truncation and panel count for
// the adaptive refinement.  target_rel_err is the requested relative
// accuracy of the returned value.
struct ContourConfig
{
    std::optional<double> abscissa{};
    double half_height = 0.0; // 0 = choose automatically
    int panels = 0;           // 0 = choose automatically
    double target_rel_err = 1e-8;
};

// Order and parameters of G^{m,n}_{p,q}(z | a; b) with real parameter
// vectors a (size p) and b (size q) and positive real argument z.
struct MeijerGSpec
{
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a{};
    std::vector<double> b{};
    double z = 0.0;
};

struct GEvalInfo
{
    double value = 0.0;
    double abs_err = 0.0;      // last refinement residual
    double rel_err = 0.0;      // residual / max(|value|, tiny)
    double abscissa = 0.0;     // contour actually used
    double half_height = 0.0;  // truncation actually used
    int panels = 0;            // panel count of the accepted estimate
    long evaluations = 0;      // kernel evaluations spent
};

// Evaluates the Mellin-Barnes integral
//   (1/2 pi i) Int  Prod_{j<=m} Gamma(b_j - s) Prod_{j<=n} Gamma(1 - a_j + s)
//              ----------------------------------------------------------- z^s ds
//              Prod_{j>m} Gamma(1 - b_j + s) Prod_{j>n} Gamma(a_j - s)
// along a vertical contour inside the strip separating the two pole sets.
// Throws non_convergent when the convergence index m + n - (p+q)/2 <= 0,
// contour_blocked when no separating strip exists, accuracy_not_reached
// when refinement is exhausted above target_rel_err.
GEvalInfo meijer_g_detailed(const MeijerGSpec &spec,
                            const std::optional<ContourConfig> &contour = {});

double meijer_g(const MeijerGSpec &spec,
                const std::optional<ContourConfig> &contour = {});

// Parameter blocks of the bivariate G-function appearing in the ergodic
// capacity closed form: an outer joint row, a 1/(1+x)-type first inner
// block, and a G^{6,0}_{1,6} second inner block.  The evaluator realizes
// the double Mellin-Barnes integral
//   (1/2 pi i)^2 II Gamma(r + s + t) * Gamma(-s) Gamma(1+s)
//                   * Prod_j Gamma(b2_j - t) / Gamma(a2 - t) * A^s B^t ds dt
// where r is the outer row value (1 for the capacity kernel), the s-contour
// lies in (-1, 0), the t-contour left of every b2_j, and Re(r + s + t) > 0.
struct Egbmgf2Spec
{
    std::vector<double> outer_a{1.0};     // joint row (single entry r)
    std::vector<double> inner1_a{0.0};    // G^{1,1}_{1,1} upper row
    std::vector<double> inner1_b{0.0};    // G^{1,1}_{1,1} lower row
    std::vector<double> inner2_a{};       // G^{6,0}_{1,6} upper row (single entry)
    std::vector<double> inner2_b{};       // G^{6,0}_{1,6} lower row (six entries)
    double A = 0.0;
    double B = 0.0;
};

struct Egbmgf2Info
{
    double value = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double abscissa_s = 0.0, abscissa_t = 0.0;
    double half_height_s = 0.0, half_height_t = 0.0;
    int panels_s = 0, panels_t = 0;
    long evaluations = 0;
};

Egbmgf2Info egbmgf_detailed(const Egbmgf2Spec &spec,
                            const std::optional<ContourConfig> &contour_s = {},
                            const std::optional<ContourConfig> &contour_t = {});

double egbmgf(const Egbmgf2Spec &spec,
              const std::optional<ContourConfig> &contour_s = {},
              const std::optional<ContourConfig> &contour_t = {});

} // namespace rfso::specfun
