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

#include <functional>

namespace rfso::quadrature
{

struct QuadResult
{
    double value = 0.0;
    double abs_err = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b] with interval bisection.  Stops
// when the summed error estimate satisfies either tolerance.
QuadResult integrate(const std::function<double(double)> &f, double a, double b,
                     double rel_tol = 1e-9, double abs_tol = 0.0,
                     int max_intervals = 2000);

// Semi-infinite integral of a decaying integrand: adaptive on [a, cut] plus
// a log-axis substitution x = cut * e^u on (cut, inf), extending the upper
// limit until the running tail contribution falls below the tolerances.
QuadResult integrate_to_infinity(const std::function<double(double)> &f, double a,
                                 double cut, double rel_tol = 1e-9,
                                 double abs_tol = 0.0);

} // namespace rfso::quadrature
