// SPDX-License-Identifier: Apache-2.0
//
// majtas - majority-vote transmit antenna selection for downlink NOMA
// Copyright (C) 2026 The majtas Authors
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

#include "majtas/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace majtas
{

double bessel_j0(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("bessel_j0: argument must be finite");

    const double ax = std::fabs(x);
    if (ax > 3.0)
        return std::cyl_bessel_j(0.0, ax);

    // J0(x) = sum_k (-1)^k (x^2/4)^k / (k!)^2
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 64; ++k)
    {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum))
            break;
    }
    return sum;
}

double regularized_lower_gamma(int a, double x)
{
    if (a <= 0)
        throw std::domain_error("regularized_lower_gamma: shape must be a positive integer");
    if (!(x >= 0.0))
        throw std::domain_error("regularized_lower_gamma: argument must be nonnegative");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;

    const double shape = static_cast<double>(a);
    if (x < shape + 1.0)
    {
        // e^{-x} x^a/a! * (1 + x/(a+1) + x^2/((a+1)(a+2)) + ...)
        const double log_lead = shape * std::log(x) - x - std::lgamma(shape + 1.0);
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 1000; ++k)
        {
            term *= x / (shape + k);
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return std::clamp(std::exp(log_lead) * sum, 0.0, 1.0);
    }

    // Upper tail Q = e^{-x} sum_{k<a} x^k/k!, accumulated in log space against overflow.
    const double log_x = std::log(x);
    double q = 0.0;
    for (int k = 0; k < a; ++k)
        q += std::exp(k * log_x - x - std::lgamma(k + 1.0));
    return std::clamp(1.0 - q, 0.0, 1.0);
}

} // namespace majtas
