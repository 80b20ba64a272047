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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace majtas
{

/// Zero-order Bessel function of the first kind.
/// |x| <= 3 is summed from the Maclaurin series until the terms stop contributing (abs. error ~1e-16);
/// larger arguments fall back to the library implementation. Throws std::domain_error for NaN/inf.
double bessel_j0(double x);

/// Regularized lower incomplete gamma P(a, x) for integer shape a >= 1.
/// Uses the finite-sum identity P(a,x) = 1 - e^{-x} sum_{k<a} x^k/k!, evaluated through its
/// tail form e^{-x} sum_{k>=a} x^k/k! below x = a + 1 so small arguments keep full relative precision.
double regularized_lower_gamma(int a, double x);

// Dense polynomial in z; coeffs[k] multiplies z^k.
template <class T>
struct BasicPolyCoeffs
{
    std::vector<T> coeffs;

    [[nodiscard]] std::size_t size() const { return coeffs.size(); }

    [[nodiscard]] T operator()(const T &z) const
    {
        T acc(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }
};

using PolyCoeffs = BasicPolyCoeffs<double>;

template <class T>
BasicPolyCoeffs<T> poly_multiply(const BasicPolyCoeffs<T> &a, const BasicPolyCoeffs<T> &b)
{
    if (a.coeffs.empty() || b.coeffs.empty())
        throw std::invalid_argument("poly_multiply: empty operand");
    BasicPolyCoeffs<T> out{std::vector<T>(a.size() + b.size() - 1, T(0))};
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

/// Coefficients of base(z)^p by repeated multiplication. p = 0 yields the constant 1.
template <class T>
BasicPolyCoeffs<T> poly_power_coefficients(const BasicPolyCoeffs<T> &base, unsigned p)
{
    if (base.coeffs.empty())
        throw std::invalid_argument("poly_power_coefficients: empty base polynomial");
    BasicPolyCoeffs<T> out{{T(1)}};
    for (unsigned i = 0; i < p; ++i)
        out = poly_multiply(out, base);
    return out;
}

/// Truncated exponential series sum_{k=0}^{terms-1} z^k / k!.
template <class T>
BasicPolyCoeffs<T> truncated_exponential(unsigned terms)
{
    if (terms == 0)
        throw std::invalid_argument("truncated_exponential: need at least one term");
    BasicPolyCoeffs<T> out{std::vector<T>(terms)};
    T c(1);
    for (unsigned k = 0; k < terms; ++k)
    {
        if (k > 0)
            c = c / T(k);
        out.coeffs[k] = c;
    }
    return out;
}

} // namespace majtas
