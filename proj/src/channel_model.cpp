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

#include "majtas/channel_model.hpp"

#include "majtas/errors.hpp"
#include "majtas/special_math.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace majtas
{

std::vector<std::string> SystemConfig::validation_errors() const
{
    std::vector<std::string> errs;
    if (!(m >= 0.5) || !std::isfinite(m))
        errs.emplace_back("m must be a finite value >= 0.5");
    if (!(omega > 0.0) || !std::isfinite(omega))
        errs.emplace_back("omega must be positive and finite");
    if (n_t < 2 || n_t > max_transmit_antennas)
        errs.emplace_back("n_t must lie in [2, " + std::to_string(max_transmit_antennas) + "]");
    if (n_r < 1)
        errs.emplace_back("n_r must be >= 1");
    if (powers.size() < 2)
        errs.emplace_back("at least two users (power coefficients) are required");
    if (thresholds.size() != powers.size())
        errs.emplace_back("thresholds must have one entry per user (" + std::to_string(powers.size()) + ")");

    double sum = 0.0;
    bool positive = true;
    bool ordered = true;
    for (std::size_t i = 0; i < powers.size(); ++i)
    {
        sum += powers[i];
        if (!(powers[i] > 0.0))
            positive = false;
        if (i > 0 && powers[i] > powers[i - 1])
            ordered = false;
    }
    if (!positive)
        errs.emplace_back("power coefficients must be positive");
    if (!powers.empty() && std::fabs(sum - 1.0) > 1e-12)
    {
        std::ostringstream os;
        os.precision(12);
        os << "power coefficients must sum to 1 (sum = " << sum << ")";
        errs.push_back(os.str());
    }
    if (!ordered)
        errs.emplace_back("power coefficients must be nonincreasing (weakest user first)");
    for (double t : thresholds)
        if (!(t > 0.0) || !std::isfinite(t))
        {
            errs.emplace_back("SINR thresholds must be positive and finite");
            break;
        }
    return errs;
}

void SystemConfig::validate() const
{
    const auto errs = validation_errors();
    if (errs.empty())
        return;
    std::string msg = "invalid system configuration:";
    for (const auto &e : errs)
        msg += "\n  - " + e;
    throw std::invalid_argument(msg);
}

bool SystemConfig::has_integer_shape() const
{
    const double shape = m * n_r;
    return std::fabs(shape - std::round(shape)) < 1e-9 && shape >= 1.0;
}

int SystemConfig::integer_shape() const
{
    if (!has_integer_shape())
        throw unsupported_configuration("closed-form evaluation needs an integer m*N_r (got " +
                                        std::to_string(m * n_r) + ")");
    return static_cast<int>(std::lround(m * n_r));
}

ImpairmentState derive_impairments(const SystemConfig &cfg, double sigma2_cee, double fd_tau)
{
    if (!(sigma2_cee >= 0.0))
        throw invalid_impairment("sigma2_cee must be nonnegative");
    if (!(sigma2_cee < cfg.omega))
        throw invalid_impairment("sigma2_cee must be smaller than omega");
    if (!(fd_tau >= 0.0) || !std::isfinite(fd_tau))
        throw invalid_impairment("fd_tau must be nonnegative and finite");

    ImpairmentState imp;
    imp.sigma2_cee = sigma2_cee;
    imp.fd_tau = fd_tau;
    imp.rho = fd_tau == 0.0 ? 1.0 : bessel_j0(2.0 * std::numbers::pi * fd_tau);
    if (!(imp.rho > 0.0))
        throw std::domain_error("fd_tau puts the time correlation J0(2 pi fd_tau) at or below zero");
    imp.omega_hat = cfg.omega - sigma2_cee;
    imp.sigma2_e = sigma2_cee + (1.0 - imp.rho * imp.rho) * imp.omega_hat;
    return imp;
}

double beta_of_snr(const ImpairmentState &imp, double gamma)
{
    if (!(gamma > 0.0))
        throw std::domain_error("beta_of_snr: SNR must be positive");
    const double rho2 = imp.rho * imp.rho;
    return imp.sigma2_e * gamma / rho2 + 1.0 / rho2;
}

GainMatrix::GainMatrix(std::size_t users, std::size_t antennas)
    : users_(users), antennas_(antennas), data_(users * antennas, 0.0)
{
}

GainMatrix::GainMatrix(std::initializer_list<std::initializer_list<double>> rows)
{
    users_ = rows.size();
    antennas_ = users_ ? rows.begin()->size() : 0;
    data_.reserve(users_ * antennas_);
    for (const auto &r : rows)
    {
        if (r.size() != antennas_)
            throw std::invalid_argument("GainMatrix: ragged rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

std::vector<double> GainMatrix::column(std::size_t antenna) const
{
    std::vector<double> col(users_);
    for (std::size_t l = 0; l < users_; ++l)
        col[l] = (*this)(l, antenna);
    return col;
}

void GainMatrix::resize(std::size_t users, std::size_t antennas)
{
    users_ = users;
    antennas_ = antennas;
    data_.assign(users * antennas, 0.0);
}

double sample_gamma(double shape, double scale, RandomStream &rng)
{
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::domain_error("sample_gamma: shape and scale must be positive");

    const double rounded = std::round(shape);
    if (rounded == shape && shape <= 16.0)
    {
        // Product of k uniforms on (0,1] stays above 2^-848, far from underflow.
        double prod = 1.0;
        for (int k = 0; k < static_cast<int>(rounded); ++k)
            prod *= 1.0 - rng.uniform();
        return -scale * std::log(prod);
    }
    std::gamma_distribution<double> dist(shape, scale);
    return dist(rng);
}

void sample_gain_matrix(const SystemConfig &cfg, const ImpairmentState &imp, RandomStream &rng, GainMatrix &out)
{
    const auto users = cfg.num_users();
    const auto antennas = static_cast<std::size_t>(cfg.n_t);
    if (out.users() != users || out.antennas() != antennas)
        out.resize(users, antennas);
    const double shape = cfg.m * cfg.n_r;
    const double scale = imp.omega_hat / cfg.m;
    for (std::size_t l = 0; l < users; ++l)
        for (std::size_t i = 0; i < antennas; ++i)
            out(l, i) = sample_gamma(shape, scale, rng);
}

GainMatrix sample_gain_matrix(const SystemConfig &cfg, const ImpairmentState &imp, RandomStream &rng)
{
    GainMatrix g;
    sample_gain_matrix(cfg, imp, rng, g);
    return g;
}

} // namespace majtas
