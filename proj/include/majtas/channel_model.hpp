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

#include "majtas/rng.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace majtas
{

// Largest transmit array the selection fast paths accept.
inline constexpr int max_transmit_antennas = 64;

/// Fading and NOMA profile shared by every user.
///
/// omega is the mean-square power of one receive element, so an MRC gain over n_r
/// elements is Gamma(m*n_r, omega/m). Users are indexed by power order: powers[0] is
/// the weakest (largest-power) user, powers must be nonincreasing and sum to 1.
struct SystemConfig
{
    double m = 1.0;
    double omega = 1.0;
    int n_t = 2;
    int n_r = 1;
    std::vector<double> powers;
    std::vector<double> thresholds;

    [[nodiscard]] std::size_t num_users() const { return powers.size(); }

    // Every violated invariant, in a stable order. Empty when the config is usable.
    [[nodiscard]] std::vector<std::string> validation_errors() const;

    // Throws std::invalid_argument listing all violations.
    void validate() const;

    [[nodiscard]] bool has_integer_shape() const;

    // m*n_r as an integer; throws unsupported_configuration if it is not one.
    [[nodiscard]] int integer_shape() const;
};

/// Raw impairment inputs plus the quantities derived from them.
struct ImpairmentState
{
    double sigma2_cee = 0.0; // estimation-error variance per element
    double fd_tau = 0.0;     // normalized Doppler f_d * tau
    double rho = 1.0;        // J0(2 pi f_d tau)
    double omega_hat = 1.0;  // estimated-channel power, omega - sigma2_cee
    double sigma2_e = 0.0;   // sigma2_cee + (1 - rho^2) omega_hat

    [[nodiscard]] bool ideal() const { return sigma2_e == 0.0 && rho == 1.0; }
};

ImpairmentState derive_impairments(const SystemConfig &cfg, double sigma2_cee, double fd_tau);

/// Noise-plus-error inflation sigma2_e * gamma / rho^2 + 1 / rho^2 (1 in the ideal case).
double beta_of_snr(const ImpairmentState &imp, double gamma);

/// One channel realization: rows are users (unordered), columns transmit antennas.
/// Entry (l, i) is the MRC gain of user l when antenna i transmits.
class GainMatrix
{
public:
    GainMatrix() = default;
    GainMatrix(std::size_t users, std::size_t antennas);
    GainMatrix(std::initializer_list<std::initializer_list<double>> rows);

    [[nodiscard]] std::size_t users() const { return users_; }
    [[nodiscard]] std::size_t antennas() const { return antennas_; }

    double &operator()(std::size_t user, std::size_t antenna) { return data_[user * antennas_ + antenna]; }
    double operator()(std::size_t user, std::size_t antenna) const { return data_[user * antennas_ + antenna]; }

    [[nodiscard]] std::span<const double> row(std::size_t user) const
    {
        return {data_.data() + user * antennas_, antennas_};
    }
    [[nodiscard]] std::vector<double> column(std::size_t antenna) const;

    void resize(std::size_t users, std::size_t antennas);

private:
    std::size_t users_ = 0;
    std::size_t antennas_ = 0;
    std::vector<double> data_;
};

/// Gamma(shape, scale) draw. Integer shapes up to 16 multiply uniforms; other shapes use
/// the standard library's Marsaglia-Tsang sampler.
double sample_gamma(double shape, double scale, RandomStream &rng);

/// Fills `out` with i.i.d. Gamma(m n_r, omega_hat / m) gains (the estimated, delayed
/// channel that both selection and the SINR see).
void sample_gain_matrix(const SystemConfig &cfg, const ImpairmentState &imp, RandomStream &rng, GainMatrix &out);
GainMatrix sample_gain_matrix(const SystemConfig &cfg, const ImpairmentState &imp, RandomStream &rng);

} // namespace majtas
