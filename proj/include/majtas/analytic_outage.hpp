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

#include "majtas/channel_model.hpp"

#include <boost/rational.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace majtas
{

using Rational = boost::rational<std::int64_t>;

/// Which coefficient set expresses the ordered majority-antenna gain CDF.
enum class MixtureModel
{
    exact,     // order statistics of the independent selected gains (default)
    tabulated, // the historical coefficient table, reproduced by derive_zeta_product_form()
};

std::string to_string(MixtureModel model);
std::optional<MixtureModel> parse_mixture_model(const std::string &name);

/// CDF of the l-th weakest gain on the majority antenna (two antennas, three users) as a
/// polynomial in the per-antenna marginal F: sum_q zeta[q-1] F^q, q = 1..6.
struct MixtureCdf
{
    std::size_t user = 0; // 0 = weakest
    std::vector<Rational> zeta;
    std::vector<Rational> tail; // 1 - G(1 - u) = sum_k tail[k-1] u^k, used above F = 1/2

    [[nodiscard]] Rational sum() const;
    [[nodiscard]] double operator()(double marginal) const; // clamped to [0, 1]
    [[nodiscard]] std::size_t lowest_order() const;         // smallest q with zeta_q != 0
};

/// Hard-coded historical coefficients for user l in {0, 1, 2}.
MixtureCdf zeta_table(std::size_t user);

/// Rebuilds zeta_table() from per-antenna order-statistic CDFs multiplied together and mixed
/// over the decision sets with weights 1/4 and 3/4. Exact rational arithmetic.
std::array<MixtureCdf, 3> derive_zeta_product_form();

/// Exact coefficients: with s dissenting users, the majority voters' gains on the winner are
/// each distributed as F^2 and a dissenter's as 2F - F^2, all independent; the l-th order
/// statistic of these is mixed over s with the vote-pattern probabilities.
std::array<MixtureCdf, 3> derive_zeta_exact();

/// Cached coefficients for one model.
const MixtureCdf &mixture_cdf(std::size_t user, MixtureModel model);

/// Closed-form path preconditions: three users, two transmit antennas, integer m*N_r.
std::vector<std::string> closed_form_support_errors(const SystemConfig &cfg);

/// F_phi(x) = P(m N_r, m x / omega_hat).
double marginal_cdf(double x, const SystemConfig &cfg, const ImpairmentState &imp);

/// CDF of the l-th weakest user's gain on the majority antenna.
double majority_cdf(double x, std::size_t user, const SystemConfig &cfg, const ImpairmentState &imp,
                    MixtureModel model = MixtureModel::exact);

/// gamma * theta_l^*: the SNR-free part of the outage threshold. nullopt when some user
/// j <= l has a_j <= gamma_th_j * sum_{i>j} a_i, i.e. its SINR ceiling is below threshold.
std::optional<double> threshold_ratio(std::size_t user, const SystemConfig &cfg);

/// theta_l^* = threshold_ratio / gamma; nullopt marks certain outage.
std::optional<double> theta_star(std::size_t user, double gamma, const SystemConfig &cfg);

/// OP_l = F_l(beta theta_l^*), evaluated through the mixture CDF and cross-checked against the
/// expanded multinomial triple sum (throws consistency_error beyond 1e-9 relative once OP >= 1e-14).
/// Infeasible thresholds give 1.
double outage_exact(std::size_t user, double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                    MixtureModel model = MixtureModel::exact);

/// The same outage written as sum_q zeta_q sum_p C(q,p) (-1)^p sum_k theta_k(p) y^k e^{-p y},
/// y = m beta theta / omega_hat, evaluated in 113-bit precision.
double outage_multinomial(std::size_t user, double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                          MixtureModel model = MixtureModel::exact);

/// Small-argument expression sum_q zeta_q (c (beta theta)^{mN_r})^q, c = (m/omega_hat)^{mN_r} / (mN_r)!.
double outage_upper(std::size_t user, double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                    MixtureModel model = MixtureModel::exact);

/// outage_upper with beta = 1: the high-SNR asymptote of the ideal system.
double outage_asymptotic(std::size_t user, double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                         MixtureModel model = MixtureModel::exact);

struct ErrorFloor
{
    double exact = 0.0; // F_l(sigma2_e alpha_l / rho^2)
    double upper = 0.0; // small-argument expression at the same point
    bool defined = false; // false in the ideal case, where both are 0
};

ErrorFloor error_floor(std::size_t user, const SystemConfig &cfg, const ImpairmentState &imp,
                       MixtureModel model = MixtureModel::exact);

struct OutagePoint
{
    double gamma = 0.0;
    std::vector<double> op_exact;
    std::vector<double> op_upper;
    std::vector<double> op_asymptotic; // empty unless the impairments are ideal
    std::vector<bool> feasible;
};

OutagePoint evaluate_outage_point(double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                                  MixtureModel model = MixtureModel::exact);

} // namespace majtas
