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

#include "majtas/antenna_selection.hpp"
#include "majtas/channel_model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace majtas
{

/// SINR of user l decoding user j's layer on gain phi (users 0-based, power order).
/// Throws std::logic_error when j > l.
double sinr(std::size_t j, std::size_t l, double phi, double gamma, const SystemConfig &cfg, double beta);

/// Per-user outage flags for one channel draw: select, order, then flag user l when any
/// SIC stage j <= l misses its threshold.
std::vector<bool> trial_outage(const GainMatrix &gains, Scheme scheme, double gamma, const SystemConfig &cfg,
                               const ImpairmentState &imp);

struct McOptions
{
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0; // 0: one per hardware thread
};

struct McPoint
{
    double gamma = 0.0;
    std::vector<std::uint64_t> outages; // per user
    std::vector<double> frequency;
    std::vector<double> std_error; // sqrt(p(1-p)/n) with the observed p
};

struct McRun
{
    Scheme scheme = Scheme::majority;
    std::vector<double> snr_grid; // linear
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<McPoint> points;
};

/// Outage frequencies over a linear SNR grid. Trial t at grid point k draws from
/// RandomStream::substream(seed, k, t), so results do not depend on `workers`.
McRun run_outage_mc(const SystemConfig &cfg, const ImpairmentState &imp, Scheme scheme,
                    const std::vector<double> &snr_grid, const McOptions &opt);

/// Several schemes evaluated on the same draws; one McRun per scheme, in input order.
std::vector<McRun> run_outage_mc(const SystemConfig &cfg, const ImpairmentState &imp,
                                 const std::vector<Scheme> &schemes, const std::vector<double> &snr_grid,
                                 const McOptions &opt);

struct EmpiricalCdf
{
    std::uint64_t samples = 0;
    std::vector<double> grid;                      // evaluation points, ascending, grid[0] = 0
    std::vector<std::vector<double>> cdf;          // [user][grid index]
    std::vector<std::vector<double>> sorted_gains; // [user] all samples, ascending
    std::vector<std::uint64_t> dissent_histogram;  // [s] draws with s dissenting users

    [[nodiscard]] double p_unanimous() const; // empirical P(s = 0)
};

/// Empirical CDFs of the ordered gains on the majority antenna. The grid has
/// `grid_points` >= 200 points from 0 to the 0.9999 quantile of the strongest user.
EmpiricalCdf empirical_majority_cdf(const SystemConfig &cfg, const ImpairmentState &imp, std::uint64_t samples,
                                    std::uint64_t seed, unsigned workers = 0, std::size_t grid_points = 256);

/// Kolmogorov-Smirnov distance between ascending samples and a continuous CDF, taken
/// over every sample jump rather than a grid.
double ks_distance(const std::vector<double> &sorted_samples, const std::function<double(double)> &cdf);

} // namespace majtas
