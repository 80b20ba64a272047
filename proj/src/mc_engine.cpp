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

#include "majtas/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>

namespace majtas
{

namespace
{

// Tag separating CDF sampling streams from outage grid points.
constexpr std::uint64_t cdf_stream_point = 0xCDF0'0000'0000'0000ull;

unsigned resolve_workers(unsigned requested, std::uint64_t jobs)
{
    unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (jobs < w)
        w = static_cast<unsigned>(std::max<std::uint64_t>(jobs, 1));
    return w;
}

// Runs body(worker, begin, end) on contiguous slices of [0, n). Worker exceptions are
// rethrown on the calling thread; thread or memory exhaustion becomes runtime_error.
template <class Body>
void parallel_slices(std::uint64_t n, unsigned workers, Body body)
{
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](unsigned w) {
        const std::uint64_t begin = n * w / workers;
        const std::uint64_t end = n * (w + 1) / workers;
        try
        {
            body(w, begin, end);
        }
        catch (...)
        {
            errors[w] = std::current_exception();
        }
    };

    if (workers == 1)
        run(0);
    else
    {
        std::vector<std::thread> pool;
        try
        {
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(run, w);
        }
        catch (const std::system_error &e)
        {
            for (auto &t : pool)
                t.join();
            throw std::runtime_error(std::string("monte carlo: cannot start worker threads: ") + e.what());
        }
        for (auto &t : pool)
            t.join();
    }

    for (auto &e : errors)
    {
        if (!e)
            continue;
        try
        {
            std::rethrow_exception(e);
        }
        catch (const std::bad_alloc &)
        {
            throw std::runtime_error("monte carlo: out of memory in worker");
        }
    }
}

// Shared setup for the SIC-chain test.
struct SicChain
{
    std::vector<double> powers;
    std::vector<double> thresholds;
    std::vector<double> tail; // sum_{i>j} a_i

    explicit SicChain(const SystemConfig &cfg) : powers(cfg.powers), thresholds(cfg.thresholds), tail(cfg.num_users())
    {
        double acc = 0.0;
        for (std::size_t j = powers.size(); j-- > 0;)
        {
            tail[j] = acc;
            acc += powers[j];
        }
    }

    double sinr(std::size_t j, double phi, double gamma, double beta) const
    {
        const double s = gamma * phi;
        return powers[j] * s / (s * tail[j] + beta);
    }

    bool in_outage(std::size_t l, double phi, double gamma, double beta) const
    {
        for (std::size_t j = 0; j <= l; ++j)
            if (sinr(j, phi, gamma, beta) < thresholds[j])
                return true;
        return false;
    }
};

void sort_small(std::vector<double> &v)
{
    // Insertion sort: columns hold a handful of users.
    for (std::size_t i = 1; i < v.size(); ++i)
    {
        const double x = v[i];
        std::size_t k = i;
        for (; k > 0 && v[k - 1] > x; --k)
            v[k] = v[k - 1];
        v[k] = x;
    }
}

McPoint finish_point(double gamma, std::vector<std::uint64_t> outages, std::uint64_t trials)
{
    McPoint pt;
    pt.gamma = gamma;
    const double n = static_cast<double>(trials);
    for (const auto c : outages)
    {
        const double p = static_cast<double>(c) / n;
        pt.frequency.push_back(p);
        pt.std_error.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    pt.outages = std::move(outages);
    return pt;
}

} // namespace

double sinr(std::size_t j, std::size_t l, double phi, double gamma, const SystemConfig &cfg, double beta)
{
    if (j > l)
        throw std::logic_error("sinr: decoded user " + std::to_string(j) + " is weaker than observer " +
                               std::to_string(l));
    if (l >= cfg.num_users())
        throw std::out_of_range("sinr: user index out of range");
    double interference = 0.0;
    for (std::size_t i = j + 1; i < cfg.num_users(); ++i)
        interference += cfg.powers[i];
    const double s = gamma * phi;
    return cfg.powers[j] * s / (s * interference + beta);
}

std::vector<bool> trial_outage(const GainMatrix &gains, Scheme scheme, double gamma, const SystemConfig &cfg,
                               const ImpairmentState &imp)
{
    const std::size_t antenna = select_antenna(scheme, gains);
    const auto phi = order_users(gains, antenna);
    const double beta = beta_of_snr(imp, gamma);
    std::vector<bool> flags(phi.size(), false);
    for (std::size_t l = 0; l < phi.size(); ++l)
        for (std::size_t j = 0; j <= l && !flags[l]; ++j)
            flags[l] = sinr(j, l, phi[l], gamma, cfg, beta) < cfg.thresholds[j];
    return flags;
}

std::vector<McRun> run_outage_mc(const SystemConfig &cfg, const ImpairmentState &imp,
                                 const std::vector<Scheme> &schemes, const std::vector<double> &snr_grid,
                                 const McOptions &opt)
{
    if (opt.trials < 1)
        throw std::invalid_argument("run_outage_mc: trials must be at least 1");
    if (schemes.empty())
        throw std::invalid_argument("run_outage_mc: no schemes requested");
    cfg.validate();
    for (const double g : snr_grid)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::domain_error("run_outage_mc: SNR grid values must be positive and finite");

    const std::size_t users = cfg.num_users();
    const std::size_t ns = schemes.size();
    const SicChain chain(cfg);
    const unsigned workers = resolve_workers(opt.workers, opt.trials);

    std::vector<McRun> runs(ns);
    for (std::size_t s = 0; s < ns; ++s)
    {
        runs[s].scheme = schemes[s];
        runs[s].snr_grid = snr_grid;
        runs[s].trials = opt.trials;
        runs[s].seed = opt.seed;
    }

    for (std::size_t k = 0; k < snr_grid.size(); ++k)
    {
        const double gamma = snr_grid[k];
        const double beta = beta_of_snr(imp, gamma);
        // counts[w][s * users + l]
        std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(ns * users, 0));

        parallel_slices(opt.trials, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
            GainMatrix g(users, static_cast<std::size_t>(cfg.n_t));
            std::vector<double> phi(users);
            auto &mine = counts[w];
            for (std::uint64_t t = begin; t < end; ++t)
            {
                RandomStream rng = RandomStream::substream(opt.seed, k, t);
                sample_gain_matrix(cfg, imp, rng, g);
                for (std::size_t s = 0; s < ns; ++s)
                {
                    const std::size_t antenna = select_antenna(schemes[s], g);
                    for (std::size_t l = 0; l < users; ++l)
                        phi[l] = g(l, antenna);
                    sort_small(phi);
                    for (std::size_t l = 0; l < users; ++l)
                        mine[s * users + l] += chain.in_outage(l, phi[l], gamma, beta) ? 1 : 0;
                }
            }
        });

        for (std::size_t s = 0; s < ns; ++s)
        {
            std::vector<std::uint64_t> total(users, 0);
            for (const auto &c : counts)
                for (std::size_t l = 0; l < users; ++l)
                    total[l] += c[s * users + l];
            runs[s].points.push_back(finish_point(gamma, std::move(total), opt.trials));
        }
    }
    return runs;
}

McRun run_outage_mc(const SystemConfig &cfg, const ImpairmentState &imp, Scheme scheme,
                    const std::vector<double> &snr_grid, const McOptions &opt)
{
    return std::move(run_outage_mc(cfg, imp, std::vector<Scheme>{scheme}, snr_grid, opt).front());
}

double EmpiricalCdf::p_unanimous() const
{
    if (samples == 0 || dissent_histogram.empty())
        return 0.0;
    return static_cast<double>(dissent_histogram[0]) / static_cast<double>(samples);
}

EmpiricalCdf empirical_majority_cdf(const SystemConfig &cfg, const ImpairmentState &imp, std::uint64_t samples,
                                    std::uint64_t seed, unsigned workers, std::size_t grid_points)
{
    if (samples < 10'000)
        throw std::invalid_argument("empirical_majority_cdf: need at least 10^4 samples");
    if (grid_points < 200)
        throw std::invalid_argument("empirical_majority_cdf: need at least 200 grid points");
    cfg.validate();

    const std::size_t users = cfg.num_users();
    const unsigned nw = resolve_workers(workers, samples);

    EmpiricalCdf out;
    out.samples = samples;
    try
    {
        out.sorted_gains.assign(users, std::vector<double>(samples));
    }
    catch (const std::bad_alloc &)
    {
        throw std::runtime_error("empirical_majority_cdf: cannot hold " + std::to_string(samples) + " samples");
    }
    std::vector<std::vector<std::uint64_t>> hist(nw, std::vector<std::uint64_t>(users + 1, 0));

    parallel_slices(samples, nw, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        GainMatrix g(users, static_cast<std::size_t>(cfg.n_t));
        for (std::uint64_t t = begin; t < end; ++t)
        {
            RandomStream rng = RandomStream::substream(seed, cdf_stream_point, t);
            sample_gain_matrix(cfg, imp, rng, g);
            const auto sel = majority_select(g);
            ++hist[w][sel.dissenters];
            for (std::size_t l = 0; l < users; ++l)
                out.sorted_gains[l][t] = sel.ordered_gains[l];
        }
    });

    out.dissent_histogram.assign(users + 1, 0);
    for (const auto &h : hist)
        for (std::size_t s = 0; s <= users; ++s)
            out.dissent_histogram[s] += h[s];

    for (auto &v : out.sorted_gains)
        std::sort(v.begin(), v.end());

    const auto &top = out.sorted_gains.back();
    const auto q_index = static_cast<std::size_t>(std::ceil(0.9999 * static_cast<double>(samples))) - 1;
    const double x_max = top[std::min(q_index, top.size() - 1)];
    out.grid.resize(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i)
        out.grid[i] = x_max * static_cast<double>(i) / static_cast<double>(grid_points - 1);

    out.cdf.assign(users, std::vector<double>(grid_points));
    for (std::size_t l = 0; l < users; ++l)
    {
        const auto &v = out.sorted_gains[l];
        for (std::size_t i = 0; i < grid_points; ++i)
        {
            const auto below = std::upper_bound(v.begin(), v.end(), out.grid[i]) - v.begin();
            out.cdf[l][i] = static_cast<double>(below) / static_cast<double>(samples);
        }
    }
    return out;
}

double ks_distance(const std::vector<double> &sorted_samples, const std::function<double(double)> &cdf)
{
    if (sorted_samples.empty())
        throw std::invalid_argument("ks_distance: no samples");
    const double n = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i)
    {
        const double f = cdf(sorted_samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

} // namespace majtas
