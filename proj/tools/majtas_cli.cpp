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

#include "majtas/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

using namespace majtas;

namespace
{

struct Overrides
{
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> workers;
    std::optional<std::string> mixture;
    std::optional<double> fd_tau;
    std::optional<double> sigma2_cee;
    std::string out;
};

ExperimentSpec read_spec(const std::string &path, const Overrides &o)
{
    std::ifstream in(path);
    if (!in)
        throw SpecError({"cannot open spec file '" + path + "'"});
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ExperimentSpec spec = parse_spec(text);

    if (o.seed)
        spec.seed = *o.seed;
    if (o.trials)
        spec.trials = *o.trials;
    if (o.workers)
        spec.workers = *o.workers;
    if (o.fd_tau)
        spec.fd_tau = *o.fd_tau;
    if (o.sigma2_cee)
        spec.sigma2_cee = *o.sigma2_cee;
    if (o.mixture)
    {
        auto mm = parse_mixture_model(*o.mixture);
        if (!mm)
            throw SpecError({"unknown mixture '" + *o.mixture + "'"});
        spec.mixture = *mm;
    }
    validate_spec(spec);
    return spec;
}

void emit(const std::string &text, const std::string &path)
{
    if (path.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"majtas: outage of majority-vote transmit antenna selection for downlink NOMA"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("--seed", o.seed, "Monte Carlo seed (overrides the spec)");
    app.add_option("--trials", o.trials, "Trials per SNR point, or CDF samples (overrides the spec)")
        ->check(CLI::PositiveNumber);
    app.add_option("--workers", o.workers, "Worker threads, 0 = one per hardware thread");
    app.add_option("--out", o.out, "Output CSV path (default: spec 'output' for sweep, stdout otherwise)");
    app.add_option("--mixture", o.mixture, "Majority CDF coefficients: exact or tabulated");
    app.add_option("--fd-tau", o.fd_tau, "Normalized feedback delay f_d*tau (overrides the spec)");
    app.add_option("--sigma2-cee", o.sigma2_cee, "Channel estimation error variance (overrides the spec)");

    std::string spec_path;
    auto *sweep = app.add_subcommand("sweep", "Outage curves for every requested output kind");
    sweep->add_option("spec", spec_path, "Experiment spec (JSON)")->required();

    std::vector<double> op_levels;
    auto *compare = app.add_subcommand("compare", "Pairwise SNR gains between schemes at target outage levels");
    compare->add_option("spec", spec_path, "Experiment spec (JSON)")->required();
    compare->add_option("--op-levels", op_levels, "Target outage probabilities (default: spec op_levels)");

    auto *cdf = app.add_subcommand("cdf-check", "Empirical vs closed-form majority CDFs");
    cdf->add_option("spec", spec_path, "Experiment spec (JSON)")->required();

    auto *floor = app.add_subcommand("floor", "SNR-independent outage floors under impairments");
    floor->add_option("spec", spec_path, "Experiment spec (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        ExperimentSpec spec = read_spec(spec_path, o);

        if (sweep->parsed())
        {
            emit(run_sweep(spec), o.out.empty() ? spec.output : o.out);
        }
        else if (compare->parsed())
        {
            if (!op_levels.empty())
            {
                spec.op_levels = op_levels;
                validate_spec(spec);
            }
            emit(compare_report(spec), o.out);
        }
        else if (cdf->parsed())
        {
            const auto check = cdf_check(spec);
            for (std::size_t l = 0; l < check.ks.size(); ++l)
                std::fprintf(stderr, "user %zu: KS distance %.6f\n", l + 1, check.ks[l]);
            std::fprintf(stderr, "P(s=0) = %.6f\n", check.p_unanimous);
            emit(check.csv, o.out);
        }
        else if (floor->parsed())
        {
            emit(floor_report(spec), o.out);
        }
    }
    catch (const SpecError &e)
    {
        for (const auto &p : e.problems())
            std::cerr << "spec error: " << p << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
