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

#include "majtas/analytic_outage.hpp"
#include "majtas/antenna_selection.hpp"
#include "majtas/channel_model.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace majtas
{

enum class OutputKind
{
    mc,
    exact,
    upper,
    asymptotic,
    floor,
    cdf,
};

std::string to_string(OutputKind k);
std::optional<OutputKind> parse_output_kind(const std::string &name);

/// One experiment file. Users are 1-based in everything this layer prints.
struct ExperimentSpec
{
    SystemConfig system;
    double sigma2_cee = 0.0;
    double fd_tau = 0.0;
    double snr_db_start = 0.0;
    double snr_db_stop = 40.0;
    double snr_db_step = 5.0;
    std::vector<Scheme> schemes;
    std::vector<OutputKind> outputs;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::string output; // CSV path, empty for stdout
    MixtureModel mixture = MixtureModel::exact;
    std::vector<double> op_levels{1e-4};
    unsigned workers = 0; // not part of the file; set from the command line

    [[nodiscard]] bool wants(OutputKind k) const;
    [[nodiscard]] bool has_scheme(Scheme s) const;
    [[nodiscard]] std::vector<double> snr_db_grid() const;
    [[nodiscard]] ImpairmentState impairments() const;
};

/// Every problem found while reading or validating a spec.
class SpecError : public std::invalid_argument
{
public:
    explicit SpecError(std::vector<std::string> problems);
    [[nodiscard]] const std::vector<std::string> &problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Reads the JSON object without the cross-field checks. Throws SpecError for malformed
/// text, unknown keys and wrongly typed values (all of them at once).
ExperimentSpec parse_spec(const std::string &text);

/// Cross-field constraints; empty when the spec can run.
std::vector<std::string> spec_problems(const ExperimentSpec &spec);
void validate_spec(const ExperimentSpec &spec);

/// parse_spec + validate_spec on a file.
ExperimentSpec load_spec(const std::string &path);

double db_to_linear(double db);

struct CsvRow
{
    std::size_t snr_index = 0;
    double snr_db = 0.0;
    std::size_t user = 1;
    Scheme scheme = Scheme::majority;
    std::string kind;
    double value = 0.0;
    std::optional<double> std_error;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
};

/// Rows for every requested output, sorted by (snr_db, user, scheme, kind).
std::vector<CsvRow> sweep_rows(const ExperimentSpec &spec);

/// Header snr_db,user,scheme,kind,value,stderr,seed,trials; numbers in %.9g.
std::string to_csv(const std::vector<CsvRow> &rows);

std::string run_sweep(const ExperimentSpec &spec);

/// SNR (dB) at which a decreasing OP curve crosses `target`, interpolating log10(OP)
/// linearly in dB between the bracketing grid points. nullopt when the curve never
/// brackets the target with positive values.
std::optional<double> snr_at_op(const std::vector<double> &snr_db, const std::vector<double> &op, double target);

struct GainReadout
{
    std::size_t user = 1;
    double op_level = 0.0;
    Scheme scheme_a = Scheme::majority;
    Scheme scheme_b = Scheme::majority;
    std::optional<double> snr_db_a;
    std::optional<double> snr_db_b;

    // SNR saved by scheme_a relative to scheme_b; positive when a is better.
    [[nodiscard]] std::optional<double> gain_db() const;
};

/// Pairwise SNR gains at each op level for every user. The majority curve comes from the
/// closed form when `exact` is requested, otherwise every curve is Monte Carlo.
std::vector<GainReadout> compare_gains(const ExperimentSpec &spec);
std::string compare_report(const ExperimentSpec &spec);

/// Columns user,sigma2_e,rho,alpha,floor,floor_upper.
std::string floor_report(const ExperimentSpec &spec);

struct CdfCheck
{
    std::vector<double> ks;  // per user
    double p_unanimous = 0.0;
    std::string csv; // x,user,empirical,analytic
};

/// Empirical vs closed-form majority CDFs with `trials` samples.
CdfCheck cdf_check(const ExperimentSpec &spec);

/// Least-squares slope of log10(OP) against log10(SNR); points with OP <= 0 are skipped.
double fit_loglog_slope(const std::vector<double> &snr_db, const std::vector<double> &op);

} // namespace majtas
