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

#include "majtas/mc_engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace majtas
{

namespace
{

using json = nlohmann::json;

std::string fmt9(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string join(const std::vector<std::string> &parts, const char *sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

// Collects typed reads from a flat JSON object; type errors are recorded, not thrown.
class FieldReader
{
public:
    FieldReader(const json &obj, std::vector<std::string> &problems) : obj_(obj), problems_(problems) {}

    bool present(const char *key)
    {
        seen_.insert(key);
        return obj_.contains(key);
    }

    void required(const char *key)
    {
        seen_.insert(key);
        if (!obj_.contains(key))
            problems_.push_back(std::string("missing key '") + key + "'");
    }

    void number(const char *key, double &out)
    {
        if (!present(key))
            return;
        const auto &v = obj_.at(key);
        if (v.is_number())
            out = v.get<double>();
        else
            problems_.push_back(std::string("'") + key + "' must be a number");
    }

    template <class Int>
    void integer(const char *key, Int &out, bool non_negative)
    {
        if (!present(key))
            return;
        const auto &v = obj_.at(key);
        if (v.is_number_unsigned() || (v.is_number_integer() && !non_negative))
            out = v.get<Int>();
        else
            problems_.push_back(std::string("'") + key + "' must be " +
                                (non_negative ? "a nonnegative integer" : "an integer"));
    }

    void number_list(const char *key, std::vector<double> &out)
    {
        if (!present(key))
            return;
        const auto &v = obj_.at(key);
        if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_number(); }))
            out = v.get<std::vector<double>>();
        else
            problems_.push_back(std::string("'") + key + "' must be an array of numbers");
    }

    bool string_list(const char *key, std::vector<std::string> &out)
    {
        if (!present(key))
            return false;
        const auto &v = obj_.at(key);
        if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_string(); }))
        {
            out = v.get<std::vector<std::string>>();
            return true;
        }
        problems_.push_back(std::string("'") + key + "' must be an array of strings");
        return false;
    }

    bool string(const char *key, std::string &out)
    {
        if (!present(key))
            return false;
        const auto &v = obj_.at(key);
        if (v.is_string())
        {
            out = v.get<std::string>();
            return true;
        }
        problems_.push_back(std::string("'") + key + "' must be a string");
        return false;
    }

    void reject_unknown()
    {
        for (const auto &item : obj_.items())
            if (!seen_.count(item.key()))
                problems_.push_back("unknown key '" + item.key() + "'");
    }

private:
    const json &obj_;
    std::vector<std::string> &problems_;
    std::set<std::string> seen_;
};

bool needs_closed_form(OutputKind k)
{
    return k != OutputKind::mc;
}

// Majority outage curve per user from the closed form, indexed [user][snr].
std::vector<std::vector<double>> exact_curves(const ExperimentSpec &spec, const std::vector<double> &snr_db)
{
    const auto imp = spec.impairments();
    std::vector<std::vector<double>> out(spec.system.num_users());
    for (std::size_t l = 0; l < out.size(); ++l)
        for (const double db : snr_db)
            out[l].push_back(outage_exact(l, db_to_linear(db), spec.system, imp, spec.mixture));
    return out;
}

std::vector<double> linear_grid(const std::vector<double> &snr_db)
{
    std::vector<double> g;
    g.reserve(snr_db.size());
    for (const double db : snr_db)
        g.push_back(db_to_linear(db));
    return g;
}

McOptions mc_options(const ExperimentSpec &spec)
{
    McOptions opt;
    opt.trials = spec.trials;
    opt.seed = spec.seed;
    opt.workers = spec.workers;
    return opt;
}

} // namespace

std::string to_string(OutputKind k)
{
    switch (k)
    {
    case OutputKind::mc:
        return "mc";
    case OutputKind::exact:
        return "exact";
    case OutputKind::upper:
        return "upper";
    case OutputKind::asymptotic:
        return "asymptotic";
    case OutputKind::floor:
        return "floor";
    case OutputKind::cdf:
        return "cdf";
    }
    return "?";
}

std::optional<OutputKind> parse_output_kind(const std::string &name)
{
    for (auto k : {OutputKind::mc, OutputKind::exact, OutputKind::upper, OutputKind::asymptotic, OutputKind::floor,
                   OutputKind::cdf})
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

bool ExperimentSpec::wants(OutputKind k) const
{
    return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

bool ExperimentSpec::has_scheme(Scheme s) const
{
    return std::find(schemes.begin(), schemes.end(), s) != schemes.end();
}

std::vector<double> ExperimentSpec::snr_db_grid() const
{
    std::vector<double> grid;
    if (!(snr_db_step > 0.0) || !(snr_db_stop >= snr_db_start))
        return grid;
    const auto n = static_cast<std::size_t>(std::floor((snr_db_stop - snr_db_start) / snr_db_step + 1e-9)) + 1;
    for (std::size_t k = 0; k < n; ++k)
        grid.push_back(snr_db_start + static_cast<double>(k) * snr_db_step);
    return grid;
}

ImpairmentState ExperimentSpec::impairments() const
{
    return derive_impairments(system, sigma2_cee, fd_tau);
}

SpecError::SpecError(std::vector<std::string> problems)
    : std::invalid_argument("invalid experiment spec: " + join(problems, "; ")), problems_(std::move(problems))
{
}

ExperimentSpec parse_spec(const std::string &text)
{
    json doc;
    try
    {
        doc = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw SpecError({std::string("parse error: ") + e.what()});
    }
    if (!doc.is_object())
        throw SpecError({"spec must be a JSON object"});

    std::vector<std::string> problems;
    FieldReader r(doc, problems);
    ExperimentSpec spec;

    for (const char *key : {"powers", "thresholds", "schemes", "outputs", "snr_db_start", "snr_db_stop", "snr_db_step"})
        r.required(key);

    r.number("m", spec.system.m);
    r.number("omega", spec.system.omega);
    r.integer("n_t", spec.system.n_t, false);
    r.integer("n_r", spec.system.n_r, false);
    r.number_list("powers", spec.system.powers);
    r.number_list("thresholds", spec.system.thresholds);
    r.number("fd_tau", spec.fd_tau);
    r.number("sigma2_cee", spec.sigma2_cee);
    r.number("snr_db_start", spec.snr_db_start);
    r.number("snr_db_stop", spec.snr_db_stop);
    r.number("snr_db_step", spec.snr_db_step);
    r.integer("trials", spec.trials, true);
    r.integer("seed", spec.seed, true);
    r.string("output", spec.output);
    r.number_list("op_levels", spec.op_levels);

    std::vector<std::string> names;
    if (r.string_list("schemes", names))
        for (const auto &n : names)
        {
            if (auto s = parse_scheme(n))
                spec.schemes.push_back(*s);
            else
                problems.push_back("unknown scheme '" + n + "' (expected majority, a3 or aia)");
        }
    names.clear();
    if (r.string_list("outputs", names))
        for (const auto &n : names)
        {
            if (auto k = parse_output_kind(n))
                spec.outputs.push_back(*k);
            else
                problems.push_back("unknown output '" + n + "' (expected mc, exact, upper, asymptotic, floor or cdf)");
        }

    std::string mixture;
    if (r.string("mixture", mixture))
    {
        if (auto mm = parse_mixture_model(mixture))
            spec.mixture = *mm;
        else
            problems.push_back("unknown mixture '" + mixture + "' (expected exact or tabulated)");
    }

    r.reject_unknown();
    if (!problems.empty())
        throw SpecError(std::move(problems));
    return spec;
}

std::vector<std::string> spec_problems(const ExperimentSpec &spec)
{
    auto problems = spec.system.validation_errors();

    if (!(spec.snr_db_step > 0.0))
        problems.emplace_back("snr_db_step must be positive");
    if (!(spec.snr_db_stop >= spec.snr_db_start))
        problems.emplace_back("snr_db_stop must not be below snr_db_start");
    if (!std::isfinite(spec.snr_db_start) || !std::isfinite(spec.snr_db_stop))
        problems.emplace_back("SNR range must be finite");
    if (spec.schemes.empty())
        problems.emplace_back("no schemes requested, nothing to run");
    if (spec.outputs.empty())
        problems.emplace_back("no outputs requested, nothing to run");
    if (spec.trials < 1)
        problems.emplace_back("trials must be at least 1");
    for (const double p : spec.op_levels)
        if (!(p > 0.0 && p < 1.0))
            problems.push_back("op level " + fmt9(p) + " is outside (0, 1)");

    bool impairments_ok = false;
    if (spec.system.validation_errors().empty())
    {
        try
        {
            (void)spec.impairments();
            impairments_ok = true;
        }
        catch (const std::exception &e)
        {
            problems.emplace_back(e.what());
        }
    }

    const bool analytic = std::any_of(spec.outputs.begin(), spec.outputs.end(), needs_closed_form);
    if (analytic)
    {
        for (auto &e : closed_form_support_errors(spec.system))
            problems.push_back(std::move(e));
        if (!spec.has_scheme(Scheme::majority))
            problems.emplace_back("analytic outputs describe the majority scheme; add it to schemes");
    }
    if (spec.wants(OutputKind::asymptotic) && impairments_ok && !spec.impairments().ideal())
        problems.emplace_back("asymptotic output needs sigma2_cee = 0 and fd_tau = 0");
    if (spec.wants(OutputKind::cdf) && spec.trials < 10'000)
        problems.emplace_back("cdf output needs at least 10000 trials");
    return problems;
}

void validate_spec(const ExperimentSpec &spec)
{
    auto problems = spec_problems(spec);
    if (!problems.empty())
        throw SpecError(std::move(problems));
}

ExperimentSpec load_spec(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw SpecError({"cannot open spec file '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    auto spec = parse_spec(ss.str());
    validate_spec(spec);
    return spec;
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

std::vector<CsvRow> sweep_rows(const ExperimentSpec &spec)
{
    validate_spec(spec);
    const auto snr_db = spec.snr_db_grid();
    const auto imp = spec.impairments();
    const auto &cfg = spec.system;
    const std::size_t users = cfg.num_users();
    std::vector<CsvRow> rows;

    auto analytic_row = [&](std::size_t k, std::size_t l, const char *kind, double v) {
        CsvRow r;
        r.snr_index = k;
        r.snr_db = snr_db[k];
        r.user = l + 1;
        r.scheme = Scheme::majority;
        r.kind = kind;
        r.value = v;
        rows.push_back(std::move(r));
    };

    if (spec.wants(OutputKind::mc))
    {
        const auto runs = run_outage_mc(cfg, imp, spec.schemes, linear_grid(snr_db), mc_options(spec));
        for (const auto &run : runs)
            for (std::size_t k = 0; k < snr_db.size(); ++k)
                for (std::size_t l = 0; l < users; ++l)
                {
                    CsvRow r;
                    r.snr_index = k;
                    r.snr_db = snr_db[k];
                    r.user = l + 1;
                    r.scheme = run.scheme;
                    r.kind = "mc";
                    r.value = run.points[k].frequency[l];
                    r.std_error = run.points[k].std_error[l];
                    r.seed = spec.seed;
                    r.trials = spec.trials;
                    rows.push_back(std::move(r));
                }
    }

    for (std::size_t k = 0; k < snr_db.size(); ++k)
    {
        const double gamma = db_to_linear(snr_db[k]);
        for (std::size_t l = 0; l < users && spec.wants(OutputKind::exact); ++l)
        {
            try
            {
                analytic_row(k, l, "exact", outage_exact(l, gamma, cfg, imp, spec.mixture));
            }
            catch (const std::exception &e)
            {
                throw std::runtime_error("exact outage at " + fmt9(snr_db[k]) + " dB, user " + std::to_string(l + 1) +
                                         ": " + e.what());
            }
        }
        for (std::size_t l = 0; l < users && spec.wants(OutputKind::upper); ++l)
            analytic_row(k, l, "upper", outage_upper(l, gamma, cfg, imp, spec.mixture));
        for (std::size_t l = 0; l < users && spec.wants(OutputKind::asymptotic); ++l)
            analytic_row(k, l, "asymptotic", outage_asymptotic(l, gamma, cfg, imp, spec.mixture));
    }

    if (spec.wants(OutputKind::floor))
        for (std::size_t l = 0; l < users; ++l)
        {
            const auto ef = error_floor(l, cfg, imp, spec.mixture);
            for (std::size_t k = 0; k < snr_db.size(); ++k)
            {
                analytic_row(k, l, "floor", ef.exact);
                analytic_row(k, l, "floor_upper", ef.upper);
            }
        }

    if (spec.wants(OutputKind::cdf))
    {
        const auto emp = empirical_majority_cdf(cfg, imp, spec.trials, spec.seed, spec.workers);
        for (std::size_t l = 0; l < users; ++l)
        {
            const double ks = ks_distance(emp.sorted_gains[l], [&](double x) {
                return majority_cdf(x, l, cfg, imp, spec.mixture);
            });
            for (std::size_t k = 0; k < snr_db.size(); ++k)
            {
                analytic_row(k, l, "ks", ks);
                rows.back().seed = spec.seed;
                rows.back().trials = spec.trials;
            }
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow &a, const CsvRow &b) {
        return std::make_tuple(a.snr_index, a.user, to_string(a.scheme), std::string_view(a.kind)) <
               std::make_tuple(b.snr_index, b.user, to_string(b.scheme), std::string_view(b.kind));
    });
    return rows;
}

std::string to_csv(const std::vector<CsvRow> &rows)
{
    std::string out = "snr_db,user,scheme,kind,value,stderr,seed,trials\n";
    for (const auto &r : rows)
    {
        out += fmt9(r.snr_db);
        out += ',' + std::to_string(r.user);
        out += ',' + std::string(to_string(r.scheme));
        out += ',' + r.kind;
        out += ',' + fmt9(r.value);
        out += ',' + (r.std_error ? fmt9(*r.std_error) : std::string());
        out += ',' + (r.seed ? std::to_string(*r.seed) : std::string());
        out += ',' + (r.trials ? std::to_string(*r.trials) : std::string());
        out += '\n';
    }
    return out;
}

std::string run_sweep(const ExperimentSpec &spec)
{
    return to_csv(sweep_rows(spec));
}

std::optional<double> snr_at_op(const std::vector<double> &snr_db, const std::vector<double> &op, double target)
{
    if (snr_db.size() != op.size())
        throw std::invalid_argument("snr_at_op: grid and curve sizes differ");
    if (!(target > 0.0))
        throw std::invalid_argument("snr_at_op: target must be positive");
    for (std::size_t i = 0; i + 1 < op.size(); ++i)
    {
        const double hi = op[i];
        const double lo = op[i + 1];
        if (!(hi >= target && lo <= target) || !(lo > 0.0))
            continue;
        if (hi == lo)
            return snr_db[i];
        const double t = (std::log10(hi) - std::log10(target)) / (std::log10(hi) - std::log10(lo));
        return snr_db[i] + t * (snr_db[i + 1] - snr_db[i]);
    }
    return std::nullopt;
}

std::optional<double> GainReadout::gain_db() const
{
    if (!snr_db_a || !snr_db_b)
        return std::nullopt;
    return *snr_db_b - *snr_db_a;
}

std::vector<GainReadout> compare_gains(const ExperimentSpec &spec)
{
    validate_spec(spec);
    const auto snr_db = spec.snr_db_grid();
    const std::size_t users = spec.system.num_users();

    // curves[scheme position][user][snr]
    std::vector<std::vector<std::vector<double>>> curves(spec.schemes.size());
    std::vector<Scheme> mc_schemes;
    std::vector<std::string> problems;
    for (std::size_t s = 0; s < spec.schemes.size(); ++s)
    {
        if (spec.schemes[s] == Scheme::majority && spec.wants(OutputKind::exact))
            curves[s] = exact_curves(spec, snr_db);
        else if (spec.wants(OutputKind::mc))
            mc_schemes.push_back(spec.schemes[s]);
        else
            problems.push_back("scheme " + std::string(to_string(spec.schemes[s])) +
                               " has no curve to compare (request mc)");
    }
    if (spec.schemes.size() < 2)
        problems.emplace_back("comparison needs at least two schemes");
    if (!problems.empty())
        throw SpecError(std::move(problems));

    if (!mc_schemes.empty())
    {
        const auto runs = run_outage_mc(spec.system, spec.impairments(), mc_schemes, linear_grid(snr_db),
                                        mc_options(spec));
        for (const auto &run : runs)
        {
            const auto pos = static_cast<std::size_t>(
                std::find(spec.schemes.begin(), spec.schemes.end(), run.scheme) - spec.schemes.begin());
            curves[pos].assign(users, {});
            for (const auto &pt : run.points)
                for (std::size_t l = 0; l < users; ++l)
                    curves[pos][l].push_back(pt.frequency[l]);
        }
    }

    std::vector<GainReadout> out;
    for (std::size_t l = 0; l < users; ++l)
        for (const double level : spec.op_levels)
            for (std::size_t a = 0; a < spec.schemes.size(); ++a)
                for (std::size_t b = a + 1; b < spec.schemes.size(); ++b)
                {
                    GainReadout g;
                    g.user = l + 1;
                    g.op_level = level;
                    g.scheme_a = spec.schemes[a];
                    g.scheme_b = spec.schemes[b];
                    g.snr_db_a = snr_at_op(snr_db, curves[a][l], level);
                    g.snr_db_b = snr_at_op(snr_db, curves[b][l], level);
                    out.push_back(g);
                }
    return out;
}

std::string compare_report(const ExperimentSpec &spec)
{
    std::string out = "user,op_level,scheme_a,scheme_b,snr_db_a,snr_db_b,gain_db,status\n";
    auto opt = [](const std::optional<double> &v) { return v ? fmt9(*v) : std::string(); };
    for (const auto &g : compare_gains(spec))
    {
        out += std::to_string(g.user) + ',' + fmt9(g.op_level) + ',' + std::string(to_string(g.scheme_a)) + ',' +
               std::string(to_string(g.scheme_b)) + ',' + opt(g.snr_db_a) + ',' + opt(g.snr_db_b) + ',' +
               opt(g.gain_db()) + ',' + (g.gain_db() ? "ok" : "unreachable") + '\n';
    }
    return out;
}

std::string floor_report(const ExperimentSpec &spec)
{
    validate_spec(spec);
    const auto imp = spec.impairments();
    std::string out = "user,sigma2_e,rho,alpha,floor,floor_upper\n";
    for (std::size_t l = 0; l < spec.system.num_users(); ++l)
    {
        const auto alpha = threshold_ratio(l, spec.system);
        const auto ef = error_floor(l, spec.system, imp, spec.mixture);
        out += std::to_string(l + 1) + ',' + fmt9(imp.sigma2_e) + ',' + fmt9(imp.rho) + ',' +
               (alpha ? fmt9(*alpha) : std::string("inf")) + ',' + fmt9(ef.exact) + ',' + fmt9(ef.upper) + '\n';
    }
    return out;
}

CdfCheck cdf_check(const ExperimentSpec &spec)
{
    validate_spec(spec);
    if (spec.trials < 10'000)
        throw SpecError({"cdf check needs at least 10000 trials"});
    if (auto errs = closed_form_support_errors(spec.system); !errs.empty())
        throw SpecError(std::move(errs));

    const auto imp = spec.impairments();
    const auto &cfg = spec.system;
    const auto emp = empirical_majority_cdf(cfg, imp, spec.trials, spec.seed, spec.workers);

    CdfCheck out;
    out.p_unanimous = emp.p_unanimous();
    out.csv = "x,user,empirical,analytic\n";
    for (std::size_t l = 0; l < cfg.num_users(); ++l)
        out.ks.push_back(ks_distance(emp.sorted_gains[l],
                                     [&](double x) { return majority_cdf(x, l, cfg, imp, spec.mixture); }));
    for (std::size_t i = 0; i < emp.grid.size(); ++i)
        for (std::size_t l = 0; l < cfg.num_users(); ++l)
            out.csv += fmt9(emp.grid[i]) + ',' + std::to_string(l + 1) + ',' + fmt9(emp.cdf[l][i]) + ',' +
                       fmt9(majority_cdf(emp.grid[i], l, cfg, imp, spec.mixture)) + '\n';
    return out;
}

double fit_loglog_slope(const std::vector<double> &snr_db, const std::vector<double> &op)
{
    if (snr_db.size() != op.size())
        throw std::invalid_argument("fit_loglog_slope: grid and curve sizes differ");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < op.size(); ++i)
    {
        if (!(op[i] > 0.0))
            continue;
        const double x = snr_db[i] / 10.0;
        const double y = std::log10(op[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2)
        throw std::invalid_argument("fit_loglog_slope: need two positive points");
    const double dn = static_cast<double>(n);
    const double den = dn * sxx - sx * sx;
    if (den == 0.0)
        throw std::invalid_argument("fit_loglog_slope: SNR points coincide");
    return (dn * sxy - sx * sy) / den;
}

} // namespace majtas
