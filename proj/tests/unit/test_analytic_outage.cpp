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

#include "majtas/analytic_outage.hpp"
#include "majtas/antenna_selection.hpp"
#include "majtas/errors.hpp"
#include "majtas/special_math.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace majtas;

namespace
{

using R = Rational;

SystemConfig base_config(double m = 1.0, int n_r = 1)
{
    SystemConfig cfg;
    cfg.m = m;
    cfg.n_r = n_r;
    cfg.powers = {0.6, 0.3, 0.1};
    cfg.thresholds = {1.4, 2.2, 2.5};
    return cfg;
}

std::vector<R> zeta_of(const MixtureCdf &m)
{
    return m.zeta;
}

// P(k-th smallest of independent variables <= x), from each variable's CDF value,
// by summing over all subsets that fall below x.
double kth_smallest_cdf(const std::vector<double> &g, std::size_t k)
{
    const std::size_t n = g.size();
    double total = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
    {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) < k + 1)
            continue;
        double p = 1;
        for (std::size_t i = 0; i < n; ++i)
            p *= (mask >> i) & 1u ? g[i] : 1 - g[i];
        total += p;
    }
    return total;
}

// Closed form of the ordered gains on the majority antenna from the vote-pattern mixture.
double ordered_gain_cdf_oracle(double f, std::size_t user)
{
    const double voter = f * f;
    const double dissenter = 2 * f - f * f;
    return 0.25 * kth_smallest_cdf({voter, voter, voter}, user) +
           0.75 * kth_smallest_cdf({voter, voter, dissenter}, user);
}

} // namespace

TEST_CASE("tabulated coefficients")
{
    CHECK(zeta_of(zeta_table(0)) == std::vector<R>{R(3, 2), R(3, 2), R(-9, 2), R(15, 4), R(-3, 2), R(1, 4)});
    CHECK(zeta_of(zeta_table(1)) == std::vector<R>{R(0), R(0), R(3), R(-3, 4), R(-9, 4), R(1)});
    CHECK(zeta_of(zeta_table(2)) == std::vector<R>{R(0), R(0), R(0), R(0), R(3, 2), R(-1, 2)});
    for (std::size_t l = 0; l < 3; ++l)
        CHECK(zeta_table(l).sum() == R(1));
    CHECK_THROWS_AS(zeta_table(3), unsupported_configuration);
}

TEST_CASE("product-form rederivation reproduces the table exactly")
{
    const auto derived = derive_zeta_product_form();
    for (std::size_t l = 0; l < 3; ++l)
    {
        CHECK(derived[l].user == l);
        CHECK(derived[l].zeta == zeta_table(l).zeta);
    }
}

TEST_CASE("exact coefficients")
{
    const auto exact = derive_zeta_exact();
    CHECK(exact[0].zeta == std::vector<R>{R(3, 2), R(3, 2), R(-3), R(0), R(3, 2), R(-1, 2)});
    CHECK(exact[1].zeta == std::vector<R>{R(0), R(0), R(3), R(0), R(-3), R(1)});
    CHECK(exact[2].zeta == zeta_table(2).zeta);
    CHECK(exact[0].lowest_order() == 1);
    CHECK(exact[1].lowest_order() == 3);
    CHECK(exact[2].lowest_order() == 5);

    // The three ordered CDFs add up to the summed CDFs of the three selected gains:
    // 3 * (1/4 F^2 + 3/4 (2/3 F^2 + 1/3 (2F - F^2))) = 3/2 F + 3/2 F^2.
    std::vector<R> sum(6, R(0));
    for (const auto &m : exact)
        for (std::size_t q = 0; q < 6; ++q)
            sum[q] += m.zeta[q];
    CHECK(sum == std::vector<R>{R(3, 2), R(3, 2), R(0), R(0), R(0), R(0)});

    for (std::size_t l = 0; l < 3; ++l)
    {
        CHECK(exact[l].sum() == R(1));
        for (double f = 0.0; f <= 1.0; f += 1.0 / 64)
            CHECK(exact[l](f) == doctest::Approx(ordered_gain_cdf_oracle(f, l)).epsilon(1e-14));
    }
}

TEST_CASE("exact coefficients against simulated selection in the uniform domain")
{
    // Marginal CDF values of i.i.d. continuous gains are i.i.d. uniform, so the ordered
    // selected values must follow the mixture polynomials directly.
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = 400'000;
    std::vector<std::vector<double>> ordered(3);
    for (int t = 0; t < n; ++t)
    {
        GainMatrix g(3, 2);
        for (std::size_t l = 0; l < 3; ++l)
            for (std::size_t i = 0; i < 2; ++i)
                g(l, i) = u(gen);
        const auto r = majority_select(g);
        for (std::size_t l = 0; l < 3; ++l)
            ordered[l].push_back(r.ordered_gains[l]);
    }
    for (std::size_t l = 0; l < 3; ++l)
    {
        auto &v = ordered[l];
        std::sort(v.begin(), v.end());
        double d_exact = 0, d_table = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            const double lo = static_cast<double>(i) / n, hi = (i + 1.0) / n;
            const double fe = mixture_cdf(l, MixtureModel::exact)(v[i]);
            const double ft = mixture_cdf(l, MixtureModel::tabulated)(v[i]);
            d_exact = std::max({d_exact, hi - fe, fe - lo});
            d_table = std::max({d_table, hi - ft, ft - lo});
        }
        INFO("user " << l);
        CHECK(d_exact <= 0.005);
        if (l < 2)
            CHECK(d_table > 0.02); // the table does not describe the weaker two users
    }
}

TEST_CASE("survival-side coefficients describe the same polynomial")
{
    for (auto model : {MixtureModel::exact, MixtureModel::tabulated})
        for (std::size_t l = 0; l < 3; ++l)
        {
            const auto &m = mixture_cdf(l, model);
            for (const R f : {R(1, 2), R(2, 3), R(9, 10), R(99, 100)})
            {
                R g(0), fp(1);
                for (const auto &z : m.zeta)
                {
                    fp *= f;
                    g += z * fp;
                }
                R s(0), up(1);
                for (const auto &t : m.tail)
                {
                    up *= R(1) - f;
                    s += t * up;
                }
                CHECK(g == R(1) - s);
            }
        }
}

TEST_CASE("majority_cdf at fixed marginal values")
{
    CHECK(mixture_cdf(2, MixtureModel::exact)(0.5) == doctest::Approx(0.0390625).epsilon(1e-15));
    CHECK(mixture_cdf(2, MixtureModel::tabulated)(0.5) == doctest::Approx(0.0390625).epsilon(1e-15));
    CHECK(mixture_cdf(0, MixtureModel::exact)(0.5) == doctest::Approx(0.7890625).epsilon(1e-15));
    CHECK(mixture_cdf(0, MixtureModel::tabulated)(0.5) == doctest::Approx(0.75390625).epsilon(1e-15));
    for (std::size_t l = 0; l < 3; ++l)
    {
        CHECK(mixture_cdf(l, MixtureModel::exact)(1.0) == 1.0);
        CHECK(mixture_cdf(l, MixtureModel::tabulated)(1.0) == 1.0);
        CHECK(mixture_cdf(l, MixtureModel::exact)(0.0) == 0.0);
    }
}

TEST_CASE("majority_cdf monotone and ordered across users")
{
    for (auto cfg : {base_config(), base_config(1, 2), base_config(2, 2)})
    {
        const auto imp = derive_impairments(cfg, 0.0, 0.0);
        std::vector<double> prev(3, 0.0);
        for (double x = 0.0; x <= 30.0; x += 0.01)
        {
            double f[3];
            for (std::size_t l = 0; l < 3; ++l)
            {
                f[l] = majority_cdf(x, l, cfg, imp);
                CHECK(f[l] >= prev[l]);
                CHECK(f[l] <= 1.0);
                prev[l] = f[l];
            }
            CHECK(f[0] >= f[1]);
            CHECK(f[1] >= f[2]);
        }
        for (std::size_t l = 0; l < 3; ++l)
            CHECK(majority_cdf(1e4, l, cfg, imp) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("marginal_cdf")
{
    auto cfg = base_config();
    const auto ideal = derive_impairments(cfg, 0.0, 0.0);
    CHECK(marginal_cdf(0.0, cfg, ideal) == 0.0);
    CHECK(marginal_cdf(std::log(2.0), cfg, ideal) == doctest::Approx(0.5).epsilon(1e-15));
    const auto cfg22 = base_config(2, 2);
    CHECK(marginal_cdf(1.0, cfg22, ideal) == doctest::Approx(1 - std::exp(-2.0) * (1 + 2 + 2 + 4.0 / 3)).epsilon(1e-13));
    CHECK(marginal_cdf(1.0, cfg22, ideal) == doctest::Approx(0.142877).epsilon(1e-6));

    // omega_hat replaces omega under estimation error
    const auto imp = derive_impairments(cfg, 0.2, 0.0);
    CHECK(marginal_cdf(1.0, cfg, imp) == doctest::Approx(-std::expm1(-1.0 / 0.8)).epsilon(1e-14));

    CHECK_THROWS_AS(marginal_cdf(1.0, base_config(1.5, 1), ideal), unsupported_configuration);
    CHECK_THROWS_AS(majority_cdf(1.0, 0, base_config(1.5, 1), ideal), unsupported_configuration);
}

TEST_CASE("threshold ratio and theta_star")
{
    const auto cfg = base_config();
    for (std::size_t l = 0; l < 3; ++l)
    {
        REQUIRE(threshold_ratio(l, cfg).has_value());
        CHECK(*threshold_ratio(l, cfg) == doctest::Approx(35.0).epsilon(1e-12));
        CHECK(*theta_star(l, 1000.0, cfg) == doctest::Approx(0.035).epsilon(1e-12));
    }

    SystemConfig two;
    two.powers = {0.5, 0.5};
    two.thresholds = {1.0, 1.0};
    CHECK_FALSE(threshold_ratio(0, two).has_value());
    CHECK_FALSE(theta_star(1, 10.0, two).has_value());

    // last stage has no interference: gamma_th_L / a_L
    auto last = base_config();
    last.thresholds = {0.1, 0.1, 2.5};
    CHECK(*threshold_ratio(2, last) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(*threshold_ratio(0, last) == doctest::Approx(0.1 / (0.6 - 0.1 * 0.4)).epsilon(1e-12));

    CHECK_THROWS_AS(theta_star(0, 0.0, cfg), std::domain_error);
}

TEST_CASE("outage_exact at 30 dB")
{
    const auto cfg = base_config();
    const auto ideal = derive_impairments(cfg, 0.0, 0.0);
    const double op = outage_exact(0, 1000.0, cfg, ideal);
    CHECK(op == doctest::Approx(majority_cdf(0.035, 0, cfg, ideal)).epsilon(1e-15));
    CHECK(op == doctest::Approx(outage_multinomial(0, 1000.0, cfg, ideal)).epsilon(1e-12));
    const double f = -std::expm1(-0.035);
    CHECK(op == doctest::Approx(1.5 * f + 1.5 * f * f - 3 * f * f * f + 1.5 * std::pow(f, 5) - 0.5 * std::pow(f, 6))
                    .epsilon(1e-13));
}

TEST_CASE("mixture and multinomial forms agree")
{
    for (auto cfg : {base_config(), base_config(1, 2), base_config(2, 2), base_config(2, 3)})
        for (auto [s2, fd] : {std::pair{0.0, 0.0}, std::pair{0.001, 0.01}, std::pair{0.01, 0.02}})
        {
            const auto imp = derive_impairments(cfg, s2, fd);
            for (auto model : {MixtureModel::exact, MixtureModel::tabulated})
                for (double db = -10; db <= 80; db += 2.5)
                    for (std::size_t l = 0; l < 3; ++l)
                    {
                        const double g = std::pow(10.0, db / 10);
                        const double a = outage_exact(l, g, cfg, imp, model);
                        const double b = outage_multinomial(l, g, cfg, imp, model);
                        if (a >= 1e-14)
                            CHECK(std::fabs(a - b) <= 1e-9 * a);
                    }
        }
}

TEST_CASE("outage_exact is nonincreasing in SNR")
{
    for (auto cfg : {base_config(), base_config(1, 2), base_config(2, 2), base_config(2, 3)})
        for (auto [s2, fd] : {std::pair{0.0, 0.0}, std::pair{0.01, 0.0}, std::pair{0.0, 0.02}, std::pair{0.02, 0.02}})
        {
            const auto imp = derive_impairments(cfg, s2, fd);
            for (std::size_t l = 0; l < 3; ++l)
            {
                double prev = 1.0;
                for (double db = -20; db <= 90; db += 0.5)
                {
                    const double op = outage_exact(l, std::pow(10.0, db / 10), cfg, imp);
                    CHECK(op <= prev);
                    CHECK(op >= 0.0);
                    prev = op;
                }
            }
        }
}

TEST_CASE("infeasible thresholds give certain outage")
{
    auto cfg = base_config();
    cfg.thresholds = {1.4, 3.0, 2.5}; // 0.3 - 3 * 0.1 = 0
    const auto imp = derive_impairments(cfg, 0.0, 0.0);
    CHECK(outage_exact(0, 1e6, cfg, imp) < 1.0);
    CHECK(outage_exact(1, 1e6, cfg, imp) == 1.0);
    CHECK(outage_exact(2, 1e6, cfg, imp) == 1.0);
    CHECK(outage_upper(2, 1e6, cfg, imp) == 1.0);
    const auto pt = evaluate_outage_point(1e6, cfg, imp);
    CHECK(pt.feasible == std::vector<bool>{true, false, false});
}

TEST_CASE("upper expression and asymptote")
{
    const auto cfg = base_config();
    const auto ideal = derive_impairments(cfg, 0.0, 0.0);

    // leading term of U_1 is (3/2) * 35/gamma, so doubling gamma halves it
    const double r = outage_upper(0, 2e12, cfg, ideal) / outage_upper(0, 1e12, cfg, ideal);
    CHECK(r == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(outage_upper(0, 1e12, cfg, ideal) == doctest::Approx(1.5 * 35e-12).epsilon(1e-9));
    CHECK(outage_asymptotic(1, 1e5, cfg, ideal) == outage_upper(1, 1e5, cfg, ideal));

    // Every user of (1;2,1), and U_1 of the higher-diversity configurations, sits on its
    // asymptote once OP <= 1e-8.
    auto within_band = [&](const SystemConfig &c, std::size_t l) {
        for (double db = 0; db <= 120; db += 1)
        {
            const double g = std::pow(10.0, db / 10);
            const double op = outage_exact(l, g, c, ideal);
            if (op > 1e-8 || op < 1e-290)
                continue;
            const double ratio = op / outage_upper(l, g, c, ideal);
            CHECK(ratio >= 0.9);
            CHECK(ratio <= 1.1);
        }
    };
    for (std::size_t l = 0; l < 3; ++l)
        within_band(base_config(), l);
    within_band(base_config(1, 2), 0);
    within_band(base_config(2, 2), 0);

    // Higher diversity orders converge later, but every user converges.
    for (auto c : {base_config(), base_config(1, 2), base_config(2, 2), base_config(2, 3)})
        for (std::size_t l = 0; l < 3; ++l)
            for (double db = 60; db <= 90; db += 10)
            {
                const double g = std::pow(10.0, db / 10);
                const double ratio = outage_exact(l, g, c, ideal) / outage_upper(l, g, c, ideal);
                CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
            }
}

TEST_CASE("error floors")
{
    const auto cfg = base_config();
    const auto ideal = derive_impairments(cfg, 0.0, 0.0);
    for (std::size_t l = 0; l < 3; ++l)
    {
        const auto ef = error_floor(l, cfg, ideal);
        CHECK_FALSE(ef.defined);
        CHECK(ef.exact == 0.0);
        CHECK(ef.upper == 0.0);
    }

    const auto fig2 = derive_impairments(cfg, 0.001, 0.01);
    for (std::size_t l = 0; l < 3; ++l)
    {
        const auto ef = error_floor(l, cfg, fig2);
        CHECK(ef.defined);
        const double limit = fig2.sigma2_e * 35.0 / (fig2.rho * fig2.rho);
        CHECK(ef.exact == doctest::Approx(majority_cdf(limit, l, cfg, fig2)).epsilon(1e-15));
        CHECK(outage_exact(l, 1e7, cfg, fig2) == doctest::Approx(ef.exact).epsilon(0.01));
        CHECK(outage_exact(l, 1e8, cfg, fig2) == doctest::Approx(ef.exact).epsilon(0.001));
        CHECK(ef.upper >= ef.exact);
    }

    const auto cfg8 = base_config(1, 2);
    const auto fig8 = derive_impairments(cfg8, 0.01, 0.02);
    for (std::size_t l = 0; l < 3; ++l)
    {
        const auto ef = error_floor(l, cfg8, fig8);
        CHECK(ef.upper >= ef.exact);
        CHECK(ef.exact > 0.0);
    }
}

TEST_CASE("evaluate_outage_point")
{
    const auto cfg = base_config();
    const auto ideal = derive_impairments(cfg, 0.0, 0.0);
    const auto pt = evaluate_outage_point(100.0, cfg, ideal);
    CHECK(pt.op_exact.size() == 3);
    CHECK(pt.op_asymptotic.size() == 3);
    CHECK(pt.op_exact[2] == outage_exact(2, 100.0, cfg, ideal));

    const auto impaired = evaluate_outage_point(100.0, cfg, derive_impairments(cfg, 0.01, 0.01));
    CHECK(impaired.op_asymptotic.empty());
    CHECK(impaired.op_upper.size() == 3);
}

TEST_CASE("closed form preconditions")
{
    const auto ideal = ImpairmentState{};
    CHECK(closed_form_support_errors(base_config()).empty());

    auto five = base_config();
    five.powers = {0.45, 0.25, 0.15, 0.1, 0.05};
    five.thresholds = {0.8, 0.8, 0.9, 1.5, 2.0};
    CHECK_FALSE(closed_form_support_errors(five).empty());
    CHECK_THROWS_AS(outage_exact(0, 10.0, five, ideal), unsupported_configuration);

    auto wide = base_config();
    wide.n_t = 3;
    CHECK_THROWS_AS(outage_exact(0, 10.0, wide, ideal), unsupported_configuration);

    const auto errs = closed_form_support_errors(base_config(1.5, 1));
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("integer m*N_r") != std::string::npos);
    CHECK_THROWS_AS(outage_exact(0, 10.0, base_config(1.5, 1), ideal), unsupported_configuration);

    CHECK(parse_mixture_model("tabulated") == MixtureModel::tabulated);
    CHECK_FALSE(parse_mixture_model("published").has_value());
}
