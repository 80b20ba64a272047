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

#include "majtas/errors.hpp"
#include "majtas/special_math.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace majtas
{

namespace
{

using RationalPoly = BasicPolyCoeffs<Rational>;
using Quad = boost::multiprecision::cpp_bin_float_quad;

constexpr std::size_t kUsers = 3;
constexpr std::size_t kOrders = 6; // N_t * L

std::int64_t factorial(int n)
{
    std::int64_t r = 1;
    for (int k = 2; k <= n; ++k)
        r *= k;
    return r;
}

std::int64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

RationalPoly monomial(Rational c, std::size_t power)
{
    RationalPoly p{std::vector<Rational>(power + 1, Rational(0))};
    p.coeffs[power] = c;
    return p;
}

RationalPoly add(const RationalPoly &a, const RationalPoly &b)
{
    RationalPoly out{std::vector<Rational>(std::max(a.size(), b.size()), Rational(0))};
    for (std::size_t k = 0; k < a.size(); ++k)
        out.coeffs[k] += a.coeffs[k];
    for (std::size_t k = 0; k < b.size(); ++k)
        out.coeffs[k] += b.coeffs[k];
    return out;
}

RationalPoly scale(const RationalPoly &a, Rational c)
{
    RationalPoly out = a;
    for (auto &v : out.coeffs)
        v *= c;
    return out;
}

// 1 - (1 - F)^n: CDF of the smaller of n i.i.d. gains.
RationalPoly min_of(unsigned n)
{
    const RationalPoly one_minus{{Rational(1), Rational(-1)}};
    return add(monomial(1, 0), scale(poly_power_coefficients(one_minus, n), Rational(-1)));
}

// Survival-side coefficients, so that F near 1 is evaluated through the small u = 1 - F.
void fill_tail(MixtureCdf &m)
{
    m.tail.assign(m.zeta.size(), Rational(0));
    for (std::size_t q = 1; q <= m.zeta.size(); ++q)
        for (std::size_t k = 1; k <= q; ++k)
        {
            const Rational c = m.zeta[q - 1] * binomial(static_cast<int>(q), static_cast<int>(k));
            m.tail[k - 1] += (k % 2 == 1) ? c : -c;
        }
}

MixtureCdf to_mixture(std::size_t user, const RationalPoly &poly)
{
    if (!poly.coeffs.empty() && poly.coeffs[0] != Rational(0))
        throw std::logic_error("mixture polynomial has a constant term");
    if (poly.size() > kOrders + 1)
        throw std::logic_error("mixture polynomial exceeds degree N_t * L");
    MixtureCdf m;
    m.user = user;
    m.zeta.assign(kOrders, Rational(0));
    for (std::size_t q = 1; q < poly.size(); ++q)
        m.zeta[q - 1] = poly.coeffs[q];
    fill_tail(m);
    return m;
}

// CDF of the (l-s)-th smallest of L-s i.i.d. gains in the normalization
// Q_{l,s} sum_t (-1)^t / (l-s+t) C(L-l, t) F^{l-s+t}, with 1-based l.
RationalPoly ordered_cdf(int l, int s)
{
    constexpr int L = static_cast<int>(kUsers);
    const Rational q(factorial(L - s), factorial(L - l) * factorial(l - s - 1));
    RationalPoly acc{{Rational(0)}};
    for (int t = 0; t <= L - l; ++t)
    {
        const Rational c = Rational(t % 2 == 0 ? 1 : -1, l - s + t) * binomial(L - l, t);
        acc = add(acc, monomial(q * c, static_cast<std::size_t>(l - s + t)));
    }
    return acc;
}

void require_closed_form(const SystemConfig &cfg)
{
    const auto errs = closed_form_support_errors(cfg);
    if (!errs.empty())
        throw unsupported_configuration(errs.front());
}

void require_user(std::size_t user)
{
    if (user >= kUsers)
        throw unsupported_configuration("closed-form results exist for users 0..2 only");
}

double to_double(const Rational &r) { return boost::rational_cast<double>(r); }

// Small-argument series term (m x / omega_hat)^g / g!.
double leading_marginal(double x, const SystemConfig &cfg, const ImpairmentState &imp)
{
    const int g = cfg.integer_shape();
    return std::pow(cfg.m * x / imp.omega_hat, g) / std::tgamma(g + 1.0);
}

double mixture_of(const MixtureCdf &mix, double t)
{
    // Unclamped: the small-argument expression is not a probability.
    double acc = 0.0;
    for (std::size_t q = mix.zeta.size(); q-- > 0;)
        acc = acc * t + to_double(mix.zeta[q]);
    return acc * t;
}

// beta * theta_l^*, or nullopt for certain outage.
std::optional<double> outage_threshold(std::size_t user, double gamma, const SystemConfig &cfg,
                                       const ImpairmentState &imp)
{
    const auto theta = theta_star(user, gamma, cfg);
    if (!theta)
        return std::nullopt;
    return beta_of_snr(imp, gamma) * *theta;
}

} // namespace

std::string to_string(MixtureModel model)
{
    return model == MixtureModel::exact ? "exact" : "tabulated";
}

std::optional<MixtureModel> parse_mixture_model(const std::string &name)
{
    if (name == "exact")
        return MixtureModel::exact;
    if (name == "tabulated")
        return MixtureModel::tabulated;
    return std::nullopt;
}

Rational MixtureCdf::sum() const
{
    Rational s(0);
    for (const auto &z : zeta)
        s += z;
    return s;
}

double MixtureCdf::operator()(double marginal) const
{
    if (marginal > 0.5 && tail.size() == zeta.size())
    {
        const double u = 1.0 - marginal;
        double acc = 0.0;
        for (std::size_t k = tail.size(); k-- > 0;)
            acc = acc * u + to_double(tail[k]);
        return std::clamp(1.0 - acc * u, 0.0, 1.0);
    }
    return std::clamp(mixture_of(*this, marginal), 0.0, 1.0);
}

std::size_t MixtureCdf::lowest_order() const
{
    for (std::size_t q = 0; q < zeta.size(); ++q)
        if (zeta[q] != Rational(0))
            return q + 1;
    return 0;
}

MixtureCdf zeta_table(std::size_t user)
{
    require_user(user);
    using R = Rational;
    static const std::array<std::array<R, kOrders>, kUsers> table{{
        {R(3, 2), R(3, 2), R(-9, 2), R(15, 4), R(-3, 2), R(1, 4)},
        {R(0), R(0), R(3), R(-3, 4), R(-9, 4), R(1)},
        {R(0), R(0), R(0), R(0), R(3, 2), R(-1, 2)},
    }};
    MixtureCdf m;
    m.user = user;
    m.zeta.assign(table[user].begin(), table[user].end());
    fill_tail(m);
    return m;
}

std::array<MixtureCdf, 3> derive_zeta_product_form()
{
    const RationalPoly f = monomial(1, 1);
    const RationalPoly f_z = min_of(2); // smaller gain of the dissenting user

    // Decision-set weights C(3,s) / (C(3,0) + C(3,1)).
    const Rational w0(binomial(3, 0), binomial(3, 0) + binomial(3, 1));
    const Rational w1(binomial(3, 1), binomial(3, 0) + binomial(3, 1));

    auto squared = [](const RationalPoly &p) { return poly_multiply(p, p); };

    const RationalPoly strongest_s0 = squared(ordered_cdf(3, 0));
    const RationalPoly strongest_s1 = poly_multiply(squared(ordered_cdf(3, 1)), f_z);
    const RationalPoly middle_s0 = squared(ordered_cdf(2, 0));
    const RationalPoly middle_s1 = poly_multiply(squared(ordered_cdf(2, 1)), f);
    const RationalPoly weakest_s0 = squared(ordered_cdf(1, 0));
    const RationalPoly &weakest_s1 = f_z;

    return {
        to_mixture(0, add(scale(weakest_s0, w0), scale(weakest_s1, w1))),
        to_mixture(1, add(scale(middle_s0, w0), scale(middle_s1, w1))),
        to_mixture(2, add(scale(strongest_s0, w0), scale(strongest_s1, w1))),
    };
}

std::array<MixtureCdf, 3> derive_zeta_exact()
{
    const RationalPoly voter = monomial(1, 2); // max of two i.i.d. gains
    const RationalPoly dissenter = min_of(2);

    std::array<RationalPoly, kUsers> cdf;
    cdf.fill(RationalPoly{{Rational(0)}});

    // Every vote pattern over two antennas is equally likely.
    constexpr unsigned patterns = 1u << kUsers;
    for (unsigned mask = 0; mask < patterns; ++mask)
    {
        const bool winner_is_one = std::popcount(mask) * 2 > static_cast<int>(kUsers);

        // count[j] = P(exactly j selected gains are <= x), as polynomials in F.
        std::vector<RationalPoly> count{RationalPoly{{Rational(1)}}};
        for (std::size_t u = 0; u < kUsers; ++u)
        {
            const bool votes_one = (mask >> u) & 1u;
            const RationalPoly &g = (votes_one == winner_is_one) ? voter : dissenter;
            const RationalPoly not_g = add(monomial(1, 0), scale(g, Rational(-1)));
            std::vector<RationalPoly> next(count.size() + 1, RationalPoly{{Rational(0)}});
            for (std::size_t j = 0; j < count.size(); ++j)
            {
                next[j] = add(next[j], poly_multiply(count[j], not_g));
                next[j + 1] = add(next[j + 1], poly_multiply(count[j], g));
            }
            count = std::move(next);
        }

        // The l-th smallest (0-based) is <= x iff at least l+1 gains are.
        for (std::size_t l = 0; l < kUsers; ++l)
            for (std::size_t j = l + 1; j < count.size(); ++j)
                cdf[l] = add(cdf[l], scale(count[j], Rational(1, patterns)));
    }

    return {to_mixture(0, cdf[0]), to_mixture(1, cdf[1]), to_mixture(2, cdf[2])};
}

const MixtureCdf &mixture_cdf(std::size_t user, MixtureModel model)
{
    require_user(user);
    static const std::array<MixtureCdf, 3> exact = derive_zeta_exact();
    static const std::array<MixtureCdf, 3> tabulated{zeta_table(0), zeta_table(1), zeta_table(2)};
    return model == MixtureModel::exact ? exact[user] : tabulated[user];
}

std::vector<std::string> closed_form_support_errors(const SystemConfig &cfg)
{
    std::vector<std::string> errs;
    if (cfg.num_users() != kUsers)
        errs.emplace_back("closed-form outage needs exactly 3 users");
    if (cfg.n_t != 2)
        errs.emplace_back("closed-form outage needs exactly 2 transmit antennas");
    if (!cfg.has_integer_shape())
        errs.emplace_back("closed-form outage needs an integer m*N_r (got " + std::to_string(cfg.m * cfg.n_r) +
                          "); use Monte Carlo for non-integer shapes");
    return errs;
}

double marginal_cdf(double x, const SystemConfig &cfg, const ImpairmentState &imp)
{
    if (!(x >= 0.0))
        throw std::domain_error("marginal_cdf: x must be nonnegative");
    return regularized_lower_gamma(cfg.integer_shape(), cfg.m * x / imp.omega_hat);
}

double majority_cdf(double x, std::size_t user, const SystemConfig &cfg, const ImpairmentState &imp,
                    MixtureModel model)
{
    require_closed_form(cfg);
    return mixture_cdf(user, model)(marginal_cdf(x, cfg, imp));
}

std::optional<double> threshold_ratio(std::size_t user, const SystemConfig &cfg)
{
    if (user >= cfg.num_users())
        throw std::out_of_range("threshold_ratio: user index out of range");
    double alpha = 0.0;
    for (std::size_t j = 0; j <= user; ++j)
    {
        double weaker_power = 0.0;
        for (std::size_t i = j + 1; i < cfg.num_users(); ++i)
            weaker_power += cfg.powers[i];
        const double margin = cfg.powers[j] - cfg.thresholds[j] * weaker_power;
        if (!(margin > 0.0))
            return std::nullopt;
        alpha = std::max(alpha, cfg.thresholds[j] / margin);
    }
    return alpha;
}

std::optional<double> theta_star(std::size_t user, double gamma, const SystemConfig &cfg)
{
    if (!(gamma > 0.0))
        throw std::domain_error("theta_star: SNR must be positive");
    const auto alpha = threshold_ratio(user, cfg);
    if (!alpha)
        return std::nullopt;
    return *alpha / gamma;
}

double outage_exact(std::size_t user, double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                    MixtureModel model)
{
    require_closed_form(cfg);
    require_user(user);
    const auto x = outage_threshold(user, gamma, cfg, imp);
    if (!x)
        return 1.0;
    const double op = majority_cdf(*x, user, cfg, imp, model);

    const double expanded = outage_multinomial(user, gamma, cfg, imp, model);
    if (op >= 1e-14 && std::fabs(op - expanded) > 1e-9 * op)
        throw consistency_error("outage_exact: mixture CDF (" + std::to_string(op) +
                                ") and multinomial expansion (" + std::to_string(expanded) + ") disagree");
    return op;
}

double outage_multinomial(std::size_t user, double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                          MixtureModel model)
{
    require_closed_form(cfg);
    require_user(user);
    const auto x = outage_threshold(user, gamma, cfg, imp);
    if (!x)
        return 1.0;

    const int g = cfg.integer_shape();
    const Quad y = Quad(cfg.m * *x / imp.omega_hat);
    const auto &mix = mixture_cdf(user, model);

    // theta_k(p): coefficients of (sum_{k<g} z^k / k!)^p.
    const auto base = truncated_exponential<Quad>(static_cast<unsigned>(g));
    std::vector<Quad> inner(kOrders + 1); // sum_k theta_k(p) y^k e^{-p y}
    for (unsigned p = 0; p <= kOrders; ++p)
    {
        const auto theta = poly_power_coefficients(base, p);
        Quad s = 0;
        Quad yk = 1;
        for (std::size_t k = 0; k < theta.size(); ++k)
        {
            s += theta.coeffs[k] * yk;
            yk *= y;
        }
        inner[p] = s * exp(-Quad(p) * y);
    }

    Quad total = 0;
    for (std::size_t q = 1; q <= kOrders; ++q)
    {
        const Rational &z = mix.zeta[q - 1];
        if (z == Rational(0))
            continue;
        Quad acc = 0;
        for (std::size_t p = 0; p <= q; ++p)
        {
            const Quad term = Quad(binomial(static_cast<int>(q), static_cast<int>(p))) * inner[p];
            acc += (p % 2 == 0) ? term : -term;
        }
        total += Quad(z.numerator()) / Quad(z.denominator()) * acc;
    }
    return total.convert_to<double>();
}

double outage_upper(std::size_t user, double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                    MixtureModel model)
{
    require_closed_form(cfg);
    require_user(user);
    const auto x = outage_threshold(user, gamma, cfg, imp);
    if (!x)
        return 1.0;
    return mixture_of(mixture_cdf(user, model), leading_marginal(*x, cfg, imp));
}

double outage_asymptotic(std::size_t user, double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                         MixtureModel model)
{
    require_closed_form(cfg);
    require_user(user);
    const auto theta = theta_star(user, gamma, cfg);
    if (!theta)
        return 1.0;
    return mixture_of(mixture_cdf(user, model), leading_marginal(*theta, cfg, imp));
}

ErrorFloor error_floor(std::size_t user, const SystemConfig &cfg, const ImpairmentState &imp, MixtureModel model)
{
    require_closed_form(cfg);
    require_user(user);
    ErrorFloor ef;
    if (imp.sigma2_e == 0.0)
        return ef;
    ef.defined = true;
    const auto alpha = threshold_ratio(user, cfg);
    if (!alpha)
    {
        ef.exact = ef.upper = 1.0;
        return ef;
    }
    const double limit = imp.sigma2_e * *alpha / (imp.rho * imp.rho);
    ef.exact = majority_cdf(limit, user, cfg, imp, model);
    ef.upper = mixture_of(mixture_cdf(user, model), leading_marginal(limit, cfg, imp));
    return ef;
}

OutagePoint evaluate_outage_point(double gamma, const SystemConfig &cfg, const ImpairmentState &imp,
                                  MixtureModel model)
{
    require_closed_form(cfg);
    OutagePoint pt;
    pt.gamma = gamma;
    for (std::size_t l = 0; l < kUsers; ++l)
    {
        pt.feasible.push_back(threshold_ratio(l, cfg).has_value());
        pt.op_exact.push_back(outage_exact(l, gamma, cfg, imp, model));
        pt.op_upper.push_back(outage_upper(l, gamma, cfg, imp, model));
        if (imp.ideal())
            pt.op_asymptotic.push_back(outage_asymptotic(l, gamma, cfg, imp, model));
    }
    return pt;
}

} // namespace majtas
