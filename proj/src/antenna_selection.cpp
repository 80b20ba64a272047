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

#include "majtas/antenna_selection.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace majtas
{

namespace
{

void check_shape(const GainMatrix &gains)
{
    if (gains.users() < 2 || gains.antennas() < 2)
        throw std::invalid_argument("antenna selection needs at least 2 users and 2 antennas");
    if (gains.antennas() > static_cast<std::size_t>(max_transmit_antennas))
        throw std::invalid_argument("antenna selection supports at most " +
                                    std::to_string(max_transmit_antennas) + " antennas");
}

std::size_t majority_antenna(const GainMatrix &gains)
{
    std::array<unsigned, max_transmit_antennas> count{};
    std::array<double, max_transmit_antennas> best{};
    for (std::size_t l = 0; l < gains.users(); ++l)
    {
        const auto v = per_user_vote(gains, l);
        ++count[v];
        best[v] = std::max(best[v], gains(l, v));
    }
    std::size_t win = 0;
    for (std::size_t i = 1; i < gains.antennas(); ++i)
    {
        if (count[i] > count[win] || (count[i] == count[win] && best[i] > best[win]))
            win = i;
    }
    return win;
}

std::size_t a3_antenna(const GainMatrix &gains)
{
    std::size_t win = 0;
    double win_val = -1.0;
    for (std::size_t i = 0; i < gains.antennas(); ++i)
    {
        double mx = gains(0, i);
        for (std::size_t l = 1; l < gains.users(); ++l)
            mx = std::max(mx, gains(l, i));
        if (mx > win_val)
        {
            win_val = mx;
            win = i;
        }
    }
    return win;
}

// Lexicographic comparison of ascending columns; true when antenna a beats b.
bool aia_beats(const GainMatrix &gains, std::size_t a, std::size_t b)
{
    auto ca = gains.column(a);
    auto cb = gains.column(b);
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return std::lexicographical_compare(cb.begin(), cb.end(), ca.begin(), ca.end());
}

std::size_t aia_antenna(const GainMatrix &gains)
{
    std::size_t win = 0;
    double win_min = 0.0;
    for (std::size_t i = 0; i < gains.antennas(); ++i)
    {
        double mn = gains(0, i);
        for (std::size_t l = 1; l < gains.users(); ++l)
            mn = std::min(mn, gains(l, i));
        if (i == 0 || mn > win_min)
        {
            win_min = mn;
            win = i;
        }
        else if (mn == win_min && aia_beats(gains, i, win))
        {
            win = i;
        }
    }
    return win;
}

SelectionResult finish(const GainMatrix &gains, std::size_t antenna)
{
    SelectionResult r;
    r.antenna = antenna;
    r.votes.resize(gains.users());
    for (std::size_t l = 0; l < gains.users(); ++l)
    {
        r.votes[l] = per_user_vote(gains, l);
        if (r.votes[l] != antenna)
            ++r.dissenters;
    }
    r.ordered_gains = order_users(gains, antenna);
    return r;
}

} // namespace

std::string_view to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::majority:
        return "majority";
    case Scheme::a3:
        return "a3";
    case Scheme::aia:
        return "aia";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name)
{
    if (name == "majority")
        return Scheme::majority;
    if (name == "a3")
        return Scheme::a3;
    if (name == "aia")
        return Scheme::aia;
    return std::nullopt;
}

std::size_t per_user_vote(const GainMatrix &gains, std::size_t user)
{
    if (user >= gains.users())
        throw std::out_of_range("per_user_vote: user index out of range");
    const auto row = gains.row(user);
    return static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
}

std::size_t select_antenna(Scheme scheme, const GainMatrix &gains)
{
    check_shape(gains);
    switch (scheme)
    {
    case Scheme::majority:
        return majority_antenna(gains);
    case Scheme::a3:
        return a3_antenna(gains);
    case Scheme::aia:
        return aia_antenna(gains);
    }
    throw std::invalid_argument("select_antenna: unknown scheme");
}

SelectionResult majority_select(const GainMatrix &gains) { return finish(gains, select_antenna(Scheme::majority, gains)); }
SelectionResult a3_select(const GainMatrix &gains) { return finish(gains, select_antenna(Scheme::a3, gains)); }
SelectionResult aia_select(const GainMatrix &gains) { return finish(gains, select_antenna(Scheme::aia, gains)); }

SelectionResult select(Scheme scheme, const GainMatrix &gains) { return finish(gains, select_antenna(scheme, gains)); }

std::vector<double> order_users(const GainMatrix &gains, std::size_t antenna)
{
    if (antenna >= gains.antennas())
        throw std::out_of_range("order_users: antenna index out of range");
    auto col = gains.column(antenna);
    std::stable_sort(col.begin(), col.end());
    return col;
}

} // namespace majtas
