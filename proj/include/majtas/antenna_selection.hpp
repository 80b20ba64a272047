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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace majtas
{

enum class Scheme
{
    majority, // every user votes for its best antenna, the most-voted antenna serves all
    a3,       // max-max: antenna holding the single largest user gain
    aia,      // max-min: antenna whose weakest user gain is largest
};

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

struct SelectionResult
{
    std::size_t antenna = 0;          // 0-based transmit antenna
    std::vector<std::size_t> votes;   // per-user best antenna, in GainMatrix row order
    std::size_t dissenters = 0;       // users whose vote differs from `antenna`
    std::vector<double> ordered_gains; // gains on `antenna`, ascending; index l is user l (0 = weakest)
};

/// Best antenna for one user; ties resolve to the lowest index.
std::size_t per_user_vote(const GainMatrix &gains, std::size_t user);

/// Plurality vote over per-user best antennas. Tied vote counts go to the antenna whose
/// voters hold the larger best gain, then to the lowest index. With two antennas and
/// an odd user count this is a strict majority.
SelectionResult majority_select(const GainMatrix &gains);

/// Antenna maximizing the largest gain in its column; ties to the lowest index.
SelectionResult a3_select(const GainMatrix &gains);

/// Antenna maximizing the smallest gain in its column. Equal minima are compared on the
/// next-smallest gain and so on; full ties go to the lowest index.
SelectionResult aia_select(const GainMatrix &gains);

SelectionResult select(Scheme scheme, const GainMatrix &gains);

/// Antenna index only, without building the vote list or the ordering (Monte Carlo hot path).
std::size_t select_antenna(Scheme scheme, const GainMatrix &gains);

/// Stable ascending sort of one column.
std::vector<double> order_users(const GainMatrix &gains, std::size_t antenna);

} // namespace majtas
