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

#include <stdexcept>

namespace majtas
{

// Impairment parameters that leave no usable estimated channel (sigma2_cee >= Omega).
class invalid_impairment : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A request the closed-form path cannot serve (non-integer m*N_r, user count other than 3, ...).
class unsupported_configuration : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Two independent evaluation routes of the same quantity disagree.
class consistency_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

} // namespace majtas
