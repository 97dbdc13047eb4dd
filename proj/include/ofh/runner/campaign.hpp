/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The ofhct Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ofh/ru/faults.hpp"
#include "ofh/runner/profile.hpp"
#include "ofh/runner/report.hpp"

namespace ofh::runner {

class SelectionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CampaignOptions {
    LabProfile profile;
    /// Case ids; empty selects the whole catalog.
    std::vector<std::string> selection;
    /// Overrides profile.seed.
    std::optional<std::uint64_t> seed;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned jobs = 0;
    /// Called as each case completes, from the worker that ran it.
    std::function<void(const CaseRecord&)> on_record;
};

/// The faults the O-RU carries for one case: forced toggles everywhere,
/// plus each toggle on the case it belongs to, minus ablated toggles.
ru::FaultPlan faults_for(const LabProfile& profile, std::string_view case_id);

/// Throws SelectionError for unknown ids or an empty selection. M-Plane
/// cases run first; if the establishment case is selected and does not
/// pass, every CU/S case is BLOCKED without running.
TestReport run_campaign(const CampaignOptions& options);

} // namespace ofh::runner
