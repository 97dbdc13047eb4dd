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
#include <map>
#include <string>

#include "ofh/mplane/envelope.hpp"
#include "ofh/ru/faults.hpp"
#include "ofh/ru/testbed.hpp"
#include "ofh/runner/profile.hpp"
#include "ofh/sim/time.hpp"
#include "ofh/verdict.hpp"

namespace ofh::runner {

/// What one scenario gets: the lab, the seed and the faults the emulated
/// O-RU carries for this case.
struct CaseContext {
    const LabProfile& profile;
    std::uint64_t seed = 1;
    ru::FaultPlan faults;

    /// Fresh TER + O-RU configuration for this case.
    ru::TestbedConfig testbed_config() const;
};

struct CaseOutcome {
    Verdict verdict = Verdict::fail;
    mplane::Json metrics = mplane::Json::object();
    std::string detail;
    /// file name -> contents, persisted under evidence/<case id>/.
    std::map<std::string, std::string> evidence;
    /// Simulated time the case consumed.
    sim::SimTime sim_duration = 0;
};

using Scenario = CaseOutcome (*)(CaseContext&);

// One scenario per catalog entry. Each builds its own Testbed.
namespace scenarios {
CaseOutcome transport_handshake_positive(CaseContext& ctx);
CaseOutcome transport_handshake_negative(CaseContext& ctx);
CaseOutcome subscription(CaseContext& ctx);
CaseOutcome supervision_positive(CaseContext& ctx);
CaseOutcome supervision_negative(CaseContext& ctx);
CaseOutcome retrieval_unfiltered(CaseContext& ctx);
CaseOutcome retrieval_filtered(CaseContext& ctx);
CaseOutcome alarm_notification(CaseContext& ctx);
CaseOutcome active_alarm_list(CaseContext& ctx);
CaseOutcome software_update_positive(CaseContext& ctx);
CaseOutcome software_update_negative(CaseContext& ctx);
CaseOutcome activation_without_reset(CaseContext& ctx);
CaseOutcome reset_after_activation(CaseContext& ctx);
CaseOutcome hierarchical_sudo(CaseContext& ctx);
CaseOutcome configurability_positive(CaseContext& ctx);
CaseOutcome configurability_negative(CaseContext& ctx);
CaseOutcome troubleshooting(CaseContext& ctx);
CaseOutcome trace(CaseContext& ctx);
CaseOutcome base_dl_ul(CaseContext& ctx);
CaseOutcome extended_allocation(CaseContext& ctx);
CaseOutcome extended_rb_allocation(CaseContext& ctx);
CaseOutcome dl_no_beamforming(CaseContext& ctx);
CaseOutcome ul_no_beamforming(CaseContext& ctx);
CaseOutcome weight_based_beamforming(CaseContext& ctx);
CaseOutcome dlm_dl_positive(CaseContext& ctx);
CaseOutcome dlm_ul_positive(CaseContext& ctx);
CaseOutcome dlm_dl_negative(CaseContext& ctx);
CaseOutcome dlm_ul_negative(CaseContext& ctx);
CaseOutcome prach(CaseContext& ctx);
CaseOutcome ptp_functional(CaseContext& ctx);
CaseOutcome ptp_performance(CaseContext& ctx);
} // namespace scenarios

} // namespace ofh::runner
