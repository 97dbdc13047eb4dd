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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ofh/mplane/callhome.hpp"
#include "ofh/mplane/envelope.hpp"

namespace ofh::runner {

class ProfileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One lab's setup. Attenuation and termination are recorded only; they
/// change nothing in the simulated RF path.
struct LabProfile {
    std::string name = "default";
    double calibration_offset_ns = 100.0;
    double trigger_cable_delay_ns = 100.0;
    double te_limit_ns = 1500.0;
    double attenuation_db = 30.0;
    double termination_ohm = 50.0;
    std::int64_t supervision_interval_s = 10;
    std::int64_t supervision_guard_s = 5;
    std::uint64_t seed = 1;
    mplane::TransportMode transport = mplane::TransportMode::in_memory;
    /// Applied to every case.
    std::vector<std::string> forced_faults;
    /// Never applied, not even to the case the toggle belongs to.
    std::vector<std::string> ablated_faults;

    /// Throws ProfileError on wrong types or unknown toggles. Missing keys
    /// keep their defaults.
    static LabProfile from_json(const mplane::Json& doc);
    mplane::Json to_json() const;
};

LabProfile load_profile(const std::filesystem::path& file);

} // namespace ofh::runner
