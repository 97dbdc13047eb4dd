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

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ofh/mplane/envelope.hpp"
#include "ofh/mplane/server.hpp"

namespace ofh::ru {

/// Deliberate deviations from conformant behavior. Every toggle exists to
/// exercise exactly one catalog case.
struct FaultPlan {
    bool withhold_supervision_ack = false;
    bool corrupt_software_checksum = false;
    std::optional<std::string> reject_config_node;
    bool drop_callhome_auth = false;
    std::optional<mplane::Alarm> raise_alarm;
    bool disable_sync = false;

    /// Names of the toggles that are set, in declaration order.
    std::vector<std::string> active() const;
    mplane::Json to_json() const;
    bool empty() const { return active().empty(); }
};

inline constexpr std::array<std::string_view, 6> kFaultToggles{
    "withhold_supervision_ack", "corrupt_software_checksum", "reject_config_node",
    "drop_callhome_auth",       "raise_alarm",               "disable_sync",
};

/// The catalog case each toggle serves.
std::string_view toggle_case(std::string_view toggle);

inline constexpr const char* kDefaultRejectedNode = "carriers/tx0/tx-power-dbm";
inline constexpr std::uint32_t kDefaultInjectedAlarm = 9;

class UnknownToggle : public std::invalid_argument {
public:
    explicit UnknownToggle(const std::string& name) : std::invalid_argument("unknown fault toggle: " + name) {}
};

/// Sets one toggle. `argument` is the node path for reject_config_node and
/// {fault_id, severity, text} for raise_alarm; defaults apply when null.
void set_toggle(FaultPlan& plan, std::string_view name, const mplane::Json& argument = nullptr);
void clear_toggle(FaultPlan& plan, std::string_view name);

} // namespace ofh::ru
