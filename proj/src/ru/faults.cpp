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

#include "ofh/ru/faults.hpp"

namespace ofh::ru {

std::vector<std::string> FaultPlan::active() const {
    std::vector<std::string> out;
    if (withhold_supervision_ack) out.emplace_back("withhold_supervision_ack");
    if (corrupt_software_checksum) out.emplace_back("corrupt_software_checksum");
    if (reject_config_node) out.emplace_back("reject_config_node");
    if (drop_callhome_auth) out.emplace_back("drop_callhome_auth");
    if (raise_alarm) out.emplace_back("raise_alarm");
    if (disable_sync) out.emplace_back("disable_sync");
    return out;
}

mplane::Json FaultPlan::to_json() const {
    mplane::Json j = mplane::Json::object();
    j["withhold_supervision_ack"] = withhold_supervision_ack;
    j["corrupt_software_checksum"] = corrupt_software_checksum;
    j["reject_config_node"] = reject_config_node ? mplane::Json(*reject_config_node) : mplane::Json(nullptr);
    j["drop_callhome_auth"] = drop_callhome_auth;
    j["raise_alarm"] = raise_alarm ? mplane::Json{{"fault_id", raise_alarm->fault_id},
                                                  {"severity", std::string(to_string(raise_alarm->severity))},
                                                  {"text", raise_alarm->text}}
                                   : mplane::Json(nullptr);
    j["disable_sync"] = disable_sync;
    return j;
}

std::string_view toggle_case(std::string_view toggle) {
    if (toggle == "drop_callhome_auth") return "3.1.1.8";
    if (toggle == "withhold_supervision_ack") return "3.1.3.2";
    if (toggle == "raise_alarm") return "3.1.5.1";
    if (toggle == "disable_sync") return "3.1.5.2";
    if (toggle == "corrupt_software_checksum") return "3.1.6.2";
    if (toggle == "reject_config_node") return "3.1.10.2";
    throw UnknownToggle(std::string(toggle));
}

namespace {

mplane::AlarmSeverity severity_from(const std::string& s) {
    for (auto sev : {mplane::AlarmSeverity::critical, mplane::AlarmSeverity::major, mplane::AlarmSeverity::minor,
                     mplane::AlarmSeverity::warning}) {
        if (to_string(sev) == s) return sev;
    }
    throw std::invalid_argument("unknown alarm severity: " + s);
}

} // namespace

void set_toggle(FaultPlan& plan, std::string_view name, const mplane::Json& argument) {
    if (name == "withhold_supervision_ack") {
        plan.withhold_supervision_ack = true;
    } else if (name == "corrupt_software_checksum") {
        plan.corrupt_software_checksum = true;
    } else if (name == "reject_config_node") {
        plan.reject_config_node = argument.is_string() ? argument.get<std::string>() : kDefaultRejectedNode;
    } else if (name == "drop_callhome_auth") {
        plan.drop_callhome_auth = true;
    } else if (name == "raise_alarm") {
        mplane::Alarm alarm;
        alarm.fault_id = kDefaultInjectedAlarm;
        alarm.fault_source = "fault-plan";
        alarm.severity = mplane::AlarmSeverity::major;
        alarm.text = "injected alarm";
        if (argument.is_object()) {
            alarm.fault_id = argument.value("fault_id", alarm.fault_id);
            alarm.text = argument.value("text", alarm.text);
            if (argument.contains("severity")) alarm.severity = severity_from(argument["severity"].get<std::string>());
        }
        plan.raise_alarm = alarm;
    } else if (name == "disable_sync") {
        plan.disable_sync = true;
    } else {
        throw UnknownToggle(std::string(name));
    }
}

void clear_toggle(FaultPlan& plan, std::string_view name) {
    if (name == "withhold_supervision_ack") plan.withhold_supervision_ack = false;
    else if (name == "corrupt_software_checksum") plan.corrupt_software_checksum = false;
    else if (name == "reject_config_node") plan.reject_config_node.reset();
    else if (name == "drop_callhome_auth") plan.drop_callhome_auth = false;
    else if (name == "raise_alarm") plan.raise_alarm.reset();
    else if (name == "disable_sync") plan.disable_sync = false;
    else throw UnknownToggle(std::string(name));
}

} // namespace ofh::ru
