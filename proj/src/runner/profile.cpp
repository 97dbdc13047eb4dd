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

#include "ofh/runner/profile.hpp"

#include <algorithm>
#include <fstream>

#include "ofh/ru/faults.hpp"

namespace ofh::runner {

namespace {

using mplane::Json;

template <typename T>
T field(const Json& doc, const char* key, T fallback) {
    if (!doc.contains(key)) return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const Json::exception&) {
        throw ProfileError(std::string("profile field '") + key + "' has the wrong type");
    }
}

std::vector<std::string> toggles(const Json& faults, const char* key) {
    auto names = field<std::vector<std::string>>(faults, key, {});
    for (const auto& n : names) {
        if (std::find(ru::kFaultToggles.begin(), ru::kFaultToggles.end(), n) == ru::kFaultToggles.end()) {
            throw ProfileError("unknown fault toggle in profile: " + n);
        }
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

} // namespace

LabProfile LabProfile::from_json(const Json& doc) {
    if (!doc.is_object()) throw ProfileError("profile must be an object");
    LabProfile p;
    p.name = field(doc, "name", p.name);
    p.calibration_offset_ns = field(doc, "calibration_offset_ns", p.calibration_offset_ns);
    p.trigger_cable_delay_ns = field(doc, "trigger_cable_delay_ns", p.trigger_cable_delay_ns);
    p.te_limit_ns = field(doc, "te_limit_ns", p.te_limit_ns);
    p.attenuation_db = field(doc, "attenuation_db", p.attenuation_db);
    p.termination_ohm = field(doc, "termination_ohm", p.termination_ohm);
    p.seed = field(doc, "seed", p.seed);

    const Json supervision = field(doc, "supervision", Json::object());
    p.supervision_interval_s = field(supervision, "interval_s", p.supervision_interval_s);
    p.supervision_guard_s = field(supervision, "guard_s", p.supervision_guard_s);
    if (p.supervision_interval_s <= 0 || p.supervision_guard_s < 0) {
        throw ProfileError("supervision interval must be positive and guard non-negative");
    }

    const auto transport = field<std::string>(doc, "transport", "in-memory");
    if (transport == "in-memory") {
        p.transport = mplane::TransportMode::in_memory;
    } else if (transport == "tcp") {
        p.transport = mplane::TransportMode::tcp;
    } else {
        throw ProfileError("transport must be 'in-memory' or 'tcp', got '" + transport + "'");
    }

    const Json faults = field(doc, "faults", Json::object());
    p.forced_faults = toggles(faults, "forced");
    p.ablated_faults = toggles(faults, "ablated");
    return p;
}

Json LabProfile::to_json() const {
    return {
        {"name", name},
        {"calibration_offset_ns", calibration_offset_ns},
        {"trigger_cable_delay_ns", trigger_cable_delay_ns},
        {"te_limit_ns", te_limit_ns},
        {"attenuation_db", attenuation_db},
        {"termination_ohm", termination_ohm},
        {"supervision", {{"interval_s", supervision_interval_s}, {"guard_s", supervision_guard_s}}},
        {"seed", seed},
        {"transport", transport == mplane::TransportMode::tcp ? "tcp" : "in-memory"},
        {"faults", {{"forced", forced_faults}, {"ablated", ablated_faults}}},
    };
}

LabProfile load_profile(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ProfileError("cannot open profile " + file.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ProfileError("profile " + file.string() + " is not valid JSON: " + e.what());
    }
    return LabProfile::from_json(doc);
}

} // namespace ofh::runner
