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

#include <sstream>

#include "ofh/splane/flow.hpp"
#include "support.hpp"

namespace ofh::runner::scenarios {

namespace {

using mplane::Json;
using support::Checks;
using support::Lab;

constexpr splane::Topology kTopologies[] = {splane::Topology::c1, splane::Topology::c2, splane::Topology::c3};
constexpr double kBaseDelayNs = 500.0;

ru::TestbedConfig topology_config(const CaseContext& ctx, splane::Topology topology) {
    auto cfg = ctx.testbed_config();
    cfg.ru.ptp.path = splane::make_path(topology, kBaseDelayNs);
    return cfg;
}

/// Session up and the O-RU's slave port running. The TER must not start
/// the slave on the device's behalf.
std::optional<std::string> prepare(Lab& lab) {
    lab->power_on();
    if (!lab->await_mplane()) return "M-Plane session not established";
    return std::nullopt;
}

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::blocked || b == Verdict::blocked) return Verdict::blocked;
    if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
    return Verdict::pass;
}

} // namespace

CaseOutcome ptp_functional(CaseContext& ctx) {
    CaseOutcome out;
    out.verdict = Verdict::pass;
    Json per = Json::object();
    std::string detail;
    for (auto topology : kTopologies) {
        const auto name = splane::to_string(topology);
        Lab lab(topology_config(ctx, topology));
        Verdict v = Verdict::pass;
        std::string why;
        Json m = Json::object();
        if (auto failure = prepare(lab)) {
            v = Verdict::blocked;
            why = *failure;
        } else if (!lab->ru().ptp().running()) {
            v = Verdict::fail;
            why = "O-RU never enabled its PTP slave port";
        } else {
            const auto r = splane::run_functional_test(lab->scheduler(), lab->ru().ptp(), {}, lab->sync_probe());
            v = r.verdict;
            why = r.detail;
            for (const auto& violation : r.violations) why += (why.empty() ? "" : "; ") + violation;
            m = {{"locked", r.locked}, {"lock_time_ns", r.lock_time}, {"announce_hz", r.observed_announce_hz}};
        }
        m["verdict"] = std::string(to_string(v));
        per[name] = m;
        if (v != Verdict::pass) detail += (detail.empty() ? "" : "; ") + name + ": " + why;
        out.verdict = combine(out.verdict, v);
        auto filed = support::finish(lab, {});
        for (auto& [file, bytes] : filed.evidence) out.evidence[name + "-" + file] = std::move(bytes);
        out.sim_duration += filed.sim_duration;
    }
    out.metrics = {{"topologies", per}};
    out.detail = detail;
    return out;
}

CaseOutcome ptp_performance(CaseContext& ctx) {
    CaseOutcome out;
    out.verdict = Verdict::pass;
    Json per = Json::object();
    std::string detail;
    splane::PerformanceConfig cfg;
    cfg.calibration_offset_ns = ctx.profile.calibration_offset_ns;
    cfg.trigger_cable_delay_ns = ctx.profile.trigger_cable_delay_ns;
    cfg.te_limit_ns = ctx.profile.te_limit_ns;
    for (auto topology : kTopologies) {
        const auto name = splane::to_string(topology);
        Lab lab(topology_config(ctx, topology));
        Verdict v = Verdict::pass;
        std::string why;
        Json m = Json::object();
        std::string series;
        if (auto failure = prepare(lab)) {
            v = Verdict::blocked;
            why = *failure;
        } else if (!lab->ru().ptp().running()) {
            v = Verdict::fail;
            why = "O-RU never enabled its PTP slave port";
        } else {
            const auto r = splane::run_performance_test(lab->scheduler(), lab->ru().ptp(), cfg, lab->sync_probe());
            v = r.verdict;
            why = r.detail;
            m = {{"locked", r.locked}, {"max_abs_te_ns", r.max_te_ns}, {"mean_te_ns", r.mean_te_ns},
                 {"samples", r.series.samples.size()}};
            std::ostringstream s;
            r.series.write(s);
            series = s.str();
        }
        m["verdict"] = std::string(to_string(v));
        per[name] = m;
        if (v != Verdict::pass) detail += (detail.empty() ? "" : "; ") + name + ": " + why;
        out.verdict = combine(out.verdict, v);
        auto filed = support::finish(lab, {});
        for (auto& [file, bytes] : filed.evidence) out.evidence[name + "-" + file] = std::move(bytes);
        if (!series.empty()) out.evidence[name + "-time-error.txt"] = series;
        out.sim_duration += filed.sim_duration;
    }
    out.metrics = {{"topologies", per},
                   {"calibration_offset_ns", cfg.calibration_offset_ns},
                   {"te_limit_ns", cfg.te_limit_ns}};
    out.detail = detail;
    return out;
}

} // namespace ofh::runner::scenarios
