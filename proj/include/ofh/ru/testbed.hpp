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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ofh/codec/capture.hpp"
#include "ofh/cuplane/flows.hpp"
#include "ofh/cuplane/rf.hpp"
#include "ofh/mplane/callhome.hpp"
#include "ofh/mplane/client.hpp"
#include "ofh/mplane/dhcpv6.hpp"
#include "ofh/ru/emulator.hpp"
#include "ofh/sim/scheduler.hpp"
#include "ofh/splane/flow.hpp"

namespace ofh::ru {

struct TestbedConfig {
    RuConfig ru;
    mplane::TransportMode transport = mplane::TransportMode::in_memory;
    mplane::Credentials ter{"ter-client", "SHA256:ter-12:34:56"};
    mplane::Endpoint ter_endpoint{"fd00::1", 4334};
    std::string dhcp_pool = "fd00::10";
    bool dhcp_available = true;
    /// Keep every fronthaul frame for evidence.
    bool capture_fronthaul = true;
};

/// One isolated lab: the TER (DHCP server, Call Home listener, M-Plane
/// client, flow builder, virtual RF and UL collector) wired to one O-RU.
class Testbed {
public:
    explicit Testbed(TestbedConfig config = {});
    ~Testbed();
    Testbed(const Testbed&) = delete;
    Testbed& operator=(const Testbed&) = delete;

    sim::Scheduler& scheduler() noexcept { return scheduler_; }
    RuEmulator& ru() noexcept { return *ru_; }
    mplane::MplaneClient& client() noexcept { return client_; }
    mplane::CallHomeListener& listener() noexcept { return *listener_; }
    mplane::CallHomeNetwork& network() noexcept { return network_; }
    cuplane::VirtualRf& rf() noexcept { return rf_; }
    cuplane::UplinkCollector& uplink() noexcept { return uplink_; }
    cuplane::FlowBuilder& builder() noexcept { return builder_; }
    const TestbedConfig& config() const noexcept { return config_; }

    void power_on();
    /// Runs the timeline until the TER holds an established session.
    bool await_mplane(sim::SimTime budget = sim::seconds(30));
    bool await_phase(RuPhase phase, sim::SimTime budget);
    /// Polls sync/state over the M-Plane once per `poll` until LOCKED.
    bool await_lock(sim::SimTime budget = sim::seconds(30), sim::SimTime poll = sim::millis(100));

    /// sync/state as the O-RU reports it; nullopt without a session.
    std::optional<std::string> probe_sync();
    splane::SyncStateProbe sync_probe();

    /// Writes carriers/{tx0,rx0}/active and mirrors the outcome into the
    /// flow builder.
    mplane::RpcReply set_carriers_active(bool active);

    /// power_on, session, lock and carrier activation. Returns the first
    /// step that failed, or nullopt when the O-RU is carrying traffic.
    std::optional<std::string> bring_up(sim::SimTime budget = sim::seconds(60));

    /// Schedules every message for delivery to the O-RU.
    void deliver(const cuplane::Flow& flow);

    /// Reads one CU-Plane counter through the M-Plane.
    std::optional<std::uint64_t> read_counter(const std::string& name);

    const std::vector<codec::CaptureRecord>& fronthaul_capture() const noexcept { return capture_; }

private:
    TestbedConfig config_;
    sim::Scheduler scheduler_;
    mplane::CallHomeNetwork network_;
    std::unique_ptr<mplane::Dhcpv6Server> dhcp_;
    mplane::MplaneClient client_;
    std::unique_ptr<mplane::CallHomeListener> listener_;
    cuplane::VirtualRf rf_;
    cuplane::UplinkCollector uplink_;
    cuplane::FlowBuilder builder_;
    std::vector<codec::CaptureRecord> capture_;
    std::unique_ptr<RuEmulator> ru_;
};

} // namespace ofh::ru
