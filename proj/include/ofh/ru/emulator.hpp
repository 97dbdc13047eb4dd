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
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ofh/codec/capture.hpp"
#include "ofh/cuplane/analyzer.hpp"
#include "ofh/cuplane/beam.hpp"
#include "ofh/cuplane/carrier.hpp"
#include "ofh/cuplane/flows.hpp"
#include "ofh/cuplane/rf.hpp"
#include "ofh/mplane/callhome.hpp"
#include "ofh/mplane/datastore.hpp"
#include "ofh/mplane/dhcpv6.hpp"
#include "ofh/mplane/server.hpp"
#include "ofh/ru/faults.hpp"
#include "ofh/sim/scheduler.hpp"
#include "ofh/splane/flow.hpp"

namespace ofh::ru {

enum class RuPhase { boot, dhcp, call_home, mplane_up, syncing, configured, carriers_active };
std::string_view to_string(RuPhase phase) noexcept;

struct PhaseChange {
    sim::SimTime at = 0;
    RuPhase phase = RuPhase::boot;
    std::uint32_t boot = 0;
    /// Set when the device fell back (carrier loss, sync loss, session loss).
    bool regression = false;
    std::string reason;
};

struct RuEvent {
    sim::SimTime at = 0;
    codec::CaptureDirection direction = codec::CaptureDirection::internal;
    std::string category;
    std::string text;
};

/// Everything the emulator did, in order. External actions are ru_to_ter,
/// state changes are internal.
class EventLog {
public:
    void add(sim::SimTime at, codec::CaptureDirection direction, std::string category, std::string text);
    const std::vector<RuEvent>& events() const noexcept { return events_; }
    std::size_t count(std::string_view category) const;
    /// One capture record per event; the payload is "category: text".
    void write_capture(std::ostream& out) const;

private:
    std::vector<RuEvent> events_;
};

struct RuConfig {
    mplane::Credentials credentials{"o-ru-0001", "SHA256:ru-ab:cd:ef"};
    std::string ter_trust_anchor = "SHA256:ter-12:34:56";
    std::vector<std::uint8_t> duid{0x00, 0x03, 0x00, 0x01, 0x02, 0x00, 0x00, 0x00, 0x00, 0x01};
    std::string mac = "02:00:00:00:00:01";
    cuplane::CarrierConfig carrier;
    cuplane::DelayWindow windows;
    cuplane::BeamTable beams = cuplane::BeamTable::synthetic();
    splane::PtpFlowConfig ptp;
    FaultPlan faults;
    sim::SimTime boot_delay = sim::millis(100);
    sim::SimTime call_home_delay = sim::millis(10);
    /// Fixed backoff between DHCP or Call Home attempts.
    sim::SimTime retry_interval = sim::seconds(5);
    /// A sync alarm is raised if the clock has not locked this long after
    /// entering SYNCING.
    sim::SimTime sync_alarm_delay = sim::seconds(5);
    /// Delay between MPLANE_UP and a planned raise_alarm fault.
    sim::SimTime planned_alarm_delay = sim::seconds(1);
    sim::SimTime reset_delay = sim::millis(100);
};

inline constexpr std::uint32_t kSyncAlarmId = 17;

struct CarrierState {
    std::string id;
    codec::DataDirection direction = codec::DataDirection::downlink;
    bool active = false;
};

/// CU-Plane drop and delivery counters, mirrored to fronthaul/counters.
inline constexpr std::string_view kCounterNames[] = {
    "dl-cplane-received", "dl-cplane-early", "dl-cplane-late",
    "ul-cplane-received", "ul-cplane-early", "ul-cplane-late",
    "dl-uplane-received", "dl-uplane-early", "dl-uplane-late",
    "not-ready",          "unknown-beam",    "unscheduled",
    "tdd-violation",      "malformed",       "prach-early",
    "prach-late",         "ul-uplane-sent",
};

/// The reference O-RU. Conformant unless a FaultPlan toggle says otherwise.
class RuEmulator final : public cuplane::FronthaulDut {
public:
    using UplinkSink = std::function<void(sim::SimTime, std::span<const std::uint8_t>)>;

    RuEmulator(sim::Scheduler& scheduler, RuConfig config, cuplane::VirtualRf& rf);
    ~RuEmulator() override;
    RuEmulator(const RuEmulator&) = delete;
    RuEmulator& operator=(const RuEmulator&) = delete;

    /// Harness endpoints. A null DHCP server leaves the device stuck in DHCP.
    void attach(mplane::Dhcpv6Server* dhcp, mplane::CallHomeNetwork* network);
    void set_uplink_sink(UplinkSink sink) { uplink_ = std::move(sink); }

    /// Power on: BOOT, then DHCP and Call Home on the timeline.
    void boot();
    /// Explicit reset back to BOOT; the active software slot becomes running.
    void reset(const std::string& reason);

    RuPhase phase() const noexcept { return phase_; }
    const std::vector<PhaseChange>& phase_history() const noexcept { return history_; }
    std::uint32_t boot_count() const noexcept { return boot_; }

    mplane::MplaneServer& server() noexcept { return *server_; }
    mplane::Datastore& datastore() noexcept { return datastore_; }
    splane::PtpFlow& ptp() noexcept { return *ptp_; }
    splane::SyncState sync_state() const noexcept { return sync_; }

    const std::vector<CarrierState>& carriers() const noexcept { return carriers_; }
    bool carrier_active(codec::DataDirection direction) const;
    bool any_carrier_active() const;

    const cuplane::CarrierConfig& carrier_config() const noexcept { return config_.carrier; }
    const cuplane::DelayWindow& windows() const noexcept { return config_.windows; }
    const cuplane::BeamTable& beams() const noexcept { return config_.beams; }
    const FaultPlan& faults() const noexcept { return config_.faults; }

    /// Throws UnknownToggle. Takes effect from the next relevant action.
    void inject_fault(std::string_view name, const mplane::Json& argument = nullptr);
    void clear_fault(std::string_view name);

    void receive_fronthaul(std::span<const std::uint8_t> frame) override;

    std::uint64_t counter(std::string_view name) const;
    const std::map<std::string, std::uint64_t, std::less<>>& counters() const noexcept { return counters_; }

    const EventLog& events() const noexcept { return log_; }
    std::uint64_t call_home_attempts() const noexcept { return call_home_attempts_; }
    std::uint64_t call_home_failures() const noexcept { return call_home_failures_; }
    const std::optional<mplane::Dhcpv6Lease>& lease() const noexcept { return lease_; }

private:
    struct DlSection {
        int start_symbol = 0;
        int num_symbols = 1;
        std::uint16_t start_prb = 0;
        bool rb = false;
        /// Empty means "own port only".
        std::vector<cuplane::Cplx> weights;
        int port = 0;
    };
    using SectionKey = std::tuple<std::int64_t, std::uint16_t, std::uint16_t>;

    void record(codec::CaptureDirection direction, std::string category, std::string text);
    void enter(RuPhase phase, std::string reason, bool regression = false);
    void schedule(sim::SimTime at, std::function<void()> action);

    void start_dhcp();
    void attempt_call_home();
    void on_mplane_up();
    void start_sync();
    void on_sync_change(splane::SyncState state);
    void check_sync_alarm();
    void raise_planned_alarm();
    void set_carrier(const std::string& id, bool active, const std::string& reason);
    void deactivate_all(const std::string& reason);
    void refresh_carrier_phase(const std::string& reason);
    void reboot(const std::string& reason);

    mplane::ServerHooks make_hooks();
    std::optional<mplane::RpcError> guard(const mplane::LeafChange& change) const;
    void on_config_applied(const std::vector<mplane::LeafChange>& changes);
    void on_supervision_expired();

    void count(std::string_view name);
    void handle_cplane(std::span<const std::uint8_t> frame, sim::SimTime now);
    void handle_uplane(std::span<const std::uint8_t> frame, sim::SimTime now);
    void capture_ul_symbol(std::int64_t slot, int symbol, codec::EaxcId eaxc, codec::CplaneSection section);
    void capture_prach(std::int64_t slot, codec::EaxcId eaxc, codec::CplaneSection section, sim::SimTime start,
                       std::uint16_t cp_length);
    void send_uplink(const codec::UplaneMessage& message);

    sim::Scheduler& scheduler_;
    RuConfig config_;
    cuplane::VirtualRf& rf_;
    mplane::Datastore datastore_;
    std::unique_ptr<mplane::MplaneServer> server_;
    std::unique_ptr<splane::PtpFlow> ptp_;
    mplane::Dhcpv6Server* dhcp_ = nullptr;
    mplane::CallHomeNetwork* network_ = nullptr;
    UplinkSink uplink_;

    RuPhase phase_ = RuPhase::boot;
    std::vector<PhaseChange> history_;
    std::uint32_t boot_ = 0;
    splane::SyncState sync_ = splane::SyncState::freerun;
    std::vector<CarrierState> carriers_;
    std::optional<mplane::Dhcpv6Lease> lease_;
    bool planned_alarm_raised_ = false;
    bool sync_alarm_active_ = false;

    std::map<std::string, std::uint64_t, std::less<>> counters_;
    std::map<SectionKey, DlSection> dl_sections_;
    std::set<std::size_t> consumed_prach_;
    std::uint8_t ul_seq_ = 0;

    EventLog log_;
    std::uint64_t call_home_attempts_ = 0;
    std::uint64_t call_home_failures_ = 0;
    /// Scheduled callbacks check this so a destroyed or rebooted device is
    /// never touched by stale events.
    std::shared_ptr<std::uint32_t> epoch_ = std::make_shared<std::uint32_t>(0);
};

/// The shipped datastore: device facts, carrier subtree and writable leaves.
mplane::Datastore make_ru_datastore(const RuConfig& config);

} // namespace ofh::ru
