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

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ofh/mplane/datastore.hpp"
#include "ofh/mplane/dhcpv6.hpp"
#include "ofh/mplane/envelope.hpp"
#include "ofh/mplane/session.hpp"
#include "ofh/mplane/transport.hpp"
#include "ofh/sim/scheduler.hpp"

namespace ofh::mplane {

class CallHomeNetwork;

/// Stand-in for SSH/TLS certificate material: authentication compares
/// fingerprints against a configured trust anchor.
struct Credentials {
    std::string identity;
    std::string fingerprint;
};

enum class AlarmSeverity { critical, major, minor, warning };
std::string_view to_string(AlarmSeverity severity) noexcept;

struct Alarm {
    std::uint32_t fault_id = 0;
    std::string fault_source;
    AlarmSeverity severity = AlarmSeverity::minor;
    bool is_cleared = false;
    sim::SimTime event_time = 0;
    std::string text;
};

enum class SlotState { empty, valid, invalid };
std::string_view to_string(SlotState state) noexcept;

struct SoftwareSlot {
    std::string name;
    std::string build_id;
    std::string checksum;
    SlotState state = SlotState::empty;
    bool active = false;
    bool running = false;
    bool installed = false;
    std::vector<std::uint8_t> image;
};

enum class LogKind { troubleshooting, trace };

/// Lower-case hex SHA-256, the checksum format for software images.
std::string image_checksum(std::span<const std::uint8_t> image);

/// Device-specific behaviour the server delegates to its owner.
struct ServerHooks {
    /// Extra per-change validation run after the schema check.
    std::function<std::optional<RpcError>(const LeafChange&)> guard_change;
    std::function<void(const std::vector<LeafChange>&)> on_config_applied;
    std::function<void()> on_supervision_expired;
    /// Reset was accepted; the owner reboots the device.
    std::function<void()> on_reset;
    std::function<bool()> withhold_supervision_ack;
    std::function<bool()> corrupt_software_image;
    std::function<void(const std::string&)> on_event;
};

struct CallHomeOutcome {
    enum class Kind { established, unreachable, rejected, timeout };
    Kind kind = Kind::unreachable;
    std::string detail;
};

/// NETCONF-style server living on the O-RU. One client session at a time.
class MplaneServer {
public:
    MplaneServer(sim::Scheduler& scheduler, Datastore& datastore, Credentials own,
                 std::string client_trust_anchor, ServerHooks hooks);
    ~MplaneServer();
    MplaneServer(const MplaneServer&) = delete;
    MplaneServer& operator=(const MplaneServer&) = delete;

    MplaneSession& session() noexcept { return session_; }
    const MplaneSession& session() const noexcept { return session_; }

    void on_address_assigned(const std::string& address);

    /// Dials the Call Home client, presents `presented` credentials and runs
    /// the handshake to completion (or rejection). The caller owns retries.
    CallHomeOutcome call_home(CallHomeNetwork& network, const Endpoint& client,
                              const Credentials& presented);

    /// Processes one request. Public so tests can drive the server directly.
    RpcReply handle(const RpcRequest& request);

    void raise_alarm(Alarm alarm);
    void clear_alarm(std::uint32_t fault_id);
    std::vector<Alarm> active_alarms() const;
    const std::vector<Alarm>& alarm_history() const noexcept { return alarm_history_; }

    /// Sends a notification to every subscriber of the stream: the remote
    /// session (if subscribed) and any local listeners.
    void publish(const std::string& stream, Json event);
    using Listener = std::function<void(const Notification&)>;
    void add_listener(const std::string& stream, Listener listener);

    /// Appends to the journal (and to an active troubleshooting/trace log).
    void record_event(const std::string& category, const std::string& text);

    const std::vector<SoftwareSlot>& software_slots() const noexcept { return slots_; }
    /// Boot-time slot selection: the active slot becomes the running one.
    void boot_active_slot();

    /// Sends a close document and drops the connection.
    void close_session(const std::string& reason);

    std::uint64_t rejected_handshakes() const noexcept { return rejected_handshakes_; }

private:
    void on_document(const std::string& text);
    void handle_auth_result(const Json& body);
    void on_channel_closed();
    void detach_channel();
    void send(const Json& doc);
    void resolve_handshake(CallHomeOutcome::Kind kind, std::string detail);

    RpcReply do_get(const RpcRequest& request, bool filtered);
    RpcReply do_edit(const RpcRequest& request);
    RpcReply do_subscribe(const RpcRequest& request);
    RpcReply do_kick(const RpcRequest& request);
    RpcReply do_download(const RpcRequest& request);
    RpcReply do_install(const RpcRequest& request);
    RpcReply do_activate(const RpcRequest& request);
    RpcReply do_reset(const RpcRequest& request);
    RpcReply do_log(const RpcRequest& request);

    void arm_supervision();
    void supervision_expired();
    void sync_alarm_tree();
    void sync_software_tree();

    sim::Scheduler& scheduler_;
    Datastore& datastore_;
    Credentials own_;
    std::string client_trust_anchor_;
    ServerHooks hooks_;

    MplaneSession session_;
    std::shared_ptr<MessageChannel> channel_;
    std::uint64_t next_session_id_ = 1;
    std::uint64_t next_subscription_id_ = 1;
    std::uint64_t rejected_handshakes_ = 0;
    std::optional<sim::Scheduler::EventId> supervision_event_;

    std::mutex handshake_mutex_;
    std::condition_variable handshake_cv_;
    std::optional<CallHomeOutcome> handshake_result_;

    std::vector<std::pair<std::string, Listener>> listeners_;
    std::vector<Alarm> alarm_history_;
    std::vector<SoftwareSlot> slots_;

    struct LogWindow {
        LogKind kind = LogKind::troubleshooting;
        bool recording = false;
        bool started = false;
        Json events = Json::array();
    } log_;
};

} // namespace ofh::mplane
