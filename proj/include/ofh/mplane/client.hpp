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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ofh/mplane/datastore.hpp"
#include "ofh/mplane/envelope.hpp"
#include "ofh/mplane/server.hpp"
#include "ofh/mplane/session.hpp"
#include "ofh/mplane/transport.hpp"

namespace ofh::mplane {

/// NETCONF-style client run by the test equipment. It is the passive side of
/// Call Home: the O-RU dials in and the client authenticates it.
class MplaneClient {
public:
    enum class Direction { sent, received };
    using Trace = std::function<void(Direction, const std::string&)>;

    MplaneClient(Credentials own, std::string server_trust_anchor);
    ~MplaneClient();
    MplaneClient(const MplaneClient&) = delete;
    MplaneClient& operator=(const MplaneClient&) = delete;

    /// Takes over a freshly accepted connection and waits for the server's
    /// authentication document.
    void attach(std::shared_ptr<MessageChannel> channel);

    MplaneSession& session() noexcept { return session_; }
    const MplaneSession& session() const noexcept { return session_; }
    bool established() const;

    /// One request, one reply. Before the session is established (or after it
    /// closed) this returns a transport-error reply without sending anything.
    RpcReply call(Operation op, Json body = Json::object());
    /// Sends `request` with its own message id, as a proxy would.
    RpcReply call(const RpcRequest& request);

    RpcReply get(const std::optional<std::string>& filter = std::nullopt);
    RpcReply edit_config(const std::vector<LeafChange>& changes);
    RpcReply subscribe(const std::string& stream);
    RpcReply supervision_kick(std::int64_t interval_s, std::int64_t guard_s);
    RpcReply sw_download(const std::string& build_id, const std::string& checksum,
                         const std::vector<std::uint8_t>& image);
    RpcReply sw_install(const std::string& slot);
    RpcReply sw_activate(const std::string& slot);
    RpcReply reset();
    RpcReply log_start(LogKind kind);
    RpcReply log_stop();
    RpcReply log_collect();

    /// Round-trips a ping so every notification sent before it has arrived.
    void sync();

    std::vector<Notification> notifications() const;
    std::vector<Notification> take_notifications();

    /// Handshakes this client refused (credential mismatch).
    std::uint64_t rejected_handshakes() const noexcept { return rejected_; }
    std::string last_close_reason() const;

    void set_trace(Trace trace) { trace_ = std::move(trace); }
    void set_reply_timeout(std::chrono::milliseconds timeout) { reply_timeout_ = timeout; }

private:
    void on_document(const std::string& text);
    void on_closed();
    void send(const Json& doc);

    Credentials own_;
    std::string server_trust_anchor_;
    MplaneSession session_;
    std::shared_ptr<MessageChannel> channel_;
    Trace trace_;
    std::chrono::milliseconds reply_timeout_{5000};

    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::map<std::uint64_t, RpcReply> replies_;
    std::vector<Notification> inbox_;
    std::uint64_t next_message_id_ = 1;
    std::uint64_t pings_sent_ = 0;
    std::uint64_t pongs_received_ = 0;
    std::uint64_t rejected_ = 0;
    std::string close_reason_;
};

} // namespace ofh::mplane
