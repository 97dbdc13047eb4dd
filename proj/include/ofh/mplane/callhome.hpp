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

#include <map>
#include <memory>
#include <mutex>

#include "ofh/mplane/client.hpp"
#include "ofh/mplane/dhcpv6.hpp"
#include "ofh/mplane/transport.hpp"

namespace ofh::mplane {

enum class TransportMode { in_memory, tcp };

/// Something the O-RU can dial during Call Home.
class CallHomeAcceptor {
public:
    virtual ~CallHomeAcceptor() = default;
    /// Opens a connection and returns the dialling side's channel, or nullptr
    /// when the listener is closed.
    virtual std::shared_ptr<MessageChannel> connect() = 0;
};

/// Endpoint registry standing in for IPv6 routing between RU and TER.
class CallHomeNetwork {
public:
    void listen(const Endpoint& endpoint, CallHomeAcceptor& acceptor);
    void unlisten(const Endpoint& endpoint);
    CallHomeAcceptor* find(const Endpoint& endpoint) const;

private:
    std::map<Endpoint, CallHomeAcceptor*> listeners_;
};

/// The TER's Call Home listener. Each accepted connection is handed to the
/// owned client, replacing any earlier one.
class CallHomeListener final : public CallHomeAcceptor {
public:
    CallHomeListener(MplaneClient& client, TransportMode mode);
    ~CallHomeListener() override;

    std::shared_ptr<MessageChannel> connect() override;

    void set_accepting(bool accepting) { accepting_ = accepting; }
    std::uint64_t connections() const noexcept { return connections_; }
    TransportMode mode() const noexcept { return mode_; }

private:
    MplaneClient& client_;
    TransportMode mode_;
    bool accepting_ = true;
    std::uint64_t connections_ = 0;
    std::shared_ptr<std::recursive_mutex> dispatch_lock_;
    std::unique_ptr<TcpListener> tcp_;
};

} // namespace ofh::mplane
