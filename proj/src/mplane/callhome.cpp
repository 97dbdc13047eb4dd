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

#include "ofh/mplane/callhome.hpp"

namespace ofh::mplane {

void CallHomeNetwork::listen(const Endpoint& endpoint, CallHomeAcceptor& acceptor) { listeners_[endpoint] = &acceptor; }

void CallHomeNetwork::unlisten(const Endpoint& endpoint) { listeners_.erase(endpoint); }

CallHomeAcceptor* CallHomeNetwork::find(const Endpoint& endpoint) const {
    auto it = listeners_.find(endpoint);
    return it == listeners_.end() ? nullptr : it->second;
}

CallHomeListener::CallHomeListener(MplaneClient& client, TransportMode mode)
    : client_(client), mode_(mode), dispatch_lock_(std::make_shared<std::recursive_mutex>()) {
    if (mode_ == TransportMode::tcp) tcp_ = std::make_unique<TcpListener>(0);
}

CallHomeListener::~CallHomeListener() = default;

std::shared_ptr<MessageChannel> CallHomeListener::connect() {
    if (!accepting_) return nullptr;
    ++connections_;
    if (mode_ == TransportMode::in_memory) {
        auto [dialler, listener] = make_in_memory_link();
        client_.attach(listener);
        return dialler;
    }
    const int dial_fd = tcp_connect_loopback(tcp_->port());
    if (dial_fd < 0) return nullptr;
    const int accepted_fd = tcp_->accept(2000);
    if (accepted_fd < 0) return nullptr;
    auto listener_side = std::make_shared<StreamChannel>(accepted_fd, dispatch_lock_);
    client_.attach(listener_side);
    listener_side->start();
    // The dialling side is started by its owner once its receiver is installed.
    return std::make_shared<StreamChannel>(dial_fd, dispatch_lock_);
}

} // namespace ofh::mplane
