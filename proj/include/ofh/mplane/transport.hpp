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
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace ofh::mplane {

/// One end of a duplex document channel. Inbound documents are pushed to the
/// receiver callback in arrival order, one at a time.
class MessageChannel {
public:
    using Receiver = std::function<void(const std::string&)>;

    virtual ~MessageChannel() = default;

    virtual void send(const std::string& document) = 0;
    virtual void set_receiver(Receiver receiver) = 0;
    virtual void set_close_handler(std::function<void()> handler) = 0;
    virtual void close() = 0;
    virtual bool is_open() const = 0;
    /// True if inbound documents are delivered before `send` returns.
    virtual bool synchronous() const noexcept = 0;
};

/// Hermetic duplex link. Delivery is synchronous: `send` runs the peer's
/// receiver before returning, with re-entrant sends queued behind it.
std::pair<std::shared_ptr<MessageChannel>, std::shared_ptr<MessageChannel>> make_in_memory_link();

/// Length-prefixed framing: 4-byte big-endian length, then the document.
std::vector<std::uint8_t> frame_document(const std::string& document);

/// Incremental deframer for a byte stream.
class Deframer {
public:
    void feed(std::span<const std::uint8_t> bytes);
    std::optional<std::string> next();

private:
    std::vector<std::uint8_t> buffer_;
};

/// Framed channel over a connected stream socket. A reader thread delivers
/// frames while holding `dispatch_lock`, which `send` also takes, so callbacks
/// on either end of an in-process pair never overlap.
class StreamChannel final : public MessageChannel {
public:
    StreamChannel(int fd, std::shared_ptr<std::recursive_mutex> dispatch_lock);
    ~StreamChannel() override;

    void send(const std::string& document) override;
    void set_receiver(Receiver receiver) override;
    void set_close_handler(std::function<void()> handler) override;
    void close() override;
    bool is_open() const override;
    bool synchronous() const noexcept override { return false; }

    /// Starts the reader thread; call after the receiver is installed.
    void start();

private:
    void read_loop(std::stop_token stop);

    int fd_;
    std::shared_ptr<std::recursive_mutex> dispatch_lock_;
    mutable std::mutex state_mutex_;
    Receiver receiver_;
    std::function<void()> close_handler_;
    bool open_ = true;
    std::jthread reader_;
};

/// Loopback TCP helpers for attaching the M-Plane to a real socket.
class TcpListener {
public:
    /// Port 0 picks an ephemeral port.
    explicit TcpListener(std::uint16_t port = 0);
    ~TcpListener();
    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;

    std::uint16_t port() const noexcept { return port_; }
    /// Blocks up to `timeout_ms`; returns the connected fd or -1.
    int accept(int timeout_ms);

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

/// Returns a connected fd or -1.
int tcp_connect_loopback(std::uint16_t port);

} // namespace ofh::mplane
