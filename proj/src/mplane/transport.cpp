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

#include "ofh/mplane/transport.hpp"

#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <stdexcept>

namespace ofh::mplane {

namespace {

/// Shared state of an in-memory link. Single-threaded by construction: both
/// ends are driven from the simulation thread.
struct LinkCore {
    bool open = true;
    bool delivering = false;
    std::deque<std::pair<int, std::string>> pending;
    std::array<MessageChannel::Receiver, 2> receivers;
    std::array<std::function<void()>, 2> close_handlers;

    void pump() {
        if (delivering) return;
        delivering = true;
        struct Reset {
            bool& flag;
            ~Reset() { flag = false; }
        } reset{delivering};
        while (open && !pending.empty()) {
            auto [side, doc] = std::move(pending.front());
            pending.pop_front();
            if (auto& receiver = receivers[static_cast<std::size_t>(side)]) {
                auto copy = receiver;
                copy(doc);
            }
        }
    }

    void shut() {
        if (!open) return;
        open = false;
        pending.clear();
        for (auto& handler : close_handlers) {
            if (handler) {
                auto copy = std::move(handler);
                copy();
            }
        }
    }
};

class InMemoryChannel final : public MessageChannel {
public:
    InMemoryChannel(std::shared_ptr<LinkCore> core, int side) : core_(std::move(core)), side_(side) {}

    void send(const std::string& document) override {
        if (!core_->open) return;
        core_->pending.emplace_back(1 - side_, document);
        core_->pump();
    }
    void set_receiver(Receiver receiver) override { core_->receivers[static_cast<std::size_t>(side_)] = std::move(receiver); }
    void set_close_handler(std::function<void()> handler) override {
        core_->close_handlers[static_cast<std::size_t>(side_)] = std::move(handler);
    }
    void close() override { core_->shut(); }
    bool is_open() const override { return core_->open; }
    bool synchronous() const noexcept override { return true; }

private:
    std::shared_ptr<LinkCore> core_;
    int side_;
};

} // namespace

std::pair<std::shared_ptr<MessageChannel>, std::shared_ptr<MessageChannel>> make_in_memory_link() {
    auto core = std::make_shared<LinkCore>();
    return {std::make_shared<InMemoryChannel>(core, 0), std::make_shared<InMemoryChannel>(core, 1)};
}

std::vector<std::uint8_t> frame_document(const std::string& document) {
    if (document.size() > 0xFFFFFFFFu) throw std::length_error("document too large to frame");
    const auto n = static_cast<std::uint32_t>(document.size());
    std::vector<std::uint8_t> out;
    out.reserve(4 + document.size());
    out.push_back(static_cast<std::uint8_t>(n >> 24));
    out.push_back(static_cast<std::uint8_t>(n >> 16));
    out.push_back(static_cast<std::uint8_t>(n >> 8));
    out.push_back(static_cast<std::uint8_t>(n));
    out.insert(out.end(), document.begin(), document.end());
    return out;
}

void Deframer::feed(std::span<const std::uint8_t> bytes) { buffer_.insert(buffer_.end(), bytes.begin(), bytes.end()); }

std::optional<std::string> Deframer::next() {
    if (buffer_.size() < 4) return std::nullopt;
    const std::size_t n = (std::size_t{buffer_[0]} << 24) | (std::size_t{buffer_[1]} << 16) |
                          (std::size_t{buffer_[2]} << 8) | std::size_t{buffer_[3]};
    if (buffer_.size() < 4 + n) return std::nullopt;
    std::string doc(buffer_.begin() + 4, buffer_.begin() + static_cast<std::ptrdiff_t>(4 + n));
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(4 + n));
    return doc;
}

StreamChannel::StreamChannel(int fd, std::shared_ptr<std::recursive_mutex> dispatch_lock)
    : fd_(fd), dispatch_lock_(std::move(dispatch_lock)) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

StreamChannel::~StreamChannel() {
    // Stop first so the reader does not report our own shutdown as a close.
    reader_.request_stop();
    close();
    if (reader_.joinable()) reader_.join();
    ::close(fd_);
}

void StreamChannel::start() {
    reader_ = std::jthread([this](std::stop_token stop) { read_loop(stop); });
}

void StreamChannel::send(const std::string& document) {
    const auto frame = frame_document(document);
    std::lock_guard dispatch(*dispatch_lock_);
    {
        std::lock_guard lock(state_mutex_);
        if (!open_) return;
    }
    std::size_t written = 0;
    while (written < frame.size()) {
        const ssize_t n = ::send(fd_, frame.data() + written, frame.size() - written, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            close();
            return;
        }
        written += static_cast<std::size_t>(n);
    }
}

// Handlers change under the dispatch lock, so once a setter returns the old
// handler is neither running nor about to run.
void StreamChannel::set_receiver(Receiver receiver) {
    std::lock_guard dispatch(*dispatch_lock_);
    std::lock_guard lock(state_mutex_);
    receiver_ = std::move(receiver);
}

void StreamChannel::set_close_handler(std::function<void()> handler) {
    std::lock_guard dispatch(*dispatch_lock_);
    std::lock_guard lock(state_mutex_);
    close_handler_ = std::move(handler);
}

void StreamChannel::close() {
    std::lock_guard lock(state_mutex_);
    if (!open_) return;
    open_ = false;
    ::shutdown(fd_, SHUT_RDWR);
}

bool StreamChannel::is_open() const {
    std::lock_guard lock(state_mutex_);
    return open_;
}

void StreamChannel::read_loop(std::stop_token stop) {
    Deframer deframer;
    std::array<std::uint8_t, 4096> buf{};
    while (!stop.stop_requested()) {
        pollfd pfd{fd_, POLLIN, 0};
        const int ready = ::poll(&pfd, 1, 20);
        if (ready < 0 && errno != EINTR) break;
        if (ready <= 0) continue;
        const ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        deframer.feed(std::span(buf.data(), static_cast<std::size_t>(n)));
        while (auto doc = deframer.next()) {
            std::lock_guard dispatch(*dispatch_lock_);
            Receiver receiver;
            {
                std::lock_guard lock(state_mutex_);
                receiver = receiver_;
            }
            if (receiver) receiver(*doc);
        }
    }
    std::lock_guard dispatch(*dispatch_lock_);
    std::function<void()> handler;
    {
        std::lock_guard lock(state_mutex_);
        open_ = false;
        handler = std::move(close_handler_);
    }
    if (handler && !stop.stop_requested()) handler();
}

TcpListener::TcpListener(std::uint16_t port) {
    fd_ = ::socket(AF_INET6, SOCK_STREAM, 0);
    if (fd_ < 0) throw std::runtime_error("cannot create IPv6 socket");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in6 addr{};
    addr.sin6_family = AF_INET6;
    addr.sin6_addr = in6addr_loopback;
    addr.sin6_port = htons(port);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 || ::listen(fd_, 8) != 0) {
        ::close(fd_);
        throw std::runtime_error("cannot listen on [::1]:" + std::to_string(port));
    }
    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin6_port);
}

TcpListener::~TcpListener() {
    if (fd_ >= 0) ::close(fd_);
}

int TcpListener::accept(int timeout_ms) {
    pollfd pfd{fd_, POLLIN, 0};
    if (::poll(&pfd, 1, timeout_ms) <= 0) return -1;
    return ::accept(fd_, nullptr, nullptr);
}

int tcp_connect_loopback(std::uint16_t port) {
    const int fd = ::socket(AF_INET6, SOCK_STREAM, 0);
    if (fd < 0) return -1;
    sockaddr_in6 addr{};
    addr.sin6_family = AF_INET6;
    addr.sin6_addr = in6addr_loopback;
    addr.sin6_port = htons(port);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
        ::close(fd);
        return -1;
    }
    return fd;
}

} // namespace ofh::mplane
