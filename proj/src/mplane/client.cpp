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

#include "ofh/mplane/client.hpp"

#include "ofh/mplane/transport.hpp"

namespace ofh::mplane {

namespace {

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0F]);
    }
    return out;
}

RpcReply transport_failure(std::uint64_t id, std::string message) {
    return RpcReply::make_error(id, RpcError{error_tag::transport_error, "error", std::move(message), {}});
}

} // namespace

MplaneClient::MplaneClient(Credentials own, std::string server_trust_anchor)
    : own_(std::move(own)), server_trust_anchor_(std::move(server_trust_anchor)) {}

MplaneClient::~MplaneClient() {
    if (channel_) {
        channel_->set_receiver(nullptr);
        channel_->set_close_handler(nullptr);
        channel_->close();
        channel_.reset();
    }
}

void MplaneClient::attach(std::shared_ptr<MessageChannel> channel) {
    if (channel_) {
        channel_->set_receiver(nullptr);
        channel_->set_close_handler(nullptr);
        channel_->close();
    }
    {
        std::lock_guard lock(mutex_);
        replies_.clear();
        close_reason_.clear();
        if (session_.state() != SessionState::idle) {
            if (session_.state() != SessionState::closed) session_.transition(SessionState::closed);
            session_.transition(SessionState::idle);
        }
        session_.transition(SessionState::authenticating);
    }
    channel_ = std::move(channel);
    channel_->set_receiver([this](const std::string& text) { on_document(text); });
    channel_->set_close_handler([this] { on_closed(); });
}

bool MplaneClient::established() const {
    std::lock_guard lock(mutex_);
    return is_operational(session_.state());
}

void MplaneClient::send(const Json& doc) {
    const std::string text = serialize(doc);
    if (trace_) trace_(Direction::sent, text);
    if (channel_) channel_->send(text);
}

void MplaneClient::on_document(const std::string& text) {
    if (trace_) trace_(Direction::received, text);
    Json doc = Json::parse(text, nullptr, false);
    switch (classify(doc)) {
    case DocumentKind::auth: {
        const Json& body = doc["auth"];
        bool accepted = false;
        {
            std::lock_guard lock(mutex_);
            if (session_.state() != SessionState::authenticating) return;
            accepted = body.value("fingerprint", "") == server_trust_anchor_;
            if (accepted) {
                session_.peer_identity = body.value("identity", "");
            } else {
                ++rejected_;
                close_reason_ = "server credential mismatch";
                session_.transition(SessionState::closed);
            }
        }
        if (accepted) {
            send({{"auth-result",
                   {{"accepted", true}, {"identity", own_.identity}, {"fingerprint", own_.fingerprint}}}});
        } else {
            send({{"auth-result", {{"accepted", false}, {"reason", "server credential mismatch"}}}});
        }
        cv_.notify_all();
        return;
    }
    case DocumentKind::hello: {
        {
            std::lock_guard lock(mutex_);
            if (session_.state() != SessionState::authenticating) return;
            session_.session_id = doc["hello"].value("session-id", std::uint64_t{0});
            session_.transition(SessionState::established);
        }
        send({{"hello", {{"capabilities", Json::array({"urn:o-ran:mplane:1.0"})}}}});
        cv_.notify_all();
        return;
    }
    case DocumentKind::rpc_reply: {
        RpcReply reply = reply_from_json(doc);
        {
            std::lock_guard lock(mutex_);
            replies_[reply.message_id] = std::move(reply);
        }
        cv_.notify_all();
        return;
    }
    case DocumentKind::notification: {
        {
            std::lock_guard lock(mutex_);
            inbox_.push_back(notification_from_json(doc));
        }
        cv_.notify_all();
        return;
    }
    case DocumentKind::pong: {
        {
            std::lock_guard lock(mutex_);
            ++pongs_received_;
        }
        cv_.notify_all();
        return;
    }
    case DocumentKind::close: {
        {
            std::lock_guard lock(mutex_);
            close_reason_ = doc["close"].value("reason", "");
            if (session_.state() != SessionState::closed) session_.transition(SessionState::closed);
        }
        cv_.notify_all();
        return;
    }
    default:
        return;
    }
}

void MplaneClient::on_closed() {
    {
        std::lock_guard lock(mutex_);
        if (session_.state() != SessionState::closed) session_.transition(SessionState::closed);
        if (close_reason_.empty()) close_reason_ = "connection closed";
    }
    cv_.notify_all();
}

RpcReply MplaneClient::call(Operation op, Json body) {
    RpcRequest request;
    {
        std::lock_guard lock(mutex_);
        request.message_id = next_message_id_++;
    }
    request.operation = op;
    request.body = std::move(body);
    return call(request);
}

RpcReply MplaneClient::call(const RpcRequest& request) {
    {
        std::lock_guard lock(mutex_);
        if (!is_operational(session_.state()) || !channel_ || !channel_->is_open()) {
            return transport_failure(request.message_id,
                                     "session not established (" + std::string(to_string(session_.state())) + ")");
        }
        if (request.message_id >= next_message_id_) next_message_id_ = request.message_id + 1;
    }
    send(to_json(request));
    std::unique_lock lock(mutex_);
    const auto ready = [&] { return replies_.count(request.message_id) != 0 || session_.state() == SessionState::closed; };
    if (channel_->synchronous()) {
        if (!ready()) return transport_failure(request.message_id, "no reply");
    } else if (!cv_.wait_for(lock, reply_timeout_, ready)) {
        return transport_failure(request.message_id, "reply timed out");
    }
    auto it = replies_.find(request.message_id);
    if (it == replies_.end()) return transport_failure(request.message_id, "session closed before reply");
    RpcReply reply = std::move(it->second);
    replies_.erase(it);
    return reply;
}

RpcReply MplaneClient::get(const std::optional<std::string>& filter) {
    if (!filter) return call(Operation::get);
    return call(Operation::get_with_filter, {{"filter", *filter}});
}

RpcReply MplaneClient::edit_config(const std::vector<LeafChange>& changes) {
    Json list = Json::array();
    for (const auto& c : changes) list.push_back({{"path", c.path}, {"value", c.value}});
    return call(Operation::edit_config, {{"changes", std::move(list)}});
}

RpcReply MplaneClient::subscribe(const std::string& stream) {
    RpcReply reply = call(Operation::subscribe, {{"stream", stream}});
    if (reply.kind == RpcReply::Kind::data) {
        std::lock_guard lock(mutex_);
        session_.subscriptions[stream] = reply.data.value("subscription-id", std::uint64_t{0});
    }
    return reply;
}

RpcReply MplaneClient::supervision_kick(std::int64_t interval_s, std::int64_t guard_s) {
    RpcReply reply = call(Operation::supervision_kick, {{"interval", interval_s}, {"guard", guard_s}});
    if (!reply.is_error()) {
        std::lock_guard lock(mutex_);
        session_.supervision.interval_s = interval_s;
        session_.supervision.guard_s = guard_s;
        if (session_.state() == SessionState::established) session_.transition(SessionState::supervised);
    }
    return reply;
}

RpcReply MplaneClient::sw_download(const std::string& build_id, const std::string& checksum,
                                   const std::vector<std::uint8_t>& image) {
    return call(Operation::sw_download, {{"build-id", build_id}, {"checksum", checksum}, {"image", to_hex(image)}});
}

RpcReply MplaneClient::sw_install(const std::string& slot) { return call(Operation::sw_install, {{"slot", slot}}); }
RpcReply MplaneClient::sw_activate(const std::string& slot) { return call(Operation::sw_activate, {{"slot", slot}}); }
RpcReply MplaneClient::reset() { return call(Operation::reset); }

RpcReply MplaneClient::log_start(LogKind kind) {
    return call(Operation::log_start, {{"kind", kind == LogKind::trace ? "trace" : "troubleshooting"}});
}
RpcReply MplaneClient::log_stop() { return call(Operation::log_stop); }
RpcReply MplaneClient::log_collect() { return call(Operation::log_collect); }

void MplaneClient::sync() {
    std::uint64_t target = 0;
    {
        std::lock_guard lock(mutex_);
        if (!channel_ || !channel_->is_open()) return;
        target = ++pings_sent_;
    }
    send({{"ping", {{"seq", target}}}});
    std::unique_lock lock(mutex_);
    cv_.wait_for(lock, reply_timeout_,
                 [&] { return pongs_received_ >= target || session_.state() == SessionState::closed; });
}

std::vector<Notification> MplaneClient::notifications() const {
    std::lock_guard lock(mutex_);
    return inbox_;
}

std::vector<Notification> MplaneClient::take_notifications() {
    std::lock_guard lock(mutex_);
    return std::exchange(inbox_, {});
}

std::string MplaneClient::last_close_reason() const {
    std::lock_guard lock(mutex_);
    return close_reason_;
}

} // namespace ofh::mplane
