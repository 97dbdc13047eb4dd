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

#include "ofh/mplane/server.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>

#include "ofh/mplane/callhome.hpp"

namespace ofh::mplane {

namespace {

constexpr std::uint32_t kSupervisionFaultId = 31;

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0F]);
    }
    return out;
}

std::optional<std::vector<std::uint8_t>> from_hex(const std::string& text) {
    if (text.size() % 2 != 0) return std::nullopt;
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::vector<std::uint8_t> out(text.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = nibble(text[2 * i]);
        const int lo = nibble(text[2 * i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string body_text(const Json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) return {};
    return it->get<std::string>();
}

RpcError error(const char* tag, std::string message, std::string path = {}) {
    return RpcError{tag, "error", std::move(message), std::move(path)};
}

} // namespace

std::string_view to_string(AlarmSeverity severity) noexcept {
    switch (severity) {
    case AlarmSeverity::critical: return "CRITICAL";
    case AlarmSeverity::major: return "MAJOR";
    case AlarmSeverity::minor: return "MINOR";
    case AlarmSeverity::warning: return "WARNING";
    }
    return "UNKNOWN";
}

std::string_view to_string(SlotState state) noexcept {
    switch (state) {
    case SlotState::empty: return "EMPTY";
    case SlotState::valid: return "VALID";
    case SlotState::invalid: return "INVALID";
    }
    return "UNKNOWN";
}

std::string image_checksum(std::span<const std::uint8_t> image) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(image.data(), image.size(), digest, &length, EVP_sha256(), nullptr);
    return to_hex(std::span<const std::uint8_t>(digest, length));
}

MplaneServer::MplaneServer(sim::Scheduler& scheduler, Datastore& datastore, Credentials own,
                           std::string client_trust_anchor, ServerHooks hooks)
    : scheduler_(scheduler),
      datastore_(datastore),
      own_(std::move(own)),
      client_trust_anchor_(std::move(client_trust_anchor)),
      hooks_(std::move(hooks)) {
    const std::vector<std::uint8_t> factory_image{'o', 'f', 'h', '-', 'r', 'u', '-', '1', '.', '0'};
    SoftwareSlot factory;
    factory.name = "swSlot1";
    factory.build_id = "1.0.0";
    factory.checksum = image_checksum(factory_image);
    factory.state = SlotState::valid;
    factory.active = true;
    factory.running = true;
    factory.installed = true;
    factory.image = factory_image;
    slots_.push_back(std::move(factory));
    SoftwareSlot spare;
    spare.name = "swSlot2";
    slots_.push_back(std::move(spare));
    sync_software_tree();
    sync_alarm_tree();
}

MplaneServer::~MplaneServer() {
    if (channel_) {
        channel_->set_receiver(nullptr);
        channel_->set_close_handler(nullptr);
        channel_->close();
        channel_.reset();
    }
}

void MplaneServer::on_address_assigned(const std::string& address) {
    if (session_.state() != SessionState::address_assigned) session_.transition(SessionState::address_assigned);
    record_event("dhcp", "address assigned " + address);
}

CallHomeOutcome MplaneServer::call_home(CallHomeNetwork& network, const Endpoint& client,
                                        const Credentials& presented) {
    if (session_.state() == SessionState::closed) session_.transition(SessionState::address_assigned);
    session_.transition(SessionState::call_home_sent);
    record_event("call-home", "dialling [" + client.address + "]:" + std::to_string(client.port));

    auto fall_back = [&](CallHomeOutcome::Kind kind, std::string detail) {
        if (session_.state() != SessionState::address_assigned) session_.transition(SessionState::address_assigned);
        record_event("call-home", detail);
        return CallHomeOutcome{kind, std::move(detail)};
    };

    CallHomeAcceptor* acceptor = network.find(client);
    std::shared_ptr<MessageChannel> channel = acceptor != nullptr ? acceptor->connect() : nullptr;
    if (!channel) return fall_back(CallHomeOutcome::Kind::unreachable, "client endpoint unreachable");

    if (channel_) {
        channel_->set_receiver(nullptr);
        channel_->set_close_handler(nullptr);
        channel_->close();
    }
    channel_ = channel;
    {
        std::lock_guard lock(handshake_mutex_);
        handshake_result_.reset();
    }
    channel->set_receiver([this](const std::string& text) { on_document(text); });
    channel->set_close_handler([this] { on_channel_closed(); });
    if (auto* stream = dynamic_cast<StreamChannel*>(channel.get())) stream->start();

    session_.transition(SessionState::authenticating);
    send({{"auth", {{"identity", presented.identity}, {"fingerprint", presented.fingerprint}}}});

    CallHomeOutcome outcome;
    {
        std::unique_lock lock(handshake_mutex_);
        if (!handshake_cv_.wait_for(lock, std::chrono::seconds(5), [&] { return handshake_result_.has_value(); })) {
            lock.unlock();
            detach_channel();
            return fall_back(CallHomeOutcome::Kind::timeout, "handshake timed out");
        }
        outcome = *handshake_result_;
    }
    if (outcome.kind != CallHomeOutcome::Kind::established) {
        detach_channel();
        return fall_back(outcome.kind, outcome.detail);
    }
    record_event("call-home", "session " + std::to_string(session_.session_id) + " established");
    return outcome;
}

void MplaneServer::resolve_handshake(CallHomeOutcome::Kind kind, std::string detail) {
    {
        std::lock_guard lock(handshake_mutex_);
        handshake_result_ = CallHomeOutcome{kind, std::move(detail)};
    }
    handshake_cv_.notify_all();
}

void MplaneServer::send(const Json& doc) {
    if (channel_ && channel_->is_open()) channel_->send(serialize(doc));
}

void MplaneServer::on_document(const std::string& text) {
    Json doc = Json::parse(text, nullptr, false);
    switch (classify(doc)) {
    case DocumentKind::auth_result:
        handle_auth_result(doc["auth-result"]);
        return;
    case DocumentKind::hello:
        if (is_operational(session_.state())) resolve_handshake(CallHomeOutcome::Kind::established, "hello exchanged");
        return;
    case DocumentKind::rpc: {
        RpcRequest request;
        try {
            request = request_from_json(doc);
        } catch (const std::exception& e) {
            const auto id = doc["rpc"].value("message-id", std::uint64_t{0});
            send(to_json(RpcReply::make_error(id, error(error_tag::operation_not_supported, e.what()))));
            return;
        }
        send(to_json(handle(request)));
        return;
    }
    case DocumentKind::ping:
        send({{"pong", doc["ping"]}});
        return;
    case DocumentKind::close:
        if (session_.state() != SessionState::closed) {
            if (supervision_event_) scheduler_.cancel(*supervision_event_);
            supervision_event_.reset();
            session_.transition(SessionState::closed);
            record_event("session", "closed by client");
        }
        detach_channel();
        return;
    default:
        return;
    }
}

void MplaneServer::handle_auth_result(const Json& body) {
    if (session_.state() != SessionState::authenticating) return;
    if (!body.value("accepted", false)) {
        resolve_handshake(CallHomeOutcome::Kind::rejected, "client rejected credentials: " + body.value("reason", ""));
        return;
    }
    if (body.value("fingerprint", "") != client_trust_anchor_) {
        ++rejected_handshakes_;
        send({{"close", {{"reason", "client credential mismatch"}}}});
        resolve_handshake(CallHomeOutcome::Kind::rejected, "client credential mismatch");
        return;
    }
    session_.peer_identity = body.value("identity", "");
    session_.transition(SessionState::established);
    session_.session_id = next_session_id_++;
    send({{"hello",
           {{"session-id", session_.session_id},
            {"capabilities", Json::array({"urn:o-ran:mplane:1.0", "urn:o-ran:supervision:1.0"})}}}});
}

void MplaneServer::on_channel_closed() {
    if (session_.state() == SessionState::closed || session_.state() == SessionState::address_assigned) return;
    if (session_.state() == SessionState::authenticating) {
        resolve_handshake(CallHomeOutcome::Kind::rejected, "connection closed during handshake");
        return;
    }
    if (supervision_event_) scheduler_.cancel(*supervision_event_);
    supervision_event_.reset();
    session_.transition(SessionState::closed);
}

// The session is over on our side; a late close callback from this channel's
// reader must not touch whatever session comes next.
void MplaneServer::detach_channel() {
    if (!channel_) return;
    channel_->set_receiver(nullptr);
    channel_->set_close_handler(nullptr);
    channel_->close();
}

void MplaneServer::close_session(const std::string& reason) {
    if (supervision_event_) scheduler_.cancel(*supervision_event_);
    supervision_event_.reset();
    send({{"close", {{"reason", reason}}}});
    detach_channel();
    if (session_.state() != SessionState::closed) session_.transition(SessionState::closed);
    record_event("session", "closed: " + reason);
}

RpcReply MplaneServer::handle(const RpcRequest& request) {
    if (!is_operational(session_.state())) {
        return RpcReply::make_error(request.message_id,
                                    error(error_tag::access_denied, "session not established"));
    }
    const bool log_rpc = request.operation == Operation::log_start || request.operation == Operation::log_stop ||
                         request.operation == Operation::log_collect;
    if (!log_rpc) record_event("rpc", std::string(to_string(request.operation)));
    switch (request.operation) {
    case Operation::get: return do_get(request, false);
    case Operation::get_with_filter: return do_get(request, true);
    case Operation::edit_config: return do_edit(request);
    case Operation::subscribe: return do_subscribe(request);
    case Operation::supervision_kick: return do_kick(request);
    case Operation::sw_download: return do_download(request);
    case Operation::sw_install: return do_install(request);
    case Operation::sw_activate: return do_activate(request);
    case Operation::reset: return do_reset(request);
    case Operation::log_start:
    case Operation::log_stop:
    case Operation::log_collect: return do_log(request);
    }
    return RpcReply::make_error(request.message_id, error(error_tag::operation_not_supported, "unknown operation"));
}

RpcReply MplaneServer::do_get(const RpcRequest& request, bool filtered) {
    if (!filtered) return RpcReply::make_data(request.message_id, datastore_.tree());
    const std::string filter = body_text(request.body, "filter");
    if (filter.empty()) {
        return RpcReply::make_error(request.message_id, error(error_tag::data_missing, "filter required"));
    }
    return RpcReply::make_data(request.message_id, datastore_.fragment(filter));
}

RpcReply MplaneServer::do_edit(const RpcRequest& request) {
    std::vector<LeafChange> changes;
    auto it = request.body.find("changes");
    if (it == request.body.end() || !it->is_array()) {
        return RpcReply::make_error(request.message_id, error(error_tag::data_missing, "changes required"));
    }
    for (const auto& c : *it) {
        if (!c.is_object() || !c.contains("path") || !c.contains("value") || !c["path"].is_string() ||
            !c["value"].is_string()) {
            return RpcReply::make_error(request.message_id, error(error_tag::invalid_value, "malformed change"));
        }
        changes.push_back({c["path"].get<std::string>(), c["value"].get<std::string>()});
    }
    if (auto failure = datastore_.apply_edit(changes, hooks_.guard_change)) {
        record_event("config", "edit rejected at " + failure->path + ": " + failure->message);
        return RpcReply::make_error(request.message_id, *failure);
    }
    for (const auto& c : changes) record_event("config", c.path + " = " + c.value);
    if (hooks_.on_config_applied) hooks_.on_config_applied(changes);
    return RpcReply::make_ok(request.message_id);
}

RpcReply MplaneServer::do_subscribe(const RpcRequest& request) {
    const std::string stream = body_text(request.body, "stream");
    if (stream.empty()) return RpcReply::make_error(request.message_id, error(error_tag::data_missing, "stream required"));
    auto [it, inserted] = session_.subscriptions.try_emplace(stream, next_subscription_id_);
    if (inserted) ++next_subscription_id_;
    return RpcReply::make_data(request.message_id, {{"subscription-id", it->second}, {"stream", stream}});
}

RpcReply MplaneServer::do_kick(const RpcRequest& request) {
    const sim::SimTime now = scheduler_.now();
    if (session_.state() == SessionState::supervised && session_.supervision.expired_at(now)) {
        // A kick landing on (or after) the expiry instant is late.
        supervision_expired();
        return RpcReply::make_error(request.message_id, error(error_tag::operation_failed, "supervision already expired"));
    }
    const bool withheld = hooks_.withhold_supervision_ack && hooks_.withhold_supervision_ack();
    if (session_.state() == SessionState::supervised && withheld) {
        record_event("supervision", "kick not acknowledged");
        return RpcReply::make_error(request.message_id,
                                    error(error_tag::operation_failed, "supervision acknowledgement withheld"));
    }
    const auto interval = request.body.value("interval", session_.supervision.interval_s);
    const auto guard = request.body.value("guard", session_.supervision.guard_s);
    if (interval <= 0 || guard < 0) {
        return RpcReply::make_error(request.message_id, error(error_tag::invalid_value, "bad supervision timers"));
    }
    session_.supervision.interval_s = interval;
    session_.supervision.guard_s = guard;
    session_.supervision.last_kick = now;
    if (session_.state() == SessionState::established) session_.transition(SessionState::supervised);
    arm_supervision();
    const std::int64_t next = session_.supervision.deadline();
    return RpcReply::make_data(request.message_id, {{"next-update-at", next}});
}

void MplaneServer::arm_supervision() {
    if (supervision_event_) scheduler_.cancel(*supervision_event_);
    supervision_event_ = scheduler_.schedule_at(session_.supervision.deadline(), [this] {
        supervision_event_.reset();
        supervision_expired();
    });
}

void MplaneServer::supervision_expired() {
    if (session_.state() != SessionState::supervised) return;
    record_event("supervision", "watchdog expired");
    if (hooks_.on_supervision_expired) hooks_.on_supervision_expired();
    Alarm alarm;
    alarm.fault_id = kSupervisionFaultId;
    alarm.fault_source = "mplane-supervision";
    alarm.severity = AlarmSeverity::major;
    alarm.text = "M-Plane supervision watchdog expired";
    raise_alarm(alarm);
    close_session("supervision expired");
}

RpcReply MplaneServer::do_download(const RpcRequest& request) {
    const std::string build_id = body_text(request.body, "build-id");
    const std::string checksum = body_text(request.body, "checksum");
    auto image = from_hex(body_text(request.body, "image"));
    if (build_id.empty() || checksum.empty() || !image) {
        return RpcReply::make_error(request.message_id, error(error_tag::invalid_value, "malformed software image"));
    }
    auto slot = std::find_if(slots_.begin(), slots_.end(), [](const SoftwareSlot& s) { return !s.running && !s.active; });
    if (slot == slots_.end()) {
        return RpcReply::make_error(request.message_id, error(error_tag::resource_denied, "no free software slot"));
    }
    if (hooks_.corrupt_software_image && hooks_.corrupt_software_image()) {
        if (image->empty()) image->push_back(0);
        image->front() ^= 0xFF;
    }
    slot->build_id = build_id;
    slot->checksum = checksum;
    slot->image = std::move(*image);
    slot->installed = false;
    slot->state = image_checksum(slot->image) == checksum ? SlotState::valid : SlotState::invalid;
    sync_software_tree();
    record_event("software", slot->name + " <- " + build_id + " " + std::string(to_string(slot->state)));
    return RpcReply::make_data(request.message_id, {{"slot", slot->name}, {"status", std::string(to_string(slot->state))}});
}

RpcReply MplaneServer::do_install(const RpcRequest& request) {
    const std::string name = body_text(request.body, "slot");
    auto slot = std::find_if(slots_.begin(), slots_.end(), [&](const SoftwareSlot& s) { return s.name == name; });
    if (slot == slots_.end()) {
        return RpcReply::make_error(request.message_id, error(error_tag::unknown_element, "no such slot", name));
    }
    if (slot->state != SlotState::valid) {
        record_event("software", "install refused for " + name);
        return RpcReply::make_error(request.message_id,
                                    error(error_tag::operation_failed,
                                          "slot is " + std::string(to_string(slot->state)) + ", install refused",
                                          "software-inventory/" + name));
    }
    slot->installed = true;
    record_event("software", name + " installed");
    return RpcReply::make_ok(request.message_id);
}

RpcReply MplaneServer::do_activate(const RpcRequest& request) {
    const std::string name = body_text(request.body, "slot");
    auto slot = std::find_if(slots_.begin(), slots_.end(), [&](const SoftwareSlot& s) { return s.name == name; });
    if (slot == slots_.end()) {
        return RpcReply::make_error(request.message_id, error(error_tag::unknown_element, "no such slot", name));
    }
    if (slot->state != SlotState::valid || !slot->installed) {
        return RpcReply::make_error(request.message_id,
                                    error(error_tag::operation_failed, "slot not installed and valid",
                                          "software-inventory/" + name));
    }
    for (auto& s : slots_) s.active = false;
    slot->active = true;
    sync_software_tree();
    record_event("software", name + " activated");
    return RpcReply::make_ok(request.message_id);
}

RpcReply MplaneServer::do_reset(const RpcRequest& request) {
    record_event("system", "reset requested");
    if (hooks_.on_reset) hooks_.on_reset();
    return RpcReply::make_ok(request.message_id);
}

void MplaneServer::boot_active_slot() {
    for (auto& s : slots_) s.running = s.active;
    sync_software_tree();
    auto running = std::find_if(slots_.begin(), slots_.end(), [](const SoftwareSlot& s) { return s.running; });
    record_event("system", "booted " + running->name + " (" + running->build_id + ")");
}

RpcReply MplaneServer::do_log(const RpcRequest& request) {
    switch (request.operation) {
    case Operation::log_start: {
        const std::string kind = request.body.value("kind", "troubleshooting");
        if (kind != "troubleshooting" && kind != "trace") {
            return RpcReply::make_error(request.message_id, error(error_tag::invalid_value, "unknown log kind"));
        }
        log_ = LogWindow{kind == "trace" ? LogKind::trace : LogKind::troubleshooting, true, true, Json::array()};
        return RpcReply::make_ok(request.message_id);
    }
    case Operation::log_stop:
        if (!log_.recording) {
            return RpcReply::make_error(request.message_id, error(error_tag::operation_failed, "no log recording"));
        }
        log_.recording = false;
        return RpcReply::make_ok(request.message_id);
    default:
        if (!log_.started) {
            return RpcReply::make_error(request.message_id, error(error_tag::data_missing, "no log was started"));
        }
        return RpcReply::make_data(
            request.message_id,
            {{"kind", log_.kind == LogKind::trace ? "trace" : "troubleshooting"}, {"events", log_.events}});
    }
}

void MplaneServer::record_event(const std::string& category, const std::string& text) {
    if (hooks_.on_event) hooks_.on_event(category + ": " + text);
    if (!log_.recording) return;
    if (category == "rpc" && log_.kind != LogKind::trace) return;
    log_.events.push_back({{"time", scheduler_.now()}, {"category", category}, {"text", text}});
}

void MplaneServer::add_listener(const std::string& stream, Listener listener) {
    listeners_.emplace_back(stream, std::move(listener));
}

void MplaneServer::publish(const std::string& stream, Json event) {
    Notification n{scheduler_.now(), stream, std::move(event)};
    for (const auto& [s, listener] : listeners_) {
        if (s == stream) listener(n);
    }
    if (is_operational(session_.state()) && session_.subscriptions.count(stream) != 0) send(to_json(n));
}

void MplaneServer::raise_alarm(Alarm alarm) {
    alarm.is_cleared = false;
    alarm.event_time = scheduler_.now();
    alarm_history_.push_back(alarm);
    sync_alarm_tree();
    record_event("alarm", "raised " + std::to_string(alarm.fault_id) + " " + alarm.fault_source + ": " + alarm.text);
    publish("alarms", {{"fault-id", alarm.fault_id},
                       {"fault-source", alarm.fault_source},
                       {"fault-severity", std::string(to_string(alarm.severity))},
                       {"is-cleared", false},
                       {"text", alarm.text}});
}

void MplaneServer::clear_alarm(std::uint32_t fault_id) {
    auto active = active_alarms();
    auto it = std::find_if(active.begin(), active.end(), [&](const Alarm& a) { return a.fault_id == fault_id; });
    if (it == active.end()) return;
    Alarm cleared = *it;
    cleared.is_cleared = true;
    cleared.event_time = scheduler_.now();
    alarm_history_.push_back(cleared);
    sync_alarm_tree();
    record_event("alarm", "cleared " + std::to_string(fault_id));
    publish("alarms", {{"fault-id", cleared.fault_id},
                       {"fault-source", cleared.fault_source},
                       {"fault-severity", std::string(to_string(cleared.severity))},
                       {"is-cleared", true},
                       {"text", cleared.text}});
}

std::vector<Alarm> MplaneServer::active_alarms() const {
    std::map<std::uint32_t, const Alarm*> latest;
    std::vector<std::uint32_t> order;
    for (const auto& a : alarm_history_) {
        if (latest.count(a.fault_id) == 0) order.push_back(a.fault_id);
        latest[a.fault_id] = &a;
    }
    std::vector<Alarm> out;
    for (auto id : order) {
        if (!latest[id]->is_cleared) out.push_back(*latest[id]);
    }
    return out;
}

void MplaneServer::sync_alarm_tree() {
    Json list = Json::object();
    for (const auto& a : active_alarms()) {
        list[std::to_string(a.fault_id)] = {{"fault-source", a.fault_source},
                                            {"fault-severity", std::string(to_string(a.severity))},
                                            {"is-cleared", "false"},
                                            {"event-time", std::to_string(a.event_time)}};
    }
    datastore_.set_container("alarms/active-alarm-list", std::move(list));
}

void MplaneServer::sync_software_tree() {
    Json inventory = Json::object();
    for (const auto& s : slots_) {
        inventory[s.name] = {{"build-id", s.build_id},
                             {"checksum", s.checksum},
                             {"status", std::string(to_string(s.state))},
                             {"active", s.active ? "true" : "false"},
                             {"running", s.running ? "true" : "false"}};
    }
    datastore_.set_container("software-inventory", std::move(inventory));
}

} // namespace ofh::mplane
