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

#include "ofh/mplane/envelope.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace ofh::mplane {

namespace {

constexpr std::array<std::pair<Operation, std::string_view>, 12> kOperationNames{{
    {Operation::get, "get"},
    {Operation::get_with_filter, "get-with-filter"},
    {Operation::edit_config, "edit-config"},
    {Operation::subscribe, "subscribe"},
    {Operation::supervision_kick, "supervision-kick"},
    {Operation::sw_download, "software-download"},
    {Operation::sw_install, "software-install"},
    {Operation::sw_activate, "software-activate"},
    {Operation::reset, "reset"},
    {Operation::log_start, "log-start"},
    {Operation::log_stop, "log-stop"},
    {Operation::log_collect, "log-collect"},
}};

} // namespace

std::string_view to_string(Operation op) noexcept {
    for (const auto& [value, name] : kOperationNames) {
        if (value == op) return name;
    }
    return "unknown";
}

std::optional<Operation> operation_from_string(std::string_view name) noexcept {
    for (const auto& [value, text] : kOperationNames) {
        if (text == name) return value;
    }
    return std::nullopt;
}

DocumentKind classify(const Json& doc) noexcept {
    if (!doc.is_object() || doc.size() != 1) return DocumentKind::unknown;
    const std::string& key = doc.begin().key();
    if (key == "rpc") return DocumentKind::rpc;
    if (key == "rpc-reply") return DocumentKind::rpc_reply;
    if (key == "notification") return DocumentKind::notification;
    if (key == "auth") return DocumentKind::auth;
    if (key == "auth-result") return DocumentKind::auth_result;
    if (key == "hello") return DocumentKind::hello;
    if (key == "ping") return DocumentKind::ping;
    if (key == "pong") return DocumentKind::pong;
    if (key == "close") return DocumentKind::close;
    return DocumentKind::unknown;
}

Json to_json(const RpcRequest& request) {
    return {{"rpc",
             {{"message-id", request.message_id},
              {"operation", std::string(to_string(request.operation))},
              {"body", request.body}}}};
}

Json to_json(const RpcReply& reply) {
    Json body = {{"message-id", reply.message_id}};
    switch (reply.kind) {
    case RpcReply::Kind::ok:
        body["ok"] = true;
        break;
    case RpcReply::Kind::data:
        body["data"] = reply.data;
        break;
    case RpcReply::Kind::error:
        body["rpc-error"] = {{"error-tag", reply.error.tag},
                             {"error-severity", reply.error.severity},
                             {"error-message", reply.error.message},
                             {"error-path", reply.error.path}};
        break;
    }
    return {{"rpc-reply", std::move(body)}};
}

Json to_json(const Notification& notification) {
    return {{"notification",
             {{"event-time", notification.event_time_ns},
              {"stream", notification.stream},
              {"event", notification.event}}}};
}

RpcRequest request_from_json(const Json& doc) {
    const Json& rpc = doc.at("rpc");
    RpcRequest request;
    request.message_id = rpc.at("message-id").get<std::uint64_t>();
    const auto op = operation_from_string(rpc.at("operation").get<std::string>());
    if (!op) throw std::invalid_argument("unknown operation");
    request.operation = *op;
    request.body = rpc.value("body", Json::object());
    return request;
}

RpcReply reply_from_json(const Json& doc) {
    const Json& body = doc.at("rpc-reply");
    RpcReply reply;
    reply.message_id = body.at("message-id").get<std::uint64_t>();
    if (body.contains("rpc-error")) {
        const Json& e = body["rpc-error"];
        reply.kind = RpcReply::Kind::error;
        reply.error.tag = e.value("error-tag", "");
        reply.error.severity = e.value("error-severity", "error");
        reply.error.message = e.value("error-message", "");
        reply.error.path = e.value("error-path", "");
    } else if (body.contains("data")) {
        reply.kind = RpcReply::Kind::data;
        reply.data = body["data"];
    } else {
        reply.kind = RpcReply::Kind::ok;
    }
    return reply;
}

Notification notification_from_json(const Json& doc) {
    const Json& body = doc.at("notification");
    return {body.at("event-time").get<std::int64_t>(), body.at("stream").get<std::string>(),
            body.value("event", Json::object())};
}

std::string serialize(const Json& doc) { return doc.dump(); }

} // namespace ofh::mplane
