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
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace ofh::mplane {

using Json = nlohmann::json;

enum class Operation {
    get,
    get_with_filter,
    edit_config,
    subscribe,
    supervision_kick,
    sw_download,
    sw_install,
    sw_activate,
    reset,
    log_start,
    log_stop,
    log_collect,
};

std::string_view to_string(Operation op) noexcept;
std::optional<Operation> operation_from_string(std::string_view name) noexcept;

/// NETCONF-flavoured error tags used in rpc-error replies.
namespace error_tag {
inline constexpr const char* invalid_value = "invalid-value";
inline constexpr const char* unknown_element = "unknown-element";
inline constexpr const char* operation_failed = "operation-failed";
inline constexpr const char* operation_not_supported = "operation-not-supported";
inline constexpr const char* access_denied = "access-denied";
inline constexpr const char* resource_denied = "resource-denied";
inline constexpr const char* data_missing = "data-missing";
inline constexpr const char* in_use = "in-use";
inline constexpr const char* transport_error = "transport-error";
} // namespace error_tag

struct RpcError {
    std::string tag;
    std::string severity = "error";
    std::string message;
    /// Datastore path of the offending node, if any.
    std::string path;

    bool operator==(const RpcError&) const = default;
};

struct RpcRequest {
    std::uint64_t message_id = 0;
    Operation operation = Operation::get;
    Json body = Json::object();
};

/// Exactly one of ok / data / error; `kind` says which.
struct RpcReply {
    enum class Kind { ok, data, error };

    std::uint64_t message_id = 0;
    Kind kind = Kind::ok;
    Json data;
    RpcError error;

    bool is_error() const noexcept { return kind == Kind::error; }

    static RpcReply make_ok(std::uint64_t id) { return {id, Kind::ok, {}, {}}; }
    static RpcReply make_data(std::uint64_t id, Json data) { return {id, Kind::data, std::move(data), {}}; }
    static RpcReply make_error(std::uint64_t id, RpcError error) { return {id, Kind::error, {}, std::move(error)}; }
};

struct Notification {
    std::int64_t event_time_ns = 0;
    std::string stream;
    Json event;
};

/// Every document on the M-Plane channel is one JSON object with exactly one
/// of these top-level keys.
enum class DocumentKind { rpc, rpc_reply, notification, auth, auth_result, hello, ping, pong, close, unknown };

DocumentKind classify(const Json& doc) noexcept;

Json to_json(const RpcRequest& request);
Json to_json(const RpcReply& reply);
Json to_json(const Notification& notification);
RpcRequest request_from_json(const Json& doc);
RpcReply reply_from_json(const Json& doc);
Notification notification_from_json(const Json& doc);

/// Canonical text form (sorted keys, no whitespace) used on the wire and in
/// evidence logs.
std::string serialize(const Json& doc);

} // namespace ofh::mplane
