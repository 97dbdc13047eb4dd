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

#include "ofh/mplane/dhcpv6.hpp"

#include <arpa/inet.h>

namespace ofh::mplane {

namespace {

std::array<std::uint8_t, 16> parse_ipv6(const std::string& text) {
    std::array<std::uint8_t, 16> out{};
    if (inet_pton(AF_INET6, text.c_str(), out.data()) != 1) {
        throw Dhcpv6Error(Dhcpv6Error::Kind::malformed, "not an IPv6 literal: " + text);
    }
    return out;
}

std::string render_ipv6(const std::array<std::uint8_t, 16>& addr) {
    char buf[INET6_ADDRSTRLEN] = {};
    inet_ntop(AF_INET6, addr.data(), buf, sizeof buf);
    return buf;
}

std::array<std::uint8_t, 16> add_offset(std::array<std::uint8_t, 16> addr, std::uint32_t offset) {
    std::uint64_t carry = offset;
    for (int i = 15; i >= 0 && carry != 0; --i) {
        carry += addr[static_cast<std::size_t>(i)];
        addr[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(carry & 0xFF);
        carry >>= 8;
    }
    return addr;
}

} // namespace

std::string ipv6_offset(const std::string& base, std::uint32_t offset) {
    return render_ipv6(add_offset(parse_ipv6(base), offset));
}

Dhcpv6Server::Dhcpv6Server(const std::string& pool_base, std::uint32_t pool_size, Endpoint call_home_client)
    : base_(parse_ipv6(pool_base)), pool_size_(pool_size), call_home_client_(std::move(call_home_client)) {}

std::string Dhcpv6Server::allocate_for(const std::vector<std::uint8_t>& duid) {
    if (auto it = bound_.find(duid); it != bound_.end()) return it->second;
    if (auto it = offered_.find(duid); it != offered_.end()) return it->second;
    if (next_offset_ >= pool_size_) {
        throw Dhcpv6Error(Dhcpv6Error::Kind::pool_exhausted, "address pool exhausted");
    }
    return render_ipv6(add_offset(base_, next_offset_++));
}

Dhcpv6Message Dhcpv6Server::handle(const Dhcpv6Message& message) {
    if (message.client_duid.empty()) throw Dhcpv6Error(Dhcpv6Error::Kind::malformed, "missing client DUID");
    Dhcpv6Message response;
    response.transaction_id = message.transaction_id;
    response.client_duid = message.client_duid;
    response.call_home_client = call_home_client_;
    switch (message.type) {
    case Dhcpv6Type::solicit:
        response.type = Dhcpv6Type::advertise;
        response.address = allocate_for(message.client_duid);
        offered_[message.client_duid] = response.address;
        return response;
    case Dhcpv6Type::request: {
        auto it = offered_.find(message.client_duid);
        if (it == offered_.end()) {
            throw Dhcpv6Error(Dhcpv6Error::Kind::protocol_order, "request without a prior solicit");
        }
        if (!message.address.empty() && message.address != it->second) {
            throw Dhcpv6Error(Dhcpv6Error::Kind::malformed, "request for an address that was not offered");
        }
        response.type = Dhcpv6Type::reply;
        response.address = it->second;
        bound_[message.client_duid] = it->second;
        offered_.erase(it);
        return response;
    }
    case Dhcpv6Type::advertise:
    case Dhcpv6Type::reply:
        break;
    }
    throw Dhcpv6Error(Dhcpv6Error::Kind::protocol_order, "server-originated message sent to server");
}

Dhcpv6Lease dhcpv6_assign(Dhcpv6Server& server, const std::vector<std::uint8_t>& client_duid,
                          std::uint32_t transaction_id) {
    Dhcpv6Message solicit{Dhcpv6Type::solicit, transaction_id, client_duid, {}, {}};
    const Dhcpv6Message advertise = server.handle(solicit);
    if (advertise.type != Dhcpv6Type::advertise || advertise.transaction_id != transaction_id) {
        throw Dhcpv6Error(Dhcpv6Error::Kind::protocol_order, "expected advertise");
    }
    Dhcpv6Message request{Dhcpv6Type::request, transaction_id, client_duid, advertise.address, {}};
    const Dhcpv6Message reply = server.handle(request);
    if (reply.type != Dhcpv6Type::reply || reply.transaction_id != transaction_id) {
        throw Dhcpv6Error(Dhcpv6Error::Kind::protocol_order, "expected reply");
    }
    return {reply.address, reply.call_home_client};
}

} // namespace ofh::mplane
