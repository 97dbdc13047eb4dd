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

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ofh::mplane {

struct Endpoint {
    std::string address;
    std::uint16_t port = 4334;

    bool operator==(const Endpoint&) const = default;
    auto operator<=>(const Endpoint&) const = default;
};

/// Reduced DHCPv6: solicit/advertise/request/reply keyed by client DUID, with
/// the NETCONF Call Home client carried as a vendor option.
enum class Dhcpv6Type { solicit, advertise, request, reply };

struct Dhcpv6Message {
    Dhcpv6Type type = Dhcpv6Type::solicit;
    std::uint32_t transaction_id = 0;
    std::vector<std::uint8_t> client_duid;
    std::string address;
    Endpoint call_home_client;
};

class Dhcpv6Error : public std::runtime_error {
public:
    enum class Kind { pool_exhausted, protocol_order, malformed };
    Dhcpv6Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

struct Dhcpv6Lease {
    std::string address;
    Endpoint call_home_client;
};

class Dhcpv6Server {
public:
    /// `pool_base` is an IPv6 literal; addresses are handed out sequentially.
    Dhcpv6Server(const std::string& pool_base, std::uint32_t pool_size, Endpoint call_home_client);

    /// Answers one client message. Throws Dhcpv6Error.
    Dhcpv6Message handle(const Dhcpv6Message& message);

    std::size_t bindings() const noexcept { return bound_.size(); }

private:
    using Address = std::array<std::uint8_t, 16>;

    std::string allocate_for(const std::vector<std::uint8_t>& duid);

    Address base_{};
    std::uint32_t pool_size_;
    std::uint32_t next_offset_ = 0;
    Endpoint call_home_client_;
    std::map<std::vector<std::uint8_t>, std::string> offered_;
    std::map<std::vector<std::uint8_t>, std::string> bound_;
};

/// Client side of the four-message exchange.
Dhcpv6Lease dhcpv6_assign(Dhcpv6Server& server, const std::vector<std::uint8_t>& client_duid,
                          std::uint32_t transaction_id = 1);

/// IPv6 literal + offset, re-rendered in canonical text form.
std::string ipv6_offset(const std::string& base, std::uint32_t offset);

} // namespace ofh::mplane
