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

#include "ofh/mplane/client.hpp"
#include "ofh/mplane/envelope.hpp"
#include "ofh/mplane/session.hpp"

namespace ofh::mplane {

/// Intermediary of a hierarchical M-Plane: the test equipment holds an outer
/// session with it, and it holds the only NETCONF session to the O-RU.
/// Privileged ("sudo") requests are relayed verbatim; others are refused.
class HierarchicalProxy {
public:
    HierarchicalProxy(MplaneClient& inner, std::string outer_trust_anchor);

    /// Authenticates the outer client and establishes the outer session.
    bool accept_outer(const Credentials& presented);
    const MplaneSession& outer_session() const noexcept { return outer_; }

    RpcReply forward(bool privileged, const RpcRequest& inner_request);

    std::uint64_t forwarded() const noexcept { return forwarded_; }
    std::uint64_t denied() const noexcept { return denied_; }

private:
    MplaneClient& inner_;
    std::string outer_trust_anchor_;
    MplaneSession outer_;
    std::uint64_t forwarded_ = 0;
    std::uint64_t denied_ = 0;
};

} // namespace ofh::mplane
