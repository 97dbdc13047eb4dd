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

#include "ofh/mplane/hierarchical.hpp"

namespace ofh::mplane {

HierarchicalProxy::HierarchicalProxy(MplaneClient& inner, std::string outer_trust_anchor)
    : inner_(inner), outer_trust_anchor_(std::move(outer_trust_anchor)) {}

bool HierarchicalProxy::accept_outer(const Credentials& presented) {
    if (outer_.state() == SessionState::closed) outer_.transition(SessionState::idle);
    if (outer_.state() != SessionState::idle) return is_operational(outer_.state());
    outer_.transition(SessionState::authenticating);
    if (presented.fingerprint != outer_trust_anchor_) {
        outer_.transition(SessionState::closed);
        return false;
    }
    outer_.peer_identity = presented.identity;
    outer_.transition(SessionState::established);
    outer_.session_id = 1;
    return true;
}

RpcReply HierarchicalProxy::forward(bool privileged, const RpcRequest& inner_request) {
    if (!is_operational(outer_.state())) {
        return RpcReply::make_error(inner_request.message_id,
                                    {error_tag::access_denied, "error", "outer session not established", {}});
    }
    if (!privileged) {
        ++denied_;
        return RpcReply::make_error(inner_request.message_id,
                                    {error_tag::access_denied, "error", "privileged access required", {}});
    }
    ++forwarded_;
    return inner_.call(inner_request);
}

} // namespace ofh::mplane
