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

#include "ofh/mplane/session.hpp"

namespace ofh::mplane {

std::string_view to_string(SessionState state) noexcept {
    switch (state) {
    case SessionState::idle: return "IDLE";
    case SessionState::address_assigned: return "ADDRESS_ASSIGNED";
    case SessionState::call_home_sent: return "CALL_HOME_SENT";
    case SessionState::authenticating: return "AUTHENTICATING";
    case SessionState::established: return "ESTABLISHED";
    case SessionState::supervised: return "SUPERVISED";
    case SessionState::closed: return "CLOSED";
    }
    return "UNKNOWN";
}

InvalidTransition::InvalidTransition(SessionState from, SessionState to)
    : std::logic_error("invalid session transition " + std::string(to_string(from)) + " -> " +
                       std::string(to_string(to))) {}

bool MplaneSession::allowed(SessionState from, SessionState to) noexcept {
    using S = SessionState;
    switch (to) {
    case S::idle:
        return from == S::closed;
    case S::address_assigned:
        // A fresh assignment, or falling back after a failed Call Home.
        return from == S::idle || from == S::call_home_sent || from == S::authenticating ||
               from == S::closed;
    case S::call_home_sent:
        return from == S::address_assigned;
    case S::authenticating:
        return from == S::call_home_sent || from == S::idle;
    case S::established:
        return from == S::authenticating;
    case S::supervised:
        return from == S::established;
    case S::closed:
        return from != S::closed;
    }
    return false;
}

void MplaneSession::transition(SessionState next) {
    if (!allowed(state_, next)) throw InvalidTransition(state_, next);
    state_ = next;
    if (next == SessionState::closed || next == SessionState::address_assigned) {
        subscriptions.clear();
        session_id = 0;
    }
}

} // namespace ofh::mplane
