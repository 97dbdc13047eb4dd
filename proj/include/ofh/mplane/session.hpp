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
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ofh/sim/time.hpp"

namespace ofh::mplane {

enum class SessionState {
    idle,
    address_assigned,
    call_home_sent,
    authenticating,
    established,
    supervised,
    closed,
};

std::string_view to_string(SessionState state) noexcept;

/// True once RPCs other than authentication may flow.
constexpr bool is_operational(SessionState s) noexcept {
    return s == SessionState::established || s == SessionState::supervised;
}

class InvalidTransition : public std::logic_error {
public:
    InvalidTransition(SessionState from, SessionState to);
};

/// Watchdog armed by the first supervision kick. Expiry is at
/// last_kick + interval + guard; a kick landing exactly on that instant is late.
struct SupervisionTimer {
    std::int64_t interval_s = 60;
    std::int64_t guard_s = 10;
    sim::SimTime last_kick = 0;

    sim::SimTime deadline() const noexcept {
        return last_kick + (interval_s + guard_s) * sim::kNanosPerSecond;
    }
    bool expired_at(sim::SimTime t) const noexcept { return t >= deadline(); }
};

/// Management-plane connection state machine, used for both the client (TER)
/// and the server (O-RU) end.
class MplaneSession {
public:
    SessionState state() const noexcept { return state_; }

    /// Throws InvalidTransition for anything outside the declared order.
    void transition(SessionState next);
    static bool allowed(SessionState from, SessionState to) noexcept;

    std::string peer_identity;
    std::uint64_t session_id = 0;
    SupervisionTimer supervision;
    /// stream name -> subscription id
    std::map<std::string, std::uint64_t> subscriptions;

private:
    SessionState state_ = SessionState::idle;
};

} // namespace ofh::mplane
