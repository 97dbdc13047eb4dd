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
#include <functional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "ofh/sim/time.hpp"

namespace ofh::sim {

/// Single-threaded discrete-event timeline. Events at equal timestamps run in
/// scheduling order, so a run is a pure function of what was scheduled.
class Scheduler {
public:
    using Action = std::function<void()>;
    using EventId = std::uint64_t;

    SimTime now() const noexcept { return now_; }

    /// Scheduling in the past is clamped to `now()`.
    EventId schedule_at(SimTime at, Action action);
    EventId schedule_in(SimTime delay, Action action) { return schedule_at(now_ + delay, std::move(action)); }

    /// Cancelled events are skipped when reached; cancelling twice is harmless.
    void cancel(EventId id);

    /// Runs every event with time <= `until`, then advances the clock to `until`.
    void run_until(SimTime until);
    void run_for(SimTime duration) { run_until(now_ + duration); }

    /// Runs until `predicate` holds (checked after each event) or `deadline`
    /// passes. Returns whether the predicate was met.
    bool run_until_condition(const std::function<bool()>& predicate, SimTime deadline);

    bool idle() const noexcept { return queue_.empty(); }
    std::uint64_t events_executed() const noexcept { return executed_; }

private:
    struct Event {
        SimTime at;
        EventId id;
        Action action;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const noexcept {
            return a.at != b.at ? a.at > b.at : a.id > b.id;
        }
    };

    bool step(SimTime limit);

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::unordered_set<EventId> cancelled_;
    SimTime now_ = 0;
    EventId next_id_ = 1;
    std::uint64_t executed_ = 0;
};

} // namespace ofh::sim
