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

#include "ofh/sim/scheduler.hpp"

#include <algorithm>

namespace ofh::sim {

Scheduler::EventId Scheduler::schedule_at(SimTime at, Action action) {
    const EventId id = next_id_++;
    queue_.push(Event{std::max(at, now_), id, std::move(action)});
    return id;
}

void Scheduler::cancel(EventId id) {
    cancelled_.insert(id);
}

bool Scheduler::step(SimTime limit) {
    while (!queue_.empty()) {
        if (queue_.top().at > limit) {
            return false;
        }
        Event event = queue_.top();
        queue_.pop();
        if (cancelled_.erase(event.id) != 0) {
            continue;
        }
        now_ = event.at;
        ++executed_;
        event.action();
        return true;
    }
    return false;
}

void Scheduler::run_until(SimTime until) {
    while (step(until)) {
    }
    now_ = std::max(now_, until);
}

bool Scheduler::run_until_condition(const std::function<bool()>& predicate, SimTime deadline) {
    if (predicate()) {
        return true;
    }
    while (step(deadline)) {
        if (predicate()) {
            return true;
        }
    }
    now_ = std::max(now_, deadline);
    return predicate();
}

} // namespace ofh::sim
