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

#include <vector>

#include <gtest/gtest.h>

#include "ofh/sim/random.hpp"
#include "ofh/sim/scheduler.hpp"

namespace {

using ofh::sim::Rng;
using ofh::sim::Scheduler;

TEST(Scheduler, RunsInTimeThenInsertionOrder) {
    Scheduler s;
    std::vector<int> order;
    s.schedule_at(20, [&] { order.push_back(3); });
    s.schedule_at(10, [&] { order.push_back(1); });
    s.schedule_at(10, [&] { order.push_back(2); });
    s.run_until(100);
    EXPECT_EQ(order, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(s.now(), 100);
}

TEST(Scheduler, EventsCanScheduleEvents) {
    Scheduler s;
    int ticks = 0;
    std::function<void()> tick = [&] {
        ++ticks;
        s.schedule_in(10, tick);
    };
    s.schedule_at(0, tick);
    s.run_until(95);
    EXPECT_EQ(ticks, 10);
}

TEST(Scheduler, CancelledEventsDoNotRun) {
    Scheduler s;
    bool ran = false;
    const auto id = s.schedule_at(5, [&] { ran = true; });
    s.cancel(id);
    s.run_until(10);
    EXPECT_FALSE(ran);
}

TEST(Scheduler, ConditionStopsEarly) {
    Scheduler s;
    int value = 0;
    for (int k = 1; k <= 10; ++k) {
        s.schedule_at(k * 100, [&value] { ++value; });
    }
    EXPECT_TRUE(s.run_until_condition([&] { return value == 3; }, 10'000));
    EXPECT_EQ(s.now(), 300);
    EXPECT_FALSE(s.run_until_condition([&] { return value == 99; }, 2'000));
    EXPECT_EQ(s.now(), 2'000);
}

TEST(Rng, StreamsAreReproducibleAndIndependent) {
    Rng a(42, ofh::sim::Stream::grid_payload);
    Rng b(42, ofh::sim::Stream::grid_payload);
    Rng c(42, ofh::sim::Stream::dlm_offsets);
    bool any_difference = false;
    for (int k = 0; k < 100; ++k) {
        const auto x = a.next();
        EXPECT_EQ(x, b.next());
        any_difference = any_difference || x != c.next();
    }
    EXPECT_TRUE(any_difference);
}

TEST(Rng, UniformIntStaysInRange) {
    Rng r(1);
    for (int k = 0; k < 10000; ++k) {
        const auto v = r.uniform_int(-3, 3);
        ASSERT_GE(v, -3);
        ASSERT_LE(v, 3);
    }
}

TEST(Rng, GaussianMomentsAreSane) {
    Rng r(9);
    double sum = 0;
    double sq = 0;
    constexpr int n = 200000;
    for (int k = 0; k < n; ++k) {
        const double x = r.gaussian(2.0);
        sum += x;
        sq += x * x;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.05);
    EXPECT_NEAR(sq / n, 4.0, 0.1);
}

} // namespace
