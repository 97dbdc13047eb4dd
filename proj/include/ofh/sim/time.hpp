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

namespace ofh::sim {

/// Simulated time in nanoseconds since the start of a test environment.
using SimTime = std::int64_t;

inline constexpr SimTime kNanosPerMicro = 1'000;
inline constexpr SimTime kNanosPerMilli = 1'000'000;
inline constexpr SimTime kNanosPerSecond = 1'000'000'000;

constexpr SimTime seconds(double s) { return static_cast<SimTime>(s * kNanosPerSecond); }
constexpr SimTime millis(double ms) { return static_cast<SimTime>(ms * kNanosPerMilli); }
constexpr SimTime micros(double us) { return static_cast<SimTime>(us * kNanosPerMicro); }

} // namespace ofh::sim
