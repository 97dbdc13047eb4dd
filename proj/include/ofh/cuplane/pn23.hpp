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
#include <vector>

namespace ofh::cuplane {

/// PN23 pseudo-random bit source, polynomial x^23 + x^18 + 1.
/// Fibonacci form: the register shifts left, the output is bit 22 and the
/// bit shifted in is bit 22 XOR bit 17.
class Pn23 {
public:
    static constexpr std::uint32_t kMask = (1u << 23) - 1;
    static constexpr std::uint32_t kPeriod = kMask;

    /// Throws CuplaneError(zero_seed) if the low 23 bits are all zero.
    explicit Pn23(std::uint32_t seed);

    std::uint8_t next() noexcept {
        const std::uint32_t out = (state_ >> 22) & 1u;
        const std::uint32_t feedback = out ^ ((state_ >> 17) & 1u);
        state_ = ((state_ << 1) | feedback) & kMask;
        return static_cast<std::uint8_t>(out);
    }

    std::uint32_t state() const noexcept { return state_; }

private:
    std::uint32_t state_;
};

std::vector<std::uint8_t> pn23_bits(std::uint32_t seed, std::size_t n);

} // namespace ofh::cuplane
