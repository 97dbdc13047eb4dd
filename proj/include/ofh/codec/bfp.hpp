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
#include <cstddef>
#include <cstdint>

namespace ofh::codec {

class BitReader;
class BitWriter;

struct IqSample {
    std::int16_t i = 0;
    std::int16_t q = 0;

    bool operator==(const IqSample&) const = default;
};

inline constexpr std::size_t kSubcarriersPerPrb = 12;
inline constexpr unsigned kMantissaBits = 9;
inline constexpr int kMantissaMin = -(1 << (kMantissaBits - 1));
inline constexpr int kMantissaMax = (1 << (kMantissaBits - 1)) - 1;
inline constexpr unsigned kExponentMax = 15;
/// One exponent byte plus 24 nine-bit mantissas.
inline constexpr std::size_t kCompressedPrbBytes = 1 + (2 * kSubcarriersPerPrb * kMantissaBits) / 8;

using PrbSamples = std::array<IqSample, kSubcarriersPerPrb>;

/// One block-floating-point compressed PRB: a shared 4-bit exponent and
/// twelve complex 9-bit mantissas.
struct PrbBlock {
    std::uint8_t exponent = 0;
    PrbSamples mantissas{};

    bool valid() const noexcept;
    bool operator==(const PrbBlock&) const = default;
};

/// Picks the smallest exponent for which every component, arithmetically
/// shifted right, fits the 9-bit mantissa range. Truncates toward -inf.
PrbBlock bfp_compress(const PrbSamples& samples) noexcept;

/// mantissa << exponent, saturated to int16 (only reachable for exponents
/// above 7, which bfp_compress never produces).
PrbSamples bfp_decompress(const PrbBlock& block) noexcept;

/// Wire form: reserved(4) | exponent(4), then I/Q mantissas interleaved.
void write_prb(BitWriter& out, const PrbBlock& block);
PrbBlock read_prb(BitReader& in);

} // namespace ofh::codec
