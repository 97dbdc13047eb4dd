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

#include "ofh/codec/bfp.hpp"

#include <algorithm>
#include <limits>

#include "ofh/codec/bits.hpp"

namespace ofh::codec {
namespace {

bool fits_mantissa(int value) noexcept {
    return value >= kMantissaMin && value <= kMantissaMax;
}

std::int16_t saturate16(std::int32_t value) noexcept {
    return static_cast<std::int16_t>(std::clamp<std::int32_t>(
        value, std::numeric_limits<std::int16_t>::min(), std::numeric_limits<std::int16_t>::max()));
}

} // namespace

bool PrbBlock::valid() const noexcept {
    if (exponent > kExponentMax) {
        return false;
    }
    return std::all_of(mantissas.begin(), mantissas.end(), [](const IqSample& s) {
        return fits_mantissa(s.i) && fits_mantissa(s.q);
    });
}

PrbBlock bfp_compress(const PrbSamples& samples) noexcept {
    // The exponent only depends on the extreme components: x >> e is monotone in x.
    int lo = 0;
    int hi = 0;
    for (const auto& s : samples) {
        lo = std::min({lo, int{s.i}, int{s.q}});
        hi = std::max({hi, int{s.i}, int{s.q}});
    }
    unsigned exponent = 0;
    while (exponent < kExponentMax && !(fits_mantissa(lo >> exponent) && fits_mantissa(hi >> exponent))) {
        ++exponent;
    }

    PrbBlock block;
    block.exponent = static_cast<std::uint8_t>(exponent);
    for (std::size_t k = 0; k < kSubcarriersPerPrb; ++k) {
        block.mantissas[k].i = static_cast<std::int16_t>(samples[k].i >> exponent);
        block.mantissas[k].q = static_cast<std::int16_t>(samples[k].q >> exponent);
    }
    return block;
}

PrbSamples bfp_decompress(const PrbBlock& block) noexcept {
    PrbSamples out{};
    const std::int32_t scale = std::int32_t{1} << block.exponent;
    for (std::size_t k = 0; k < kSubcarriersPerPrb; ++k) {
        out[k].i = saturate16(block.mantissas[k].i * scale);
        out[k].q = saturate16(block.mantissas[k].q * scale);
    }
    return out;
}

void write_prb(BitWriter& out, const PrbBlock& block) {
    out.put(0, 4, "reserved");
    out.put(block.exponent, 4, "exponent");
    for (const auto& m : block.mantissas) {
        out.put_signed(m.i, kMantissaBits, "mantissa_i");
        out.put_signed(m.q, kMantissaBits, "mantissa_q");
    }
}

PrbBlock read_prb(BitReader& in) {
    PrbBlock block;
    in.get(4, "reserved");
    block.exponent = static_cast<std::uint8_t>(in.get(4, "exponent"));
    for (auto& m : block.mantissas) {
        m.i = static_cast<std::int16_t>(in.get_signed(kMantissaBits, "mantissa_i"));
        m.q = static_cast<std::int16_t>(in.get_signed(kMantissaBits, "mantissa_q"));
    }
    return block;
}

} // namespace ofh::codec
