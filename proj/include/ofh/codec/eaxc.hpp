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

namespace ofh::codec {

/// Bit partition of the 16-bit eAxC identifier, most-significant field first.
/// The DUT does not publish its partition, so (4,4,4,4) is only a default.
struct EaxcLayout {
    std::uint8_t du_port_bits = 4;
    std::uint8_t band_sector_bits = 4;
    std::uint8_t cc_bits = 4;
    std::uint8_t ru_port_bits = 4;

    /// Throws CodecError(field_overflow, "eaxc_layout") unless widths sum to 16.
    void validate() const;

    bool operator==(const EaxcLayout&) const = default;
};

struct EaxcId {
    std::uint16_t du_port_id = 0;
    std::uint16_t band_sector_id = 0;
    std::uint16_t cc_id = 0;
    std::uint16_t ru_port_id = 0;
    EaxcLayout layout{};

    bool operator==(const EaxcId&) const = default;
};

std::uint16_t pack_eaxc(const EaxcId& eaxc);
EaxcId unpack_eaxc(std::uint16_t packed, const EaxcLayout& layout = {});

} // namespace ofh::codec
