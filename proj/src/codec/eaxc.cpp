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

#include "ofh/codec/eaxc.hpp"

#include <string>

#include "ofh/codec/error.hpp"

namespace ofh::codec {
namespace {

void check_fits(std::uint16_t value, unsigned width, const char* field) {
    if (width < 16 && (value >> width) != 0) {
        throw CodecError(CodecErrc::field_overflow, field,
                         std::to_string(value) + " does not fit " + std::to_string(width) + " bits");
    }
}

std::uint16_t low_mask(unsigned width) {
    return static_cast<std::uint16_t>((1U << width) - 1U);
}

} // namespace

void EaxcLayout::validate() const {
    const unsigned total = du_port_bits + band_sector_bits + cc_bits + ru_port_bits;
    if (total != 16) {
        throw CodecError(CodecErrc::field_overflow, "eaxc_layout",
                         "widths sum to " + std::to_string(total) + ", expected 16");
    }
}

std::uint16_t pack_eaxc(const EaxcId& eaxc) {
    const auto& l = eaxc.layout;
    l.validate();
    check_fits(eaxc.du_port_id, l.du_port_bits, "du_port_id");
    check_fits(eaxc.band_sector_id, l.band_sector_bits, "band_sector_id");
    check_fits(eaxc.cc_id, l.cc_bits, "cc_id");
    check_fits(eaxc.ru_port_id, l.ru_port_bits, "ru_port_id");

    std::uint32_t packed = eaxc.du_port_id;
    packed = (packed << l.band_sector_bits) | eaxc.band_sector_id;
    packed = (packed << l.cc_bits) | eaxc.cc_id;
    packed = (packed << l.ru_port_bits) | eaxc.ru_port_id;
    return static_cast<std::uint16_t>(packed);
}

EaxcId unpack_eaxc(std::uint16_t packed, const EaxcLayout& layout) {
    layout.validate();
    EaxcId id;
    id.layout = layout;
    unsigned shift = 0;
    id.ru_port_id = (packed >> shift) & low_mask(layout.ru_port_bits);
    shift += layout.ru_port_bits;
    id.cc_id = (packed >> shift) & low_mask(layout.cc_bits);
    shift += layout.cc_bits;
    id.band_sector_id = (packed >> shift) & low_mask(layout.band_sector_bits);
    shift += layout.band_sector_bits;
    id.du_port_id = shift >= 16 ? 0 : (packed >> shift) & low_mask(layout.du_port_bits);
    return id;
}

} // namespace ofh::codec
