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
#include <span>
#include <vector>

#include "ofh/codec/bfp.hpp"
#include "ofh/codec/cplane.hpp"
#include "ofh/codec/ecpri.hpp"

namespace ofh::codec {

struct UplaneSection {
    std::uint16_t section_id = 0;
    bool rb = false;
    bool sym_inc = false;
    std::uint16_t start_prb = 0;
    std::uint8_t num_prb = 0;
    std::vector<PrbBlock> prbs;

    bool operator==(const UplaneSection&) const = default;
};

/// Wire layout after the eCPRI header, MSB first:
///   direction(1) payload_version(3) filter_index(4) frame_id(8)
///   subframe_id(4) slot_id(6) symbol_id(6)
///   per section until end of payload:
///     section_id(12) rb(1) sym_inc(1) start_prb(10) num_prb(8)
///     PRB blocks (28 bytes each)
struct UplaneMessage {
    EcpriHeader header{};
    DataDirection direction = DataDirection::downlink;
    std::uint8_t filter_index = 0;
    std::uint8_t frame_id = 0;
    std::uint8_t subframe_id = 0;
    std::uint8_t slot_id = 0;
    std::uint8_t symbol_id = 0;
    std::vector<UplaneSection> sections;

    bool operator==(const UplaneMessage&) const = default;
};

std::vector<std::uint8_t> encode_uplane(const UplaneMessage& message, const CodecConfig& config);
UplaneMessage decode_uplane(std::span<const std::uint8_t> frame, const CodecConfig& config);
void validate(const UplaneMessage& message, const CodecConfig& config);

} // namespace ofh::codec
