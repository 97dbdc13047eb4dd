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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ofh/codec/eaxc.hpp"

namespace ofh::codec {

enum class EcpriMessageType : std::uint8_t {
    iq_data = 0,
    rt_control = 2,
};

inline constexpr std::size_t kEcpriHeaderSize = 8;

/// Transport header carried in front of every C-Plane and U-Plane payload.
///
/// Wire layout (big-endian):
///   byte 0    revision(4) | reserved(3) | concatenation(1)
///   byte 1    message type
///   bytes 2-3 payload size in bytes (excluding this header)
///   bytes 4-5 packed eAxC
///   byte 6    sequence id
///   byte 7    E bit(1) | subsequence id(7)
struct EcpriHeader {
    std::uint8_t protocol_revision = 1;
    bool concatenation = false;
    EcpriMessageType message_type = EcpriMessageType::iq_data;
    std::uint16_t payload_size = 0;
    EaxcId eaxc{};
    std::uint8_t sequence_id = 0;
    bool e_bit = true;
    std::uint8_t subsequence_id = 0;

    bool operator==(const EcpriHeader&) const = default;
};

struct EcpriFrame {
    EcpriHeader header;
    std::vector<std::uint8_t> payload;

    bool operator==(const EcpriFrame&) const = default;
};

/// `header.payload_size` is ignored; the written size is `payload.size()`.
std::vector<std::uint8_t> encode_ecpri(const EcpriHeader& header,
                                       std::span<const std::uint8_t> payload);

/// Rejects short buffers, unknown message types, and any disagreement between
/// the declared payload size and the bytes actually present.
EcpriFrame decode_ecpri(std::span<const std::uint8_t> bytes, const EaxcLayout& layout = {});

} // namespace ofh::codec
