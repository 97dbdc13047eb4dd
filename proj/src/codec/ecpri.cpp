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

#include "ofh/codec/ecpri.hpp"

#include <limits>
#include <string>

#include "ofh/codec/error.hpp"

namespace ofh::codec {

std::vector<std::uint8_t> encode_ecpri(const EcpriHeader& header,
                                       std::span<const std::uint8_t> payload) {
    if (payload.size() > std::numeric_limits<std::uint16_t>::max()) {
        throw CodecError(CodecErrc::oversized_payload, "payload_size",
                         std::to_string(payload.size()) + " bytes");
    }
    if (header.protocol_revision > 0x0F) {
        throw CodecError(CodecErrc::field_overflow, "protocol_revision",
                         std::to_string(header.protocol_revision));
    }
    if (header.subsequence_id > 0x7F) {
        throw CodecError(CodecErrc::field_overflow, "subsequence_id",
                         std::to_string(header.subsequence_id));
    }
    const auto size = static_cast<std::uint16_t>(payload.size());
    const std::uint16_t eaxc = pack_eaxc(header.eaxc);

    std::vector<std::uint8_t> out;
    out.reserve(kEcpriHeaderSize + payload.size());
    out.push_back(static_cast<std::uint8_t>(header.protocol_revision << 4 |
                                            (header.concatenation ? 1 : 0)));
    out.push_back(static_cast<std::uint8_t>(header.message_type));
    out.push_back(static_cast<std::uint8_t>(size >> 8));
    out.push_back(static_cast<std::uint8_t>(size & 0xFF));
    out.push_back(static_cast<std::uint8_t>(eaxc >> 8));
    out.push_back(static_cast<std::uint8_t>(eaxc & 0xFF));
    out.push_back(header.sequence_id);
    out.push_back(static_cast<std::uint8_t>((header.e_bit ? 0x80 : 0) | header.subsequence_id));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

EcpriFrame decode_ecpri(std::span<const std::uint8_t> bytes, const EaxcLayout& layout) {
    if (bytes.size() < kEcpriHeaderSize) {
        throw CodecError(CodecErrc::truncated, "ecpri_header",
                         std::to_string(bytes.size()) + " bytes, need 8");
    }
    EcpriFrame frame;
    auto& h = frame.header;
    h.protocol_revision = bytes[0] >> 4;
    h.concatenation = (bytes[0] & 0x01) != 0;
    switch (bytes[1]) {
    case 0: h.message_type = EcpriMessageType::iq_data; break;
    case 2: h.message_type = EcpriMessageType::rt_control; break;
    default:
        throw CodecError(CodecErrc::unknown_message_type, "message_type",
                         "wire value " + std::to_string(bytes[1]));
    }
    h.payload_size = static_cast<std::uint16_t>(bytes[2] << 8 | bytes[3]);
    h.eaxc = unpack_eaxc(static_cast<std::uint16_t>(bytes[4] << 8 | bytes[5]), layout);
    h.sequence_id = bytes[6];
    h.e_bit = (bytes[7] & 0x80) != 0;
    h.subsequence_id = bytes[7] & 0x7F;

    const std::size_t available = bytes.size() - kEcpriHeaderSize;
    if (available < h.payload_size) {
        throw CodecError(CodecErrc::truncated, "payload",
                         "declared " + std::to_string(h.payload_size) + ", have " +
                             std::to_string(available));
    }
    if (available > h.payload_size) {
        throw CodecError(CodecErrc::payload_size_mismatch, "payload_size",
                         "declared " + std::to_string(h.payload_size) + ", have " +
                             std::to_string(available));
    }
    frame.payload.assign(bytes.begin() + kEcpriHeaderSize, bytes.end());
    return frame;
}

} // namespace ofh::codec
