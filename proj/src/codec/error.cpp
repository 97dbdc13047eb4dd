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

#include "ofh/codec/error.hpp"

namespace ofh::codec {

const char* to_string(CodecErrc code) noexcept {
    switch (code) {
    case CodecErrc::field_overflow: return "field overflow";
    case CodecErrc::oversized_payload: return "oversized payload";
    case CodecErrc::truncated: return "truncated";
    case CodecErrc::payload_size_mismatch: return "payload size mismatch";
    case CodecErrc::unknown_message_type: return "unknown message type";
    case CodecErrc::unsupported_section_type: return "unsupported section type";
    case CodecErrc::structural: return "structural";
    }
    return "unknown";
}

CodecError::CodecError(CodecErrc code, std::string field, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + " [" + field + "]: " + detail),
      code_(code),
      field_(std::move(field)) {}

} // namespace ofh::codec
