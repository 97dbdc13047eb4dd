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

#include <stdexcept>
#include <string>

namespace ofh::codec {

enum class CodecErrc {
    field_overflow,
    oversized_payload,
    truncated,
    payload_size_mismatch,
    unknown_message_type,
    unsupported_section_type,
    structural,
};

const char* to_string(CodecErrc code) noexcept;

/// Raised by every encode/decode path. `field()` names the offending wire
/// field when one can be identified.
class CodecError : public std::runtime_error {
public:
    CodecError(CodecErrc code, std::string field, const std::string& detail);

    CodecErrc code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    CodecErrc code_;
    std::string field_;
};

} // namespace ofh::codec
